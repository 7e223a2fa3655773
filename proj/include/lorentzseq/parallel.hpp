#ifndef LORENTZSEQ_PARALLEL_HPP
#define LORENTZSEQ_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lorentzseq {

/// Worker count from an explicit request, falling back to the
/// LORENTZSEQ_THREADS environment variable and then the hardware.
unsigned resolve_threads(unsigned requested);

/// Runs fn(i) for every i in [0, count). Index i goes to worker i % workers,
/// so each index has exactly one owner and results never depend on the
/// worker count as long as fn(i) only writes state owned by i.
/// If any call throws, the exception from the smallest failing index is
/// rethrown after all workers have joined.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (workers > count) workers = static_cast<unsigned>(count);

    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::size_t> failed_at(workers, count);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < count; i += workers) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[w] = std::current_exception();
                        failed_at[w] = i;
                        return;
                    }
                }
            });
        }
    }
    std::size_t first = count;
    std::exception_ptr error;
    for (unsigned w = 0; w < workers; ++w) {
        if (errors[w] && failed_at[w] < first) {
            first = failed_at[w];
            error = errors[w];
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace lorentzseq

#endif  // LORENTZSEQ_PARALLEL_HPP
