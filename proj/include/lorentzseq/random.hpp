#ifndef LORENTZSEQ_RANDOM_HPP
#define LORENTZSEQ_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace lorentzseq {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based random stream. A stream is fully determined by
/// (seed, stream id); the i-th draw is a pure function of (key, i), so
/// streams can be split across runs and workers without coordination.
/// Every derived quantity is computed with integer arithmetic or exact
/// scaling, so sequences are identical on every IEEE-754 platform.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept
        : key_(mix64(seed ^ mix64(stream_id ^ 0x6a09e667f3bcc909ULL))) {}

    std::uint64_t next_u64() noexcept { return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r < limit);
        return r % bound;
    }

    RandomStream split(std::uint64_t child) const noexcept {
        RandomStream s(0);
        s.key_ = mix64(key_ ^ mix64(child + 0xbb67ae8584caa73bULL));
        return s;
    }

    template <typename T>
    void shuffle(std::vector<T>& values) noexcept {
        for (std::size_t i = values.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace lorentzseq

#endif  // LORENTZSEQ_RANDOM_HPP
