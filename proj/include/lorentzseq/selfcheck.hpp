#ifndef LORENTZSEQ_SELFCHECK_HPP
#define LORENTZSEQ_SELFCHECK_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lorentzseq {

struct SelfcheckOptions {
    std::uint64_t seed = 20240601;
    std::size_t points = 2000;  // random vectors for the geometry properties
    unsigned threads = 1;
    /// Property name whose check is deliberately perturbed (test builds).
    std::string inject_fault;
};

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;  // counterexample or summary
    double seconds = 0.0;
};

/// Names of the properties run_selfcheck evaluates, in order.
std::vector<std::string> selfcheck_properties();

std::vector<PropertyResult> run_selfcheck(const SelfcheckOptions& options);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_SELFCHECK_HPP
