#ifndef LORENTZSEQ_SPLIT_HPP
#define LORENTZSEQ_SPLIT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lorentzseq {

struct SplitSpec {
    double test_fraction = 0.3;
    std::size_t runs = 5;
    std::uint64_t base_seed = 0;
    bool stratified = true;
};

struct Split {
    std::vector<std::size_t> train;  // ascending
    std::vector<std::size_t> test;   // ascending
    std::vector<std::string> warnings;
};

/// Deterministic in (spec.base_seed, run_index). With stratification each
/// class of size s contributes clamp(round(s * fraction), 1, s - 1) test
/// members; singleton classes stay in train with a warning.
/// Throws SplitInfeasible when n < 2 or every class is a singleton.
Split stratified_split(const std::vector<std::string>& labels, const SplitSpec& spec,
                       std::size_t run_index);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_SPLIT_HPP
