#ifndef LORENTZSEQ_STATS_HPP
#define LORENTZSEQ_STATS_HPP

#include <cstddef>
#include <span>

namespace lorentzseq {

struct Summary {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation; 0 for a single value
    std::size_t count = 0;
};

/// Mean and sample SD over the finite entries of `values`.
Summary summarize(std::span<const double> values);

struct TTestResult {
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;  // two-sided
    bool infinite_t = false;
};

/// Welch's t-test from summary statistics with Welch-Satterthwaite degrees
/// of freedom. Throws InvalidArgument for negative SDs or n < 2.
TTestResult t_test_summary(double mean1, double sd1, std::size_t n1, double mean2, double sd2,
                           std::size_t n2);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_STATS_HPP
