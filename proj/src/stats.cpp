#include "lorentzseq/stats.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "lorentzseq/error.hpp"

namespace lorentzseq {

Summary summarize(std::span<const double> values) {
    Summary s;
    double sum = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) continue;
        sum += v;
        ++s.count;
    }
    if (s.count == 0) {
        s.mean = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    s.mean = sum / static_cast<double>(s.count);
    if (s.count > 1) {
        double ss = 0.0;
        for (double v : values) {
            if (std::isfinite(v)) ss += (v - s.mean) * (v - s.mean);
        }
        s.sd = std::sqrt(ss / static_cast<double>(s.count - 1));
    }
    return s;
}

TTestResult t_test_summary(double mean1, double sd1, std::size_t n1, double mean2, double sd2,
                           std::size_t n2) {
    if (!(sd1 >= 0.0) || !(sd2 >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative SD");
    if (n1 < 2 || n2 < 2) throw Error(ErrorCode::InvalidArgument, "each sample needs n >= 2");

    const double v1 = sd1 * sd1 / static_cast<double>(n1);
    const double v2 = sd2 * sd2 / static_cast<double>(n2);
    const double diff = mean1 - mean2;

    TTestResult r;
    r.df = v1 + v2 > 0.0
               ? (v1 + v2) * (v1 + v2) /
                     (v1 * v1 / static_cast<double>(n1 - 1) + v2 * v2 / static_cast<double>(n2 - 1))
               : static_cast<double>(n1 + n2 - 2);
    if (diff == 0.0) return r;  // t = 0, p = 1
    if (v1 + v2 == 0.0) {
        r.t = std::copysign(std::numeric_limits<double>::infinity(), diff);
        r.p_value = 0.0;
        r.infinite_t = true;
        return r;
    }

    r.t = diff / std::sqrt(v1 + v2);
    const boost::math::students_t dist(r.df);
    r.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
    return r;
}

}  // namespace lorentzseq
