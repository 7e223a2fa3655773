#ifndef LORENTZSEQ_TESTS_ORACLES_HPP
#define LORENTZSEQ_TESTS_ORACLES_HPP

// Reference implementations used only by tests. Each one takes a different
// route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

/// acosh via the closed form ln(z + sqrt(z^2 - 1)) at 50 decimal digits.
inline BigFloat acosh_closed_form(double z) {
    const BigFloat zb(z);
    return log(zb + sqrt(zb * zb - 1));
}

/// B(X, Y) - 1 for the lifts of x and y, by the literal form at 50 digits.
inline BigFloat lorentz_excess_literal(const std::vector<double>& x, const std::vector<double>& y) {
    BigFloat xx = 0, yy = 0, xy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xx += BigFloat(x[i]) * x[i];
        yy += BigFloat(y[i]) * y[i];
        xy += BigFloat(x[i]) * y[i];
    }
    return sqrt(1 + xx) * sqrt(1 + yy) - xy - 1;
}

/// Counts k-mers by hashing every substring; windows with a character
/// outside `symbols` are skipped.
inline std::unordered_map<std::string, double> count_kmers(const std::string& s, std::size_t k,
                                                            const std::string& symbols) {
    std::unordered_map<std::string, double> counts;
    if (s.size() < k) return counts;
    for (std::size_t i = 0; i + k <= s.size(); ++i) {
        const std::string w = s.substr(i, k);
        if (std::all_of(w.begin(), w.end(), [&](char c) { return symbols.find(c) != std::string::npos; })) {
            counts[w] += 1.0;
        }
    }
    return counts;
}

/// Characteristic polynomial coefficients c[0..n] (c[n] = 1) of a small
/// matrix by Faddeev-LeVerrier, in extended precision.
inline std::vector<long double> characteristic_polynomial(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    using M = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    const M A = a.cast<long double>();
    std::vector<long double> c(static_cast<std::size_t>(n) + 1, 0.0L);
    c[static_cast<std::size_t>(n)] = 1.0L;
    M mk = M::Zero(n, n);
    for (Eigen::Index k = 1; k <= n; ++k) {
        mk = A * mk + c[static_cast<std::size_t>(n - k + 1)] * M::Identity(n, n);
        c[static_cast<std::size_t>(n - k)] = -(A * mk).trace() / static_cast<long double>(k);
    }
    return c;
}

/// Real roots of the characteristic polynomial of a symmetric matrix,
/// descending, by sign-change scanning over the Gershgorin interval and
/// bisection. Assumes distinct eigenvalues.
inline std::vector<double> eigenvalues_by_roots(const Eigen::MatrixXd& a) {
    const auto c = characteristic_polynomial(a);
    auto p = [&](long double x) {
        long double v = 0.0L;
        for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
        return v;
    };
    double bound = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) bound = std::max(bound, a.row(i).cwiseAbs().sum());
    bound += 1.0;
    const int steps = 200000;
    std::vector<double> roots;
    long double prev_x = -bound, prev = p(prev_x);
    for (int s = 1; s <= steps; ++s) {
        const long double x = -bound + 2.0L * bound * s / steps;
        const long double v = p(x);
        if (v == 0.0L) {
            roots.push_back(static_cast<double>(x));
        } else if ((prev < 0.0L) != (v < 0.0L) && prev != 0.0L) {
            long double lo = prev_x, hi = x, flo = prev;
            for (int it = 0; it < 200; ++it) {
                const long double mid = 0.5L * (lo + hi);
                const long double fm = p(mid);
                if ((fm < 0.0L) == (flo < 0.0L)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(static_cast<double>(0.5L * (lo + hi)));
        }
        prev_x = x;
        prev = v;
    }
    std::sort(roots.rbegin(), roots.rend());
    return roots;
}

/// kNN by full sort of all distances and an explicit vote table.
inline std::string knn_exhaustive(const Eigen::MatrixXd& train, const std::vector<std::string>& labels,
                                  const Eigen::VectorXd& query, std::size_t k) {
    std::vector<std::pair<double, std::size_t>> all;
    for (Eigen::Index i = 0; i < train.rows(); ++i) {
        all.push_back({(train.row(i).transpose() - query).squaredNorm(), static_cast<std::size_t>(i)});
    }
    std::sort(all.begin(), all.end());
    std::map<std::string, std::pair<std::size_t, double>> table;
    for (std::size_t r = 0; r < k; ++r) {
        auto& entry = table[labels[all[r].second]];
        entry.first += 1;
        entry.second += std::sqrt(all[r].first);
    }
    std::string best;
    std::size_t votes = 0;
    double sum = 0.0;
    for (const auto& [label, e] : table) {
        if (best.empty() || e.first > votes || (e.first == votes && e.second < sum)) {
            best = label;
            votes = e.first;
            sum = e.second;
        }
    }
    return best;
}

/// AUC as the fraction of (positive, negative) pairs ranked correctly,
/// ties counting one half.
inline double auc_pairwise(const std::vector<double>& scores, const std::vector<bool>& positive) {
    double wins = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!positive[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (positive[j]) continue;
            pairs += 1.0;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / pairs;
}

/// Two-sided Student-t tail probability by composite Simpson integration of
/// the density over [|t|, inf).
inline double t_two_sided_quadrature(double t, double df) {
    const double logc = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) - 0.5 * std::log(df * M_PI);
    auto pdf = [&](double x) { return std::exp(logc - (df + 1.0) / 2.0 * std::log1p(x * x / df)); };
    // integral_{a}^{inf} pdf(x) dx with x = a / u, u in (0, 1]
    // then u = w^4 so the integrand is smooth at w = 0 even for df near 1.
    const double a = std::max(std::abs(t), 1e-300);
    auto g = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double u = w * w * w * w;
        return pdf(a / u) * a / (u * u) * 4.0 * w * w * w;
    };
    const int n = 200000;
    const double h = 1.0 / n;
    double sum = g(0.0) + g(1.0);
    for (int i = 1; i < n; ++i) sum += g(i * h) * (i % 2 ? 4.0 : 2.0);
    double tail = sum * h / 3.0;
    if (std::abs(t) < 1e-300) tail = 0.5;
    return 2.0 * tail;
}

}  // namespace oracle

#endif  // LORENTZSEQ_TESTS_ORACLES_HPP
