#include "lorentzseq/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "lorentzseq/classifiers.hpp"
#include "lorentzseq/hyperboloid.hpp"
#include "lorentzseq/kernel_pca.hpp"
#include "lorentzseq/random.hpp"

namespace lorentzseq {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

struct Context {
    const SelfcheckOptions& options;
    bool faulty(const std::string& name) const { return options.inject_fault == name; }
};

std::vector<double> random_vector(RandomStream& rng, std::size_t dim, double max_norm) {
    std::vector<double> v(dim);
    double sq = 0.0;
    for (double& x : v) {
        x = 2.0 * rng.uniform() - 1.0;
        sq += x * x;
    }
    const double scale = sq > 0.0 ? max_norm * rng.uniform() / std::sqrt(sq) : 0.0;
    for (double& x : v) x *= scale;
    return v;
}

std::string fmt(const char* prefix, double value) {
    std::ostringstream os;
    os.precision(6);
    os << prefix << value;
    return os.str();
}

PropertyResult sheet_membership(const Context& ctx) {
    RandomStream rng(ctx.options.seed, 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < ctx.options.points; ++i) {
        const auto p = lift(random_vector(rng, 1 + rng.below(256), 1e4));
        double r = std::abs(p.sheet_residual());
        if (ctx.faulty("sheet_membership")) r += 1e-6;
        worst = std::max(worst, r);
    }
    return {"sheet_membership", worst <= 1e-9, fmt("max relative residual ", worst)};
}

PropertyResult inner_lower_bound(const Context& ctx) {
    RandomStream rng(ctx.options.seed, 2);
    double lowest = INFINITY;
    double worst_self = 0.0;
    double worst_literal = 0.0;
    for (std::size_t i = 0; i < ctx.options.points; ++i) {
        const std::size_t dim = 1 + rng.below(64);
        const auto u = random_vector(rng, dim, 1e4);
        auto v = random_vector(rng, dim, 1e4);
        if (i % 2 == 1) {
            // near-identical partner
            v = u;
            for (double& c : v) c *= 1.0 + 1e-9 * (rng.uniform() - 0.5);
        }
        const auto a = lift(u);
        const auto b = lift(v);
        double ab = lorentz_inner(a, b);
        const double literal = lorentz_inner_direct(a.x0(), a.spatial(), b.x0(), b.spatial());
        worst_literal = std::max(worst_literal, std::abs(literal - ab) / (a.x0() * b.x0()));
        if (ctx.faulty("inner_lower_bound")) ab -= 1e-6 + (ab - 1.0);
        lowest = std::min(lowest, ab);
        worst_self = std::max(worst_self, std::abs(lorentz_inner(a, a) - 1.0));
    }
    const bool ok = lowest >= 1.0 - 1e-9 && worst_self <= 1e-9 && worst_literal <= 1e-12;
    return {"inner_lower_bound", ok,
            fmt("min B ", lowest) + fmt(", max |B(X,X) - 1| ", worst_self) +
                fmt(", max |B - literal| / x0 y0 ", worst_literal)};
}

PropertyResult metric_axioms(const Context& ctx) {
    RandomStream rng(ctx.options.seed, 3);
    const std::size_t triples = ctx.options.points;
    for (std::size_t t = 0; t < triples; ++t) {
        const std::size_t dim = 1 + rng.below(32);
        const double max_norm = std::pow(10.0, 3.0 * rng.uniform());
        const auto xv = random_vector(rng, dim, max_norm);
        auto yv = random_vector(rng, dim, max_norm);
        auto zv = random_vector(rng, dim, max_norm);
        if (t % 3 == 2) {
            // collinear triple, where the triangle inequality is tight
            yv = xv;
            zv = xv;
            for (double& c : yv) c *= 0.5;
            for (double& c : zv) c *= 1e-3;
        }
        const auto x = lift(xv);
        const auto y = lift(yv);
        const auto z = lift(zv);
        const double xy = distance(x, y), yx = distance(y, x);
        const double yz = distance(y, z), xz = distance(x, z);
        double self = distance(x, x);
        if (ctx.faulty("metric_axioms")) self += 1e-3;
        if (xy < 0.0 || xy != yx || self != 0.0 || xz > xy + yz + 1e-9) {
            std::ostringstream os;
            os.precision(17);
            os << "triple " << t << ": d(x,y)=" << xy << " d(y,x)=" << yx << " d(y,z)=" << yz
               << " d(x,z)=" << xz << " d(x,x)=" << self;
            return {"metric_axioms", false, os.str()};
        }
    }
    return {"metric_axioms", true, std::to_string(triples) + " triples"};
}

PropertyResult acosh_identity(const Context& ctx) {
    double worst = 0.0;
    double worst_z = 1.0;
    const int steps = 400;
    for (int s = 0; s <= steps; ++s) {
        // log-spaced excess z - 1 in [1e-14, 1e12]
        const double z = 1.0 + std::pow(10.0, -14.0 + 26.0 * s / steps);
        const BigFloat zb(z);
        const BigFloat reference = log(zb + sqrt(zb * zb - 1));
        double got = acosh_stable(z);
        if (ctx.faulty("acosh_identity")) got *= 1.0 + 1e-9;
        const double rel = std::abs(static_cast<double>((BigFloat(got) - reference) / reference));
        if (rel > worst) {
            worst = rel;
            worst_z = z;
        }
    }
    return {"acosh_identity", worst <= 1e-12,
            fmt("max relative error ", worst) + fmt(" at z = ", worst_z)};
}

PropertyResult knn_oracle(const Context& ctx) {
    RandomStream rng(ctx.options.seed, 5);
    const Eigen::Index n_train = 150, n_test = 50, dim = 4;
    Eigen::MatrixXd train(n_train, dim), test(n_test, dim);
    std::vector<std::string> labels;
    for (Eigen::Index i = 0; i < n_train; ++i) {
        // coarse grid so distance ties actually occur
        for (Eigen::Index c = 0; c < dim; ++c) train(i, c) = static_cast<double>(rng.below(5));
        labels.push_back(std::string(1, static_cast<char>('A' + rng.below(3))));
    }
    for (Eigen::Index i = 0; i < n_test; ++i) {
        for (Eigen::Index c = 0; c < dim; ++c) test(i, c) = static_cast<double>(rng.below(5));
    }
    for (std::size_t k : {1, 3, 5}) {
        const auto got = knn_classify(train, labels, test, k);
        for (Eigen::Index t = 0; t < n_test; ++t) {
            std::vector<std::pair<double, std::size_t>> all;
            for (Eigen::Index i = 0; i < n_train; ++i) {
                all.push_back({(train.row(i) - test.row(t)).squaredNorm(), static_cast<std::size_t>(i)});
            }
            std::sort(all.begin(), all.end());
            std::map<std::string, std::pair<int, double>> tally;
            for (std::size_t r = 0; r < k; ++r) {
                auto& [votes, sum] = tally[labels[all[r].second]];
                ++votes;
                sum += std::sqrt(all[r].first);
            }
            std::string best;
            int best_votes = -1;
            double best_sum = 0.0;
            for (const auto& [label, vs] : tally) {
                if (vs.first > best_votes || (vs.first == best_votes && vs.second < best_sum)) {
                    best = label;
                    best_votes = vs.first;
                    best_sum = vs.second;
                }
            }
            std::string predicted = got.predictions[static_cast<std::size_t>(t)];
            if (ctx.faulty("knn_oracle")) predicted += "'";
            if (predicted != best) {
                return {"knn_oracle", false,
                        "test row " + std::to_string(t) + " k=" + std::to_string(k) + ": got " +
                            predicted + ", oracle " + best};
            }
        }
    }
    return {"knn_oracle", true, "150 train x 50 test x k in {1,3,5}"};
}

PropertyResult eigen_residuals(const Context& ctx) {
    RandomStream rng(ctx.options.seed, 6);
    double worst = 0.0, worst_orth = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.below(49));
        Eigen::MatrixXd a(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j <= i; ++j) a(i, j) = a(j, i) = 2.0 * rng.uniform() - 1.0;
        }
        auto eig = eigendecompose_symmetric(a);
        if (ctx.faulty("eigen_residuals")) eig.values(0) += 1e-3;
        const double norm = a.norm();
        for (Eigen::Index j = 0; j < n; ++j) {
            const double r = (a * eig.vectors.col(j) - eig.values(j) * eig.vectors.col(j)).norm() / norm;
            worst = std::max(worst, r);
        }
        const Eigen::MatrixXd gram = eig.vectors.transpose() * eig.vectors;
        worst_orth = std::max(worst_orth, (gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
    }
    return {"eigen_residuals", worst <= 1e-8 && worst_orth <= 1e-9,
            fmt("max residual/|A|_F ", worst) + fmt(", max |V'V - I| ", worst_orth)};
}

PropertyResult kernel_determinism(const Context& ctx) {
    RandomStream rng(ctx.options.seed, 7);
    const Eigen::Index n = 120, d = 32;
    RowMatrix spectra(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) spectra(i, j) = rng.uniform();
    }
    KernelOptions one{KernelKind::HyperboloidDistance, 1.0, 1};
    KernelOptions many{KernelKind::HyperboloidDistance, 1.0, std::max(2u, ctx.options.threads)};
    const auto a = kernel_matrix(spectra, one);
    auto b = kernel_matrix(spectra, many);
    if (ctx.faulty("kernel_determinism")) b.data(0, 1) = std::nextafter(b.data(0, 1), 1e9);
    const bool same = std::equal(a.data.data(), a.data.data() + a.data.size(), b.data.data());
    bool symmetric = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        symmetric = symmetric && b.data(i, i) == 0.0;
        for (Eigen::Index j = 0; j < i; ++j) symmetric = symmetric && b.data(i, j) == b.data(j, i);
    }
    return {"kernel_determinism", same && symmetric,
            same ? (symmetric ? "1 vs " + std::to_string(many.threads) + " workers identical"
                              : "matrix not exactly symmetric with zero diagonal")
                 : "kernel differs between 1 and " + std::to_string(many.threads) + " workers"};
}

using Check = PropertyResult (*)(const Context&);

const std::vector<Check>& checks() {
    static const std::vector<Check> all = {sheet_membership, inner_lower_bound, metric_axioms,
                                           acosh_identity,   knn_oracle,        eigen_residuals,
                                           kernel_determinism};
    return all;
}

}  // namespace

std::vector<std::string> selfcheck_properties() {
    return {"sheet_membership", "inner_lower_bound", "metric_axioms", "acosh_identity",
            "knn_oracle",       "eigen_residuals",   "kernel_determinism"};
}

std::vector<PropertyResult> run_selfcheck(const SelfcheckOptions& options) {
    const Context ctx{options};
    std::vector<PropertyResult> results;
    for (Check check : checks()) {
        const auto start = std::chrono::steady_clock::now();
        PropertyResult r;
        try {
            r = check(ctx);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("threw: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.push_back(std::move(r));
    }
    // Exceptions lose the name; fill it back in from the fixed order.
    const auto names = selfcheck_properties();
    for (std::size_t i = 0; i < results.size(); ++i) results[i].name = names[i];
    return results;
}

}  // namespace lorentzseq
