#include "lorentzseq/hyperboloid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "lorentzseq/error.hpp"
#include "lorentzseq/parallel.hpp"

namespace lorentzseq {

namespace {

double squared_norm_of(std::span<const double> v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return sum;
}

}  // namespace

double HyperboloidPoint::sheet_residual() const noexcept {
    return (x0_ * x0_ - squared_norm_ - 1.0) / std::max(1.0, x0_ * x0_);
}

HyperboloidPoint HyperboloidPoint::on_sheet(double x0, std::vector<double> spatial) {
    if (!std::isfinite(x0) || !std::all_of(spatial.begin(), spatial.end(),
                                           [](double x) { return std::isfinite(x); })) {
        throw Error(ErrorCode::InvalidVector, "non-finite hyperboloid coordinates");
    }
    const double sq = squared_norm_of(spatial);
    HyperboloidPoint p(x0, std::move(spatial), sq);
    if (x0 < 1.0 || std::abs(p.sheet_residual()) > kSheetTolerance) {
        throw Error(ErrorCode::DomainError, "point is not on the forward sheet");
    }
    return p;
}

HyperboloidPoint lift(std::span<const double> v, double scale) {
    std::vector<double> spatial(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        spatial[i] = scale * v[i];
        if (!std::isfinite(spatial[i])) {
            throw Error(ErrorCode::InvalidVector,
                        "non-finite coordinate " + std::to_string(i) + " in lifted vector");
        }
    }
    const double sq = squared_norm_of(spatial);
    if (!std::isfinite(sq)) throw Error(ErrorCode::InvalidVector, "vector norm overflows");
    return HyperboloidPoint(std::sqrt(1.0 + sq), std::move(spatial), sq);
}

double lorentz_excess(const HyperboloidPoint& a, const HyperboloidPoint& b) {
    if (a.dimension() != b.dimension()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "points of dimension " + std::to_string(a.dimension()) + " and " +
                        std::to_string(b.dimension()));
    }
    // B - 1 = (cosh(s - t) - 1) + |x||y| (1 - cos angle), with s, t the rapidities
    // asinh|x|, asinh|y|. Both terms are nonnegative and are built from the
    // coordinate differences x - y, so neither cancels. Swapping the arguments
    // only negates intermediate quantities, which keeps the result symmetric.
    const auto x = a.spatial();
    const auto y = b.spatial();
    const double p = std::sqrt(a.squared_norm());
    const double q = std::sqrt(b.squared_norm());
    double sq_gap = 0.0;  // |x|^2 - |y|^2
    for (std::size_t i = 0; i < x.size(); ++i) sq_gap += (x[i] - y[i]) * (x[i] + y[i]);
    const double denom = p * b.x0() + q * a.x0();
    const double sh = denom > 0.0 ? sq_gap / denom : 0.0;  // sinh(s - t)
    const double radial = std::abs(sh) > 1e150 ? std::abs(sh) : sh * sh / (1.0 + std::sqrt(1.0 + sh * sh));
    double angular = 0.0;
    if (p > 0.0 && q > 0.0) {
        double gap = 0.0;  // |x/|x| - y/|y||^2
        if (p <= 2.0 * q && q <= 2.0 * p) {
            // Comparable norms: 2pq (x/|x| - y/|y|) = (p + q)(x - y) - (p - q)(x + y),
            // which keeps the exact differences x - y of nearby points.
            const double sum = p + q;
            const double diff = sq_gap / sum;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double w = sum * (x[i] - y[i]) - diff * (x[i] + y[i]);
                gap += w * w;
            }
            gap /= 4.0 * (p * q) * (p * q);
        } else {
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double w = x[i] / p - y[i] / q;
                gap += w * w;
            }
        }
        angular = 0.5 * (p * q) * gap;
    }
    const double excess = radial + angular;
    if (!(excess >= 0.0)) {
        if (excess >= -kInnerClampTolerance) return 0.0;
        throw Error(ErrorCode::DomainError,
                    "Lorentzian form below 1 (B - 1 = " + std::to_string(excess) + ")");
    }
    return excess;
}

double lorentz_inner(const HyperboloidPoint& a, const HyperboloidPoint& b) {
    return 1.0 + lorentz_excess(a, b);
}

double lorentz_inner_direct(double x0, std::span<const double> x, double y0,
                            std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "spatial sizes differ");
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dot += x[i] * y[i];
    return x0 * y0 - dot;
}

double acosh1p(double h) {
    if (!(h >= 0.0)) throw Error(ErrorCode::DomainError, "acosh argument below 1");
    if (h > 1e150) return std::log(h) + std::log(2.0);  // (h)(h+2) would overflow
    return std::log1p(h + std::sqrt(h * (h + 2.0)));
}

double acosh_stable(double z) {
    if (!(z >= 1.0)) throw Error(ErrorCode::DomainError, "acosh argument below 1");
    if (z > 1e150) return std::log(z) + std::log(2.0);
    const double h = z - 1.0;
    return std::log1p(h + std::sqrt(h * (z + 1.0)));
}

double distance(const HyperboloidPoint& a, const HyperboloidPoint& b) {
    return acosh1p(lorentz_excess(a, b));
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sizes differ");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

std::string_view to_string(KernelKind kind) {
    return kind == KernelKind::HyperboloidDistance ? "hyperboloid" : "euclidean";
}

std::string_view to_string(PsdMode mode) {
    switch (mode) {
        case PsdMode::None: return "none";
        case PsdMode::Clip: return "clip";
        case PsdMode::Shift: return "shift";
    }
    return "none";
}

KernelKind parse_kernel_kind(std::string_view name) {
    if (name == "hyperboloid") return KernelKind::HyperboloidDistance;
    if (name == "euclidean") return KernelKind::EuclideanDistance;
    throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + std::string(name) + "'");
}

PsdMode parse_psd_mode(std::string_view name) {
    if (name == "clip") return PsdMode::Clip;
    if (name == "shift") return PsdMode::Shift;
    if (name == "none") return PsdMode::None;
    throw Error(ErrorCode::InvalidArgument, "unknown PSD mode '" + std::string(name) + "'");
}

KernelMatrix kernel_matrix(const RowMatrix& spectra, const KernelOptions& options) {
    const auto n = static_cast<std::size_t>(spectra.rows());
    const auto d = static_cast<std::size_t>(spectra.cols());
    if (!std::isfinite(options.lift_scale)) {
        throw Error(ErrorCode::InvalidArgument, "lift scale must be finite");
    }
    auto row = [&](std::size_t i) { return std::span<const double>(spectra.row(Eigen::Index(i)).data(), d); };

    KernelMatrix kernel;
    kernel.kind = options.kind;
    kernel.data = RowMatrix::Zero(Eigen::Index(n), Eigen::Index(n));
    double* out = kernel.data.data();

    if (options.kind == KernelKind::HyperboloidDistance) {
        std::vector<std::optional<HyperboloidPoint>> points(n);
        parallel_for(n, options.threads, [&](std::size_t i) {
            try {
                points[i] = lift(row(i), options.lift_scale);
            } catch (const Error& e) {
                throw Error(e.code(), "row " + std::to_string(i) + ": " + e.what());
            }
        });
        parallel_for(n, options.threads, [&](std::size_t i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                try {
                    out[i * n + j] = distance(*points[i], *points[j]);
                } catch (const Error& e) {
                    throw Error(e.code(), "pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                              "): " + e.what());
                }
            }
        });
    } else {
        parallel_for(n, options.threads, [&](std::size_t i) {
            for (double x : row(i)) {
                if (!std::isfinite(x)) {
                    throw Error(ErrorCode::InvalidVector, "row " + std::to_string(i) + " is not finite");
                }
            }
            for (std::size_t j = i + 1; j < n; ++j) out[i * n + j] = euclidean_distance(row(i), row(j));
        });
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) out[j * n + i] = out[i * n + j];
    }
    return kernel;
}

double min_eigenvalue(const RowMatrix& symmetric) {
    if (symmetric.rows() == 0) throw Error(ErrorCode::EmptyMatrix, "empty matrix");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(symmetric),
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalError, "symmetric eigensolver did not converge");
    }
    return solver.eigenvalues()(0);
}

KernelMatrix psd_adjust(KernelMatrix kernel, PsdMode mode, std::optional<double> epsilon) {
    if (epsilon && !(*epsilon > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "shift epsilon must be positive");
    }
    kernel.adjustment = mode;
    if (mode != PsdMode::Shift || kernel.size() == 0) return kernel;

    const double lambda_min = min_eigenvalue(kernel.data);
    if (lambda_min >= 0.0) return kernel;

    const double magnitude = -lambda_min;
    const double shift = magnitude + epsilon.value_or(1e-9 * std::max(1.0, magnitude));
    for (Eigen::Index i = 0; i < kernel.data.rows(); ++i) kernel.data(i, i) += shift;
    kernel.diag_shift += shift;
    return kernel;
}

}  // namespace lorentzseq
