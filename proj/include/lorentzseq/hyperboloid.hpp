#ifndef LORENTZSEQ_HYPERBOLOID_HPP
#define LORENTZSEQ_HYPERBOLOID_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lorentzseq/matrix.hpp"

namespace lorentzseq {

/// Point (x0, x) on the forward sheet x0^2 - |x|^2 = 1, x0 >= 1.
class HyperboloidPoint {
public:
    /// Relative tolerance on x0^2 - |x|^2 - 1 accepted by on_sheet().
    static constexpr double kSheetTolerance = 1e-9;

    /// Wraps explicit coordinates; throws DomainError when they are off the
    /// forward sheet and InvalidVector when not finite.
    static HyperboloidPoint on_sheet(double x0, std::vector<double> spatial);

    double x0() const noexcept { return x0_; }
    std::span<const double> spatial() const noexcept { return spatial_; }
    std::size_t dimension() const noexcept { return spatial_.size(); }
    /// |x|^2 accumulated left to right.
    double squared_norm() const noexcept { return squared_norm_; }

    /// x0^2 - |x|^2 - 1 relative to max(1, x0^2).
    double sheet_residual() const noexcept;

private:
    friend HyperboloidPoint lift(std::span<const double> v, double scale);
    HyperboloidPoint(double x0, std::vector<double> spatial, double squared_norm)
        : x0_(x0), spatial_(std::move(spatial)), squared_norm_(squared_norm) {}

    double x0_;
    std::vector<double> spatial_;
    double squared_norm_;
};

/// v -> (sqrt(1 + |s v|^2), s v). Throws InvalidVector on non-finite input.
HyperboloidPoint lift(std::span<const double> v, double scale = 1.0);

/// Values of B in [1 - tol, 1) are rounding and clamp to 1; anything lower
/// is a DomainError.
inline constexpr double kInnerClampTolerance = 1e-9;

/// Lorentzian form B(X, Y) = x0 y0 - sum_i x_i y_i for points on the sheet.
///
/// Evaluated as 1 + 2 sinh^2((s - t) / 2) + |x||y| |x/|x| - y/|y||^2 / 2, where
/// s and t are asinh|x| and asinh|y|. This equals the literal form on the
/// sheet, but every term is nonnegative, so near-identical or collinear points
/// lose no precision. B(X, X) is exactly 1 at any norm.
double lorentz_inner(const HyperboloidPoint& a, const HyperboloidPoint& b);

/// B(X, Y) - 1 with the same evaluation and clamping as lorentz_inner,
/// without the absolute rounding of adding 1.
double lorentz_excess(const HyperboloidPoint& a, const HyperboloidPoint& b);

/// The literal x0 y0 - sum x_i y_i, unchecked. Loses ~|x0 y0| * eps of
/// absolute accuracy; kept as an independent cross-check.
double lorentz_inner_direct(double x0, std::span<const double> x, double y0,
                            std::span<const double> y);

/// Inverse hyperbolic cosine computed as log1p((z-1) + sqrt((z-1)(z+1))).
/// Throws DomainError for z < 1 (or NaN).
double acosh_stable(double z);

/// acosh(1 + h) for h >= 0, without forming 1 + h.
double acosh1p(double h);

/// Hyperbolic distance acosh(B(X, Y)); exactly 0 for identical points.
double distance(const HyperboloidPoint& a, const HyperboloidPoint& b);

/// |a - b|_2 accumulated left to right.
double euclidean_distance(std::span<const double> a, std::span<const double> b);

enum class KernelKind : std::uint8_t { HyperboloidDistance = 0, EuclideanDistance = 1 };
enum class PsdMode : std::uint8_t { None = 0, Clip = 1, Shift = 2 };

std::string_view to_string(KernelKind kind);
std::string_view to_string(PsdMode mode);
KernelKind parse_kernel_kind(std::string_view name);  // "hyperboloid" | "euclidean"
PsdMode parse_psd_mode(std::string_view name);        // "clip" | "shift" | "none"

struct KernelMatrix {
    KernelKind kind = KernelKind::HyperboloidDistance;
    PsdMode adjustment = PsdMode::None;  // None until psd_adjust has run
    double diag_shift = 0.0;
    RowMatrix data;

    std::size_t size() const noexcept { return static_cast<std::size_t>(data.rows()); }

    /// Low nibble: base kind. High nibble: adjustment.
    std::uint8_t kind_code() const noexcept {
        return static_cast<std::uint8_t>(static_cast<unsigned>(kind) |
                                         (static_cast<unsigned>(adjustment) << 4));
    }
};

struct KernelOptions {
    KernelKind kind = KernelKind::HyperboloidDistance;
    double lift_scale = 1.0;  // spectra are multiplied by this before lifting
    unsigned threads = 1;
};

/// Pairwise distance matrix over the rows of `spectra`. Only cells with
/// j > i are computed; the lower triangle is an exact mirror and the
/// diagonal is zero. Output is bit-identical for any thread count.
KernelMatrix kernel_matrix(const RowMatrix& spectra, const KernelOptions& options);

/// Smallest eigenvalue of a symmetric matrix. Throws NumericalError if the
/// eigensolver fails.
double min_eigenvalue(const RowMatrix& symmetric);

/// Shift: adds (|lambda_min| + epsilon) to the diagonal when lambda_min < 0;
/// epsilon defaults to 1e-9 * max(1, |lambda_min|). Off-diagonal entries are
/// untouched. Clip: data unchanged; negative eigenvalues are discarded later
/// by kernel PCA.
KernelMatrix psd_adjust(KernelMatrix kernel, PsdMode mode,
                        std::optional<double> epsilon = std::nullopt);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_HYPERBOLOID_HPP
