#ifndef LORENTZSEQ_KERNEL_PCA_HPP
#define LORENTZSEQ_KERNEL_PCA_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "lorentzseq/hyperboloid.hpp"

namespace lorentzseq {

/// Double centering: K - row means - column means + grand mean.
/// Throws EmptyMatrix for a 0 x 0 input.
Eigen::MatrixXd center_kernel(const Eigen::MatrixXd& kernel);

struct EigenDecomposition {
    Eigen::VectorXd values;   // descending
    Eigen::MatrixXd vectors;  // orthonormal columns, matching values
};

/// Full decomposition of a symmetric matrix. Each eigenvector is signed so
/// its largest-magnitude entry (first one on ties) is positive.
/// Throws InvalidArgument if the input is not symmetric to 1e-12 relative,
/// NumericalError if the solver does not converge.
EigenDecomposition eigendecompose_symmetric(const Eigen::MatrixXd& symmetric);

enum class KpcaTransform {
    Raw,  // the kernel matrix is used as given
    Mds,  // classical scaling: -1/2 (K o K) before centering
};

std::string_view to_string(KpcaTransform transform);
KpcaTransform parse_kpca_transform(std::string_view name);

struct KpcaOptions {
    std::size_t components = 100;
    KpcaTransform transform = KpcaTransform::Raw;
};

struct Embedding {
    Eigen::MatrixXd coords;          // n x m, column j = sqrt(lambda_j) v_j
    std::vector<double> eigenvalues;      // the m retained, descending, all > tol
    std::vector<double> all_eigenvalues;  // full spectrum of the centered matrix
    std::size_t dropped_negative = 0;     // eigenvalues below -tol
    double tolerance = 0.0;
    bool degenerate = false;  // no eigenvalue above tol; coords has 0 columns
    KpcaTransform transform = KpcaTransform::Raw;

    std::size_t rows() const noexcept { return static_cast<std::size_t>(coords.rows()); }
    std::size_t components() const noexcept { return eigenvalues.size(); }
};

/// Eigenvalues with |lambda| <= kRetainTolerance * max|lambda| count as zero.
inline constexpr double kRetainTolerance = 1e-10;

/// Kernel PCA scores of the (already PSD-adjusted) kernel. A degenerate
/// kernel is reported through Embedding::degenerate rather than thrown.
/// Throws InvalidComponents unless 1 <= components <= n.
Embedding project(const KernelMatrix& kernel, const KpcaOptions& options);

/// TSV: header `id c1 .. cm`, one row per sample.
void write_embedding_tsv(std::ostream& out, const Embedding& embedding,
                         const std::vector<std::string>& ids);

/// CSV `component,eigenvalue,retained` over the full centered spectrum.
void write_eigenvalues_csv(std::ostream& out, const Embedding& embedding);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_KERNEL_PCA_HPP
