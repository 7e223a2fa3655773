#include "lorentzseq/kernel_pca.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/Eigenvalues>

#include "lorentzseq/error.hpp"

namespace lorentzseq {

Eigen::MatrixXd center_kernel(const Eigen::MatrixXd& kernel) {
    const Eigen::Index n = kernel.rows();
    if (n == 0) throw Error(ErrorCode::EmptyMatrix, "cannot center an empty kernel");
    if (kernel.cols() != n) throw Error(ErrorCode::DimensionMismatch, "kernel is not square");

    const double inv_n = 1.0 / static_cast<double>(n);
    Eigen::VectorXd row_mean = kernel.rowwise().sum() * inv_n;
    Eigen::VectorXd col_mean = kernel.colwise().sum().transpose() * inv_n;
    const double grand_mean = row_mean.sum() * inv_n;

    Eigen::MatrixXd centered(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            centered(i, j) = kernel(i, j) - row_mean(i) - col_mean(j) + grand_mean;
        }
    }
    return centered;
}

EigenDecomposition eigendecompose_symmetric(const Eigen::MatrixXd& a) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
    EigenDecomposition out;
    if (n == 0) return out;

    const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(ErrorCode::InvalidArgument, "matrix is not symmetric");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::NumericalError, "symmetric eigensolver did not converge");
    }
    // Eigen returns ascending order.
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();

    for (Eigen::Index j = 0; j < n; ++j) {
        auto v = out.vectors.col(j);
        Eigen::Index pivot = 0;
        for (Eigen::Index i = 1; i < n; ++i) {
            if (std::abs(v(i)) > std::abs(v(pivot))) pivot = i;
        }
        if (v(pivot) < 0.0) v = -v;
    }
    return out;
}

std::string_view to_string(KpcaTransform transform) {
    return transform == KpcaTransform::Raw ? "raw" : "mds";
}

KpcaTransform parse_kpca_transform(std::string_view name) {
    if (name == "raw") return KpcaTransform::Raw;
    if (name == "mds") return KpcaTransform::Mds;
    throw Error(ErrorCode::InvalidArgument, "unknown kernel PCA transform '" + std::string(name) + "'");
}

Embedding project(const KernelMatrix& kernel, const KpcaOptions& options) {
    const std::size_t n = kernel.size();
    if (options.components < 1 || options.components > n) {
        throw Error(ErrorCode::InvalidComponents,
                    "requested " + std::to_string(options.components) + " components for " +
                        std::to_string(n) + " samples");
    }

    Eigen::MatrixXd k = kernel.data;
    if (options.transform == KpcaTransform::Mds) k = -0.5 * k.cwiseProduct(k);
    const EigenDecomposition eig = eigendecompose_symmetric(center_kernel(k));

    Embedding embedding;
    embedding.transform = options.transform;
    embedding.all_eigenvalues.assign(eig.values.data(), eig.values.data() + eig.values.size());
    const double radius = eig.values.cwiseAbs().maxCoeff();
    embedding.tolerance = kRetainTolerance * radius;

    std::size_t positive = 0;
    for (double lambda : embedding.all_eigenvalues) {
        if (lambda > embedding.tolerance) ++positive;
        if (lambda < -embedding.tolerance) ++embedding.dropped_negative;
    }
    const std::size_t m = std::min(options.components, positive);
    embedding.degenerate = (m == 0);

    embedding.coords.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) {
        const double lambda = eig.values(static_cast<Eigen::Index>(j));
        embedding.eigenvalues.push_back(lambda);
        embedding.coords.col(static_cast<Eigen::Index>(j)) =
            std::sqrt(lambda) * eig.vectors.col(static_cast<Eigen::Index>(j));
    }
    return embedding;
}

void write_embedding_tsv(std::ostream& out, const Embedding& embedding,
                         const std::vector<std::string>& ids) {
    if (ids.size() != embedding.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "id count does not match embedding rows");
    }
    out << "id";
    for (std::size_t j = 0; j < embedding.components(); ++j) out << "\tc" << (j + 1);
    out << '\n';
    char buf[32];
    for (Eigen::Index i = 0; i < embedding.coords.rows(); ++i) {
        out << ids[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < embedding.coords.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", embedding.coords(i, j));
            out << '\t' << buf;
        }
        out << '\n';
    }
}

void write_eigenvalues_csv(std::ostream& out, const Embedding& embedding) {
    out << "component,eigenvalue,retained\n";
    char buf[32];
    for (std::size_t j = 0; j < embedding.all_eigenvalues.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", embedding.all_eigenvalues[j]);
        out << (j + 1) << ',' << buf << ',' << (j < embedding.components() ? 1 : 0) << '\n';
    }
}

}  // namespace lorentzseq
