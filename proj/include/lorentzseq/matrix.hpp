#ifndef LORENTZSEQ_MATRIX_HPP
#define LORENTZSEQ_MATRIX_HPP

#include <Eigen/Core>

namespace lorentzseq {

/// Dense row-major storage; rows are samples.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace lorentzseq

#endif  // LORENTZSEQ_MATRIX_HPP
