#ifndef LORENTZSEQ_KERNEL_IO_HPP
#define LORENTZSEQ_KERNEL_IO_HPP

#include <iosfwd>

#include "lorentzseq/hyperboloid.hpp"

namespace lorentzseq {

/// "HKM1", u64 LE n, u8 kind code, f64 LE diag_shift, n*n f64 LE row-major.
void write_kernel_binary(std::ostream& out, const KernelMatrix& kernel);
KernelMatrix read_kernel_binary(std::istream& in);

/// Comma-separated rows, 17 significant digits, no header.
void write_kernel_csv(std::ostream& out, const KernelMatrix& kernel);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_KERNEL_IO_HPP
