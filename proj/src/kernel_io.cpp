#include "lorentzseq/kernel_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "binary_io.hpp"
#include "lorentzseq/error.hpp"

namespace lorentzseq {

void write_kernel_binary(std::ostream& out, const KernelMatrix& kernel) {
    out.write("HKM1", 4);
    detail::write_u64(out, kernel.size());
    detail::write_u8(out, kernel.kind_code());
    detail::write_f64(out, kernel.diag_shift);
    const double* data = kernel.data.data();
    for (Eigen::Index i = 0; i < kernel.data.size(); ++i) detail::write_f64(out, data[i]);
    if (!out) throw Error(ErrorCode::IoError, "failed writing kernel matrix");
}

KernelMatrix read_kernel_binary(std::istream& in) {
    detail::expect_magic(in, "HKM1");
    const std::uint64_t n = detail::read_u64(in, "matrix size");
    const std::uint8_t code = detail::read_u8(in, "kind code");
    const unsigned base = code & 0x0f;
    const unsigned adjustment = code >> 4;
    if (base > 1 || adjustment > 2) {
        throw Error(ErrorCode::IoError, "unknown kernel kind code " + std::to_string(code));
    }
    KernelMatrix kernel;
    kernel.kind = static_cast<KernelKind>(base);
    kernel.adjustment = static_cast<PsdMode>(adjustment);
    kernel.diag_shift = detail::read_f64(in, "diag shift");
    kernel.data.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    double* data = kernel.data.data();
    for (Eigen::Index i = 0; i < kernel.data.size(); ++i) data[i] = detail::read_f64(in, "matrix values");
    return kernel;
}

void write_kernel_csv(std::ostream& out, const KernelMatrix& kernel) {
    char buf[32];
    for (Eigen::Index i = 0; i < kernel.data.rows(); ++i) {
        for (Eigen::Index j = 0; j < kernel.data.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", kernel.data(i, j));
            if (j > 0) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace lorentzseq
