#ifndef LORENTZSEQ_BINARY_IO_HPP
#define LORENTZSEQ_BINARY_IO_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "lorentzseq/error.hpp"

namespace lorentzseq::detail {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

inline void write_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> bytes;
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(bytes.data(), bytes.size());
}

inline void write_u8(std::ostream& out, std::uint8_t v) { out.put(static_cast<char>(v)); }

inline void write_f64(std::ostream& out, double v) { write_u64(out, std::bit_cast<std::uint64_t>(v)); }

inline void read_exact(std::istream& in, char* dst, std::size_t count, const char* what) {
    in.read(dst, static_cast<std::streamsize>(count));
    if (static_cast<std::size_t>(in.gcount()) != count) {
        throw Error(ErrorCode::IoError, std::string("truncated input while reading ") + what);
    }
}

inline std::uint64_t read_u64(std::istream& in, const char* what) {
    std::array<unsigned char, 8> bytes;
    read_exact(in, reinterpret_cast<char*>(bytes.data()), bytes.size(), what);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
    return v;
}

inline std::uint8_t read_u8(std::istream& in, const char* what) {
    char c;
    read_exact(in, &c, 1, what);
    return static_cast<std::uint8_t>(c);
}

inline double read_f64(std::istream& in, const char* what) {
    return std::bit_cast<double>(read_u64(in, what));
}

inline void expect_magic(std::istream& in, const char (&magic)[5]) {
    char got[4];
    read_exact(in, got, 4, "magic");
    if (std::memcmp(got, magic, 4) != 0) {
        throw Error(ErrorCode::IoError, std::string("bad magic, expected ") + magic);
    }
}

}  // namespace lorentzseq::detail

#endif  // LORENTZSEQ_BINARY_IO_HPP
