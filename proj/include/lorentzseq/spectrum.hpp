#ifndef LORENTZSEQ_SPECTRUM_HPP
#define LORENTZSEQ_SPECTRUM_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lorentzseq/alphabet.hpp"
#include "lorentzseq/matrix.hpp"
#include "lorentzseq/sequences.hpp"

namespace lorentzseq {

struct SpectrumOptions {
    std::size_t k = 3;
    AmbiguityPolicy policy = AmbiguityPolicy::MaskKmers;
    bool normalize = true;  // L1 frequencies; false keeps raw counts
};

struct KmerSpectrum {
    std::size_t k = 0;
    std::vector<double> counts;  // length |alphabet|^k
    bool normalized = false;
    std::size_t valid_windows = 0;

    std::size_t dim() const noexcept { return counts.size(); }
};

/// |alphabet|^k. Throws InvalidArgument when k == 0 or the result does not
/// fit in 64 bits.
std::size_t spectrum_dimension(std::size_t alphabet_size, std::size_t k);

/// Base-|alphabet| rank of a k-mer, most significant symbol first.
std::uint64_t kmer_index(std::string_view kmer, const Alphabet& alphabet);

/// Inverse of kmer_index.
std::string kmer_string(std::uint64_t index, std::size_t k, const Alphabet& alphabet);

KmerSpectrum compute_spectrum(const SequenceRecord& record, const Alphabet& alphabet,
                              const SpectrumOptions& options);

struct SpectrumMatrix {
    std::size_t k = 0;
    bool normalized = false;
    RowMatrix values;                        // n x |alphabet|^k
    std::vector<std::size_t> valid_windows;  // per row
};

/// Row i is the spectrum of records[i]. Rows are filled in parallel; each
/// row has a single writer, so the output does not depend on `threads`.
SpectrumMatrix spectrum_matrix(const std::vector<SequenceRecord>& records, const Alphabet& alphabet,
                               const SpectrumOptions& options, unsigned threads = 1);

/// TSV with header `id` followed by every k-mer string in index order.
void write_spectrum_tsv(std::ostream& out, const SpectrumMatrix& spectra,
                        const std::vector<std::string>& ids, const Alphabet& alphabet);

/// Binary layout (little-endian): "HSM1", u64 rows, u64 cols, u8 k,
/// u8 normalized, rows*cols f64 row-major.
void write_spectrum_binary(std::ostream& out, const SpectrumMatrix& spectra);
SpectrumMatrix read_spectrum_binary(std::istream& in);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_SPECTRUM_HPP
