#include "lorentzseq/spectrum.hpp"

#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>

#include "binary_io.hpp"
#include "lorentzseq/error.hpp"
#include "lorentzseq/parallel.hpp"

namespace lorentzseq {

namespace {

/// Calls emit(index) for every window of length k made only of alphabet
/// symbols. Windows that cover a non-alphabet residue are skipped under
/// MaskKmers and raise InvalidKmer under Reject. Returns the window count.
template <typename Emit>
std::size_t for_each_kmer(const SequenceRecord& record, const Alphabet& alphabet,
                          const SpectrumOptions& options, std::uint64_t dim, Emit&& emit) {
    const std::size_t k = options.k;
    const std::uint64_t sigma = alphabet.size();
    std::uint64_t index = 0;
    std::size_t run = 0;  // consecutive valid residues ending at pos
    std::size_t windows = 0;
    const std::string& s = record.residues;
    for (std::size_t pos = 0; pos < s.size(); ++pos) {
        const int r = alphabet.rank(s[pos]);
        if (r < 0) {
            if (options.policy == AmbiguityPolicy::Reject) {
                throw Error(ErrorCode::InvalidKmer, "record '" + record.id + "' position " +
                                                        std::to_string(pos) + ": residue '" + s[pos] +
                                                        "' not in alphabet");
            }
            run = 0;
            index = 0;
            continue;
        }
        index = (index * sigma + static_cast<std::uint64_t>(r)) % dim;
        if (++run >= k) {
            emit(index);
            ++windows;
        }
    }
    return windows;
}

void check_options(const SpectrumOptions& options) {
    if (options.k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
}

}  // namespace

std::size_t spectrum_dimension(std::size_t alphabet_size, std::size_t k) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    std::size_t dim = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (dim > std::numeric_limits<std::size_t>::max() / alphabet_size) {
            throw Error(ErrorCode::InvalidArgument, "alphabet size ^ k overflows");
        }
        dim *= alphabet_size;
    }
    return dim;
}

std::uint64_t kmer_index(std::string_view kmer, const Alphabet& alphabet) {
    std::uint64_t index = 0;
    for (std::size_t j = 0; j < kmer.size(); ++j) {
        const int r = alphabet.rank(kmer[j]);
        if (r < 0) {
            throw Error(ErrorCode::InvalidKmer, "k-mer '" + std::string(kmer) + "' position " +
                                                    std::to_string(j) + " not in alphabet");
        }
        index = index * alphabet.size() + static_cast<std::uint64_t>(r);
    }
    return index;
}

std::string kmer_string(std::uint64_t index, std::size_t k, const Alphabet& alphabet) {
    std::string kmer(k, alphabet.symbol(0));
    for (std::size_t j = k; j-- > 0;) {
        kmer[j] = alphabet.symbol(index % alphabet.size());
        index /= alphabet.size();
    }
    return kmer;
}

KmerSpectrum compute_spectrum(const SequenceRecord& record, const Alphabet& alphabet,
                              const SpectrumOptions& options) {
    check_options(options);
    KmerSpectrum spectrum;
    spectrum.k = options.k;
    spectrum.counts.assign(spectrum_dimension(alphabet.size(), options.k), 0.0);
    const std::uint64_t dim = spectrum.counts.size();
    spectrum.valid_windows = for_each_kmer(record, alphabet, options, dim,
                                           [&](std::uint64_t i) { spectrum.counts[i] += 1.0; });
    if (options.normalize && spectrum.valid_windows > 0) {
        const double total = static_cast<double>(spectrum.valid_windows);
        for (double& c : spectrum.counts) c /= total;
    }
    spectrum.normalized = options.normalize;
    return spectrum;
}

SpectrumMatrix spectrum_matrix(const std::vector<SequenceRecord>& records, const Alphabet& alphabet,
                               const SpectrumOptions& options, unsigned threads) {
    check_options(options);
    const std::size_t dim = spectrum_dimension(alphabet.size(), options.k);
    SpectrumMatrix out;
    out.k = options.k;
    out.normalized = options.normalize;
    out.values = RowMatrix::Zero(static_cast<Eigen::Index>(records.size()),
                                 static_cast<Eigen::Index>(dim));
    out.valid_windows.assign(records.size(), 0);

    // Counts go straight into the output row, so no per-row scratch vector is
    // needed even when |alphabet|^k is large.
    parallel_for(records.size(), threads, [&](std::size_t i) {
        double* row = out.values.row(static_cast<Eigen::Index>(i)).data();
        const std::size_t windows =
            for_each_kmer(records[i], alphabet, options, dim, [&](std::uint64_t j) { row[j] += 1.0; });
        if (options.normalize && windows > 0) {
            const double total = static_cast<double>(windows);
            for (std::size_t j = 0; j < dim; ++j) row[j] /= total;
        }
        out.valid_windows[i] = windows;
    });
    return out;
}

void write_spectrum_tsv(std::ostream& out, const SpectrumMatrix& spectra,
                        const std::vector<std::string>& ids, const Alphabet& alphabet) {
    if (ids.size() != static_cast<std::size_t>(spectra.values.rows())) {
        throw Error(ErrorCode::DimensionMismatch, "id count does not match spectrum rows");
    }
    out << "id";
    for (Eigen::Index j = 0; j < spectra.values.cols(); ++j) {
        out << '\t' << kmer_string(static_cast<std::uint64_t>(j), spectra.k, alphabet);
    }
    out << '\n';
    char buf[32];
    for (Eigen::Index i = 0; i < spectra.values.rows(); ++i) {
        out << ids[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < spectra.values.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", spectra.values(i, j));
            out << '\t' << buf;
        }
        out << '\n';
    }
}

void write_spectrum_binary(std::ostream& out, const SpectrumMatrix& spectra) {
    out.write("HSM1", 4);
    detail::write_u64(out, static_cast<std::uint64_t>(spectra.values.rows()));
    detail::write_u64(out, static_cast<std::uint64_t>(spectra.values.cols()));
    detail::write_u8(out, static_cast<std::uint8_t>(spectra.k));
    detail::write_u8(out, spectra.normalized ? 1 : 0);
    const double* data = spectra.values.data();
    for (Eigen::Index i = 0; i < spectra.values.size(); ++i) detail::write_f64(out, data[i]);
    if (!out) throw Error(ErrorCode::IoError, "failed writing spectrum matrix");
}

SpectrumMatrix read_spectrum_binary(std::istream& in) {
    detail::expect_magic(in, "HSM1");
    const auto rows = detail::read_u64(in, "row count");
    const auto cols = detail::read_u64(in, "column count");
    SpectrumMatrix spectra;
    spectra.k = detail::read_u8(in, "k");
    spectra.normalized = detail::read_u8(in, "normalized flag") != 0;
    spectra.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    double* data = spectra.values.data();
    for (Eigen::Index i = 0; i < spectra.values.size(); ++i) data[i] = detail::read_f64(in, "values");
    return spectra;
}

}  // namespace lorentzseq
