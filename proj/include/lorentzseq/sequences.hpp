#ifndef LORENTZSEQ_SEQUENCES_HPP
#define LORENTZSEQ_SEQUENCES_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lorentzseq/alphabet.hpp"

namespace lorentzseq {

struct SequenceRecord {
    std::string id;
    std::string residues;
    std::optional<std::string> label;
};

/// How residues outside the alphabet are treated.
enum class AmbiguityPolicy {
    Reject,     // validation fails on the first such residue
    MaskKmers,  // residue is kept; spectra skip every k-mer that covers it
};

std::vector<SequenceRecord> parse_fasta(std::istream& in);
std::vector<SequenceRecord> parse_fasta(std::string_view text);

/// Writes records as FASTA with sequence lines wrapped at `width` columns.
void write_fasta(std::ostream& out, const std::vector<SequenceRecord>& records,
                 std::size_t width = 60);

using LabelMap = std::map<std::string, std::string>;

/// Reads `id,label` rows (tab also accepted as delimiter). A leading
/// "id,label" header row is skipped; blank lines are ignored.
LabelMap load_labels(std::istream& in);
LabelMap load_labels(std::string_view text);

/// Attaches labels and checks residues. Under Reject, the first residue not
/// in the alphabet raises InvalidResidue with its 0-based position.
std::vector<SequenceRecord> validate_records(const std::vector<SequenceRecord>& records,
                                             const LabelMap& labels, const Alphabet& alphabet,
                                             AmbiguityPolicy policy);

/// Per-dataset summary, the columns of a dataset statistics table.
struct DatasetStats {
    std::size_t sequences = 0;
    std::size_t classes = 0;
    std::size_t min_length = 0;
    std::size_t max_length = 0;
    double mean_length = 0.0;
    std::size_t shorter_than_k = 0;  // records whose spectrum is all-zero
    std::size_t ambiguous_residues = 0;
};

DatasetStats dataset_stats(const std::vector<SequenceRecord>& records, std::size_t k,
                           const Alphabet& alphabet);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_SEQUENCES_HPP
