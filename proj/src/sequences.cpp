#include "lorentzseq/sequences.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "lorentzseq/error.hpp"

namespace lorentzseq {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

}  // namespace

std::vector<SequenceRecord> parse_fasta(std::istream& in) {
    std::vector<SequenceRecord> records;
    std::string line;
    std::size_t line_no = 0;
    std::size_t header_line = 0;
    bool any_content = false;

    auto close_record = [&] {
        if (!records.empty() && records.back().residues.empty()) {
            throw Error(ErrorCode::MalformedFasta,
                        "record '" + records.back().id + "' (line " + std::to_string(header_line) +
                            ") has no sequence lines");
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) continue;
        any_content = true;

        if (line.front() == '>') {
            close_record();
            std::string_view header = trim(std::string_view(line).substr(1));
            const auto end = std::find_if(header.begin(), header.end(), [](char c) {
                return std::isspace(static_cast<unsigned char>(c));
            });
            std::string id(header.begin(), end);
            if (id.empty()) {
                throw Error(ErrorCode::MalformedFasta,
                            "empty record id at line " + std::to_string(line_no));
            }
            records.push_back({std::move(id), {}, std::nullopt});
            header_line = line_no;
            continue;
        }

        if (records.empty()) {
            throw Error(ErrorCode::MalformedFasta,
                        "sequence data before the first header at line " + std::to_string(line_no));
        }
        std::string& residues = records.back().residues;
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            residues.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
    }
    if (in.bad()) throw Error(ErrorCode::IoError, "read failure while parsing FASTA");
    if (!any_content) throw Error(ErrorCode::EmptyInput, "FASTA input is empty");
    close_record();
    return records;
}

std::vector<SequenceRecord> parse_fasta(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_fasta(in);
}

void write_fasta(std::ostream& out, const std::vector<SequenceRecord>& records, std::size_t width) {
    if (width == 0) width = std::numeric_limits<std::size_t>::max();
    for (const auto& record : records) {
        out << '>' << record.id << '\n';
        for (std::size_t pos = 0; pos < record.residues.size(); pos += width) {
            out << std::string_view(record.residues).substr(pos, width) << '\n';
        }
    }
}

LabelMap load_labels(std::istream& in) {
    LabelMap labels;
    std::string line;
    std::size_t line_no = 0;
    bool first_row = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line)) continue;

        const char delimiter = line.find(',') != std::string::npos ? ',' : '\t';
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        for (;;) {
            const auto cut = rest.find(delimiter);
            fields.push_back(trim(rest.substr(0, cut)));
            if (cut == std::string_view::npos) break;
            rest.remove_prefix(cut + 1);
        }

        const bool header = first_row && fields.size() == 2 && fields[0] == "id" && fields[1] == "label";
        first_row = false;
        if (header) continue;

        if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
            throw Error(ErrorCode::MalformedRow,
                        "line " + std::to_string(line_no) + ": expected two fields 'id,label'");
        }
        const auto [it, inserted] = labels.emplace(std::string(fields[0]), std::string(fields[1]));
        if (!inserted) {
            throw Error(ErrorCode::DuplicateLabel,
                        "id '" + it->first + "' labelled twice (line " + std::to_string(line_no) + ")");
        }
    }
    if (in.bad()) throw Error(ErrorCode::IoError, "read failure while parsing labels");
    return labels;
}

LabelMap load_labels(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_labels(in);
}

std::vector<SequenceRecord> validate_records(const std::vector<SequenceRecord>& records,
                                             const LabelMap& labels, const Alphabet& alphabet,
                                             AmbiguityPolicy policy) {
    std::vector<SequenceRecord> out;
    out.reserve(records.size());
    for (const auto& record : records) {
        if (record.id.empty()) throw Error(ErrorCode::MalformedFasta, "record with empty id");
        if (record.residues.empty()) {
            throw Error(ErrorCode::MalformedFasta, "record '" + record.id + "' has no residues");
        }
        const auto it = labels.find(record.id);
        if (it == labels.end()) {
            throw Error(ErrorCode::MissingLabel, "no label for record '" + record.id + "'");
        }
        if (policy == AmbiguityPolicy::Reject) {
            for (std::size_t pos = 0; pos < record.residues.size(); ++pos) {
                if (!alphabet.contains(record.residues[pos])) {
                    throw Error(ErrorCode::InvalidResidue,
                                "record '" + record.id + "' position " + std::to_string(pos) +
                                    ": residue '" + record.residues[pos] + "' not in alphabet " +
                                    alphabet.name());
                }
            }
        }
        SequenceRecord labelled = record;
        labelled.label = it->second;
        out.push_back(std::move(labelled));
    }
    return out;
}

DatasetStats dataset_stats(const std::vector<SequenceRecord>& records, std::size_t k,
                           const Alphabet& alphabet) {
    DatasetStats stats;
    stats.sequences = records.size();
    if (records.empty()) return stats;

    std::set<std::string> classes;
    double total = 0.0;
    stats.min_length = std::numeric_limits<std::size_t>::max();
    for (const auto& record : records) {
        const std::size_t len = record.residues.size();
        stats.min_length = std::min(stats.min_length, len);
        stats.max_length = std::max(stats.max_length, len);
        total += static_cast<double>(len);
        if (len < k) ++stats.shorter_than_k;
        for (char c : record.residues) {
            if (!alphabet.contains(c)) ++stats.ambiguous_residues;
        }
        if (record.label) classes.insert(*record.label);
    }
    stats.classes = classes.size();
    stats.mean_length = total / static_cast<double>(records.size());
    return stats;
}

}  // namespace lorentzseq
