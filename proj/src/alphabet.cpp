#include "lorentzseq/alphabet.hpp"

#include <cctype>

#include "lorentzseq/error.hpp"

namespace lorentzseq {

Alphabet::Alphabet(std::string_view symbols) {
    index_.fill(-1);
    for (char raw : symbols) {
        const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(raw)));
        if (std::isspace(static_cast<unsigned char>(c)) || c == '>' || c == ',') {
            throw Error(ErrorCode::InvalidAlphabet,
                        std::string("symbol not allowed in an alphabet: '") + raw + "'");
        }
        if (contains(c)) {
            throw Error(ErrorCode::InvalidAlphabet, std::string("duplicate symbol '") + c + "'");
        }
        index_[static_cast<unsigned char>(c)] = static_cast<std::int16_t>(symbols_.size());
        symbols_.push_back(c);
    }
    if (symbols_.size() < 2) {
        throw Error(ErrorCode::InvalidAlphabet, "an alphabet needs at least two symbols");
    }
}

Alphabet Alphabet::dna() { return Alphabet("ACGT"); }

Alphabet Alphabet::protein() { return Alphabet("ACDEFGHIKLMNPQRSTVWY"); }

Alphabet Alphabet::parse(std::string_view spec) {
    if (spec == "dna") return dna();
    if (spec == "protein") return protein();
    constexpr std::string_view prefix = "custom:";
    if (spec.substr(0, prefix.size()) == prefix) return Alphabet(spec.substr(prefix.size()));
    throw Error(ErrorCode::InvalidAlphabet,
                "expected dna, protein or custom:<chars>, got '" + std::string(spec) + "'");
}

std::string Alphabet::name() const {
    if (symbols_ == "ACGT") return "dna";
    if (symbols_ == "ACDEFGHIKLMNPQRSTVWY") return "protein";
    return "custom:" + symbols_;
}

}  // namespace lorentzseq
