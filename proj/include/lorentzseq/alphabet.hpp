#ifndef LORENTZSEQ_ALPHABET_HPP
#define LORENTZSEQ_ALPHABET_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace lorentzseq {

/// Ordered residue alphabet with a constant-time character -> rank lookup.
class Alphabet {
public:
    /// Throws InvalidAlphabet on duplicate symbols or fewer than two symbols.
    /// Symbols are uppercased.
    explicit Alphabet(std::string_view symbols);

    static Alphabet dna();      // ACGT
    static Alphabet protein();  // the 20 standard amino acids

    /// Parses "dna", "protein" or "custom:<chars>".
    static Alphabet parse(std::string_view spec);

    std::size_t size() const noexcept { return symbols_.size(); }
    const std::string& symbols() const noexcept { return symbols_; }
    char symbol(std::size_t rank) const { return symbols_.at(rank); }

    /// Rank of c in [0, size()), or -1 if c is not a symbol.
    int rank(char c) const noexcept { return index_[static_cast<unsigned char>(c)]; }
    bool contains(char c) const noexcept { return rank(c) >= 0; }

    /// Name as accepted by parse().
    std::string name() const;

private:
    std::string symbols_;
    std::array<std::int16_t, 256> index_{};
};

}  // namespace lorentzseq

#endif  // LORENTZSEQ_ALPHABET_HPP
