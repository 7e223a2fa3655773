#ifndef LORENTZSEQ_SYNTH_HPP
#define LORENTZSEQ_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lorentzseq/alphabet.hpp"
#include "lorentzseq/sequences.hpp"

namespace lorentzseq {

/// Three-level mutation tree: a random root sequence, one node per clade
/// (substitution rate mu_between from the root), `subclades` nodes per clade
/// and finally the leaves (each at rate mu_within from its parent). Leaves
/// are labelled by clade.
struct SynthConfig {
    std::size_t sequences = 400;
    std::size_t length = 300;
    std::size_t clades = 4;
    std::size_t subclades = 4;
    double mu_within = 0.02;
    double mu_between = 0.15;
    std::uint64_t seed = 1;
};

/// Leaf i belongs to clade i % clades and subclade (i / clades) % subclades.
/// Ids are "seq0001", ...; labels are "clade1", ...
std::vector<SequenceRecord> generate_mutation_tree(const SynthConfig& config, const Alphabet& alphabet);

}  // namespace lorentzseq

#endif  // LORENTZSEQ_SYNTH_HPP
