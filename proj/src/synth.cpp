#include "lorentzseq/synth.hpp"

#include <cstdio>

#include "lorentzseq/error.hpp"
#include "lorentzseq/random.hpp"

namespace lorentzseq {

namespace {

// Per-site substitution to a different symbol with probability mu.
std::string mutate(const std::string& parent, double mu, const Alphabet& alphabet, RandomStream rng) {
    std::string child = parent;
    const std::uint64_t sigma = alphabet.size();
    for (char& c : child) {
        if (rng.uniform() < mu) {
            const auto current = static_cast<std::uint64_t>(alphabet.rank(c));
            const std::uint64_t shift = 1 + rng.below(sigma - 1);
            c = alphabet.symbol((current + shift) % sigma);
        }
    }
    return child;
}

}  // namespace

std::vector<SequenceRecord> generate_mutation_tree(const SynthConfig& config, const Alphabet& alphabet) {
    if (config.sequences == 0 || config.length == 0 || config.clades == 0 || config.subclades == 0) {
        throw Error(ErrorCode::InvalidArgument, "sequence count, length, clades and subclades must be positive");
    }
    for (double mu : {config.mu_within, config.mu_between}) {
        if (!(mu >= 0.0 && mu <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "substitution probabilities must lie in [0, 1]");
        }
    }

    // Stream ids: 0 root, 1 clades, 2 subclades, 3 leaves; split by node index.
    const RandomStream base(config.seed);
    RandomStream root_rng = base.split(0);
    std::string root(config.length, ' ');
    for (char& c : root) c = alphabet.symbol(root_rng.below(alphabet.size()));

    std::vector<std::string> clade_nodes;
    for (std::size_t c = 0; c < config.clades; ++c) {
        clade_nodes.push_back(mutate(root, config.mu_between, alphabet, base.split(1).split(c)));
    }
    std::vector<std::string> sub_nodes;
    for (std::size_t c = 0; c < config.clades; ++c) {
        for (std::size_t s = 0; s < config.subclades; ++s) {
            sub_nodes.push_back(mutate(clade_nodes[c], config.mu_within, alphabet,
                                       base.split(2).split(c * config.subclades + s)));
        }
    }

    std::vector<SequenceRecord> records;
    records.reserve(config.sequences);
    char id[32];
    for (std::size_t i = 0; i < config.sequences; ++i) {
        const std::size_t clade = i % config.clades;
        const std::size_t sub = (i / config.clades) % config.subclades;
        std::snprintf(id, sizeof id, "seq%04zu", i + 1);
        records.push_back({id,
                           mutate(sub_nodes[clade * config.subclades + sub], config.mu_within, alphabet,
                                  base.split(3).split(i)),
                           "clade" + std::to_string(clade + 1)});
    }
    return records;
}

}  // namespace lorentzseq
