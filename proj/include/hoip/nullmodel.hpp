#ifndef HOIP_NULLMODEL_HPP
#define HOIP_NULLMODEL_HPP

#include <cstdint>
#include <string>

#include "hoip/hypergraph.hpp"

namespace hoip {

enum class RandomizeMode {
    ShuffleTimes,  // permute unit labels across hyperedges; node sets and
                   // per-unit edge counts preserved
    ShuffleNodes,  // one global node relabeling; sizes and structure preserved
                   // up to isomorphism
};

RandomizeMode parse_randomize_mode(const std::string& name);
std::string to_string(RandomizeMode mode);

// Seed-deterministic randomized reference hypergraph.
TemporalHypergraph randomize(const TemporalHypergraph& h, RandomizeMode mode,
                             std::uint64_t seed);

}  // namespace hoip

#endif
