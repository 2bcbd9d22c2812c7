#include "hoip/nullmodel.hpp"

#include <algorithm>
#include <numeric>

#include "hoip/error.hpp"
#include "hoip/rng.hpp"

namespace hoip {

// Friend of TemporalHypergraph: rebuilds a sibling hypergraph around an
// edited edge list while keeping the id space and time metadata.
class NullModel {
public:
    static TemporalHypergraph rebuild(const TemporalHypergraph& base,
                                      std::vector<Hyperedge> edges,
                                      std::vector<std::int64_t> original_ids) {
        TemporalHypergraph out;
        out.num_nodes_ = base.num_nodes_;
        out.unit_width_ = base.unit_width_;
        out.t_min_ = base.t_min_;
        out.original_ids_ = std::move(original_ids);
        out.adopt(std::move(edges));
        return out;
    }
};

RandomizeMode parse_randomize_mode(const std::string& name) {
    if (name == "shuffle-times") return RandomizeMode::ShuffleTimes;
    if (name == "shuffle-nodes") return RandomizeMode::ShuffleNodes;
    throw ConfigError("unknown randomization mode '" + name +
                      "' (expected shuffle-times or shuffle-nodes)");
}

std::string to_string(RandomizeMode mode) {
    return mode == RandomizeMode::ShuffleTimes ? "shuffle-times" : "shuffle-nodes";
}

TemporalHypergraph randomize(const TemporalHypergraph& h, RandomizeMode mode,
                             std::uint64_t seed) {
    std::vector<Hyperedge> edges = h.edges();
    Rng rng(seed);
    if (mode == RandomizeMode::ShuffleTimes) {
        // Permute the multiset of unit labels over edges.
        std::vector<Unit> units;
        units.reserve(edges.size());
        for (const Hyperedge& e : edges) units.push_back(e.unit);
        rng.shuffle(units);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            edges[i].unit = units[i];
            edges[i].raw_ts = h.t_min() + static_cast<std::int64_t>(units[i]) * h.unit_width();
        }
        return NullModel::rebuild(h, std::move(edges), h.original_ids());
    }
    // ShuffleNodes: one global relabeling permutation.
    std::vector<NodeId> perm(static_cast<std::size_t>(h.num_nodes()));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    for (Hyperedge& e : edges) {
        for (NodeId& v : e.nodes) v = perm[static_cast<std::size_t>(v)];
        std::sort(e.nodes.begin(), e.nodes.end());
    }
    std::vector<std::int64_t> orig;
    if (!h.original_ids().empty()) {
        orig.resize(static_cast<std::size_t>(h.num_nodes()));
        for (NodeId v = 0; v < h.num_nodes(); ++v)
            orig[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] =
                h.original_ids()[static_cast<std::size_t>(v)];
    }
    return NullModel::rebuild(h, std::move(edges), std::move(orig));
}

}  // namespace hoip
