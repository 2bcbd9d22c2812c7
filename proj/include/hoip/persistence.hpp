#ifndef HOIP_PERSISTENCE_HPP
#define HOIP_PERSISTENCE_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hoip/hypergraph.hpp"

namespace hoip {

inline constexpr int kMinHoiSize = 2;
inline constexpr int kMaxHoiSize = 4;

// A higher-order interaction: a node subset of size 2..4 plus the unit of its
// first appearance. Unused slots of `nodes` are -1.
struct Hoi {
    std::array<NodeId, 4> nodes{-1, -1, -1, -1};
    std::uint8_t k = 0;
    Unit t0 = 0;

    std::span<const NodeId> view() const { return {nodes.data(), static_cast<std::size_t>(k)}; }
    bool operator<(const Hoi& other) const { return nodes < other.nodes; }
    bool operator==(const Hoi& other) const { return nodes == other.nodes; }
};

// All distinct size-k subsets of hyperedges, each with its earliest containing
// unit, sorted by node tuple. With `cap`, a uniform seeded sample of the fully
// resolved HOI set is returned (still sorted). Output does not depend on
// n_threads.
std::vector<Hoi> enumerate_hois(const TemporalHypergraph& h, int k,
                                std::optional<std::size_t> cap = std::nullopt,
                                std::uint64_t seed = 0, int n_threads = 1);

// P(S, [lo, hi]): number of units in the range at which S is contained in at
// least one hyperedge. Multiplicity within a unit does not double-count.
int persistence(const TemporalHypergraph& h, std::span<const NodeId> s, Unit lo, Unit hi);

// Feature/persistence windows for a HOI first seen at t0:
//   features   [t0+1, t0+Ts]   ([0, t0+Ts] with include_past; [t0, t0+Ts] with include_t0)
//   persistence[t0+Ts+1, t0+Ts+Tp]
struct ProtocolWindows {
    Unit feature_lo = 0;
    Unit feature_hi = 0;
    Unit persist_lo = 0;
    Unit persist_hi = 0;
    bool include_past = false;
};

// nullopt when the persistence window would overflow the data range
// (t0 + Ts + Tp >= num_units); such HOIs are excluded, never truncated.
std::optional<ProtocolWindows> protocol_windows(Unit t0, int ts, int tp, bool include_past,
                                                Unit num_units, bool include_t0 = false);

// Mean persistence of the size-k HOIs containing v, each measured over its own
// persistence window; window-excluded HOIs are skipped. nullopt when no HOI of
// v survives exclusion.
std::optional<double> k_node_persistence(const TemporalHypergraph& h, NodeId v, int k, int ts,
                                         int tp);

// First unit at which v appears in a hyperedge of size >= k (the anchor of the
// node-level feature window). nullopt if v never does.
std::optional<Unit> first_hoi_unit(const TemporalHypergraph& h, NodeId v, int k);

// Distribution-analysis variant: persistence of every size-k HOI over the
// fixed-length window [t0+1, t0+window_w]; overflowing HOIs excluded.
struct GlobalPersistence {
    std::map<int, std::int64_t> counts;  // persistence >= 1
    std::int64_t zero_count = 0;
    std::int64_t n_hois = 0;  // included HOIs
    double avg_persistence = 0.0;
};

GlobalPersistence global_persistence(const TemporalHypergraph& h, int k, int window_w,
                                     std::optional<std::size_t> cap = std::nullopt,
                                     std::uint64_t seed = 0, int n_threads = 1);

}  // namespace hoip

#endif
