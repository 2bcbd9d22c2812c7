#ifndef HOIP_HYPERGRAPH_HPP
#define HOIP_HYPERGRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace hoip {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using Unit = std::int32_t;

inline constexpr int kDefaultMaxEdgeSize = 25;

// One timestamped hyperedge. `nodes` is strictly increasing; `unit` is the
// discretized time bin floor((raw_ts - t_min) / unit_width).
struct Hyperedge {
    EdgeId id = -1;
    Unit unit = 0;
    std::int64_t raw_ts = 0;
    std::vector<NodeId> nodes;

    int size() const { return static_cast<int>(nodes.size()); }
};

struct LoadStats {
    std::int64_t simplices_read = 0;   // lines in the nverts file
    std::int64_t edges_kept = 0;       // after size filtering / collapsing
    std::int64_t nodes_raw = 0;        // distinct original ids seen anywhere
    std::int64_t nodes_kept = 0;       // distinct ids in retained edges
    std::int64_t raw_ts_min = 0;
    std::int64_t raw_ts_max = 0;
};

// Posting-list entry: edge id plus its unit and size packed alongside, so
// merge loops never chase the edge table. Lists are sorted by id.
struct Posting {
    EdgeId id = -1;
    std::uint32_t meta = 0;  // (unit << 8) | size

    Unit unit() const { return static_cast<Unit>(meta >> 8); }
    int size() const { return static_cast<int>(meta & 0xff); }
    bool operator<(const Posting& other) const { return id < other.id; }
};

// Immutable timestamped hypergraph with node -> edges and unit -> edges
// indexes. Node ids are dense 0..num_nodes-1. Construction is single-writer;
// afterwards every query is const and safe to share across threads.
class TemporalHypergraph {
public:
    TemporalHypergraph() = default;

    // Build from (unit, node set) pairs; node sets are sorted and de-duplicated,
    // edges that collapse below two nodes or exceed max_size are dropped.
    // Edge ids follow input order of the retained edges.
    static TemporalHypergraph from_unit_edges(std::vector<std::pair<Unit, std::vector<NodeId>>> raw,
                                              int num_nodes_hint = 0,
                                              int max_size = kDefaultMaxEdgeSize);

    const std::vector<Hyperedge>& edges() const { return edges_; }
    std::int64_t num_edges() const { return static_cast<std::int64_t>(edges_.size()); }
    int num_nodes() const { return num_nodes_; }
    Unit num_units() const { return num_units_; }
    std::int64_t unit_width() const { return unit_width_; }
    std::int64_t t_min() const { return t_min_; }
    bool empty() const { return edges_.empty(); }

    bool has_node(NodeId v) const { return v >= 0 && v < num_nodes_; }
    bool has_edge(EdgeId id) const { return pos_by_id_.count(id) != 0; }
    const Hyperedge& edge(EdgeId id) const { return edges_[pos_by_id_.at(id)]; }

    // Posting list of v, sorted by edge id. Empty for unknown nodes.
    std::span<const Posting> edges_of_node(NodeId v) const;
    // Edge ids at time unit t, sorted ascending. Empty outside the data range.
    std::span<const EdgeId> edges_at(Unit t) const;

    // Sub-hypergraph with exactly the edges whose unit lies in [lo, hi].
    // Edge ids, node ids and unit values are preserved.
    TemporalHypergraph window(Unit lo, Unit hi) const;

    // E(S): ids of edges containing every node of s, ascending.
    std::vector<EdgeId> edges_containing(std::span<const NodeId> s) const;
    // Same with postings and a reusable buffer (cleared first); for hot loops.
    void edges_containing_into(std::span<const NodeId> s, std::vector<Posting>& out) const;
    // E(S, t): E(S) restricted to unit t.
    std::vector<EdgeId> edges_containing_at(std::span<const NodeId> s, Unit t) const;
    // N(v): nodes co-appearing with v in any edge, ascending, v excluded.
    std::vector<NodeId> neighbors(NodeId v) const;

    // One line per edge: "unit<TAB>node,node,..." sorted by (unit, nodes).
    void canonical_dump(std::ostream& out) const;

    // Dense id -> original id. Identity (empty vector) for synthetic builds.
    const std::vector<std::int64_t>& original_ids() const { return original_ids_; }
    std::int64_t original_id(NodeId v) const {
        return original_ids_.empty() ? v : original_ids_[static_cast<std::size_t>(v)];
    }

private:
    friend TemporalHypergraph load_simplex_triple(const std::string&, const std::string&,
                                                  const std::string&, std::int64_t, int,
                                                  LoadStats*);
    friend class NullModel;

    // Edges must already be normalized (sorted unique node lists, size >= 2).
    void adopt(std::vector<Hyperedge> edges);
    void rebuild_indexes();

    std::vector<Hyperedge> edges_;  // sorted by (unit, id)
    std::vector<std::vector<Posting>> node_index_;
    std::vector<std::vector<EdgeId>> time_index_;
    std::unordered_map<EdgeId, std::uint32_t> pos_by_id_;
    int num_nodes_ = 0;
    Unit num_units_ = 0;
    std::int64_t unit_width_ = 1;
    std::int64_t t_min_ = 0;
    std::vector<std::int64_t> original_ids_;
};

// Load the public triple-file simplex layout: <name>-nverts.txt (one simplex
// size per line), <name>-simplices.txt (node ids, concatenated in nverts
// order), <name>-times.txt (one timestamp per line, aligned with nverts).
// Original node ids are remapped to dense ints in first-appearance order.
TemporalHypergraph load_simplex_triple(const std::string& nverts_path,
                                       const std::string& simplices_path,
                                       const std::string& times_path,
                                       std::int64_t unit_width,
                                       int max_size = kDefaultMaxEdgeSize,
                                       LoadStats* stats = nullptr);

}  // namespace hoip

#endif
