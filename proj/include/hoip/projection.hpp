#ifndef HOIP_PROJECTION_HPP
#define HOIP_PROJECTION_HPP

#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include "hoip/hypergraph.hpp"

namespace hoip {

// Weighted clique expansion. Immutable once built; weight(u,v) counts the
// hyperedges containing both endpoints. Nodes of the source id space that
// appear in no edge are "absent" (present() false, empty adjacency).
class ProjectedGraph {
public:
    struct Neighbor {
        NodeId node;
        std::int64_t weight;
    };

    ProjectedGraph() = default;

    // Manual construction for tests and standalone metric use. Pairs may
    // repeat; weights accumulate. extra_nodes marks isolated-but-present nodes.
    static ProjectedGraph from_edges(int num_nodes,
                                     const std::vector<std::tuple<NodeId, NodeId, std::int64_t>>& edges,
                                     const std::vector<NodeId>& extra_nodes = {});

    int num_nodes() const { return num_nodes_; }
    bool present(NodeId v) const {
        return v >= 0 && v < num_nodes_ && present_[static_cast<std::size_t>(v)];
    }
    // Nodes that belong to the graph, ascending.
    const std::vector<NodeId>& active_nodes() const { return active_; }

    std::span<const Neighbor> neighbors(NodeId v) const {
        if (v < 0 || v >= num_nodes_) return {};
        return adj_[static_cast<std::size_t>(v)];
    }
    int degree(NodeId v) const { return static_cast<int>(neighbors(v).size()); }
    std::int64_t weighted_degree(NodeId v) const;
    // 0 when the pair is not adjacent.
    std::int64_t weight(NodeId u, NodeId v) const;
    bool adjacent(NodeId u, NodeId v) const { return weight(u, v) > 0; }
    std::int64_t num_pairs() const { return num_pairs_; }

private:
    friend ProjectedGraph build_projection(const TemporalHypergraph&);
    void finalize_from_pairs(std::vector<std::pair<NodeId, NodeId>>&& pairs);

    int num_nodes_ = 0;
    std::vector<std::vector<Neighbor>> adj_;  // sorted by neighbor id
    std::vector<char> present_;
    std::vector<NodeId> active_;
    std::int64_t num_pairs_ = 0;  // distinct unordered adjacent pairs
};

// Omega(u,v) = |{e : {u,v} subset of e}| over all edges of h.
ProjectedGraph build_projection(const TemporalHypergraph& h);

}  // namespace hoip

#endif
