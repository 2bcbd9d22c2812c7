#include "hoip/projection.hpp"

#include <algorithm>
#include <stdexcept>

namespace hoip {

void ProjectedGraph::finalize_from_pairs(std::vector<std::pair<NodeId, NodeId>>&& pairs) {
    std::sort(pairs.begin(), pairs.end());
    adj_.assign(static_cast<std::size_t>(num_nodes_), {});
    std::size_t i = 0;
    while (i < pairs.size()) {
        std::size_t j = i;
        while (j < pairs.size() && pairs[j] == pairs[i]) ++j;
        auto [u, v] = pairs[i];
        std::int64_t w = static_cast<std::int64_t>(j - i);
        adj_[static_cast<std::size_t>(u)].push_back({v, w});
        adj_[static_cast<std::size_t>(v)].push_back({u, w});
        ++num_pairs_;
        i = j;
    }
    for (auto& lst : adj_)
        std::sort(lst.begin(), lst.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
    if (present_.size() != static_cast<std::size_t>(num_nodes_))
        present_.assign(static_cast<std::size_t>(num_nodes_), 0);
    for (NodeId v = 0; v < num_nodes_; ++v)
        if (!adj_[static_cast<std::size_t>(v)].empty()) present_[static_cast<std::size_t>(v)] = 1;
    active_.clear();
    for (NodeId v = 0; v < num_nodes_; ++v)
        if (present_[static_cast<std::size_t>(v)]) active_.push_back(v);
}

ProjectedGraph ProjectedGraph::from_edges(
    int num_nodes, const std::vector<std::tuple<NodeId, NodeId, std::int64_t>>& edges,
    const std::vector<NodeId>& extra_nodes) {
    ProjectedGraph g;
    g.num_nodes_ = num_nodes;
    g.present_.assign(static_cast<std::size_t>(num_nodes), 0);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (auto [u, v, w] : edges) {
        if (u == v) throw std::invalid_argument("projection: self-loop");
        if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes)
            throw std::invalid_argument("projection: node out of range");
        if (w <= 0) throw std::invalid_argument("projection: non-positive weight");
        if (u > v) std::swap(u, v);
        for (std::int64_t i = 0; i < w; ++i) pairs.emplace_back(u, v);
    }
    for (NodeId v : extra_nodes) {
        if (v < 0 || v >= num_nodes) throw std::invalid_argument("projection: node out of range");
        g.present_[static_cast<std::size_t>(v)] = 1;
    }
    g.finalize_from_pairs(std::move(pairs));
    return g;
}

std::int64_t ProjectedGraph::weighted_degree(NodeId v) const {
    std::int64_t total = 0;
    for (const Neighbor& n : neighbors(v)) total += n.weight;
    return total;
}

std::int64_t ProjectedGraph::weight(NodeId u, NodeId v) const {
    std::span<const Neighbor> lst = neighbors(u);
    auto it = std::lower_bound(lst.begin(), lst.end(), v,
                               [](const Neighbor& a, NodeId b) { return a.node < b; });
    if (it == lst.end() || it->node != v) return 0;
    return it->weight;
}

ProjectedGraph build_projection(const TemporalHypergraph& h) {
    ProjectedGraph g;
    g.num_nodes_ = h.num_nodes();
    g.present_.assign(static_cast<std::size_t>(g.num_nodes_), 0);
    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::size_t total = 0;
    for (const Hyperedge& e : h.edges()) {
        std::size_t m = e.nodes.size();
        total += m * (m - 1) / 2;
    }
    pairs.reserve(total);
    for (const Hyperedge& e : h.edges()) {
        for (std::size_t i = 0; i < e.nodes.size(); ++i) {
            g.present_[static_cast<std::size_t>(e.nodes[i])] = 1;
            for (std::size_t j = i + 1; j < e.nodes.size(); ++j)
                pairs.emplace_back(e.nodes[i], e.nodes[j]);
        }
    }
    g.finalize_from_pairs(std::move(pairs));
    return g;
}

}  // namespace hoip
