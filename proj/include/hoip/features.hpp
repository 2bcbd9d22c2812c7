#ifndef HOIP_FEATURES_HPP
#define HOIP_FEATURES_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hoip/hypergraph.hpp"
#include "hoip/projection.hpp"

namespace hoip {

// Basic group quantities of a HOI S within one window hypergraph:
//   cnt       |E(S)|
//   sigma     sum of |e| over E(S)
//   cup       |union of E({v}) over v in S|
//   sigma_cup sum of |e| over that union
//   cap       |intersection of N(v) over v in S|
//   entropy   Shannon entropy (natural log) of the multiset [|e| : e in E(S)]
struct GroupBasic {
    std::int64_t cnt = 0;
    std::int64_t sigma = 0;
    std::int64_t cup = 0;
    std::int64_t sigma_cup = 0;
    std::int64_t cap = 0;
    double entropy = 0.0;
};

// The eight derived group features, in the paper-table order. Ratios with a
// zero denominator are defined as 0 to keep feature matrices finite.
struct GroupFeatures {
    double cnt = 0.0;                   // #
    double cnt_over_cup = 0.0;          // # / U
    double sigma_over_sigma_cup = 0.0;  // Sigma / SigmaU
    double cap = 0.0;                   // common neighbors
    double cnt_over_cap = 0.0;          // # / cap
    double sigma_over_cap = 0.0;        // Sigma / cap
    double sigma_over_cnt = 0.0;        // Sigma / #  (average containing-edge size)
    double size_entropy = 0.0;          // H

    std::array<double, 8> to_array() const {
        return {cnt, cnt_over_cup, sigma_over_sigma_cup, cap,
                cnt_over_cap, sigma_over_cap, sigma_over_cnt, size_entropy};
    }
    static const std::array<std::string, 8>& names();
};

// The eight structural node features on a window's projection.
struct NodeFeatures {
    double degree = 0.0;
    double weighted_degree = 0.0;
    double core = 0.0;
    double pagerank = 0.0;
    double avg_nbr_degree = 0.0;
    double avg_nbr_weighted_degree = 0.0;
    double clustering = 0.0;
    double occurrences = 0.0;

    std::array<double, 8> to_array() const {
        return {degree, weighted_degree, core, pagerank,
                avg_nbr_degree, avg_nbr_weighted_degree, clustering, occurrences};
    }
    static const std::array<std::string, 8>& names();
};

GroupBasic group_basic(const TemporalHypergraph& hw, std::span<const NodeId> s);
// Same result; reads N(v) off the window's projection instead of rebuilding
// neighbor sets per call. proj must be the projection of hw.
GroupBasic group_basic(const TemporalHypergraph& hw, const ProjectedGraph& proj,
                       std::span<const NodeId> s);
GroupFeatures derive_group_features(const GroupBasic& b);

struct PagerankOptions {
    double damping = 0.85;
    double tol = 1e-10;
    int max_iter = 200;
    bool weighted = true;  // transition mass proportional to Omega(u,v)
};

// Rank vector indexed by NodeId; absent nodes get 0, ranks of present nodes
// sum to 1. Throws NumericError if max_iter is hit before tol.
std::vector<double> pagerank(const ProjectedGraph& g, const PagerankOptions& opt = {});

// Unweighted k-core numbers by min-degree peeling; absent nodes get 0.
std::vector<int> core_numbers(const ProjectedGraph& g);

// (# edges among N'(v)) / C(d(v), 2); 0 when d(v) < 2.
double local_clustering(const ProjectedGraph& g, NodeId v);

// All eight node features for every node of one window, computed in one pass
// (PageRank and core decomposition run once and are reused).
class NodeFeatureTable {
public:
    NodeFeatureTable(const TemporalHypergraph& hw, const ProjectedGraph& g,
                     const PagerankOptions& opt = {});
    const NodeFeatures& operator[](NodeId v) const {
        return rows_[static_cast<std::size_t>(v)];
    }
    int num_nodes() const { return static_cast<int>(rows_.size()); }

private:
    std::vector<NodeFeatures> rows_;
};

// Single-node convenience form; builds the full table internally.
NodeFeatures node_features(const TemporalHypergraph& hw, const ProjectedGraph& g, NodeId v,
                           const PagerankOptions& opt = {});

// Componentwise mean over the nodes of a HOI.
std::array<double, 8> aggregate_node_features(std::span<const NodeFeatures> members);

// Cached per-window state shared by feature extraction over many HOIs/nodes.
struct WindowContext {
    TemporalHypergraph hw;
    ProjectedGraph proj;
    NodeFeatureTable nodes;

    WindowContext(const TemporalHypergraph& h, Unit lo, Unit hi, const PagerankOptions& opt = {})
        : hw(h.window(lo, hi)), proj(build_projection(hw)), nodes(hw, proj, opt) {}
};

}  // namespace hoip

#endif
