#include "hoip/features.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hoip/error.hpp"

namespace hoip {

const std::array<std::string, 8>& GroupFeatures::names() {
    static const std::array<std::string, 8> kNames = {
        "cnt",           "cnt_over_cup",  "sigma_over_sigma_cup", "cap",
        "cnt_over_cap",  "sigma_over_cap", "sigma_over_cnt",      "size_entropy"};
    return kNames;
}

const std::array<std::string, 8>& NodeFeatures::names() {
    static const std::array<std::string, 8> kNames = {
        "degree",         "weighted_degree",         "core",       "pagerank",
        "avg_nbr_degree", "avg_nbr_weighted_degree", "clustering", "occurrences"};
    return kNames;
}

namespace {

double size_multiset_entropy(const std::vector<int>& sizes) {
    if (sizes.size() <= 1) return 0.0;
    std::map<int, std::int64_t> hist;
    for (int s : sizes) ++hist[s];
    double n = static_cast<double>(sizes.size());
    double h = 0.0;
    for (const auto& [size, c] : hist) {
        double p = static_cast<double>(c) / n;
        h -= p * std::log(p);
    }
    return h < 0.0 ? 0.0 : h;
}

// Count of distinct edges overlapping S and the sum of their sizes, via a
// k-pointer merge over the member posting lists (nothing materialized).
void union_of_postings_stats(const TemporalHypergraph& hw, std::span<const NodeId> s,
                             std::int64_t& cup, std::int64_t& sigma_cup) {
    cup = 0;
    sigma_cup = 0;
    static thread_local std::vector<std::span<const EdgeId>> lists;
    static thread_local std::vector<std::size_t> cursor;
    lists.clear();
    for (NodeId v : s) {
        std::span<const EdgeId> lst = hw.edges_of_node(v);
        if (!lst.empty()) lists.push_back(lst);
    }
    cursor.assign(lists.size(), 0);
    while (true) {
        EdgeId next = -1;
        for (std::size_t i = 0; i < lists.size(); ++i) {
            if (cursor[i] < lists[i].size()) {
                EdgeId id = lists[i][cursor[i]];
                if (next < 0 || id < next) next = id;
            }
        }
        if (next < 0) break;
        for (std::size_t i = 0; i < lists.size(); ++i)
            while (cursor[i] < lists[i].size() && lists[i][cursor[i]] == next) ++cursor[i];
        ++cup;
        sigma_cup += hw.edge(next).size();
    }
}

}  // namespace

namespace {

// Everything but cap (= |intersection of N(v)|).
GroupBasic group_basic_core(const TemporalHypergraph& hw, std::span<const NodeId> s) {
    if (s.size() < 2) throw std::invalid_argument("group_basic: |S| must be >= 2");
    GroupBasic b;
    static thread_local std::vector<EdgeId> containing;
    hw.edges_containing_into(s, containing);
    b.cnt = static_cast<std::int64_t>(containing.size());
    static thread_local std::vector<int> sizes;
    sizes.clear();
    sizes.reserve(containing.size());
    for (EdgeId id : containing) {
        sizes.push_back(hw.edge(id).size());
        b.sigma += sizes.back();
    }
    b.entropy = size_multiset_entropy(sizes);
    union_of_postings_stats(hw, s, b.cup, b.sigma_cup);
    return b;
}

}  // namespace

GroupBasic group_basic(const TemporalHypergraph& hw, std::span<const NodeId> s) {
    GroupBasic b = group_basic_core(hw, s);
    // cap = |intersection of N(v)|, taken literally; v itself is never in N(v).
    std::vector<NodeId> common = hw.neighbors(s[0]);
    for (std::size_t i = 1; i < s.size() && !common.empty(); ++i) {
        std::vector<NodeId> nv = hw.neighbors(s[i]);
        std::vector<NodeId> next;
        next.reserve(common.size());
        std::set_intersection(common.begin(), common.end(), nv.begin(), nv.end(),
                              std::back_inserter(next));
        common.swap(next);
    }
    b.cap = static_cast<std::int64_t>(common.size());
    return b;
}

GroupBasic group_basic(const TemporalHypergraph& hw, const ProjectedGraph& proj,
                       std::span<const NodeId> s) {
    GroupBasic b = group_basic_core(hw, s);
    std::span<const ProjectedGraph::Neighbor> first = proj.neighbors(s[0]);
    static thread_local std::vector<NodeId> common;
    static thread_local std::vector<NodeId> next;
    common.clear();
    common.reserve(first.size());
    for (const ProjectedGraph::Neighbor& nb : first) common.push_back(nb.node);
    for (std::size_t i = 1; i < s.size() && !common.empty(); ++i) {
        std::span<const ProjectedGraph::Neighbor> nv = proj.neighbors(s[i]);
        next.clear();
        std::size_t a = 0, c = 0;
        while (a < common.size() && c < nv.size()) {
            if (common[a] < nv[c].node)
                ++a;
            else if (common[a] > nv[c].node)
                ++c;
            else {
                next.push_back(common[a]);
                ++a;
                ++c;
            }
        }
        common.swap(next);
    }
    b.cap = static_cast<std::int64_t>(common.size());
    return b;
}

GroupFeatures derive_group_features(const GroupBasic& b) {
    auto ratio = [](double num, double den) { return den == 0.0 ? 0.0 : num / den; };
    GroupFeatures f;
    f.cnt = static_cast<double>(b.cnt);
    f.cnt_over_cup = ratio(static_cast<double>(b.cnt), static_cast<double>(b.cup));
    f.sigma_over_sigma_cup =
        ratio(static_cast<double>(b.sigma), static_cast<double>(b.sigma_cup));
    f.cap = static_cast<double>(b.cap);
    f.cnt_over_cap = ratio(static_cast<double>(b.cnt), static_cast<double>(b.cap));
    f.sigma_over_cap = ratio(static_cast<double>(b.sigma), static_cast<double>(b.cap));
    f.sigma_over_cnt = ratio(static_cast<double>(b.sigma), static_cast<double>(b.cnt));
    f.size_entropy = b.entropy;
    return f;
}

std::vector<double> pagerank(const ProjectedGraph& g, const PagerankOptions& opt) {
    const std::vector<NodeId>& active = g.active_nodes();
    std::vector<double> ranks(static_cast<std::size_t>(g.num_nodes()), 0.0);
    if (active.empty()) return ranks;
    std::size_t n = active.size();

    // Dense index over active nodes.
    std::vector<std::int32_t> slot(static_cast<std::size_t>(g.num_nodes()), -1);
    for (std::size_t i = 0; i < n; ++i) slot[static_cast<std::size_t>(active[i])] = static_cast<std::int32_t>(i);

    std::vector<double> out_mass(n, 0.0);  // total outgoing weight per node
    for (std::size_t i = 0; i < n; ++i) {
        NodeId v = active[i];
        if (opt.weighted) {
            out_mass[i] = static_cast<double>(g.weighted_degree(v));
        } else {
            out_mass[i] = static_cast<double>(g.degree(v));
        }
    }

    std::vector<double> r(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);
    double base = (1.0 - opt.damping) / static_cast<double>(n);
    double last_diff = 0.0;
    for (int iter = 0; iter < opt.max_iter; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        double dangling = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (out_mass[i] == 0.0) {
                dangling += r[i];
                continue;
            }
            NodeId v = active[i];
            double share = r[i] / out_mass[i];
            for (const ProjectedGraph::Neighbor& nb : g.neighbors(v)) {
                double w = opt.weighted ? static_cast<double>(nb.weight) : 1.0;
                next[static_cast<std::size_t>(slot[static_cast<std::size_t>(nb.node)])] += share * w;
            }
        }
        double dangling_share = dangling / static_cast<double>(n);
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = base + opt.damping * (next[i] + dangling_share);
            diff += std::abs(next[i] - r[i]);
        }
        r.swap(next);
        last_diff = diff;
        if (diff < opt.tol) {
            for (std::size_t i = 0; i < n; ++i) ranks[static_cast<std::size_t>(active[i])] = r[i];
            return ranks;
        }
    }
    throw NumericError("pagerank did not converge after " + std::to_string(opt.max_iter) +
                       " iterations (residual " + std::to_string(last_diff) + ")");
}

std::vector<int> core_numbers(const ProjectedGraph& g) {
    std::vector<int> core(static_cast<std::size_t>(g.num_nodes()), 0);
    const std::vector<NodeId>& active = g.active_nodes();
    if (active.empty()) return core;

    // Bucket peeling in ascending current-degree order.
    int max_deg = 0;
    std::vector<int> deg(static_cast<std::size_t>(g.num_nodes()), 0);
    for (NodeId v : active) {
        deg[static_cast<std::size_t>(v)] = g.degree(v);
        max_deg = std::max(max_deg, g.degree(v));
    }
    std::vector<std::vector<NodeId>> buckets(static_cast<std::size_t>(max_deg) + 1);
    for (NodeId v : active) buckets[static_cast<std::size_t>(deg[static_cast<std::size_t>(v)])].push_back(v);
    std::vector<char> removed(static_cast<std::size_t>(g.num_nodes()), 0);
    int current = 0;
    for (int d = 0; d <= max_deg; ++d) {
        auto& bucket = buckets[static_cast<std::size_t>(d)];
        for (std::size_t idx = 0; idx < bucket.size(); ++idx) {
            NodeId v = bucket[idx];
            if (removed[static_cast<std::size_t>(v)] || deg[static_cast<std::size_t>(v)] != d) continue;
            current = std::max(current, d);
            core[static_cast<std::size_t>(v)] = current;
            removed[static_cast<std::size_t>(v)] = 1;
            for (const ProjectedGraph::Neighbor& nb : g.neighbors(v)) {
                std::size_t u = static_cast<std::size_t>(nb.node);
                if (removed[u]) continue;
                if (deg[u] > d) {
                    --deg[u];
                    if (deg[u] <= d)
                        bucket.push_back(nb.node);  // falls into the current bucket
                    else
                        buckets[static_cast<std::size_t>(deg[u])].push_back(nb.node);
                }
            }
        }
    }
    return core;
}

double local_clustering(const ProjectedGraph& g, NodeId v) {
    std::span<const ProjectedGraph::Neighbor> nbrs = g.neighbors(v);
    std::size_t d = nbrs.size();
    if (d < 2) return 0.0;
    std::int64_t links = 0;
    for (const ProjectedGraph::Neighbor& a : nbrs) {
        // |N(a) ∩ N(v)| counts edges from a into N(v); summed over a it counts
        // each edge among N(v) twice.
        std::span<const ProjectedGraph::Neighbor> na = g.neighbors(a.node);
        std::size_t i = 0, j = 0;
        while (i < na.size() && j < nbrs.size()) {
            if (na[i].node < nbrs[j].node)
                ++i;
            else if (na[i].node > nbrs[j].node)
                ++j;
            else {
                ++links;
                ++i;
                ++j;
            }
        }
    }
    double possible = static_cast<double>(d) * static_cast<double>(d - 1) / 2.0;
    return static_cast<double>(links / 2) / possible;
}

namespace {

// Adjacency-bitmap clustering for all nodes at once; used when the id space is
// small enough that n rows of n bits stay cache-friendly. Equivalent to
// local_clustering() per node.
constexpr int kBitsetClusteringMaxNodes = 4096;

std::vector<double> clustering_all_bitset(const ProjectedGraph& g) {
    std::size_t n = static_cast<std::size_t>(g.num_nodes());
    std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> bits(n * words, 0);
    for (NodeId v : g.active_nodes())
        for (const ProjectedGraph::Neighbor& nb : g.neighbors(v))
            bits[static_cast<std::size_t>(v) * words + static_cast<std::size_t>(nb.node) / 64] |=
                1ull << (static_cast<std::size_t>(nb.node) % 64);
    std::vector<double> out(n, 0.0);
    for (NodeId v : g.active_nodes()) {
        std::span<const ProjectedGraph::Neighbor> nbrs = g.neighbors(v);
        std::size_t d = nbrs.size();
        if (d < 2) continue;
        const std::uint64_t* rv = &bits[static_cast<std::size_t>(v) * words];
        std::int64_t links = 0;
        for (const ProjectedGraph::Neighbor& nb : nbrs) {
            const std::uint64_t* ru = &bits[static_cast<std::size_t>(nb.node) * words];
            for (std::size_t w = 0; w < words; ++w)
                links += std::popcount(rv[w] & ru[w]);
        }
        double possible = static_cast<double>(d) * static_cast<double>(d - 1) / 2.0;
        out[static_cast<std::size_t>(v)] = static_cast<double>(links / 2) / possible;
    }
    return out;
}

}  // namespace

NodeFeatureTable::NodeFeatureTable(const TemporalHypergraph& hw, const ProjectedGraph& g,
                                   const PagerankOptions& opt) {
    std::size_t n = static_cast<std::size_t>(g.num_nodes());
    rows_.assign(n, NodeFeatures{});
    if (g.active_nodes().empty()) {
        for (std::size_t v = 0; v < n; ++v)
            rows_[v].occurrences = static_cast<double>(hw.edges_of_node(static_cast<NodeId>(v)).size());
        return;
    }
    std::vector<double> ranks = pagerank(g, opt);
    std::vector<int> cores = core_numbers(g);
    std::vector<double> clustering;
    if (g.num_nodes() <= kBitsetClusteringMaxNodes) clustering = clustering_all_bitset(g);
    for (NodeId v : g.active_nodes()) {
        std::size_t i = static_cast<std::size_t>(v);
        NodeFeatures& f = rows_[i];
        f.degree = static_cast<double>(g.degree(v));
        f.weighted_degree = static_cast<double>(g.weighted_degree(v));
        f.core = static_cast<double>(cores[i]);
        f.pagerank = ranks[i];
        f.clustering = clustering.empty() ? local_clustering(g, v) : clustering[i];
        std::span<const ProjectedGraph::Neighbor> nbrs = g.neighbors(v);
        if (!nbrs.empty()) {
            double sum_d = 0.0, sum_w = 0.0;
            for (const ProjectedGraph::Neighbor& nb : nbrs) {
                sum_d += static_cast<double>(g.degree(nb.node));
                sum_w += static_cast<double>(g.weighted_degree(nb.node));
            }
            f.avg_nbr_degree = sum_d / static_cast<double>(nbrs.size());
            f.avg_nbr_weighted_degree = sum_w / static_cast<double>(nbrs.size());
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        rows_[v].occurrences = static_cast<double>(hw.edges_of_node(static_cast<NodeId>(v)).size());
}

NodeFeatures node_features(const TemporalHypergraph& hw, const ProjectedGraph& g, NodeId v,
                           const PagerankOptions& opt) {
    if (v < 0 || v >= g.num_nodes()) return NodeFeatures{};
    NodeFeatureTable table(hw, g, opt);
    return table[v];
}

std::array<double, 8> aggregate_node_features(std::span<const NodeFeatures> members) {
    std::array<double, 8> out{};
    if (members.empty()) return out;
    for (const NodeFeatures& f : members) {
        std::array<double, 8> a = f.to_array();
        for (std::size_t i = 0; i < 8; ++i) out[i] += a[i];
    }
    for (double& x : out) x /= static_cast<double>(members.size());
    return out;
}

}  // namespace hoip
