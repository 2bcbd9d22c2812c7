#ifndef HOIP_TESTS_SUPPORT_HPP
#define HOIP_TESTS_SUPPORT_HPP

// Shared fixtures, random-instance generators and independent brute-force
// oracles. Everything here deliberately avoids the library's index structures:
// oracles work by full scans over plain edge lists.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "hoip/hypergraph.hpp"
#include "hoip/rng.hpp"

namespace hoip::testing {

// Fixture F1: e1={a,b,c}@1, e2={a,b}@2, e3={b,c,d}@3, e4={a,b,c}@3
// with a=0, b=1, c=2, d=3.
inline TemporalHypergraph fixture_f1() {
    return TemporalHypergraph::from_unit_edges({
        {1, {0, 1, 2}},
        {2, {0, 1}},
        {3, {1, 2, 3}},
        {3, {0, 1, 2}},
    });
}

struct RawInstance {
    // Parallel vectors: one entry per edge, in edge-id order.
    std::vector<std::vector<NodeId>> nodes;  // sorted unique
    std::vector<Unit> units;
    int num_nodes = 0;
};

inline RawInstance random_instance(std::uint64_t seed, int max_nodes = 20, int max_edges = 50,
                                   int max_units = 10, int max_edge_size = 6) {
    Rng rng(seed);
    RawInstance inst;
    inst.num_nodes = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_nodes - 1)));
    int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_edges)));
    int units = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_units)));
    for (int e = 0; e < m; ++e) {
        int cap = std::min(max_edge_size, inst.num_nodes);
        int size = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cap - 1)));
        std::set<NodeId> ns;
        while (static_cast<int>(ns.size()) < size)
            ns.insert(static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(inst.num_nodes))));
        inst.nodes.emplace_back(ns.begin(), ns.end());
        inst.units.push_back(static_cast<Unit>(rng.below(static_cast<std::uint64_t>(units))));
    }
    return inst;
}

inline TemporalHypergraph to_hypergraph(const RawInstance& inst) {
    std::vector<std::pair<Unit, std::vector<NodeId>>> raw;
    for (std::size_t i = 0; i < inst.nodes.size(); ++i)
        raw.emplace_back(inst.units[i], inst.nodes[i]);
    return TemporalHypergraph::from_unit_edges(std::move(raw), inst.num_nodes);
}

inline bool contains_all(const std::vector<NodeId>& edge, std::span<const NodeId> s) {
    for (NodeId v : s)
        if (!std::binary_search(edge.begin(), edge.end(), v)) return false;
    return true;
}

// --- oracles on RawInstance ------------------------------------------------

inline std::vector<EdgeId> oracle_edges_containing(const RawInstance& inst,
                                                   std::span<const NodeId> s) {
    std::vector<EdgeId> out;
    for (std::size_t e = 0; e < inst.nodes.size(); ++e)
        if (contains_all(inst.nodes[e], s)) out.push_back(static_cast<EdgeId>(e));
    return out;
}

inline std::vector<EdgeId> oracle_edges_containing_at(const RawInstance& inst,
                                                      std::span<const NodeId> s, Unit t) {
    std::vector<EdgeId> out;
    for (std::size_t e = 0; e < inst.nodes.size(); ++e)
        if (inst.units[e] == t && contains_all(inst.nodes[e], s))
            out.push_back(static_cast<EdgeId>(e));
    return out;
}

inline std::vector<NodeId> oracle_neighbors(const RawInstance& inst, NodeId v) {
    std::set<NodeId> out;
    for (const auto& edge : inst.nodes) {
        if (!std::binary_search(edge.begin(), edge.end(), v)) continue;
        for (NodeId u : edge)
            if (u != v) out.insert(u);
    }
    return {out.begin(), out.end()};
}

inline std::int64_t oracle_pair_weight(const RawInstance& inst, NodeId u, NodeId v) {
    std::int64_t w = 0;
    std::array<NodeId, 2> pair{std::min(u, v), std::max(u, v)};
    for (const auto& edge : inst.nodes)
        if (contains_all(edge, pair)) ++w;
    return w;
}

// All size-k subsets with first-appearance units, by materializing every
// subset of every edge and scanning all units.
inline std::map<std::vector<NodeId>, Unit> oracle_hois(const RawInstance& inst, int k) {
    std::map<std::vector<NodeId>, Unit> out;
    for (std::size_t e = 0; e < inst.nodes.size(); ++e) {
        const auto& nodes = inst.nodes[e];
        int m = static_cast<int>(nodes.size());
        if (m < k) continue;
        std::vector<int> pick(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<NodeId> subset;
            for (int i : pick) subset.push_back(nodes[static_cast<std::size_t>(i)]);
            auto [it, fresh] = out.emplace(subset, inst.units[e]);
            if (!fresh && inst.units[e] < it->second) it->second = inst.units[e];
            int i = k - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - k + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

inline int oracle_persistence(const RawInstance& inst, std::span<const NodeId> s, Unit lo,
                              Unit hi) {
    int count = 0;
    for (Unit t = lo; t <= hi; ++t) {
        bool present = false;
        for (std::size_t e = 0; e < inst.nodes.size() && !present; ++e)
            present = inst.units[e] == t && contains_all(inst.nodes[e], s);
        if (present) ++count;
    }
    return count;
}

struct OracleGroupBasic {
    std::int64_t cnt = 0, sigma = 0, cup = 0, sigma_cup = 0, cap = 0;
    double entropy = 0.0;
};

inline OracleGroupBasic oracle_group_basic(const RawInstance& inst, std::span<const NodeId> s) {
    OracleGroupBasic b;
    std::map<int, std::int64_t> size_hist;
    std::int64_t n_sizes = 0;
    std::set<EdgeId> overlap;
    for (std::size_t e = 0; e < inst.nodes.size(); ++e) {
        if (contains_all(inst.nodes[e], s)) {
            ++b.cnt;
            b.sigma += static_cast<std::int64_t>(inst.nodes[e].size());
            ++size_hist[static_cast<int>(inst.nodes[e].size())];
            ++n_sizes;
        }
        for (NodeId v : s)
            if (std::binary_search(inst.nodes[e].begin(), inst.nodes[e].end(), v)) {
                overlap.insert(static_cast<EdgeId>(e));
                break;
            }
    }
    b.cup = static_cast<std::int64_t>(overlap.size());
    for (EdgeId e : overlap)
        b.sigma_cup += static_cast<std::int64_t>(inst.nodes[static_cast<std::size_t>(e)].size());
    if (n_sizes > 1) {
        for (const auto& [sz, c] : size_hist) {
            double p = static_cast<double>(c) / static_cast<double>(n_sizes);
            b.entropy -= p * std::log(p);
        }
        if (b.entropy < 0.0) b.entropy = 0.0;
    }
    std::vector<NodeId> common = oracle_neighbors(inst, s[0]);
    for (std::size_t i = 1; i < s.size(); ++i) {
        std::vector<NodeId> nv = oracle_neighbors(inst, s[i]);
        std::vector<NodeId> next;
        std::set_intersection(common.begin(), common.end(), nv.begin(), nv.end(),
                              std::back_inserter(next));
        common.swap(next);
    }
    b.cap = static_cast<std::int64_t>(common.size());
    return b;
}

// --- oracles on plain pairwise graphs --------------------------------------

struct RawGraph {
    int num_nodes = 0;
    std::vector<std::vector<char>> adj;            // adjacency matrix
    std::vector<std::vector<std::int64_t>> weight;  // 0 when absent

    static RawGraph empty(int n) {
        RawGraph g;
        g.num_nodes = n;
        g.adj.assign(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
        g.weight.assign(static_cast<std::size_t>(n),
                        std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
        return g;
    }
    void add(NodeId u, NodeId v, std::int64_t w) {
        adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
        adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
        weight[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] += w;
        weight[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] += w;
    }
    int degree(NodeId v) const {
        int d = 0;
        for (char a : adj[static_cast<std::size_t>(v)]) d += a;
        return d;
    }
    bool present(NodeId v) const { return degree(v) > 0; }
};

inline RawGraph random_graph(std::uint64_t seed, int max_nodes = 30) {
    Rng rng(seed);
    int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_nodes - 1)));
    RawGraph g = RawGraph::empty(n);
    double p = 0.05 + 0.45 * rng.next_double();
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v)
            if (rng.next_double() < p)
                g.add(u, v, 1 + static_cast<std::int64_t>(rng.below(5)));
    return g;
}

// Core numbers by definition: for each k, repeatedly delete nodes of degree
// < k; survivors have core >= k.
inline std::vector<int> oracle_core_numbers(const RawGraph& g) {
    std::vector<int> core(static_cast<std::size_t>(g.num_nodes), 0);
    int max_deg = 0;
    for (NodeId v = 0; v < g.num_nodes; ++v) max_deg = std::max(max_deg, g.degree(v));
    for (int k = 1; k <= max_deg; ++k) {
        std::vector<char> alive(static_cast<std::size_t>(g.num_nodes), 0);
        for (NodeId v = 0; v < g.num_nodes; ++v)
            alive[static_cast<std::size_t>(v)] = g.present(v);
        bool changed = true;
        while (changed) {
            changed = false;
            for (NodeId v = 0; v < g.num_nodes; ++v) {
                if (!alive[static_cast<std::size_t>(v)]) continue;
                int d = 0;
                for (NodeId u = 0; u < g.num_nodes; ++u)
                    if (alive[static_cast<std::size_t>(u)] &&
                        g.adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)])
                        ++d;
                if (d < k) {
                    alive[static_cast<std::size_t>(v)] = 0;
                    changed = true;
                }
            }
        }
        for (NodeId v = 0; v < g.num_nodes; ++v)
            if (alive[static_cast<std::size_t>(v)]) core[static_cast<std::size_t>(v)] = k;
    }
    return core;
}

inline double oracle_local_clustering(const RawGraph& g, NodeId v) {
    std::vector<NodeId> nbrs;
    for (NodeId u = 0; u < g.num_nodes; ++u)
        if (g.adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) nbrs.push_back(u);
    if (nbrs.size() < 2) return 0.0;
    std::int64_t links = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j)
            if (g.adj[static_cast<std::size_t>(nbrs[i])][static_cast<std::size_t>(nbrs[j])])
                ++links;
    double d = static_cast<double>(nbrs.size());
    return static_cast<double>(links) / (d * (d - 1) / 2.0);
}

// Fixed-step weighted PageRank power iteration (no convergence test).
inline std::vector<double> oracle_pagerank(const RawGraph& g, double damping, int steps,
                                           bool weighted = true) {
    std::vector<NodeId> active;
    for (NodeId v = 0; v < g.num_nodes; ++v)
        if (g.present(v)) active.push_back(v);
    std::vector<double> ranks(static_cast<std::size_t>(g.num_nodes), 0.0);
    if (active.empty()) return ranks;
    double n = static_cast<double>(active.size());
    std::vector<double> r(active.size(), 1.0 / n), next(active.size(), 0.0);
    for (int step = 0; step < steps; ++step) {
        std::fill(next.begin(), next.end(), 0.0);
        double dangling = 0.0;
        for (std::size_t i = 0; i < active.size(); ++i) {
            NodeId u = active[i];
            double total = 0.0;
            for (std::size_t j = 0; j < active.size(); ++j) {
                NodeId v = active[j];
                total += weighted
                             ? static_cast<double>(
                                   g.weight[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
                             : static_cast<double>(
                                   g.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
            }
            if (total == 0.0) {
                dangling += r[i];
                continue;
            }
            for (std::size_t j = 0; j < active.size(); ++j) {
                NodeId v = active[j];
                double w = weighted
                               ? static_cast<double>(
                                     g.weight[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
                               : static_cast<double>(
                                     g.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
                next[j] += r[i] * w / total;
            }
        }
        for (std::size_t j = 0; j < active.size(); ++j)
            next[j] = (1.0 - damping) / n + damping * (next[j] + dangling / n);
        r.swap(next);
    }
    for (std::size_t i = 0; i < active.size(); ++i)
        ranks[static_cast<std::size_t>(active[i])] = r[i];
    return ranks;
}

// --- synthetic temporal stream ----------------------------------------------

// Planted-rate stream: each group fires independently per unit with its own
// rate, so frequency within any observation window predicts persistence.
struct StreamSpec {
    int num_nodes = 80;
    int num_units = 80;
    int num_pairs = 220;
    int num_triples = 120;
    int noise_edges_per_unit = 3;
    double rate_lo = 0.04;
    double rate_hi = 0.85;
};

inline TemporalHypergraph synthetic_stream(std::uint64_t seed, const StreamSpec& spec = {}) {
    Rng rng(seed);
    std::vector<std::pair<std::vector<NodeId>, double>> groups;
    auto sample_group = [&](int size) {
        std::set<NodeId> s;
        while (static_cast<int>(s.size()) < size)
            s.insert(static_cast<NodeId>(rng.below(static_cast<std::uint64_t>(spec.num_nodes))));
        return std::vector<NodeId>(s.begin(), s.end());
    };
    for (int i = 0; i < spec.num_pairs; ++i)
        groups.emplace_back(sample_group(2), rng.uniform(spec.rate_lo, spec.rate_hi));
    for (int i = 0; i < spec.num_triples; ++i)
        groups.emplace_back(sample_group(3), rng.uniform(spec.rate_lo, spec.rate_hi));

    std::vector<std::pair<Unit, std::vector<NodeId>>> edges;
    for (Unit t = 0; t < spec.num_units; ++t) {
        for (const auto& [nodes, rate] : groups)
            if (rng.next_double() < rate) edges.emplace_back(t, nodes);
        for (int i = 0; i < spec.noise_edges_per_unit; ++i)
            edges.emplace_back(t, sample_group(2 + static_cast<int>(rng.below(3))));
    }
    return TemporalHypergraph::from_unit_edges(std::move(edges), spec.num_nodes);
}

}  // namespace hoip::testing

#endif
