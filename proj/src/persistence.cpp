#include "hoip/persistence.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "hoip/error.hpp"
#include "hoip/parallel.hpp"
#include "hoip/rng.hpp"

namespace hoip {

namespace {

struct HoiKeyHash {
    std::size_t operator()(const std::array<NodeId, 4>& key) const noexcept {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (NodeId v : key) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)) + 0x9E3779B97F4A7C15ull +
                 (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

using FirstSeen = std::unordered_map<std::array<NodeId, 4>, Unit, HoiKeyHash>;

void check_k(int k) {
    if (k < kMinHoiSize || k > kMaxHoiSize)
        throw ConfigError("HOI size must be in {2,3,4}, got " + std::to_string(k));
}

// Record every size-k subset of `nodes` (sorted) with candidate unit `t`.
void record_subsets(const std::vector<NodeId>& nodes, int k, Unit t, FirstSeen& seen) {
    int m = static_cast<int>(nodes.size());
    if (m < k) return;
    std::array<NodeId, 4> key{-1, -1, -1, -1};
    auto put = [&](const std::array<NodeId, 4>& kk) {
        auto [it, fresh] = seen.emplace(kk, t);
        if (!fresh && t < it->second) it->second = t;
    };
    if (k == 2) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                key = {nodes[i], nodes[j], -1, -1};
                put(key);
            }
    } else if (k == 3) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int l = j + 1; l < m; ++l) {
                    key = {nodes[i], nodes[j], nodes[l], -1};
                    put(key);
                }
    } else {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                for (int l = j + 1; l < m; ++l)
                    for (int p = l + 1; p < m; ++p) {
                        key = {nodes[i], nodes[j], nodes[l], nodes[p]};
                        put(key);
                    }
    }
}

std::vector<Hoi> collect_sorted(const FirstSeen& seen, int k) {
    std::vector<Hoi> out;
    out.reserve(seen.size());
    for (const auto& [key, t0] : seen) {
        Hoi h;
        h.nodes = key;
        h.k = static_cast<std::uint8_t>(k);
        h.t0 = t0;
        out.push_back(h);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Hoi> enumerate_hois(const TemporalHypergraph& h, int k,
                                std::optional<std::size_t> cap, std::uint64_t seed,
                                int n_threads) {
    check_k(k);
    FirstSeen seen;
    const std::vector<Hyperedge>& edges = h.edges();
    if (n_threads <= 1 || edges.size() < 4096) {
        for (const Hyperedge& e : edges) record_subsets(e.nodes, k, e.unit, seen);
    } else {
        // Chunked maps merged by min: identical to the serial result because
        // the first-appearance unit is a min over all containing edges.
        std::size_t chunks = static_cast<std::size_t>(n_threads);
        std::vector<FirstSeen> partial(chunks);
        parallel_for(chunks, n_threads, [&](std::size_t c) {
            std::size_t begin = edges.size() * c / chunks;
            std::size_t end = edges.size() * (c + 1) / chunks;
            for (std::size_t i = begin; i < end; ++i)
                record_subsets(edges[i].nodes, k, edges[i].unit, partial[c]);
        }, 1);
        seen = std::move(partial[0]);
        for (std::size_t c = 1; c < chunks; ++c) {
            for (const auto& [key, t0] : partial[c]) {
                auto [it, fresh] = seen.emplace(key, t0);
                if (!fresh && t0 < it->second) it->second = t0;
            }
        }
    }
    std::vector<Hoi> all = collect_sorted(seen, k);
    if (!cap || all.size() <= *cap) return all;
    // Uniform sample after full first-appearance resolution.
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(k)));
    std::size_t n = all.size();
    for (std::size_t i = 0; i < *cap; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(all[i], all[j]);
    }
    all.resize(*cap);
    std::sort(all.begin(), all.end());
    return all;
}

int persistence(const TemporalHypergraph& h, std::span<const NodeId> s, Unit lo, Unit hi) {
    if (lo > hi) throw std::invalid_argument("persistence: lo > hi");
    static thread_local std::vector<Posting> postings;
    static thread_local std::vector<char> hit;
    h.edges_containing_into(s, postings);
    hit.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    int count = 0;
    for (const Posting& p : postings) {
        Unit t = p.unit();
        if (t < lo || t > hi) continue;
        std::size_t slot = static_cast<std::size_t>(t - lo);
        if (!hit[slot]) {
            hit[slot] = 1;
            ++count;
        }
    }
    return count;
}

std::optional<ProtocolWindows> protocol_windows(Unit t0, int ts, int tp, bool include_past,
                                                Unit num_units, bool include_t0) {
    if (ts < 1) throw ConfigError("Ts must be >= 1");
    if (tp < 1) throw ConfigError("Tp must be >= 1");
    if (static_cast<std::int64_t>(t0) + ts + tp >= num_units) return std::nullopt;
    ProtocolWindows w;
    w.include_past = include_past;
    w.feature_lo = include_past ? 0 : (include_t0 ? t0 : t0 + 1);
    w.feature_hi = t0 + ts;
    w.persist_lo = t0 + ts + 1;
    w.persist_hi = t0 + ts + tp;
    return w;
}

std::optional<Unit> first_hoi_unit(const TemporalHypergraph& h, NodeId v, int k) {
    check_k(k);
    std::optional<Unit> best;
    for (const Posting& p : h.edges_of_node(v))
        if (p.size() >= k && (!best || p.unit() < *best)) best = p.unit();
    return best;
}

std::optional<double> k_node_persistence(const TemporalHypergraph& h, NodeId v, int k, int ts,
                                         int tp) {
    check_k(k);
    if (!h.has_node(v)) return std::nullopt;
    // Only subsets containing v matter, and every edge containing such a
    // subset also contains v, so v's posting list resolves t0 exactly.
    FirstSeen seen;
    std::vector<NodeId> others;
    for (EdgeId id : h.edges_of_node(v)) {
        const Hyperedge& e = h.edge(id);
        if (e.size() < k) continue;
        others.clear();
        for (NodeId u : e.nodes)
            if (u != v) others.push_back(u);
        int m = static_cast<int>(others.size());
        auto put = [&](std::array<NodeId, 4> key, int used) {
            key[static_cast<std::size_t>(used)] = v;
            std::sort(key.begin(), key.begin() + used + 1);
            auto [it, fresh] = seen.emplace(key, e.unit);
            if (!fresh && e.unit < it->second) it->second = e.unit;
        };
        if (k == 2) {
            for (NodeId u : others) put({u, -1, -1, -1}, 1);
        } else if (k == 3) {
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    put({others[static_cast<std::size_t>(i)],
                         others[static_cast<std::size_t>(j)], -1, -1}, 2);
        } else {
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    for (int l = j + 1; l < m; ++l)
                        put({others[static_cast<std::size_t>(i)],
                             others[static_cast<std::size_t>(j)],
                             others[static_cast<std::size_t>(l)], -1}, 3);
        }
    }
    double sum = 0.0;
    std::int64_t n = 0;
    for (const auto& [key, t0] : seen) {
        auto w = protocol_windows(t0, ts, tp, false, h.num_units());
        if (!w) continue;
        std::span<const NodeId> s(key.data(), static_cast<std::size_t>(k));
        sum += persistence(h, s, w->persist_lo, w->persist_hi);
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

GlobalPersistence global_persistence(const TemporalHypergraph& h, int k, int window_w,
                                     std::optional<std::size_t> cap, std::uint64_t seed,
                                     int n_threads) {
    check_k(k);
    if (window_w < 1) throw ConfigError("global window W must be >= 1");
    std::vector<Hoi> hois = enumerate_hois(h, k, cap, seed, n_threads);
    std::vector<Hoi> kept;
    kept.reserve(hois.size());
    for (const Hoi& s : hois)
        if (static_cast<std::int64_t>(s.t0) + window_w < h.num_units()) kept.push_back(s);
    std::vector<int> values(kept.size(), 0);
    parallel_for(kept.size(), n_threads, [&](std::size_t i) {
        const Hoi& s = kept[i];
        values[i] = persistence(h, s.view(), s.t0 + 1, s.t0 + window_w);
    });
    GlobalPersistence out;
    out.n_hois = static_cast<std::int64_t>(kept.size());
    double sum = 0.0;
    for (int p : values) {
        sum += p;
        if (p == 0)
            ++out.zero_count;
        else
            ++out.counts[p];
    }
    out.avg_persistence = kept.empty() ? 0.0 : sum / static_cast<double>(kept.size());
    return out;
}

}  // namespace hoip
