#include "hoip/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "hoip/error.hpp"

namespace hoip {

namespace {

// Parse every whitespace-separated token of `path` as int64.
std::vector<std::int64_t> read_int_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    std::vector<std::int64_t> out;
    std::string tok;
    while (in >> tok) {
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw FormatError("non-integer token '" + tok + "' in " + path);
        out.push_back(value);
    }
    return out;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

void TemporalHypergraph::adopt(std::vector<Hyperedge> edges) {
    edges_ = std::move(edges);
    std::sort(edges_.begin(), edges_.end(), [](const Hyperedge& a, const Hyperedge& b) {
        if (a.unit != b.unit) return a.unit < b.unit;
        return a.id < b.id;
    });
    rebuild_indexes();
}

void TemporalHypergraph::rebuild_indexes() {
    num_units_ = edges_.empty() ? 0 : edges_.back().unit + 1;
    if (num_units_ >= (1 << 24))
        throw ConfigError("too many time units (" + std::to_string(num_units_) +
                          "); increase unit_width");
    node_index_.assign(static_cast<std::size_t>(num_nodes_), {});
    time_index_.assign(static_cast<std::size_t>(num_units_), {});
    pos_by_id_.clear();
    pos_by_id_.reserve(edges_.size() * 2);
    for (std::uint32_t pos = 0; pos < edges_.size(); ++pos) {
        const Hyperedge& e = edges_[pos];
        if (e.size() > 255) throw ConfigError("hyperedge size above 255 is not supported");
        pos_by_id_.emplace(e.id, pos);
        time_index_[static_cast<std::size_t>(e.unit)].push_back(e.id);
        Posting p{e.id, (static_cast<std::uint32_t>(e.unit) << 8) |
                            static_cast<std::uint32_t>(e.size())};
        for (NodeId v : e.nodes) node_index_[static_cast<std::size_t>(v)].push_back(p);
    }
    for (auto& lst : node_index_) std::sort(lst.begin(), lst.end());
    for (auto& lst : time_index_) std::sort(lst.begin(), lst.end());
}

TemporalHypergraph TemporalHypergraph::from_unit_edges(
    std::vector<std::pair<Unit, std::vector<NodeId>>> raw, int num_nodes_hint, int max_size) {
    std::vector<Hyperedge> edges;
    edges.reserve(raw.size());
    NodeId max_node = -1;
    EdgeId next_id = 0;
    for (auto& [unit, nodes] : raw) {
        if (unit < 0) throw FormatError("negative time unit in edge input");
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        if (nodes.size() < 2 || static_cast<int>(nodes.size()) > max_size) continue;
        if (nodes.front() < 0) throw FormatError("negative node id in edge input");
        max_node = std::max(max_node, nodes.back());
        Hyperedge e;
        e.id = next_id++;
        e.unit = unit;
        e.raw_ts = unit;
        e.nodes = std::move(nodes);
        edges.push_back(std::move(e));
    }
    TemporalHypergraph h;
    h.num_nodes_ = std::max(num_nodes_hint, static_cast<int>(max_node) + 1);
    h.adopt(std::move(edges));
    return h;
}

std::span<const Posting> TemporalHypergraph::edges_of_node(NodeId v) const {
    if (!has_node(v)) return {};
    return node_index_[static_cast<std::size_t>(v)];
}

std::span<const EdgeId> TemporalHypergraph::edges_at(Unit t) const {
    if (t < 0 || t >= num_units_) return {};
    return time_index_[static_cast<std::size_t>(t)];
}

TemporalHypergraph TemporalHypergraph::window(Unit lo, Unit hi) const {
    if (lo > hi) throw std::invalid_argument("window: lo > hi");
    auto first = std::lower_bound(edges_.begin(), edges_.end(), lo,
                                  [](const Hyperedge& e, Unit u) { return e.unit < u; });
    auto last = std::upper_bound(edges_.begin(), edges_.end(), hi,
                                 [](Unit u, const Hyperedge& e) { return u < e.unit; });
    TemporalHypergraph out;
    out.num_nodes_ = num_nodes_;
    out.unit_width_ = unit_width_;
    out.t_min_ = t_min_;
    out.original_ids_ = original_ids_;
    out.edges_.assign(first, last);
    out.rebuild_indexes();
    return out;
}

std::vector<EdgeId> TemporalHypergraph::edges_containing(std::span<const NodeId> s) const {
    static thread_local std::vector<Posting> postings;
    edges_containing_into(s, postings);
    std::vector<EdgeId> out;
    out.reserve(postings.size());
    for (const Posting& p : postings) out.push_back(p.id);
    return out;
}

void TemporalHypergraph::edges_containing_into(std::span<const NodeId> s,
                                               std::vector<Posting>& out) const {
    if (s.empty()) throw std::invalid_argument("edges_containing: empty node set");
    out.clear();
    static thread_local std::vector<std::span<const Posting>> lists;
    lists.clear();
    for (NodeId v : s) {
        if (!has_node(v)) return;
        lists.push_back(node_index_[static_cast<std::size_t>(v)]);
        if (lists.back().empty()) return;
    }
    std::sort(lists.begin(), lists.end(), [](auto a, auto b) { return a.size() < b.size(); });
    out.assign(lists[0].begin(), lists[0].end());
    static thread_local std::vector<Posting> scratch;
    for (std::size_t i = 1; i < lists.size() && !out.empty(); ++i) {
        scratch.clear();
        std::set_intersection(out.begin(), out.end(), lists[i].begin(), lists[i].end(),
                              std::back_inserter(scratch));
        out.swap(scratch);
    }
}

std::vector<EdgeId> TemporalHypergraph::edges_containing_at(std::span<const NodeId> s,
                                                            Unit t) const {
    std::vector<EdgeId> all = edges_containing(s);
    std::span<const EdgeId> at = edges_at(t);
    std::vector<EdgeId> out;
    std::set_intersection(all.begin(), all.end(), at.begin(), at.end(),
                          std::back_inserter(out));
    return out;
}

std::vector<NodeId> TemporalHypergraph::neighbors(NodeId v) const {
    std::vector<NodeId> out;
    if (!has_node(v)) return out;
    std::vector<char> seen(static_cast<std::size_t>(num_nodes_), 0);
    for (const Posting& p : node_index_[static_cast<std::size_t>(v)]) {
        for (NodeId u : edge(p.id).nodes) {
            if (u != v && !seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                out.push_back(u);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void TemporalHypergraph::canonical_dump(std::ostream& out) const {
    std::vector<const Hyperedge*> order;
    order.reserve(edges_.size());
    for (const Hyperedge& e : edges_) order.push_back(&e);
    std::sort(order.begin(), order.end(), [](const Hyperedge* a, const Hyperedge* b) {
        if (a->unit != b->unit) return a->unit < b->unit;
        return a->nodes < b->nodes;
    });
    for (const Hyperedge* e : order) {
        out << e->unit << '\t';
        for (std::size_t i = 0; i < e->nodes.size(); ++i) {
            if (i) out << ',';
            out << e->nodes[i];
        }
        out << '\n';
    }
}

TemporalHypergraph load_simplex_triple(const std::string& nverts_path,
                                       const std::string& simplices_path,
                                       const std::string& times_path, std::int64_t unit_width,
                                       int max_size, LoadStats* stats) {
    if (unit_width <= 0) throw ConfigError("unit_width must be positive");
    if (max_size < 2) throw ConfigError("max_size must be at least 2");
    std::vector<std::int64_t> nverts = read_int_column(nverts_path);
    std::vector<std::int64_t> simplices = read_int_column(simplices_path);
    std::vector<std::int64_t> times = read_int_column(times_path);

    if (nverts.size() != times.size())
        throw FormatError("nverts/times length mismatch: " + std::to_string(nverts.size()) +
                          " vs " + std::to_string(times.size()));
    std::int64_t expected_tokens = 0;
    for (std::int64_t n : nverts) {
        if (n < 0) throw FormatError("negative simplex size in " + nverts_path);
        expected_tokens += n;
    }
    if (expected_tokens != static_cast<std::int64_t>(simplices.size()))
        throw FormatError("simplices token count " + std::to_string(simplices.size()) +
                          " does not match sum of nverts " + std::to_string(expected_tokens));

    // First pass: normalize node lists on original ids, apply the size filter.
    struct RawEdge {
        std::vector<std::int64_t> nodes;
        std::int64_t ts;
    };
    std::vector<RawEdge> retained;
    retained.reserve(nverts.size());
    LoadStats st;
    st.simplices_read = static_cast<std::int64_t>(nverts.size());
    std::unordered_map<std::int64_t, NodeId> remap;
    {
        std::unordered_map<std::int64_t, char> raw_nodes;
        std::size_t cursor = 0;
        for (std::size_t i = 0; i < nverts.size(); ++i) {
            std::size_t n = static_cast<std::size_t>(nverts[i]);
            std::vector<std::int64_t> nodes(simplices.begin() + static_cast<std::ptrdiff_t>(cursor),
                                            simplices.begin() + static_cast<std::ptrdiff_t>(cursor + n));
            cursor += n;
            for (std::int64_t v : nodes) raw_nodes.emplace(v, 0);
            std::sort(nodes.begin(), nodes.end());
            nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
            if (nodes.size() < 2 || static_cast<int>(nodes.size()) > max_size) continue;
            retained.push_back({std::move(nodes), times[i]});
        }
        st.nodes_raw = static_cast<std::int64_t>(raw_nodes.size());
    }
    st.edges_kept = static_cast<std::int64_t>(retained.size());

    TemporalHypergraph h;
    h.unit_width_ = unit_width;
    if (!retained.empty()) {
        std::int64_t ts_min = retained[0].ts, ts_max = retained[0].ts;
        for (const RawEdge& e : retained) {
            ts_min = std::min(ts_min, e.ts);
            ts_max = std::max(ts_max, e.ts);
        }
        st.raw_ts_min = ts_min;
        st.raw_ts_max = ts_max;
        h.t_min_ = ts_min;

        std::vector<Hyperedge> edges;
        edges.reserve(retained.size());
        for (std::size_t i = 0; i < retained.size(); ++i) {
            Hyperedge e;
            e.id = static_cast<EdgeId>(i);
            e.raw_ts = retained[i].ts;
            e.unit = static_cast<Unit>(floor_div(retained[i].ts - ts_min, unit_width));
            e.nodes.reserve(retained[i].nodes.size());
            for (std::int64_t orig : retained[i].nodes) {
                auto [it, fresh] = remap.emplace(orig, static_cast<NodeId>(remap.size()));
                (void)fresh;
                e.nodes.push_back(it->second);
            }
            std::sort(e.nodes.begin(), e.nodes.end());
            edges.push_back(std::move(e));
        }
        h.num_nodes_ = static_cast<int>(remap.size());
        h.original_ids_.resize(remap.size());
        for (const auto& [orig, dense] : remap)
            h.original_ids_[static_cast<std::size_t>(dense)] = orig;
        h.adopt(std::move(edges));
    }
    st.nodes_kept = h.num_nodes_;
    if (stats) *stats = st;
    return h;
}

}  // namespace hoip
