#include "hoip/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "hoip/error.hpp"
#include "hoip/parallel.hpp"
#include "hoip/rng.hpp"

namespace hoip {

LabeledDataset LabeledDataset::select_features(std::span<const int> keep) const {
    LabeledDataset out;
    out.y = y;
    out.row_names = row_names;
    out.prov = prov;
    out.feature_names.reserve(keep.size());
    for (int f : keep) out.feature_names.push_back(feature_names[static_cast<std::size_t>(f)]);
    out.x.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.x[i].reserve(keep.size());
        for (int f : keep) out.x[i].push_back(x[i][static_cast<std::size_t>(f)]);
    }
    return out;
}

namespace {

std::string join_original_ids(const TemporalHypergraph& h, std::span<const NodeId> s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += '|';
        out += std::to_string(h.original_id(s[i]));
    }
    return out;
}

struct ContextPool {
    std::vector<std::pair<Unit, Unit>> keys;
    std::vector<std::unique_ptr<WindowContext>> contexts;
    std::map<std::pair<Unit, Unit>, int> index;

    int key_of(Unit lo, Unit hi) {
        auto [it, fresh] = index.emplace(std::make_pair(lo, hi), static_cast<int>(keys.size()));
        if (fresh) keys.emplace_back(lo, hi);
        return it->second;
    }
    void build(const TemporalHypergraph& h, const BuildOptions& opt) {
        contexts.resize(keys.size());
        parallel_for(keys.size(), opt.n_threads, [&](std::size_t i) {
            contexts[i] = std::make_unique<WindowContext>(h, keys[i].first, keys[i].second,
                                                          opt.pagerank);
        }, 1);
    }
};

}  // namespace

LabeledDataset build_group_dataset(const TemporalHypergraph& h, int k, int ts, int tp,
                                   bool include_past, std::optional<std::size_t> cap,
                                   std::uint64_t seed, const BuildOptions& opt) {
    std::vector<Hoi> hois = enumerate_hois(h, k, cap, seed, opt.n_threads);
    std::vector<std::pair<Hoi, ProtocolWindows>> kept;
    kept.reserve(hois.size());
    for (const Hoi& s : hois) {
        auto w = protocol_windows(s.t0, ts, tp, include_past, h.num_units(), opt.include_t0);
        if (w) kept.emplace_back(s, *w);
    }
    if (kept.empty())
        throw EmptyDatasetError("no eligible HOIs of size " + std::to_string(k) +
                                " (all persistence windows overflow the data range)");

    ContextPool pool;
    std::vector<int> ctx_of(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i)
        ctx_of[i] = pool.key_of(kept[i].second.feature_lo, kept[i].second.feature_hi);
    pool.build(h, opt);

    LabeledDataset ds;
    ds.prov = {"", Problem::GroupPersistence, k, ts, tp, include_past, opt.include_t0, seed};
    for (const std::string& n : GroupFeatures::names()) ds.feature_names.push_back(n);
    for (const std::string& n : NodeFeatures::names()) ds.feature_names.push_back("avg_" + n);
    ds.x.resize(kept.size());
    ds.y.resize(kept.size());
    ds.row_names.resize(kept.size());

    parallel_for(kept.size(), opt.n_threads, [&](std::size_t i) {
        const auto& [s, w] = kept[i];
        const WindowContext& ctx = *pool.contexts[static_cast<std::size_t>(ctx_of[i])];
        GroupFeatures gf = derive_group_features(group_basic(ctx.hw, ctx.proj, s.view()));
        std::vector<NodeFeatures> members;
        members.reserve(s.k);
        for (NodeId v : s.view()) members.push_back(ctx.nodes[v]);
        std::array<double, 8> agg = aggregate_node_features(members);

        std::vector<double>& row = ds.x[i];
        row.reserve(16);
        for (double v : gf.to_array()) row.push_back(v);
        for (double v : agg) row.push_back(v);
        ds.y[i] = persistence(h, s.view(), w.persist_lo, w.persist_hi);
        ds.row_names[i] = join_original_ids(h, s.view());
    });
    return ds;
}

LabeledDataset build_node_dataset(const TemporalHypergraph& h, int k, int ts, int tp,
                                  bool include_past, const BuildOptions& opt) {
    std::size_t n_nodes = static_cast<std::size_t>(h.num_nodes());
    std::vector<Unit> tv(n_nodes, -1);
    for (const Hyperedge& e : h.edges()) {  // edges are unit-sorted: first hit wins
        if (e.size() < k) continue;
        for (NodeId v : e.nodes)
            if (tv[static_cast<std::size_t>(v)] < 0) tv[static_cast<std::size_t>(v)] = e.unit;
    }

    std::vector<Hoi> hois = enumerate_hois(h, k, std::nullopt, 0, opt.n_threads);
    std::vector<std::pair<Hoi, ProtocolWindows>> kept;
    for (const Hoi& s : hois) {
        auto w = protocol_windows(s.t0, ts, tp, false, h.num_units());
        if (w) kept.emplace_back(s, *w);
    }
    std::vector<double> pvals(kept.size(), 0.0);
    parallel_for(kept.size(), opt.n_threads, [&](std::size_t i) {
        const auto& [s, w] = kept[i];
        pvals[i] = persistence(h, s.view(), w.persist_lo, w.persist_hi);
    });
    std::vector<double> acc(n_nodes, 0.0);
    std::vector<std::int64_t> cnt(n_nodes, 0);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        for (NodeId v : kept[i].first.view()) {
            acc[static_cast<std::size_t>(v)] += pvals[i];
            ++cnt[static_cast<std::size_t>(v)];
        }
    }
    std::vector<NodeId> rows;
    for (std::size_t v = 0; v < n_nodes; ++v)
        if (cnt[v] > 0) rows.push_back(static_cast<NodeId>(v));
    if (rows.empty())
        throw EmptyDatasetError("no node has a defined " + std::to_string(k) +
                                "-node persistence under this protocol");

    ContextPool pool;
    std::vector<int> ctx_of(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Unit t = tv[static_cast<std::size_t>(rows[i])];
        Unit lo = include_past ? 0 : (opt.include_t0 ? t : t + 1);
        Unit hi = std::min<Unit>(t + ts, h.num_units() > 0 ? h.num_units() - 1 : 0);
        if (lo > hi) lo = hi;  // feature window fully past the data end: empty-ish window
        ctx_of[i] = pool.key_of(lo, hi);
    }
    pool.build(h, opt);

    LabeledDataset ds;
    ds.prov = {"", Problem::NodePersistence, k, ts, tp, include_past, opt.include_t0, 0};
    for (const std::string& n : NodeFeatures::names()) ds.feature_names.push_back(n);
    ds.x.resize(rows.size());
    ds.y.resize(rows.size());
    ds.row_names.resize(rows.size());
    parallel_for(rows.size(), opt.n_threads, [&](std::size_t i) {
        NodeId v = rows[i];
        const WindowContext& ctx = *pool.contexts[static_cast<std::size_t>(ctx_of[i])];
        std::array<double, 8> f = ctx.nodes[v].to_array();
        ds.x[i].assign(f.begin(), f.end());
        ds.y[i] = acc[static_cast<std::size_t>(v)] / static_cast<double>(cnt[static_cast<std::size_t>(v)]);
        ds.row_names[i] = std::to_string(h.original_id(v));
    });
    return ds;
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& ds, double train_fraction,
                                                std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw ConfigError("train fraction must be in (0, 1)");
    std::size_t n = ds.size();
    std::size_t n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train >= n)
        throw EmptyDatasetError("dataset too small to split: " + std::to_string(n) + " rows");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);
    auto take = [&](std::size_t begin, std::size_t end) {
        LabeledDataset part;
        part.feature_names = ds.feature_names;
        part.prov = ds.prov;
        part.x.reserve(end - begin);
        part.y.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i) {
            part.x.push_back(ds.x[order[i]]);
            part.y.push_back(ds.y[order[i]]);
            if (!ds.row_names.empty()) part.row_names.push_back(ds.row_names[order[i]]);
        }
        return part;
    };
    return {take(0, n_train), take(n_train, n)};
}

MeanModel train_mean(const LabeledDataset& train) {
    if (train.size() == 0) throw EmptyDatasetError("train_mean: empty training set");
    double sum = std::accumulate(train.y.begin(), train.y.end(), 0.0);
    return MeanModel{sum / static_cast<double>(train.size())};
}

LinearModel train_linear(const LabeledDataset& train, double ridge) {
    if (train.size() == 0) throw EmptyDatasetError("train_linear: empty training set");
    std::size_t f = train.arity();
    std::size_t d = f + 1;  // intercept first
    std::vector<double> xtx(d * d, 0.0), xty(d, 0.0);
    for (std::size_t r = 0; r < train.size(); ++r) {
        const std::vector<double>& row = train.x[r];
        auto at = [&](std::size_t j) { return j == 0 ? 1.0 : row[j - 1]; };
        for (std::size_t i = 0; i < d; ++i) {
            xty[i] += at(i) * train.y[r];
            for (std::size_t j = i; j < d; ++j) xtx[i * d + j] += at(i) * at(j);
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        xtx[i * d + i] += ridge;
        for (std::size_t j = 0; j < i; ++j) xtx[i * d + j] = xtx[j * d + i];
    }
    // Cholesky; the ridge keeps the matrix positive definite.
    std::vector<double> chol(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = xtx[i * d + j];
            for (std::size_t t = 0; t < j; ++t) s -= chol[i * d + t] * chol[j * d + t];
            if (i == j) {
                if (s <= 0.0) throw NumericError("train_linear: matrix not positive definite");
                chol[i * d + i] = std::sqrt(s);
            } else {
                chol[i * d + j] = s / chol[j * d + j];
            }
        }
    }
    std::vector<double> z(d, 0.0), beta(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        double s = xty[i];
        for (std::size_t t = 0; t < i; ++t) s -= chol[i * d + t] * z[t];
        z[i] = s / chol[i * d + i];
    }
    for (std::size_t ii = d; ii-- > 0;) {
        double s = z[ii];
        for (std::size_t t = ii + 1; t < d; ++t) s -= chol[t * d + ii] * beta[t];
        beta[ii] = s / chol[ii * d + ii];
    }
    LinearModel m;
    m.intercept = beta[0];
    m.coef.assign(beta.begin() + 1, beta.end());
    return m;
}

namespace {

// CART regression tree on a bootstrap sample; gains accumulate into feat_gain.
class TreeBuilder {
public:
    TreeBuilder(const LabeledDataset& train, const ForestOptions& opt, std::uint64_t tree_seed,
                std::vector<double>& feat_gain)
        : x_(train.x), y_(train.y), n_features_(static_cast<int>(train.arity())), opt_(opt),
          rng_(tree_seed), feat_gain_(feat_gain) {
        subset_size_ = (n_features_ + 2) / 3;  // ceil(F/3)
        if (subset_size_ < 1) subset_size_ = 1;
        feature_pool_.resize(static_cast<std::size_t>(n_features_));
        std::iota(feature_pool_.begin(), feature_pool_.end(), 0);
    }

    RegressionTree build() {
        std::size_t n = y_.size();
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i)
            idx[i] = static_cast<std::size_t>(rng_.below(n));  // bootstrap, with replacement
        tree_.nodes.clear();
        grow(idx, 0, n, 0);
        return std::move(tree_);
    }

private:
    struct Sums {
        double sum = 0.0, sum2 = 0.0;
        void add(double v) {
            sum += v;
            sum2 += v * v;
        }
        double sse(std::size_t n) const {
            return n == 0 ? 0.0 : sum2 - sum * sum / static_cast<double>(n);
        }
    };

    // Grow the subtree over idx[begin, end); returns its node index.
    std::int32_t grow(std::vector<std::size_t>& idx, std::size_t begin, std::size_t end,
                      int depth) {
        std::size_t n = end - begin;
        Sums total;
        for (std::size_t i = begin; i < end; ++i) total.add(y_[idx[i]]);
        double node_sse = total.sse(n);
        double mean = total.sum / static_cast<double>(n);

        std::int32_t self = static_cast<std::int32_t>(tree_.nodes.size());
        tree_.nodes.push_back({});
        tree_.nodes[static_cast<std::size_t>(self)].value = mean;
        if (depth >= opt_.max_depth || n < static_cast<std::size_t>(opt_.min_samples_split) ||
            node_sse <= 1e-12)
            return self;

        // Random feature order; inspect until ceil(F/3) non-constant candidates
        // have been scanned (constant-in-node features do not use up the quota).
        for (int i = 0; i < n_features_ - 1; ++i) {
            std::size_t j = static_cast<std::size_t>(i) +
                            static_cast<std::size_t>(rng_.below(
                                static_cast<std::uint64_t>(n_features_ - i)));
            std::swap(feature_pool_[static_cast<std::size_t>(i)], feature_pool_[j]);
        }

        int best_feature = -1;
        int inspected = 0;
        double best_gain = 1e-12, best_threshold = 0.0;
        std::vector<std::pair<double, double>> scratch;  // (feature value, target)
        scratch.reserve(n);
        for (int fi = 0; fi < n_features_ && inspected < subset_size_; ++fi) {
            int f = feature_pool_[static_cast<std::size_t>(fi)];
            scratch.clear();
            for (std::size_t i = begin; i < end; ++i)
                scratch.emplace_back(x_[idx[i]][static_cast<std::size_t>(f)], y_[idx[i]]);
            std::sort(scratch.begin(), scratch.end());
            if (scratch.front().first == scratch.back().first) continue;
            ++inspected;
            Sums left;
            for (std::size_t i = 1; i < n; ++i) {
                left.add(scratch[i - 1].second);
                if (scratch[i - 1].first == scratch[i].first) continue;
                std::size_t nl = i, nr = n - i;
                Sums right{total.sum - left.sum, total.sum2 - left.sum2};
                double gain = node_sse - left.sse(nl) - right.sse(nr);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = f;
                    best_threshold = 0.5 * (scratch[i - 1].first + scratch[i].first);
                }
            }
        }
        if (best_feature < 0) return self;

        auto mid_it = std::partition(idx.begin() + static_cast<std::ptrdiff_t>(begin),
                                     idx.begin() + static_cast<std::ptrdiff_t>(end),
                                     [&](std::size_t i) {
                                         return x_[i][static_cast<std::size_t>(best_feature)] <=
                                                best_threshold;
                                     });
        std::size_t mid = static_cast<std::size_t>(mid_it - idx.begin());
        if (mid == begin || mid == end) return self;  // numeric edge: no real split

        feat_gain_[static_cast<std::size_t>(best_feature)] += best_gain;
        tree_.nodes[static_cast<std::size_t>(self)].feature = best_feature;
        tree_.nodes[static_cast<std::size_t>(self)].threshold = best_threshold;
        std::int32_t left = grow(idx, begin, mid, depth + 1);
        tree_.nodes[static_cast<std::size_t>(self)].left = left;
        std::int32_t right = grow(idx, mid, end, depth + 1);
        tree_.nodes[static_cast<std::size_t>(self)].right = right;
        return self;
    }

    const std::vector<std::vector<double>>& x_;
    const std::vector<double>& y_;
    int n_features_;
    ForestOptions opt_;
    Rng rng_;
    std::vector<double>& feat_gain_;
    std::vector<int> feature_pool_;
    int subset_size_ = 1;
    RegressionTree tree_;
};

}  // namespace

double RegressionTree::predict(std::span<const double> x) const {
    std::size_t cur = 0;
    while (nodes[cur].feature >= 0) {
        const Node& nd = nodes[cur];
        cur = static_cast<std::size_t>(x[static_cast<std::size_t>(nd.feature)] <= nd.threshold
                                           ? nd.left
                                           : nd.right);
    }
    return nodes[cur].value;
}

double ForestModel::predict(std::span<const double> x) const {
    double sum = 0.0;
    for (const RegressionTree& t : trees) sum += t.predict(x);
    return trees.empty() ? 0.0 : sum / static_cast<double>(trees.size());
}

std::string ForestModel::to_json() const {
    nlohmann::json j;
    j["n_trees"] = trees.size();
    j["n_features"] = n_features;
    j["seed"] = seed;
    j["importance_raw"] = importance_raw;
    nlohmann::json jtrees = nlohmann::json::array();
    for (const RegressionTree& t : trees) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const RegressionTree::Node& nd : t.nodes) {
            nodes.push_back({{"feature", nd.feature},
                             {"threshold", nd.threshold},
                             {"left", nd.left},
                             {"right", nd.right},
                             {"value", nd.value}});
        }
        jtrees.push_back({{"nodes", nodes}});
    }
    j["trees"] = jtrees;
    return j.dump();
}

ForestModel train_forest(const LabeledDataset& train, const ForestOptions& opt,
                         std::uint64_t seed) {
    if (train.size() == 0) throw EmptyDatasetError("train_forest: empty training set");
    if (opt.n_trees < 1) throw ConfigError("forest needs at least one tree");
    ForestModel model;
    model.n_features = static_cast<int>(train.arity());
    model.seed = seed;
    model.trees.resize(static_cast<std::size_t>(opt.n_trees));
    std::vector<std::vector<double>> gains(static_cast<std::size_t>(opt.n_trees),
                                           std::vector<double>(train.arity(), 0.0));
    parallel_for(static_cast<std::size_t>(opt.n_trees), opt.n_threads, [&](std::size_t t) {
        TreeBuilder builder(train, opt, mix_seed(seed, t), gains[t]);
        model.trees[t] = builder.build();
    }, 1);
    model.importance_raw.assign(train.arity(), 0.0);
    for (const auto& g : gains)
        for (std::size_t f = 0; f < g.size(); ++f) model.importance_raw[f] += g[f];
    for (double& v : model.importance_raw) v /= static_cast<double>(opt.n_trees);
    return model;
}

ImportanceReport gini_importance(const ForestModel& model) {
    ImportanceReport rep;
    rep.raw = model.importance_raw;
    double total = std::accumulate(rep.raw.begin(), rep.raw.end(), 0.0);
    rep.normalized.assign(rep.raw.size(), 0.0);
    if (total > 0.0)
        for (std::size_t i = 0; i < rep.raw.size(); ++i) rep.normalized[i] = rep.raw[i] / total;
    rep.ranking.resize(rep.raw.size());
    std::iota(rep.ranking.begin(), rep.ranking.end(), 0);
    std::sort(rep.ranking.begin(), rep.ranking.end(), [&](int a, int b) {
        if (rep.raw[static_cast<std::size_t>(a)] != rep.raw[static_cast<std::size_t>(b)])
            return rep.raw[static_cast<std::size_t>(a)] > rep.raw[static_cast<std::size_t>(b)];
        return a < b;
    });
    return rep;
}

std::vector<SelectionStep> feature_selection_sweep(const LabeledDataset& ds,
                                                   double train_fraction, std::uint64_t seed,
                                                   const ForestOptions& opt) {
    auto [train, test] = split(ds, train_fraction, seed);
    std::vector<int> active(ds.arity());
    std::iota(active.begin(), active.end(), 0);
    std::vector<SelectionStep> steps;
    while (!active.empty()) {
        LabeledDataset sub_train = train.select_features(active);
        LabeledDataset sub_test = test.select_features(active);
        ForestModel forest = train_forest(sub_train, opt, seed);
        SelectionStep step;
        step.n_features = static_cast<int>(active.size());
        step.rmse = evaluate(forest, sub_test).rmse;
        step.active = active;
        if (active.size() == 1) {
            steps.push_back(step);
            break;
        }
        ImportanceReport imp = gini_importance(forest);
        std::size_t drop_local = 0;
        for (std::size_t i = 1; i < imp.raw.size(); ++i)
            if (imp.raw[i] < imp.raw[drop_local]) drop_local = i;
        step.dropped = active[drop_local];
        steps.push_back(step);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(drop_local));
    }
    return steps;
}

std::vector<PeriodCell> observation_period_sweep(const TemporalHypergraph& h, Problem problem,
                                                 int k, std::span<const int> ts_list,
                                                 std::span<const bool> past_flags, int tp,
                                                 double train_fraction, std::uint64_t seed,
                                                 const ForestOptions& forest_opt,
                                                 const BuildOptions& build_opt,
                                                 std::optional<std::size_t> cap) {
    std::vector<PeriodCell> cells;
    for (bool past : past_flags) {
        for (int ts : ts_list) {
            PeriodCell cell;
            cell.ts = ts;
            cell.include_past = past;
            try {
                LabeledDataset ds =
                    problem == Problem::GroupPersistence
                        ? build_group_dataset(h, k, ts, tp, past, cap, seed, build_opt)
                        : build_node_dataset(h, k, ts, tp, past, build_opt);
                auto [train, test] = split(ds, train_fraction, seed);
                MeanModel mean = train_mean(train);
                ForestModel forest = train_forest(train, forest_opt, seed);
                cell.rmse_mean = evaluate(mean, test).rmse;
                cell.rmse_forest = evaluate(forest, test).rmse;
                cell.improvement_pct =
                    cell.rmse_mean > 0.0
                        ? 100.0 * (cell.rmse_mean - cell.rmse_forest) / cell.rmse_mean
                        : 0.0;
                cell.n_rows = ds.size();
            } catch (const EmptyDatasetError&) {
                cell.absent = true;
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

}  // namespace hoip
