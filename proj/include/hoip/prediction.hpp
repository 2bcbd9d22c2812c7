#ifndef HOIP_PREDICTION_HPP
#define HOIP_PREDICTION_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hoip/error.hpp"
#include "hoip/features.hpp"
#include "hoip/hypergraph.hpp"
#include "hoip/persistence.hpp"

namespace hoip {

enum class Problem { GroupPersistence, NodePersistence };

struct DatasetProvenance {
    std::string dataset;
    Problem problem = Problem::GroupPersistence;
    int k = 2;
    int ts = 5;
    int tp = 10;
    bool include_past = false;
    bool include_t0 = false;
    std::uint64_t seed = 0;
};

// Feature rows plus regression targets. Targets always lie in [0, Tp].
struct LabeledDataset {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    std::vector<std::string> feature_names;
    std::vector<std::string> row_names;  // HOI node tuples / node ids (original ids)
    DatasetProvenance prov;

    std::size_t size() const { return y.size(); }
    std::size_t arity() const { return feature_names.size(); }
    // Copy keeping only the given feature columns (order preserved).
    LabeledDataset select_features(std::span<const int> keep) const;
};

struct BuildOptions {
    PagerankOptions pagerank;
    bool include_t0 = false;  // feature window starts at t0 instead of t0+1
    int n_threads = 1;
};

// Problem 1 rows: 8 group + 8 aggregated node features per non-excluded HOI,
// target = persistence over the HOI's persistence window.
LabeledDataset build_group_dataset(const TemporalHypergraph& h, int k, int ts, int tp,
                                   bool include_past,
                                   std::optional<std::size_t> cap = std::nullopt,
                                   std::uint64_t seed = 0, const BuildOptions& opt = {});

// Problem 2 rows: 8 node features per node with a defined k-node persistence,
// feature window anchored at the node's first size->=k appearance.
LabeledDataset build_node_dataset(const TemporalHypergraph& h, int k, int ts, int tp,
                                  bool include_past = false, const BuildOptions& opt = {});

// Seeded shuffle + prefix split. Throws when either side would be empty.
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& ds, double train_fraction,
                                                std::uint64_t seed);

struct MeanModel {
    double mean = 0.0;
    double predict(std::span<const double>) const { return mean; }
};

struct LinearModel {
    std::vector<double> coef;
    double intercept = 0.0;
    double predict(std::span<const double> x) const {
        double v = intercept;
        for (std::size_t i = 0; i < coef.size(); ++i) v += coef[i] * x[i];
        return v;
    }
};

struct ForestOptions {
    int n_trees = 30;
    int max_depth = 10;
    int min_samples_split = 2;
    int n_threads = 1;
};

// One regression tree in flat-array form; children of internal nodes are
// indices into `nodes`, leaves have feature == -1 and predict `value`.
struct RegressionTree {
    struct Node {
        int feature = -1;
        double threshold = 0.0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        double value = 0.0;
    };
    std::vector<Node> nodes;

    double predict(std::span<const double> x) const;
};

struct ForestModel {
    std::vector<RegressionTree> trees;
    // Per-feature variance-reduction total, averaged over trees.
    std::vector<double> importance_raw;
    int n_features = 0;
    std::uint64_t seed = 0;

    double predict(std::span<const double> x) const;
    std::string to_json() const;
};

MeanModel train_mean(const LabeledDataset& train);
// Normal equations with a small ridge term so collinear features stay solvable.
LinearModel train_linear(const LabeledDataset& train, double ridge = 1e-8);
// Bootstrap forest, variance-reduction splits over random feature subsets of
// size ceil(F/3). Deterministic: tree t uses stream mix_seed(seed, t) even
// when trees train in parallel.
ForestModel train_forest(const LabeledDataset& train, const ForestOptions& opt = {},
                         std::uint64_t seed = 0);

struct EvalReport {
    std::optional<double> r_squared;  // absent when test targets are constant
    double rmse = 0.0;
    std::size_t n_test = 0;
};

template <typename Model>
EvalReport evaluate(const Model& model, const LabeledDataset& test) {
    if (test.size() == 0) throw EmptyDatasetError("evaluate: empty test set");
    double sse = 0.0, mean = 0.0;
    for (double t : test.y) mean += t;
    mean /= static_cast<double>(test.size());
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        double pred = model.predict(std::span<const double>(test.x[i]));
        double err = pred - test.y[i];
        sse += err * err;
        ss_tot += (test.y[i] - mean) * (test.y[i] - mean);
    }
    EvalReport rep;
    rep.n_test = test.size();
    rep.rmse = std::sqrt(sse / static_cast<double>(test.size()));
    if (ss_tot > 0.0) rep.r_squared = 1.0 - sse / ss_tot;
    return rep;
}

struct ImportanceReport {
    std::vector<double> raw;         // mean variance reduction per feature
    std::vector<double> normalized;  // raw scaled to sum 1 (all zero if raw sums to 0)
    std::vector<int> ranking;        // feature indices, most important first
};

ImportanceReport gini_importance(const ForestModel& model);

struct SelectionStep {
    int n_features = 0;
    double rmse = 0.0;
    std::vector<int> active;  // feature indices in the model at this step
    int dropped = -1;         // feature dropped after this step (-1 on the last)
};

// Backward elimination by Gini importance: train, record test RMSE, drop the
// least important feature, repeat down to one feature.
std::vector<SelectionStep> feature_selection_sweep(const LabeledDataset& ds,
                                                   double train_fraction, std::uint64_t seed,
                                                   const ForestOptions& opt = {});

struct PeriodCell {
    int ts = 0;
    bool include_past = false;
    bool absent = false;  // empty dataset for this setting
    double rmse_forest = 0.0;
    double rmse_mean = 0.0;
    double improvement_pct = 0.0;
    std::size_t n_rows = 0;
};

// Rebuild dataset and retrain per (Ts, past) cell; improvement is the RMSE
// reduction of the forest relative to the mean baseline, in percent.
std::vector<PeriodCell> observation_period_sweep(const TemporalHypergraph& h, Problem problem,
                                                 int k, std::span<const int> ts_list,
                                                 std::span<const bool> past_flags, int tp,
                                                 double train_fraction, std::uint64_t seed,
                                                 const ForestOptions& forest_opt = {},
                                                 const BuildOptions& build_opt = {},
                                                 std::optional<std::size_t> cap = std::nullopt);

}  // namespace hoip

#endif
