// hoip: measure, analyze and predict the persistence of higher-order
// interactions in timestamped hypergraphs.
//
// Subcommands: ingest, persist-dist, correlate, predict, importance, select,
// periods, nullcmp. Every artifact (except the canonical dump, whose format
// is fixed) carries the resolved config and seed in a header comment, so any
// table can be traced back to the exact run that produced it.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hoip/error.hpp"
#include "hoip/features.hpp"
#include "hoip/hypergraph.hpp"
#include "hoip/nullmodel.hpp"
#include "hoip/parallel.hpp"
#include "hoip/persistence.hpp"
#include "hoip/prediction.hpp"
#include "hoip/projection.hpp"
#include "hoip/stats.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunConfig {
    std::string name = "data";
    std::string nverts, simplices, times;
    std::int64_t unit_width = 1;
    int max_size = hoip::kDefaultMaxEdgeSize;
    int window_w = 30;
    std::vector<int> ks{2, 3, 4};
    int ts = 5;
    int tp = 10;
    bool include_past = false;
    bool include_t0 = false;
    std::uint64_t seed = 42;
    std::uint64_t cap = 0;  // 0: automatic (only capped above the auto threshold)
    int threads = 1;
    int trees = 30;
    int max_depth = 10;
    bool pagerank_weighted = true;
    int nmi_bins = 20;
    std::string nmi_norm = "sqrt";
    double frac_group = 2.0 / 3.0;
    double frac_node = 0.8;
    std::vector<int> ts_list{1, 3, 5};
    std::string null_mode = "both";
    std::string out_dir = "out";
    bool no_timestamp = false;
    bool dump_hois = false;
    bool dump_features = false;
    bool dump_model = false;

    json to_json() const {
        json j;
        j["dataset"] = name;
        j["nverts"] = nverts;
        j["simplices"] = simplices;
        j["times"] = times;
        j["unit_width"] = unit_width;
        j["max_size"] = max_size;
        j["window"] = window_w;
        j["k"] = ks;
        j["ts"] = ts;
        j["tp"] = tp;
        j["include_past"] = include_past;
        j["include_t0"] = include_t0;
        j["seed"] = seed;
        j["cap"] = cap;
        j["threads"] = threads;
        j["trees"] = trees;
        j["max_depth"] = max_depth;
        j["pagerank_weighted"] = pagerank_weighted;
        j["nmi_bins"] = nmi_bins;
        j["nmi_norm"] = nmi_norm;
        j["train_fraction_group"] = frac_group;
        j["train_fraction_node"] = frac_node;
        j["ts_list"] = ts_list;
        j["null_mode"] = null_mode;
        return j;
    }
};

// Flag values as parsed; only set fields override the config file.
struct RawArgs {
    std::string config_path, dataset;
    std::optional<std::string> prefix, nverts, simplices, times, out_dir, nmi_norm, null_mode;
    std::optional<std::int64_t> unit_width;
    std::optional<int> max_size, window_w, ts, tp, threads, trees, max_depth, nmi_bins;
    std::optional<std::uint64_t> seed, cap;
    std::vector<int> ks, ts_list;
    bool include_past = false, include_t0 = false, no_timestamp = false;
    std::optional<bool> pagerank_weighted;
    bool dump_hois = false, dump_features = false, dump_model = false;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void apply_dataset_entry(RunConfig& cfg, const json& entry, const std::string& name) {
    cfg.name = name;
    if (entry.contains("prefix")) {
        std::string p = entry["prefix"].get<std::string>();
        cfg.nverts = p + "-nverts.txt";
        cfg.simplices = p + "-simplices.txt";
        cfg.times = p + "-times.txt";
    }
    if (entry.contains("nverts")) cfg.nverts = entry["nverts"].get<std::string>();
    if (entry.contains("simplices")) cfg.simplices = entry["simplices"].get<std::string>();
    if (entry.contains("times")) cfg.times = entry["times"].get<std::string>();
    if (entry.contains("unit_width")) cfg.unit_width = entry["unit_width"].get<std::int64_t>();
    if (entry.contains("max_size")) cfg.max_size = entry["max_size"].get<int>();
    if (entry.contains("window")) cfg.window_w = entry["window"].get<int>();
}

RunConfig resolve_config(const RawArgs& args) {
    RunConfig cfg;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw hoip::IoError("cannot open config file: " + args.config_path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw hoip::FormatError("config parse error: " + std::string(e.what()));
        }
        if (j.contains("datasets")) {
            const json& ds = j["datasets"];
            std::string pick = args.dataset;
            if (pick.empty()) {
                if (ds.size() != 1)
                    throw hoip::ConfigError("config defines several datasets; use --dataset");
                pick = ds.begin().key();
            }
            if (!ds.contains(pick))
                throw hoip::ConfigError("dataset '" + pick + "' not in config");
            apply_dataset_entry(cfg, ds[pick], pick);
        }
        auto opt = [&](const char* key, auto& field) {
            if (j.contains(key)) field = j[key].get<std::decay_t<decltype(field)>>();
        };
        opt("k", cfg.ks);
        opt("ts", cfg.ts);
        opt("tp", cfg.tp);
        opt("include_past", cfg.include_past);
        opt("include_t0", cfg.include_t0);
        opt("seed", cfg.seed);
        opt("cap", cfg.cap);
        opt("threads", cfg.threads);
        opt("trees", cfg.trees);
        opt("max_depth", cfg.max_depth);
        opt("pagerank_weighted", cfg.pagerank_weighted);
        opt("nmi_bins", cfg.nmi_bins);
        opt("nmi_norm", cfg.nmi_norm);
        opt("train_fraction_group", cfg.frac_group);
        opt("train_fraction_node", cfg.frac_node);
        opt("ts_list", cfg.ts_list);
        opt("null_mode", cfg.null_mode);
        opt("out", cfg.out_dir);
        opt("window", cfg.window_w);
    } else if (!args.dataset.empty()) {
        cfg.name = args.dataset;
    }

    if (args.prefix) {
        cfg.nverts = *args.prefix + "-nverts.txt";
        cfg.simplices = *args.prefix + "-simplices.txt";
        cfg.times = *args.prefix + "-times.txt";
        if (args.dataset.empty() && args.config_path.empty())
            cfg.name = fs::path(*args.prefix).filename().string();
    }
    if (args.nverts) cfg.nverts = *args.nverts;
    if (args.simplices) cfg.simplices = *args.simplices;
    if (args.times) cfg.times = *args.times;
    if (args.unit_width) cfg.unit_width = *args.unit_width;
    if (args.max_size) cfg.max_size = *args.max_size;
    if (args.window_w) cfg.window_w = *args.window_w;
    if (!args.ks.empty()) cfg.ks = args.ks;
    if (!args.ts_list.empty()) cfg.ts_list = args.ts_list;
    if (args.ts) cfg.ts = *args.ts;
    if (args.tp) cfg.tp = *args.tp;
    if (args.include_past) cfg.include_past = true;
    if (args.include_t0) cfg.include_t0 = true;
    if (args.seed) cfg.seed = *args.seed;
    if (args.cap) cfg.cap = *args.cap;
    if (args.threads) cfg.threads = *args.threads;
    if (args.trees) cfg.trees = *args.trees;
    if (args.max_depth) cfg.max_depth = *args.max_depth;
    if (args.pagerank_weighted) cfg.pagerank_weighted = *args.pagerank_weighted;
    if (args.nmi_bins) cfg.nmi_bins = *args.nmi_bins;
    if (args.nmi_norm) cfg.nmi_norm = *args.nmi_norm;
    if (args.out_dir) cfg.out_dir = *args.out_dir;
    if (args.null_mode) cfg.null_mode = *args.null_mode;
    cfg.no_timestamp = args.no_timestamp;
    cfg.dump_hois = args.dump_hois;
    cfg.dump_features = args.dump_features;
    cfg.dump_model = args.dump_model;

    if (cfg.nverts.empty() || cfg.simplices.empty() || cfg.times.empty())
        throw hoip::ConfigError("no dataset: pass --config or --prefix/--nverts/--simplices/--times");
    for (int k : cfg.ks)
        if (k < hoip::kMinHoiSize || k > hoip::kMaxHoiSize)
            throw hoip::ConfigError("--k values must be in {2,3,4}");
    if (cfg.threads < 1) throw hoip::ConfigError("--threads must be >= 1");
    if (cfg.nmi_norm != "sqrt" && cfg.nmi_norm != "min" && cfg.nmi_norm != "mean")
        throw hoip::ConfigError("--nmi-norm must be sqrt, min or mean");
    return cfg;
}

hoip::TemporalHypergraph load(const RunConfig& cfg, hoip::LoadStats* stats = nullptr) {
    return hoip::load_simplex_triple(cfg.nverts, cfg.simplices, cfg.times, cfg.unit_width,
                                     cfg.max_size, stats);
}

// Past the auto threshold, HOI universes get a uniform sampling cap per size.
constexpr std::int64_t kAutoCapEdgeThreshold = 1'000'000;
constexpr std::size_t kAutoCap = 1'000'000;

std::optional<std::size_t> effective_cap(const RunConfig& cfg, const hoip::TemporalHypergraph& h) {
    if (cfg.cap > 0) return static_cast<std::size_t>(cfg.cap);
    if (h.num_edges() > kAutoCapEdgeThreshold) return kAutoCap;
    return std::nullopt;
}

hoip::BuildOptions build_options(const RunConfig& cfg) {
    hoip::BuildOptions opt;
    opt.include_t0 = cfg.include_t0;
    opt.n_threads = cfg.threads;
    opt.pagerank.weighted = cfg.pagerank_weighted;
    return opt;
}

hoip::ForestOptions forest_options(const RunConfig& cfg) {
    hoip::ForestOptions opt;
    opt.n_trees = cfg.trees;
    opt.max_depth = cfg.max_depth;
    opt.n_threads = cfg.threads;
    return opt;
}

hoip::NmiOptions nmi_options(const RunConfig& cfg) {
    hoip::NmiOptions opt;
    opt.bins = cfg.nmi_bins;
    opt.norm = cfg.nmi_norm == "min"    ? hoip::NmiOptions::Norm::Min
               : cfg.nmi_norm == "mean" ? hoip::NmiOptions::Norm::Mean
                                        : hoip::NmiOptions::Norm::Sqrt;
    return opt;
}

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class Artifact {
public:
    Artifact(const RunConfig& cfg, const std::string& subcommand, const std::string& filename,
             bool with_header = true)
        : path_(fs::path(cfg.out_dir) / filename) {
        fs::create_directories(cfg.out_dir);
        out_.open(path_);
        if (!out_) throw hoip::IoError("cannot write " + path_.string());
        if (with_header) {
            out_ << "# hoip " << subcommand << "\n";
            out_ << "# config: " << cfg.to_json().dump() << "\n";
            if (!cfg.no_timestamp) out_ << "# generated: " << timestamp_utc() << "\n";
        }
    }
    ~Artifact() { std::cout << "wrote " << path_.string() << "\n"; }
    std::ostream& stream() { return out_; }

private:
    fs::path path_;
    std::ofstream out_;
};

void write_json_artifact(const RunConfig& cfg, const std::string& subcommand,
                         const std::string& filename, json payload) {
    payload["config"] = cfg.to_json();
    if (!cfg.no_timestamp) payload["generated"] = timestamp_utc();
    Artifact art(cfg, subcommand, filename, false);
    art.stream() << payload.dump(2) << "\n";
}

// ---------------------------------------------------------------------------

int cmd_ingest(const RunConfig& cfg) {
    hoip::LoadStats st;
    hoip::TemporalHypergraph h = load(cfg, &st);
    {
        Artifact dump(cfg, "ingest", cfg.name + ".canonical.tsv", /*with_header=*/false);
        h.canonical_dump(dump.stream());
    }
    {
        Artifact nodes(cfg, "ingest", cfg.name + ".nodes.tsv");
        nodes.stream() << "dense_id\toriginal_id\n";
        for (hoip::NodeId v = 0; v < h.num_nodes(); ++v)
            nodes.stream() << v << '\t' << h.original_id(v) << '\n';
    }
    json summary;
    summary["dataset"] = cfg.name;
    summary["nodes"] = h.num_nodes();
    summary["nodes_raw"] = st.nodes_raw;
    summary["hyperedges"] = h.num_edges();
    summary["simplices_read"] = st.simplices_read;
    summary["time_units"] = h.num_units();
    summary["unit_width"] = cfg.unit_width;
    summary["raw_ts_min"] = st.raw_ts_min;
    summary["raw_ts_max"] = st.raw_ts_max;
    write_json_artifact(cfg, "ingest", cfg.name + ".summary.json", summary);
    std::cout << cfg.name << ": nodes=" << h.num_nodes() << " (raw " << st.nodes_raw << ")"
              << " hyperedges=" << h.num_edges() << " (read " << st.simplices_read << ")"
              << " units=" << h.num_units() << "\n";
    return 0;
}

int cmd_persist_dist(const RunConfig& cfg) {
    hoip::TemporalHypergraph h = load(cfg);
    std::optional<std::size_t> cap = effective_cap(cfg, h);
    json fits = json::array();
    std::array<std::optional<double>, 3> avg_by_size, exp_by_size;
    struct Row {
        int k;
        hoip::GlobalPersistence gp;
        std::optional<hoip::PowerLawFit> fit;
    };
    std::vector<Row> rows;
    for (int k : cfg.ks) {
        Row row;
        row.k = k;
        row.gp = hoip::global_persistence(h, k, cfg.window_w, cap, cfg.seed, cfg.threads);
        hoip::PersistenceHistogram hist;
        hist.zero_count = row.gp.zero_count;
        hist.total = row.gp.zero_count;
        for (const auto& [p, c] : row.gp.counts) hist.add(p, c);
        Artifact csv(cfg, "persist-dist", cfg.name + ".persist.k" + std::to_string(k) + ".csv");
        csv.stream() << "persistence,count\n";
        for (const auto& [p, c] : row.gp.counts) csv.stream() << p << ',' << c << '\n';
        try {
            row.fit = hoip::fit_power_law(hist);
        } catch (const hoip::NumericError&) {
            row.fit = std::nullopt;  // fewer than two distinct persistence values
        }
        if (row.gp.n_hois > 0 && k >= 2 && k <= 4) {
            avg_by_size[static_cast<std::size_t>(k - 2)] = row.gp.avg_persistence;
            if (row.fit) exp_by_size[static_cast<std::size_t>(k - 2)] = row.fit->exponent;
        }
        json jf;
        jf["k_size"] = k;
        jf["exponent"] = row.fit ? json(row.fit->exponent) : json();
        jf["r2"] = row.fit ? json(row.fit->r_squared) : json();
        jf["zero_count"] = row.gp.zero_count;
        jf["n_hois"] = row.gp.n_hois;
        jf["avg_persistence"] = row.gp.avg_persistence;
        fits.push_back(jf);
        rows.push_back(std::move(row));

        if (cfg.dump_hois) {
            std::vector<hoip::Hoi> hois = hoip::enumerate_hois(h, k, cap, cfg.seed);
            std::vector<hoip::Hoi> kept;
            for (const hoip::Hoi& s : hois)
                if (static_cast<std::int64_t>(s.t0) + cfg.window_w < h.num_units())
                    kept.push_back(s);
            std::vector<int> pvals(kept.size(), 0);
            hoip::parallel_for(kept.size(), cfg.threads, [&](std::size_t i) {
                pvals[i] = hoip::persistence(h, kept[i].view(), kept[i].t0 + 1,
                                             kept[i].t0 + cfg.window_w);
            });
            Artifact hcsv(cfg, "persist-dist", cfg.name + ".hois.k" + std::to_string(k) + ".csv");
            hcsv.stream() << "k,nodes,t0,persistence\n";
            for (std::size_t i = 0; i < kept.size(); ++i) {
                hcsv.stream() << k << ',';
                auto view = kept[i].view();
                for (std::size_t j = 0; j < view.size(); ++j) {
                    if (j) hcsv.stream() << '|';
                    hcsv.stream() << h.original_id(view[j]);
                }
                hcsv.stream() << ',' << kept[i].t0 << ',' << pvals[i] << '\n';
            }
        }
    }
    write_json_artifact(cfg, "persist-dist", cfg.name + ".fits.json", json{{"fits", fits}});

    std::array<std::optional<double>, 3> rel_avg, rel_exp;
    if (avg_by_size[0] && *avg_by_size[0] != 0.0) rel_avg = hoip::relative_by_size(avg_by_size);
    if (exp_by_size[0] && *exp_by_size[0] != 0.0) rel_exp = hoip::relative_by_size(exp_by_size);
    Artifact table(cfg, "persist-dist", cfg.name + ".table3.csv");
    table.stream() << "k,n_hois,zero_count,r2,exponent,relative_exponent,avg_persistence,"
                      "relative_avg_persistence\n";
    auto cell = [&](const std::optional<double>& v) { return v ? fmt(*v) : std::string("-"); };
    for (const Row& row : rows) {
        std::size_t i = static_cast<std::size_t>(row.k - 2);
        table.stream() << row.k << ',' << row.gp.n_hois << ',' << row.gp.zero_count << ','
                       << (row.fit ? fmt(row.fit->r_squared) : "-") << ','
                       << (row.fit ? fmt(row.fit->exponent) : "-") << ',' << cell(rel_exp[i])
                       << ',' << fmt(row.gp.avg_persistence) << ',' << cell(rel_avg[i]) << '\n';
    }
    return 0;
}

int cmd_correlate(const RunConfig& cfg) {
    hoip::TemporalHypergraph h = load(cfg);
    std::optional<std::size_t> cap = effective_cap(cfg, h);
    hoip::NmiOptions nmi = nmi_options(cfg);
    Artifact csv(cfg, "correlate", cfg.name + ".correlation.csv");
    csv.stream() << "block,k,feature,cc,nmi\n";
    auto emit = [&](const std::string& block, int k, const hoip::LabeledDataset& ds,
                    std::size_t begin, std::size_t end) {
        for (std::size_t f = begin; f < end; ++f) {
            std::vector<double> col(ds.size());
            for (std::size_t i = 0; i < ds.size(); ++i) col[i] = ds.x[i][f];
            std::string cc;
            try {
                cc = fmt(hoip::pearson_cc(col, ds.y));
            } catch (const hoip::NumericError&) {
                cc = "";  // constant column or target
            }
            double mi = hoip::normalized_mi(col, ds.y, nmi);
            csv.stream() << block << ',' << k << ',' << ds.feature_names[f] << ',' << cc << ','
                         << fmt(mi) << '\n';
        }
    };
    for (int k : cfg.ks) {
        try {
            hoip::LabeledDataset group = hoip::build_group_dataset(
                h, k, cfg.ts, cfg.tp, cfg.include_past, cap, cfg.seed, build_options(cfg));
            emit("group_vs_group", k, group, 0, 8);
            emit("node_vs_group", k, group, 8, 16);
        } catch (const hoip::EmptyDatasetError&) {
            csv.stream() << "group_vs_group," << k << ",-,,\n";
        }
        try {
            hoip::LabeledDataset node = hoip::build_node_dataset(h, k, cfg.ts, cfg.tp,
                                                                 cfg.include_past,
                                                                 build_options(cfg));
            emit("node_vs_node", k, node, 0, 8);
        } catch (const hoip::EmptyDatasetError&) {
            csv.stream() << "node_vs_node," << k << ",-,,\n";
        }
    }
    return 0;
}

void dump_feature_matrix(const RunConfig& cfg, const std::string& sub,
                         const hoip::LabeledDataset& ds, const std::string& filename) {
    Artifact csv(cfg, sub, filename);
    csv.stream() << "row";
    for (const std::string& n : ds.feature_names) csv.stream() << ',' << n;
    csv.stream() << ",target\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        csv.stream() << ds.row_names[i];
        for (double v : ds.x[i]) csv.stream() << ',' << fmt(v);
        csv.stream() << ',' << fmt(ds.y[i]) << '\n';
    }
}

int cmd_predict(const RunConfig& cfg) {
    hoip::TemporalHypergraph h = load(cfg);
    std::optional<std::size_t> cap = effective_cap(cfg, h);
    Artifact csv(cfg, "predict", cfg.name + ".predict.csv");
    csv.stream() << "problem,k,model,r2,rmse,n_train,n_test\n";
    auto run_problem = [&](const std::string& problem, int k, const hoip::LabeledDataset& ds,
                           double fraction) {
        auto [train, test] = hoip::split(ds, fraction, cfg.seed);
        auto emit = [&](const std::string& model, const hoip::EvalReport& rep) {
            csv.stream() << problem << ',' << k << ',' << model << ','
                         << (rep.r_squared ? fmt(*rep.r_squared) : "") << ',' << fmt(rep.rmse)
                         << ',' << train.size() << ',' << test.size() << '\n';
        };
        emit("mean", hoip::evaluate(hoip::train_mean(train), test));
        emit("linear", hoip::evaluate(hoip::train_linear(train), test));
        hoip::ForestModel forest = hoip::train_forest(train, forest_options(cfg), cfg.seed);
        emit("forest", hoip::evaluate(forest, test));
        if (cfg.dump_model) {
            Artifact model(cfg, "predict",
                           cfg.name + ".forest." + problem + ".k" + std::to_string(k) + ".json",
                           false);
            model.stream() << forest.to_json() << "\n";
        }
        if (cfg.dump_features)
            dump_feature_matrix(cfg, "predict", ds,
                                cfg.name + ".features." + problem + ".k" + std::to_string(k) +
                                    ".csv");
    };
    for (int k : cfg.ks) {
        hoip::LabeledDataset group = hoip::build_group_dataset(
            h, k, cfg.ts, cfg.tp, cfg.include_past, cap, cfg.seed, build_options(cfg));
        run_problem("group", k, group, cfg.frac_group);
        hoip::LabeledDataset node =
            hoip::build_node_dataset(h, k, cfg.ts, cfg.tp, cfg.include_past, build_options(cfg));
        run_problem("node", k, node, cfg.frac_node);
    }
    return 0;
}

int cmd_importance(const RunConfig& cfg) {
    hoip::TemporalHypergraph h = load(cfg);
    std::optional<std::size_t> cap = effective_cap(cfg, h);
    Artifact csv(cfg, "importance", cfg.name + ".importance.csv");
    csv.stream() << "problem,k,rank,feature,importance_raw,importance_norm\n";
    auto run_problem = [&](const std::string& problem, int k, const hoip::LabeledDataset& ds,
                           double fraction) {
        auto [train, test] = hoip::split(ds, fraction, cfg.seed);
        (void)test;
        hoip::ForestModel forest = hoip::train_forest(train, forest_options(cfg), cfg.seed);
        hoip::ImportanceReport imp = hoip::gini_importance(forest);
        for (std::size_t r = 0; r < imp.ranking.size(); ++r) {
            int f = imp.ranking[r];
            csv.stream() << problem << ',' << k << ',' << r + 1 << ','
                         << ds.feature_names[static_cast<std::size_t>(f)] << ','
                         << fmt(imp.raw[static_cast<std::size_t>(f)]) << ','
                         << fmt(imp.normalized[static_cast<std::size_t>(f)]) << '\n';
        }
    };
    for (int k : cfg.ks) {
        run_problem("group", k,
                    hoip::build_group_dataset(h, k, cfg.ts, cfg.tp, cfg.include_past, cap,
                                              cfg.seed, build_options(cfg)),
                    cfg.frac_group);
        run_problem("node", k,
                    hoip::build_node_dataset(h, k, cfg.ts, cfg.tp, cfg.include_past,
                                             build_options(cfg)),
                    cfg.frac_node);
    }
    return 0;
}

int cmd_select(const RunConfig& cfg) {
    hoip::TemporalHypergraph h = load(cfg);
    std::optional<std::size_t> cap = effective_cap(cfg, h);
    Artifact csv(cfg, "select", cfg.name + ".select.csv");
    csv.stream() << "problem,k,n_features,rmse,dropped_feature\n";
    auto run_problem = [&](const std::string& problem, int k, const hoip::LabeledDataset& ds,
                           double fraction) {
        std::vector<hoip::SelectionStep> steps =
            hoip::feature_selection_sweep(ds, fraction, cfg.seed, forest_options(cfg));
        for (const hoip::SelectionStep& s : steps)
            csv.stream() << problem << ',' << k << ',' << s.n_features << ',' << fmt(s.rmse)
                         << ','
                         << (s.dropped >= 0
                                 ? ds.feature_names[static_cast<std::size_t>(s.dropped)]
                                 : "")
                         << '\n';
    };
    for (int k : cfg.ks) {
        run_problem("group", k,
                    hoip::build_group_dataset(h, k, cfg.ts, cfg.tp, cfg.include_past, cap,
                                              cfg.seed, build_options(cfg)),
                    cfg.frac_group);
        run_problem("node", k,
                    hoip::build_node_dataset(h, k, cfg.ts, cfg.tp, cfg.include_past,
                                             build_options(cfg)),
                    cfg.frac_node);
    }
    return 0;
}

int cmd_periods(const RunConfig& cfg) {
    hoip::TemporalHypergraph h = load(cfg);
    std::optional<std::size_t> cap = effective_cap(cfg, h);
    const bool past_flags[] = {false, true};
    Artifact csv(cfg, "periods", cfg.name + ".periods.csv");
    csv.stream() << "problem,k,ts,past,rmse_forest,rmse_mean,improvement_pct,n_rows\n";
    for (int k : cfg.ks) {
        for (auto [problem, tag, fraction] :
             {std::tuple{hoip::Problem::GroupPersistence, "group", cfg.frac_group},
              std::tuple{hoip::Problem::NodePersistence, "node", cfg.frac_node}}) {
            std::vector<hoip::PeriodCell> cells = hoip::observation_period_sweep(
                h, problem, k, cfg.ts_list, std::span<const bool>(past_flags, 2), cfg.tp,
                fraction, cfg.seed, forest_options(cfg), build_options(cfg), cap);
            for (const hoip::PeriodCell& c : cells) {
                csv.stream() << tag << ',' << k << ',' << c.ts << ',' << (c.include_past ? "O" : "X");
                if (c.absent)
                    csv.stream() << ",,,,0\n";
                else
                    csv.stream() << ',' << fmt(c.rmse_forest) << ',' << fmt(c.rmse_mean) << ','
                                 << fmt(c.improvement_pct) << ',' << c.n_rows << '\n';
            }
        }
    }
    return 0;
}

int cmd_nullcmp(const RunConfig& cfg) {
    hoip::TemporalHypergraph h = load(cfg);
    std::optional<std::size_t> cap = effective_cap(cfg, h);
    std::vector<hoip::RandomizeMode> modes;
    if (cfg.null_mode == "both") {
        modes = {hoip::RandomizeMode::ShuffleTimes, hoip::RandomizeMode::ShuffleNodes};
    } else {
        modes = {hoip::parse_randomize_mode(cfg.null_mode)};
    }
    Artifact csv(cfg, "nullcmp", cfg.name + ".nullcmp.csv");
    csv.stream() << "source,k,persistence,count\n";
    Artifact summary(cfg, "nullcmp", cfg.name + ".nullcmp.summary.csv");
    summary.stream() << "source,k,n_hois,zero_count,avg_persistence\n";
    auto emit = [&](const std::string& source, const hoip::TemporalHypergraph& hg) {
        for (int k : cfg.ks) {
            hoip::GlobalPersistence gp =
                hoip::global_persistence(hg, k, cfg.window_w, cap, cfg.seed, cfg.threads);
            for (const auto& [p, c] : gp.counts)
                csv.stream() << source << ',' << k << ',' << p << ',' << c << '\n';
            summary.stream() << source << ',' << k << ',' << gp.n_hois << ',' << gp.zero_count
                             << ',' << fmt(gp.avg_persistence) << '\n';
        }
    };
    emit("real", h);
    for (hoip::RandomizeMode mode : modes) {
        hoip::TemporalHypergraph null_h = hoip::randomize(h, mode, cfg.seed);
        emit(hoip::to_string(mode), null_h);
        Artifact dump(cfg, "nullcmp",
                      cfg.name + ".null." + hoip::to_string(mode) + ".canonical.tsv",
                      /*with_header=*/false);
        null_h.canonical_dump(dump.stream());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"higher-order interaction persistence toolkit"};
    app.fallthrough();
    RawArgs args;
    app.add_option("--config", args.config_path, "JSON config file");
    app.add_option("--dataset", args.dataset, "dataset name (from the config's datasets map)");
    app.add_option("--prefix", args.prefix, "dataset path prefix (expects <prefix>-nverts.txt ...)");
    app.add_option("--nverts", args.nverts, "nverts file");
    app.add_option("--simplices", args.simplices, "simplices file");
    app.add_option("--times", args.times, "times file");
    app.add_option("--unit-width", args.unit_width, "raw timestamp ticks per time unit");
    app.add_option("--max-size", args.max_size, "drop hyperedges larger than this");
    app.add_option("--window", args.window_w, "global analysis window W");
    app.add_option("--k", args.ks, "HOI sizes")->delimiter(',');
    app.add_option("--ts", args.ts, "feature window length Ts");
    app.add_option("--tp", args.tp, "persistence window length Tp");
    app.add_option("--ts-list", args.ts_list, "Ts values for the periods sweep")->delimiter(',');
    app.add_flag("--include-past", args.include_past,
                 "extend feature windows back to the data start");
    app.add_flag("--include-t0", args.include_t0,
                 "include the first-appearance unit in feature windows");
    app.add_option("--seed", args.seed, "master RNG seed");
    app.add_option("--cap", args.cap, "per-size HOI sampling cap (0 = automatic)");
    app.add_option("--threads", args.threads, "worker threads");
    app.add_option("--trees", args.trees, "forest size");
    app.add_option("--max-depth", args.max_depth, "tree depth cap");
    app.add_option("--pagerank-weighted", args.pagerank_weighted,
                   "use Omega-weighted PageRank transitions");
    app.add_option("--nmi-bins", args.nmi_bins, "equal-frequency bins for NMI");
    app.add_option("--nmi-norm", args.nmi_norm, "NMI normalization: sqrt|min|mean");
    app.add_option("--mode", args.null_mode, "nullcmp mode: shuffle-times|shuffle-nodes|both");
    app.add_option("--out", args.out_dir, "output directory");
    app.add_flag("--no-timestamp", args.no_timestamp, "omit timestamps from artifacts");
    app.add_flag("--dump-hois", args.dump_hois, "also write per-HOI persistence tables");
    app.add_flag("--dump-features", args.dump_features, "also write feature matrices");
    app.add_flag("--dump-model", args.dump_model, "also write forest JSON dumps");

    auto* ingest = app.add_subcommand("ingest", "load, filter, dump and summarize a dataset");
    auto* persist = app.add_subcommand("persist-dist",
                                       "global-window persistence histograms and power-law fits");
    auto* correlate = app.add_subcommand("correlate", "CC and NMI of features vs persistence");
    auto* predict = app.add_subcommand("predict", "train/evaluate mean, linear and forest models");
    auto* importance = app.add_subcommand("importance", "Gini importance rankings");
    auto* select = app.add_subcommand("select", "backward feature-selection sweep");
    auto* periods = app.add_subcommand("periods", "observation-period sweep");
    auto* nullcmp = app.add_subcommand("nullcmp", "real vs randomized persistence");
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = resolve_config(args);
        if (ingest->parsed()) return cmd_ingest(cfg);
        if (persist->parsed()) return cmd_persist_dist(cfg);
        if (correlate->parsed()) return cmd_correlate(cfg);
        if (predict->parsed()) return cmd_predict(cfg);
        if (importance->parsed()) return cmd_importance(cfg);
        if (select->parsed()) return cmd_select(cfg);
        if (periods->parsed()) return cmd_periods(cfg);
        if (nullcmp->parsed()) return cmd_nullcmp(cfg);
    } catch (const hoip::Error& e) {
        std::cerr << "hoip: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "hoip: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
