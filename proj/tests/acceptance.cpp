// Acceptance suite. Runs every gate criterion and prints one PASS/FAIL line
// each. Criteria that need the public Enron email dataset look for it under
// $HOIP_DATA_DIR (default: <source>/data/email-Enron); when the files are
// missing those criteria are reported as SKIP with the fetch instructions.
// Exit status is nonzero iff any executed criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hoip/error.hpp"
#include "hoip/features.hpp"
#include "hoip/hypergraph.hpp"
#include "hoip/persistence.hpp"
#include "hoip/prediction.hpp"
#include "hoip/projection.hpp"
#include "hoip/stats.hpp"
#include "support.hpp"

#ifndef HOIP_CLI_PATH
#define HOIP_CLI_PATH "hoip"
#endif
#ifndef HOIP_SOURCE_DIR
#define HOIP_SOURCE_DIR "."
#endif

namespace fs = std::filesystem;
using namespace hoip;
using namespace hoip::testing;
using Clock = std::chrono::steady_clock;

namespace {

struct Skip {
    std::string reason;
};

struct Failure {
    std::string reason;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

int failures = 0;

void run_criterion(const std::string& id, const std::string& name,
                   const std::function<std::string()>& body) {
    try {
        std::string detail = body();
        std::cout << "[PASS] " << id << " " << name;
        if (!detail.empty()) std::cout << " — " << detail;
        std::cout << "\n";
    } catch (const Skip& s) {
        std::cout << "[SKIP] " << id << " " << name << " — " << s.reason << "\n";
    } catch (const Failure& f) {
        std::cout << "[FAIL] " << id << " " << name << " — " << f.reason << "\n";
        ++failures;
    } catch (const std::exception& e) {
        std::cout << "[FAIL] " << id << " " << name << " — unexpected error: " << e.what()
                  << "\n";
        ++failures;
    }
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Enron dataset discovery

struct EnronData {
    TemporalHypergraph h;
    std::string prefix;
    std::int64_t unit_width = 0;
};

std::optional<EnronData>& enron_cache() {
    static std::optional<EnronData> cache;
    return cache;
}

std::string enron_prefix() {
    const char* env = std::getenv("HOIP_DATA_DIR");
    fs::path dir = env ? fs::path(env) : fs::path(HOIP_SOURCE_DIR) / "data";
    return (dir / "email-Enron" / "email-Enron").string();
}

const EnronData& enron() {
    auto& cache = enron_cache();
    if (cache) return *cache;
    std::string prefix = enron_prefix();
    if (!fs::exists(prefix + "-nverts.txt"))
        throw Skip{"email-Enron dataset not found at " + prefix +
                   "-*.txt (run scripts/fetch_data.sh, or set HOIP_DATA_DIR)"};
    // One month per unit; the public timestamps are epoch-based, so pick the
    // millisecond or second month length by timestamp magnitude.
    LoadStats st;
    TemporalHypergraph probe =
        load_simplex_triple(prefix + "-nverts.txt", prefix + "-simplices.txt",
                            prefix + "-times.txt", 1, kDefaultMaxEdgeSize, &st);
    std::int64_t month = st.raw_ts_max > 100'000'000'000 ? 2'629'746'000 : 2'629'746;
    EnronData data;
    data.prefix = prefix;
    data.unit_width = month;
    data.h = load_simplex_triple(prefix + "-nverts.txt", prefix + "-simplices.txt",
                                 prefix + "-times.txt", month);
    cache = std::move(data);
    return *cache;
}

// ---------------------------------------------------------------------------
// Criterion bodies

std::string criterion1_oracle_equivalence() {
    auto start = Clock::now();
    Rng pick(20260810);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        RawInstance inst = random_instance(seed * 31 + 1, /*max_nodes=*/20, /*max_edges=*/50,
                                           /*max_units=*/10);
        TemporalHypergraph h = to_hypergraph(inst);
        ProjectedGraph g = build_projection(h);
        Unit hi = h.num_units() - 1;

        for (int k = 2; k <= 4; ++k) {
            auto expect = oracle_hois(inst, k);
            std::vector<Hoi> got = enumerate_hois(h, k);
            require(got.size() == expect.size(), "HOI count mismatch");
            for (const Hoi& s : got) {
                auto view = s.view();
                auto it = expect.find(std::vector<NodeId>(view.begin(), view.end()));
                require(it != expect.end(), "HOI not in oracle set");
                require(it->second == s.t0, "first-appearance unit mismatch");
                require(persistence(h, view, 0, hi) == oracle_persistence(inst, view, 0, hi),
                        "persistence mismatch");
            }
        }
        for (int rep = 0; rep < 12; ++rep) {
            NodeId u = static_cast<NodeId>(pick.below(static_cast<std::uint64_t>(inst.num_nodes)));
            NodeId v = static_cast<NodeId>(pick.below(static_cast<std::uint64_t>(inst.num_nodes)));
            if (u == v) continue;
            std::vector<NodeId> s{std::min(u, v), std::max(u, v)};
            require(h.edges_containing(s) == oracle_edges_containing(inst, s), "E(S) mismatch");
            Unit t = static_cast<Unit>(pick.below(static_cast<std::uint64_t>(h.num_units())));
            require(h.edges_containing_at(s, t) == oracle_edges_containing_at(inst, s, t),
                    "E(S,t) mismatch");
            require(h.neighbors(u) == oracle_neighbors(inst, u), "N(v) mismatch");
            require(g.weight(u, v) == oracle_pair_weight(inst, u, v), "Omega mismatch");

            GroupBasic got = group_basic(h, s);
            OracleGroupBasic want = oracle_group_basic(inst, s);
            require(got.cnt == want.cnt && got.sigma == want.sigma && got.cup == want.cup &&
                        got.sigma_cup == want.sigma_cup && got.cap == want.cap,
                    "group_basic mismatch");
            require(std::abs(got.entropy - want.entropy) < 1e-12, "entropy mismatch");
        }
        for (NodeId v = 0; v < h.num_nodes(); ++v) {
            std::size_t occ = 0;
            for (const auto& edge : inst.nodes)
                if (std::binary_search(edge.begin(), edge.end(), v)) ++occ;
            require(h.edges_of_node(v).size() == occ, "occurrence count mismatch");
        }
    }
    double elapsed = seconds_since(start);
    require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + "s exceeds 1 minute");
    std::ostringstream msg;
    msg << "200 instances, exact, " << elapsed << "s";
    return msg.str();
}

std::string criterion2_graph_metric_oracles() {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        RawGraph raw = random_graph(seed * 17 + 3, /*max_nodes=*/30);
        std::vector<std::tuple<NodeId, NodeId, std::int64_t>> edges;
        for (NodeId u = 0; u < raw.num_nodes; ++u)
            for (NodeId v = u + 1; v < raw.num_nodes; ++v)
                if (raw.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)])
                    edges.emplace_back(
                        u, v, raw.weight[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
        if (edges.empty()) continue;
        ProjectedGraph g = ProjectedGraph::from_edges(raw.num_nodes, edges);

        require(core_numbers(g) == oracle_core_numbers(raw), "core number mismatch");
        for (NodeId v = 0; v < raw.num_nodes; ++v)
            require(std::abs(local_clustering(g, v) - oracle_local_clustering(raw, v)) < 1e-12,
                    "clustering mismatch");

        std::vector<double> want = oracle_pagerank(raw, 0.85, 10000);
        std::vector<double> got = pagerank(g);
        double sum = 0.0;
        for (NodeId v = 0; v < raw.num_nodes; ++v) {
            require(std::abs(got[static_cast<std::size_t>(v)] -
                             want[static_cast<std::size_t>(v)]) < 1e-8,
                    "pagerank differs from 1e4-step oracle");
            sum += got[static_cast<std::size_t>(v)];
        }
        require(std::abs(sum - 1.0) < 1e-9, "pagerank does not sum to 1");
    }
    return "100 graphs, exact cores/clustering, pagerank within 1e-8";
}

std::string criterion3_power_law_recovery() {
    for (double k : {1.5, 2.0, 3.0}) {
        std::vector<std::pair<double, double>> pts;
        for (int x = 1; x <= 40; ++x)
            pts.emplace_back(static_cast<double>(x), 11.7 * std::pow(x, -k));
        PowerLawFit fit = fit_power_law(pts);
        require(std::abs(fit.exponent - k) < 1e-6,
                "exponent " + std::to_string(fit.exponent) + " vs " + std::to_string(k));
        require(fit.r_squared >= 1.0 - 1e-9, "R^2 below 1-1e-9");
    }
    return "k in {1.5, 2, 3} recovered within 1e-6";
}

std::string criterion4_enron_distribution() {
    const EnronData& data = enron();
    GlobalPersistence g2 = global_persistence(data.h, 2, 20, std::nullopt, 42, 4);
    PersistenceHistogram hist;
    for (const auto& [p, c] : g2.counts) hist.add(p, c);
    PowerLawFit fit = fit_power_law(hist);
    require(std::abs(fit.r_squared - 0.80) <= 0.15,
            "size-2 fit R^2 = " + std::to_string(fit.r_squared) + ", expected 0.80 +/- 0.15");

    GlobalPersistence g3 = global_persistence(data.h, 3, 20, std::nullopt, 42, 4);
    GlobalPersistence g4 = global_persistence(data.h, 4, 20, std::nullopt, 42, 4);
    std::array<std::optional<double>, 3> avg{g2.avg_persistence, g3.avg_persistence,
                                             g4.avg_persistence};
    auto rel = relative_by_size(avg);
    require(rel[1].has_value() && rel[2].has_value(), "missing size-3/4 averages");
    require(1.0 > *rel[1] && *rel[1] > *rel[2], "relative averages not strictly decreasing");
    require(std::abs(*rel[1] - 0.51) <= 0.15,
            "size-3 relative avg " + std::to_string(*rel[1]) + ", expected 0.51 +/- 0.15");
    require(std::abs(*rel[2] - 0.35) <= 0.15,
            "size-4 relative avg " + std::to_string(*rel[2]) + ", expected 0.35 +/- 0.15");
    std::ostringstream msg;
    msg << "R2=" << fit.r_squared << " rel=(1.00, " << *rel[1] << ", " << *rel[2] << ")";
    return msg.str();
}

std::string criterion5_enron_model_ordering() {
    const EnronData& data = enron();
    std::ostringstream msg;
    for (int k : {2, 3}) {
        BuildOptions opt;
        opt.n_threads = 4;
        LabeledDataset ds = build_group_dataset(data.h, k, 5, 10, false, std::nullopt, 42, opt);
        auto [train, test] = split(ds, 2.0 / 3.0, 42);
        ForestOptions fopt;
        fopt.n_threads = 4;
        double rmse_mean = evaluate(train_mean(train), test).rmse;
        double rmse_linear = evaluate(train_linear(train), test).rmse;
        double rmse_forest = evaluate(train_forest(train, fopt, 42), test).rmse;
        require(rmse_forest < rmse_linear,
                "k=" + std::to_string(k) + ": forest RMSE " + std::to_string(rmse_forest) +
                    " !< linear " + std::to_string(rmse_linear));
        require(rmse_linear < rmse_mean,
                "k=" + std::to_string(k) + ": linear RMSE " + std::to_string(rmse_linear) +
                    " !< mean " + std::to_string(rmse_mean));
        double improvement = 100.0 * (rmse_mean - rmse_forest) / rmse_mean;
        require(improvement >= 20.0, "k=" + std::to_string(k) + ": improvement " +
                                         std::to_string(improvement) + "% < 20%");
        msg << "k=" << k << ": " << rmse_forest << " < " << rmse_linear << " < " << rmse_mean
            << " (+" << improvement << "%) ";
    }
    return msg.str();
}

// Target is a noisy monotone function of feature 0 alone; the other columns
// are weak proxies of it (varying noise), mirroring the collinear feature
// structure of the real extraction pipeline.
LabeledDataset planted_acceptance_dataset(std::uint64_t seed) {
    Rng rng(seed);
    LabeledDataset ds;
    for (int i = 0; i < 8; ++i) ds.feature_names.push_back("f" + std::to_string(i));
    const double proxy_noise[8] = {0.0, 0.4, 0.55, 0.7, 0.85, 1.0, 1.2, 1.5};
    for (int i = 0; i < 2500; ++i) {
        double signal = rng.next_double();
        std::vector<double> row(8);
        row[0] = signal;
        for (int j = 1; j < 8; ++j) row[static_cast<std::size_t>(j)] =
            signal + proxy_noise[j] * rng.normal();
        ds.y.push_back(10.0 * signal + 0.5 * rng.normal());
        ds.x.push_back(std::move(row));
    }
    return ds;
}

std::string criterion6_planted_pipeline() {
    int rank_hits = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        LabeledDataset ds = planted_acceptance_dataset(900 + seed);
        auto [train, test] = split(ds, 2.0 / 3.0, seed);
        ForestModel forest = train_forest(train, {}, seed);
        EvalReport rep = evaluate(forest, test);
        require(rep.r_squared.has_value(), "R^2 undefined");
        require(*rep.r_squared >= 0.8,
                "forest R^2 " + std::to_string(*rep.r_squared) + " < 0.8 (seed " +
                    std::to_string(seed) + ")");
        if (gini_importance(forest).ranking[0] == 0) ++rank_hits;
    }
    require(rank_hits >= 9,
            "planted feature ranked first in only " + std::to_string(rank_hits) + "/10 seeds");

    LabeledDataset ds = planted_acceptance_dataset(1234);
    std::vector<SelectionStep> steps = feature_selection_sweep(ds, 2.0 / 3.0, 7);
    require(steps.size() == 8, "sweep did not record 8 steps");
    double base = steps.front().rmse;
    for (const SelectionStep& s : steps) {
        bool planted_active =
            std::find(s.active.begin(), s.active.end(), 0) != s.active.end();
        require(planted_active, "planted feature dropped before the final step");
        require(s.rmse <= 1.05 * base, "RMSE at " + std::to_string(s.n_features) +
                                           " features drifted " +
                                           std::to_string(100.0 * (s.rmse / base - 1.0)) +
                                           "% above the full model");
    }
    require(steps.back().active == std::vector<int>{0}, "last surviving feature is not planted");
    std::ostringstream msg;
    msg << "rank-1 in " << rank_hits << "/10 seeds, sweep within 5%";
    return msg.str();
}

double forest_rmse_at_ts(const TemporalHypergraph& h, int ts, std::uint64_t seed) {
    BuildOptions opt;
    opt.n_threads = 4;
    LabeledDataset ds = build_group_dataset(h, 2, ts, 10, false, std::nullopt, seed, opt);
    auto [train, test] = split(ds, 2.0 / 3.0, seed);
    ForestOptions fopt;
    fopt.n_threads = 4;
    return evaluate(train_forest(train, fopt, seed), test).rmse;
}

std::string criterion7_synthetic_period_direction() {
    TemporalHypergraph h = synthetic_stream(4242);
    double r1 = forest_rmse_at_ts(h, 1, 42);
    double r5 = forest_rmse_at_ts(h, 5, 42);
    require(r5 <= r1, "RMSE(Ts=5) " + std::to_string(r5) + " > RMSE(Ts=1) " +
                          std::to_string(r1));
    std::ostringstream msg;
    msg << "RMSE(Ts=5)=" << r5 << " <= RMSE(Ts=1)=" << r1;
    return msg.str();
}

std::string criterion7_enron_period_direction() {
    const EnronData& data = enron();
    double r1 = forest_rmse_at_ts(data.h, 1, 42);
    double r5 = forest_rmse_at_ts(data.h, 5, 42);
    require(r5 <= r1, "RMSE(Ts=5) " + std::to_string(r5) + " > RMSE(Ts=1) " +
                          std::to_string(r1));
    std::ostringstream msg;
    msg << "RMSE(Ts=5)=" << r5 << " <= RMSE(Ts=1)=" << r1;
    return msg.str();
}

// Write h as the triple-file layout for CLI runs.
void write_triple_files(const TemporalHypergraph& h, const fs::path& dir,
                        const std::string& name) {
    fs::create_directories(dir);
    std::ofstream nv(dir / (name + "-nverts.txt"));
    std::ofstream sx(dir / (name + "-simplices.txt"));
    std::ofstream tm(dir / (name + "-times.txt"));
    for (const Hyperedge& e : h.edges()) {
        nv << e.nodes.size() << '\n';
        tm << e.unit << '\n';
        for (NodeId v : e.nodes) sx << v << '\n';
    }
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(HOIP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return status < 0 ? status : WEXITSTATUS(status);
}

std::map<std::string, std::string> slurp_dir(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        files[entry.path().filename().string()] = body.str();
    }
    return files;
}

std::string criterion8_cli_determinism() {
    fs::path work = fs::temp_directory_path() / "hoip_acceptance_cli";
    fs::remove_all(work);
    TemporalHypergraph toy = synthetic_stream(31337, {.num_nodes = 45,
                                                      .num_units = 40,
                                                      .num_pairs = 90,
                                                      .num_triples = 45,
                                                      .noise_edges_per_unit = 2});
    write_triple_files(toy, work / "toy", "toy");
    std::string base = " --prefix " + (work / "toy" / "toy").string() +
                       " --unit-width 1 --k 2,3 --seed 42 --threads 2 --no-timestamp --out " +
                       (work / "out").string();
    const std::vector<std::string> subcommands = {
        "ingest",
        "persist-dist --window 8 --dump-hois",
        "correlate",
        "predict --dump-features --dump-model",
        "importance",
        "select",
        "periods",
        "nullcmp --window 8",
    };
    for (const std::string& sub : subcommands) {
        int rc = run_cli(sub + base);
        require(rc == 0, "'" + sub + "' exited with " + std::to_string(rc));
    }
    std::map<std::string, std::string> first = slurp_dir(work / "out");
    require(!first.empty(), "no artifacts produced");
    for (const std::string& sub : subcommands) {
        int rc = run_cli(sub + base);
        require(rc == 0, "'" + sub + "' exited with " + std::to_string(rc) + " on rerun");
    }
    std::map<std::string, std::string> second = slurp_dir(work / "out");
    require(first.size() == second.size(), "artifact sets differ");
    for (const auto& [name, bytes] : first) {
        auto it = second.find(name);
        require(it != second.end(), name + " missing on rerun");
        require(it->second == bytes, name + " differs between runs");
    }
    return std::to_string(first.size()) + " artifacts byte-identical across reruns";
}

struct PerfResult {
    double t1 = 0.0, t4 = 0.0;
    bool identical = false;
};

// Best-of-3 wall time for the k=2 + k=3 enumeration + feature extraction
// pipeline; outputs are compared bitwise between thread counts.
PerfResult measure_build_scaling(const TemporalHypergraph& h, std::uint64_t seed) {
    auto run = [&](int threads) {
        BuildOptions opt;
        opt.n_threads = threads;
        double best = 1e300;
        LabeledDataset d2, d3;
        for (int rep = 0; rep < 3; ++rep) {
            auto start = Clock::now();
            d2 = build_group_dataset(h, 2, 5, 10, false, std::nullopt, seed, opt);
            d3 = build_group_dataset(h, 3, 5, 10, false, std::nullopt, seed, opt);
            best = std::min(best, seconds_since(start));
        }
        return std::tuple{best, std::move(d2), std::move(d3)};
    };
    auto [t1, a2, a3] = run(1);
    auto [t4, b2, b3] = run(4);
    PerfResult r;
    r.t1 = t1;
    r.t4 = t4;
    r.identical = a2.x == b2.x && a2.y == b2.y && a3.x == b3.x && a3.y == b3.y;
    return r;
}

std::string criterion9_enron_performance() {
    const EnronData& data = enron();
    PerfResult r = measure_build_scaling(data.h, 42);
    require(r.t1 < 60.0, "single-threaded build took " + std::to_string(r.t1) + "s");
    require(r.identical, "thread counts produced different datasets");
    unsigned cores = std::thread::hardware_concurrency();
    std::ostringstream msg;
    msg << "t1=" << r.t1 << "s, t4=" << r.t4 << "s";
    if (cores < 4)
        throw Skip{"single-thread " + std::to_string(r.t1) +
                   "s and outputs identical, but the speedup gate needs >= 4 cores (host has " +
                   std::to_string(cores) + ")"};
    double speedup = r.t1 / r.t4;
    require(speedup >= 3.0, "speedup on 4 threads is " + std::to_string(speedup) + "x < 3x");
    msg << ", speedup " << speedup << "x";
    return msg.str();
}

}  // namespace

int main() {
    std::cout << "acceptance suite\n================\n";
    run_criterion("1", "oracle equivalence on random hypergraphs", criterion1_oracle_equivalence);
    run_criterion("2", "graph-metric oracles", criterion2_graph_metric_oracles);
    run_criterion("3", "power-law recovery", criterion3_power_law_recovery);
    run_criterion("4", "Enron persistence distribution", criterion4_enron_distribution);
    run_criterion("5", "Enron model ordering", criterion5_enron_model_ordering);
    run_criterion("6", "planted-signal pipeline", criterion6_planted_pipeline);
    run_criterion("7a", "observation-period direction (synthetic)",
                  criterion7_synthetic_period_direction);
    run_criterion("7b", "observation-period direction (Enron)",
                  criterion7_enron_period_direction);
    run_criterion("8", "CLI determinism", criterion8_cli_determinism);
    run_criterion("9", "Enron performance envelope", criterion9_enron_performance);

    // Informational only: threading behavior at Enron scale on synthetic data,
    // so the parallel path is exercised even without the real dataset.
    {
        TemporalHypergraph h = synthetic_stream(5150, {.num_nodes = 143,
                                                       .num_units = 43,
                                                       .num_pairs = 700,
                                                       .num_triples = 300,
                                                       .noise_edges_per_unit = 15,
                                                       .rate_lo = 0.02,
                                                       .rate_hi = 0.45});
        PerfResult r = measure_build_scaling(h, 42);
        std::cout << "[info] synthetic Enron-scale build: " << h.num_edges()
                  << " edges, t1=" << r.t1 << "s, t4=" << r.t4 << "s, speedup "
                  << (r.t4 > 0 ? r.t1 / r.t4 : 0.0) << "x on "
                  << std::thread::hardware_concurrency() << " cores, identical="
                  << (r.identical ? "yes" : "NO") << "\n";
        if (!r.identical) {
            std::cout << "[FAIL] info check: thread counts changed dataset contents\n";
            ++failures;
        }
    }

    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all executed criteria passed\n";
    return 0;
}
