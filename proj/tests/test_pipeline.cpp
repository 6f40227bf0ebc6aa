#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "trinet/pipeline.hpp"
#include "trinet/synthetic.hpp"
#include "trinet/triads.hpp"

using namespace trinet;
using namespace trinet::pipeline;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

PipelineConfig small_synthetic_config(const std::string& out_dir) {
    PipelineConfig cfg;
    cfg.dataset_name = "synth-small";
    cfg.input = "synthetic";
    cfg.synth_nodes = 600;
    cfg.synth_nodes_per_time = 100;
    cfg.synth_internal_edges = 200;
    cfg.synth_closure_prob = 0.9;
    cfg.synth_seed = 5;
    cfg.t = 2;
    cfg.delta_t = 3;
    cfg.bags = 4;
    cfg.seed = 11;
    cfg.top_k = 10;
    cfg.out_dir = out_dir;
    return cfg;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("synthetic generator is deterministic and well-formed") {
    synthetic::GeneratorConfig gc;
    gc.num_nodes = 250;
    gc.seed = 3;
    auto g1 = synthetic::generate(gc);
    auto g2 = synthetic::generate(gc);
    CHECK(g1 == g2);
    CHECK(g1.num_nodes() == 250);
    CHECK(g1.max_time() >= 2);

    gc.seed = 4;
    auto g3 = synthetic::generate(gc);
    CHECK_FALSE(g1 == g3);

    // the final snapshot must contain triangles for the triad machinery
    auto s = g1.snapshot_at(g1.max_time());
    CHECK(triads::triad_class_counts(s).c3 > 0);
}

TEST_CASE("config round trips through its map form") {
    PipelineConfig cfg;
    cfg.dataset_name = "x";
    cfg.task = "link";
    cfg.feature_set = "TEM";
    cfg.t = 7;
    cfg.seed = 99;
    cfg.test_fraction = 0.25;
    auto cfg2 = PipelineConfig::from_map(cfg.to_map());
    CHECK(cfg2.to_map() == cfg.to_map());
    CHECK(cfg2.hash() == cfg.hash());

    cfg2.seed = 100;
    CHECK(cfg2.hash() != cfg.hash());

    // out_dir does not affect the hash
    auto cfg3 = cfg;
    cfg3.out_dir = "elsewhere";
    CHECK(cfg3.hash() == cfg.hash());

    CHECK_THROWS_AS(PipelineConfig::from_map({{"bogus_key", "1"}}), Error);
}

TEST_CASE("config file parsing") {
    TempDir dir("trinet_cfg_test");
    const auto path = dir.path / "run.cfg";
    {
        std::ofstream out(path);
        out << "# comment\n";
        out << "dataset_name = filecfg\n";
        out << "task = link\n";
        out << "t = 4\n";
        out << "\n";
    }
    auto cfg = PipelineConfig::from_file(path.string(), {{"seed", "77"}});
    CHECK(cfg.dataset_name == "filecfg");
    CHECK(cfg.task == "link");
    CHECK(cfg.t == 4);
    CHECK(cfg.seed == 77);
    CHECK_THROWS_AS(PipelineConfig::from_file((dir.path / "missing.cfg").string()), Error);
}

TEST_CASE("prominence task end to end with outputs") {
    TempDir dir("trinet_pipeline_prom");
    auto cfg = small_synthetic_config(dir.path.string());
    auto res = run_task(cfg, "prominence");
    CHECK(res.report.auc >= 0.0);
    CHECK(res.report.auc <= 1.0);
    CHECK(res.split.test.size() > 0);
    for (const auto& name :
         {"report.txt", "roc.csv", "pr.csv", "scores.csv", "model.txt", "dataset_meta.txt"})
        CHECK(fs::exists(dir.path / name));

    const auto meta = slurp(dir.path / "dataset_meta.txt");
    CHECK(meta.find("config_hash") != std::string::npos);
    CHECK(meta.find("seed") != std::string::npos);

    // model file loads back
    std::ifstream min(dir.path / "model.txt");
    auto model = learn::BaggedLogisticModel::load(min);
    CHECK(model.columns == res.model.columns);
}

TEST_CASE("link task end to end") {
    TempDir dir("trinet_pipeline_link");
    auto cfg = small_synthetic_config(dir.path.string());
    cfg.task = "link";
    cfg.feature_set = "TEM";
    auto res = run_task(cfg, "link");
    CHECK(res.model.columns.size() == 8);
    CHECK(res.report.auc >= 0.0);
    CHECK_THROWS_AS(run_task(cfg, "bogus", false), Error);
}

TEST_CASE("reruns with the same config are byte-identical") {
    TempDir d1("trinet_repro_a");
    TempDir d2("trinet_repro_b");
    auto c1 = small_synthetic_config(d1.path.string());
    auto c2 = small_synthetic_config(d2.path.string());
    run_task(c1, "prominence");
    run_task(c2, "prominence");
    for (const auto& name :
         {"report.txt", "roc.csv", "pr.csv", "scores.csv", "model.txt", "dataset_meta.txt"})
        CHECK(slurp(d1.path / name) == slurp(d2.path / name));
}

TEST_CASE("different seeds change the split but not the schema") {
    TempDir dir("trinet_seed_var");
    auto a = small_synthetic_config(dir.path.string());
    auto b = a;
    b.seed = 12;
    auto ra = run_task(a, "prominence", false);
    auto rb = run_task(b, "prominence", false);
    CHECK(ra.model.columns == rb.model.columns);
    CHECK(ra.split.test.instance_ids != rb.split.test.instance_ids);
}

TEST_CASE("transfer matrix over two synthetic datasets") {
    TempDir d1("trinet_transfer_a");
    TempDir d2("trinet_transfer_b");
    auto c1 = small_synthetic_config(d1.path.string());
    auto c2 = small_synthetic_config(d2.path.string());
    c2.dataset_name = "synth-other";
    c2.synth_seed = 6;
    auto m = run_transfer({c1, c2}, "prominence", "TPP");
    REQUIRE(m.dataset_names == std::vector<std::string>{"synth-small", "synth-other"});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CHECK(m.error[i][j].empty());
            CHECK(m.aupr[i][j] >= 0.0);
            CHECK(m.aupr[i][j] <= 1.0);
        }

    // identical datasets: off-diagonal equals diagonal exactly
    auto c3 = c1;
    c3.dataset_name = "synth-copy";
    c3.out_dir = d2.path.string();
    auto m2 = run_transfer({c1, c3}, "prominence", "TPP");
    CHECK(m2.aupr[0][0] == m2.aupr[1][0]);
    CHECK(m2.aupr[0][1] == m2.aupr[1][1]);

    std::ostringstream out;
    write_transfer(m, out);
    CHECK(out.str().find("synth-other") != std::string::npos);
}

TEST_CASE("stats report emits plot-ready files") {
    TempDir dir("trinet_stats");
    auto cfg = small_synthetic_config(dir.path.string());
    stats_report(cfg);
    for (const auto& name :
         {"pareto_degree.csv", "pareto_pagerank.csv", "balance.txt", "triad_evolution.txt"})
        CHECK(fs::exists(dir.path / name));
    const auto balance = slurp(dir.path / "balance.txt");
    CHECK(balance.find("pn_t") != std::string::npos);
    CHECK(balance.find("npn_future") != std::string::npos);
    const auto evo = slurp(dir.path / "triad_evolution.txt");
    CHECK(evo.find("closure") != std::string::npos);
}

TEST_CASE("load_graph reads an edge-list file") {
    TempDir dir("trinet_load");
    const auto path = dir.path / "edges.csv";
    {
        std::ofstream out(path);
        out << "a,b,1\nb,c,2\n";
    }
    PipelineConfig cfg;
    cfg.input = path.string();
    auto g = load_graph(cfg);
    CHECK(g.num_nodes() == 3);

    cfg.input = (dir.path / "nope.csv").string();
    CHECK_THROWS_AS(load_graph(cfg), Error);
}
