#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "trinet/centrality.hpp"
#include "trinet/diffusion.hpp"
#include "trinet/influence.hpp"
#include "trinet/kernels.hpp"
#include "trinet/pipeline.hpp"
#include "trinet/synthetic.hpp"
#include "trinet/triads.hpp"

namespace {

using trinet::NodeId;
using trinet::TimeUnit;
using trinet::pipeline::PipelineConfig;

struct CommonOpts {
    std::string config_path;
    std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "flat key=value config file");
    auto capture = [&opts](const std::string& key) {
        return [&opts, key](const std::string& v) { opts.overrides[key] = v; };
    };
    cmd->add_option_function<std::string>("--seed", capture("seed"), "master seed");
    cmd->add_option_function<std::string>("--task", capture("task"), "prominence | link");
    cmd->add_option_function<std::string>("--feature-set", capture("feature_set"),
                                          "Baseline TPP TPP+ TEM- TEM TEM+ HPLP");
    cmd->add_option_function<std::string>("--t", capture("t"), "reference time unit");
    cmd->add_option_function<std::string>("--delta-t", capture("delta_t"), "prediction horizon");
    cmd->add_option_function<std::string>("--k", capture("top_k"), "Top@k cut");
    cmd->add_option_function<std::string>("--out", capture("out_dir"), "output directory");
    cmd->add_option_function<std::string>("--input", capture("input"),
                                          "edge-list path or 'synthetic'");
}

PipelineConfig resolve(const CommonOpts& opts) {
    if (!opts.config_path.empty())
        return PipelineConfig::from_file(opts.config_path, opts.overrides);
    return PipelineConfig::from_map(opts.overrides);
}

std::ofstream must_open(const std::filesystem::path& p) {
    std::filesystem::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream out(p);
    if (!out) throw trinet::Error("cannot open output file " + p.string());
    out.precision(17);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"triad-position temporal network toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::vector<std::string> transfer_configs;
    std::string model_path, seeds_arg, diff_model = "WC";
    std::size_t sim_k = 0;

    auto* ingest = app.add_subcommand("ingest", "parse an interaction log, emit canonical dump");
    auto* snapshot = app.add_subcommand("snapshot", "materialize the network at time t");
    auto* stats = app.add_subcommand("stats", "descriptive statistics point files");
    auto* features = app.add_subcommand("features", "per-node feature table at time t");
    auto* label = app.add_subcommand("label", "Pareto prominence labels at time t");
    auto* train = app.add_subcommand("train", "build dataset, train, evaluate, save artifacts");
    auto* evaluate = app.add_subcommand("evaluate", "full task pipeline (alias of train)");
    auto* predict = app.add_subcommand("predict", "score a dataset with a saved model");
    auto* transfer = app.add_subcommand("transfer", "cross-dataset AUPR matrix");
    auto* simulate = app.add_subcommand("simulate", "influence spread simulation");
    auto* generate = app.add_subcommand("generate", "synthetic temporal graph edge list");

    for (auto* cmd : {ingest, snapshot, stats, features, label, train, evaluate, predict,
                      simulate, generate})
        add_common(cmd, opts);
    predict->add_option("--model", model_path, "saved model file")->required();
    transfer->add_option("--config", transfer_configs, "one config file per dataset")
        ->required()
        ->expected(-2);
    transfer->add_option_function<std::string>(
        "--task", [&opts](const std::string& v) { opts.overrides["task"] = v; }, "task");
    transfer->add_option_function<std::string>(
        "--feature-set", [&opts](const std::string& v) { opts.overrides["feature_set"] = v; },
        "feature set");
    transfer->add_option_function<std::string>(
        "--out", [&opts](const std::string& v) { opts.overrides["out_dir"] = v; }, "output dir");
    simulate->add_option("--seeds", seeds_arg, "comma-separated seed node names");
    simulate->add_option("--seed-k", sim_k, "pick k seeds by degree discount instead");
    simulate->add_option("--model-name", diff_model, "LT or WC");

    CLI11_PARSE(app, argc, argv);

    std::string stage = app.get_subcommands().front()->get_name();
    try {
        const auto* sub = app.get_subcommands().front();
        if (sub == generate) {
            const auto cfg = resolve(opts);
            trinet::synthetic::GeneratorConfig gc;
            gc.num_nodes = cfg.synth_nodes;
            gc.seed = cfg.seed;
            auto out = must_open(std::filesystem::path(cfg.out_dir) / "edges.csv");
            trinet::synthetic::write_edge_list(gc, out);
        } else if (sub == ingest) {
            const auto cfg = resolve(opts);
            const auto g = trinet::pipeline::load_graph(cfg);
            auto out = must_open(std::filesystem::path(cfg.out_dir) / "canonical_edges.csv");
            g.dump(out);
            std::cout << "nodes " << g.num_nodes() << " skipped_self_loops "
                      << g.skipped_self_loops() << '\n';
        } else if (sub == snapshot) {
            const auto cfg = resolve(opts);
            const auto g = trinet::pipeline::load_graph(cfg);
            const auto s = g.snapshot_at(cfg.t);
            auto out = must_open(std::filesystem::path(cfg.out_dir) / "snapshot.csv");
            for (NodeId u = 0; u < s.adj.size(); ++u)
                for (NodeId v : s.adj[u])
                    if (v > u) out << g.name(u) << ',' << g.name(v) << '\n';
            std::cout << "nodes " << s.num_present << " edges " << s.num_edges << '\n';
        } else if (sub == stats) {
            trinet::pipeline::stats_report(resolve(opts));
        } else if (sub == features) {
            const auto cfg = resolve(opts);
            const auto g = trinet::pipeline::load_graph(cfg);
            const auto s = g.snapshot_at(cfg.t);
            const auto rows = trinet::centrality::baseline_features(s);
            const auto profile = trinet::triads::tpp(s);
            auto out = must_open(std::filesystem::path(cfg.out_dir) / "features.csv");
            out << "node,degree,betweenness,closeness,clustering,pagerank,efficiency,"
                   "constraint,hierarchy,pos1,pos2,pos3,pos4,pos5\n";
            for (const auto& r : rows) {
                const auto p = profile.at(r.node);
                out << g.name(r.node) << ',' << r.degree << ',' << r.betweenness << ','
                    << r.closeness << ',' << r.clustering << ',' << r.pagerank << ','
                    << r.efficiency << ',' << r.constraint << ',' << r.hierarchy;
                for (auto c : p) out << ',' << c;
                out << '\n';
            }
        } else if (sub == label) {
            const auto cfg = resolve(opts);
            const auto g = trinet::pipeline::load_graph(cfg);
            const auto s = g.snapshot_at(cfg.t);
            std::vector<double> deg(s.adj.size(), 0.0);
            for (NodeId v = 0; v < s.adj.size(); ++v)
                deg[v] = static_cast<double>(s.adj[v].size());
            const auto lab = trinet::labeling::pareto_label(s, deg, "degree");
            auto out = must_open(std::filesystem::path(cfg.out_dir) / "labels.csv");
            out << "node,label\n";
            for (NodeId v : s.nodes())
                out << g.name(v) << ',' << (lab.is_pn[v] ? "PN" : "NPN") << '\n';
        } else if (sub == train || sub == evaluate) {
            const auto cfg = resolve(opts);
            const auto res = trinet::pipeline::run_task(cfg, cfg.task);
            std::cout << "aupr " << res.report.aupr << " auc " << res.report.auc << '\n';
        } else if (sub == predict) {
            const auto cfg = resolve(opts);
            std::ifstream min(model_path);
            if (!min) throw trinet::Error("cannot open model file " + model_path);
            const auto model = trinet::learn::BaggedLogisticModel::load(min);
            const auto g = trinet::pipeline::load_graph(cfg);
            trinet::labeling::DatasetConfig dc;
            dc.observation_window = cfg.observation_window;
            dc.tem_lag = cfg.tem_lag;
            dc.influence_window = cfg.influence_window;
            dc.seed = cfg.seed;
            dc.dataset_name = cfg.dataset_name;
            const auto ds =
                cfg.task == "link"
                    ? trinet::labeling::build_link_dataset(g, cfg.t, cfg.delta_t, cfg.feature_set, dc)
                    : trinet::labeling::build_prominence_dataset(g, cfg.t, cfg.delta_t,
                                                                 cfg.feature_set, dc);
            const auto scores = trinet::learn::predict(model, ds);
            auto out = must_open(std::filesystem::path(cfg.out_dir) / "scores.csv");
            out << "instance,score,label\n";
            for (std::size_t i = 0; i < ds.size(); ++i)
                out << ds.instance_ids[i] << ',' << scores[i] << ',' << ds.labels[i] << '\n';
        } else if (sub == transfer) {
            std::vector<PipelineConfig> configs;
            for (const auto& path : transfer_configs)
                configs.push_back(PipelineConfig::from_file(path));
            const std::string task =
                opts.overrides.count("task") ? opts.overrides.at("task") : configs.front().task;
            const std::string fs = opts.overrides.count("feature_set")
                                       ? opts.overrides.at("feature_set")
                                       : configs.front().feature_set;
            const auto m = trinet::pipeline::run_transfer(configs, task, fs);
            const std::string out_dir = opts.overrides.count("out_dir")
                                            ? opts.overrides.at("out_dir")
                                            : configs.front().out_dir;
            auto out = must_open(std::filesystem::path(out_dir) / "transfer.txt");
            trinet::pipeline::write_transfer(m, out);
        } else if (sub == simulate) {
            const auto cfg = resolve(opts);
            const auto g = trinet::pipeline::load_graph(cfg);
            const auto s = g.snapshot_at(cfg.t);
            std::vector<NodeId> seeds;
            if (!seeds_arg.empty()) {
                std::istringstream ss(seeds_arg);
                std::string name;
                while (std::getline(ss, name, ',')) seeds.push_back(g.id(name));
            } else if (sim_k > 0) {
                seeds = trinet::diffusion::degree_discount(s, sim_k, cfg.degree_discount_p);
            } else {
                throw trinet::Error("simulate: give --seeds or --seed-k");
            }
            trinet::diffusion::SpreadConfig sc;
            sc.runs = cfg.diffusion_runs;
            sc.master_seed = cfg.seed;
            const auto res = trinet::diffusion::simulate_spread(
                s, seeds, trinet::diffusion::parse_model(diff_model), sc);
            std::cout << "model " << diff_model << " seeds " << seeds.size() << " mean "
                      << res.mean << " stddev " << res.stddev << '\n';
        }
    } catch (const std::exception& e) {
        nlohmann::json err = {{"stage", stage}, {"error", e.what()}};
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return 0;
}
