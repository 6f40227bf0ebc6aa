#pragma once

#include <map>
#include <string>
#include <vector>

#include "trinet/diffusion.hpp"
#include "trinet/labeling.hpp"
#include "trinet/learn.hpp"
#include "trinet/temporal_graph.hpp"

namespace trinet::pipeline {

struct PipelineConfig {
    std::string dataset_name = "dataset";
    std::string input;                // edge-list path; empty means synthetic
    std::string separator = ",";
    bool header = false;
    std::int64_t time_bin_width = 1;

    TimeUnit t = 0;
    TimeUnit delta_t = 1;
    TimeUnit observation_window = 1;
    TimeUnit tem_lag = 1;
    TimeUnit influence_window = 1;

    std::string task = "prominence";  // prominence | link
    std::string feature_set = "TPP";
    int bags = 10;
    std::uint64_t seed = 1;
    double test_fraction = 0.3;
    double link_train_prevalence = 0.3;
    std::size_t top_k = 50;

    int diffusion_runs = 1000;
    double degree_discount_p = 0.01;

    std::string out_dir = "out";

    // synthetic-input knobs (used when input == "synthetic")
    std::size_t synth_nodes = 2000;
    std::size_t synth_nodes_per_time = 100;
    std::size_t synth_internal_edges = 150;
    double synth_closure_prob = 0.6;
    std::uint64_t synth_seed = 1;

    static PipelineConfig from_file(const std::string& path,
                                    const std::map<std::string, std::string>& overrides = {});
    static PipelineConfig from_map(const std::map<std::string, std::string>& kv);
    std::map<std::string, std::string> to_map() const;
    std::uint64_t hash() const;
};

TemporalGraph load_graph(const PipelineConfig& cfg);

struct TaskResult {
    labeling::SplitDataset split;
    learn::BaggedLogisticModel model;
    learn::EvaluationReport report;
};

// ingest -> features -> label -> split -> train -> evaluate; deterministic in
// (config, seed). Writes report, curves, scores, model and dataset metadata
// into cfg.out_dir when write_outputs is set.
TaskResult run_task(const PipelineConfig& cfg, const std::string& task,
                    bool write_outputs = true);

struct TransferMatrix {
    std::vector<std::string> dataset_names;
    std::vector<std::vector<double>> aupr;       // row = train, col = test
    std::vector<std::vector<std::string>> error; // empty string = ok
};

TransferMatrix run_transfer(const std::vector<PipelineConfig>& configs, const std::string& task,
                            const std::string& feature_set);
void write_transfer(const TransferMatrix& m, std::ostream& out);

// Descriptive statistics, emitted as plot-ready point files
// under cfg.out_dir.
void stats_report(const PipelineConfig& cfg);

}  // namespace trinet::pipeline
