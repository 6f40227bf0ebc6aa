#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trinet/temporal_graph.hpp"

namespace trinet::labeling {

struct ProminenceLabeling {
    std::string measure_name;
    TimeUnit cut_time = 0;
    std::vector<NodeId> pn;     // sorted
    std::vector<char> is_pn;    // indexed by NodeId
};

struct DatasetMeta {
    std::string dataset_name;
    std::string feature_set;
    TimeUnit t = 0;
    TimeUnit delta_t = 0;
    std::uint64_t seed = 0;
};

struct LabeledDataset {
    std::vector<std::string> columns;
    std::vector<std::string> instance_ids;  // node name or "u|v"
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    DatasetMeta meta;

    std::size_t size() const { return rows.size(); }
    std::size_t positives() const;
};

struct SplitDataset {
    LabeledDataset train;
    LabeledDataset test;
};

struct DatasetConfig {
    TimeUnit observation_window = 1;  // prominence features measured at t + window
    TimeUnit tem_lag = 1;             // TEM fitted on (t - lag, t)
    TimeUnit influence_window = 1;          // recency window of the influence link score
    double test_fraction = 0.3;
    double train_positive_prevalence = 0.3;  // link task undersampling target
    std::uint64_t seed = 1;
    std::string dataset_name = "dataset";
};

// Strict top-20%-by-rank Pareto split; ties by ascending node id.
ProminenceLabeling pareto_label(const Snapshot& s, const std::vector<double>& measure,
                                const std::string& measure_name);

// All non-adjacent pairs at geodesic distance exactly 2, u < v, sorted.
std::vector<std::pair<NodeId, NodeId>> two_hop_candidates(const Snapshot& s);

// (CN, AA, PA) for a non-adjacent pair.
std::array<double, 3> pairwise_baselines(const Snapshot& s, NodeId u, NodeId v);

// feature_set in {Baseline, TPP, TPP+}
LabeledDataset build_prominence_dataset(const TemporalGraph& g, TimeUnit t, TimeUnit delta_t,
                                        const std::string& feature_set,
                                        const DatasetConfig& cfg = {});

// feature_set in {TEM-, TEM, TEM+, HPLP}
LabeledDataset build_link_dataset(const TemporalGraph& g, TimeUnit t, TimeUnit delta_t,
                                  const std::string& feature_set, const DatasetConfig& cfg = {});

// Seeded instance split; when target_prevalence is set, training negatives are
// undersampled to reach it (positives always kept, test untouched).
SplitDataset split_dataset(const LabeledDataset& ds, double test_fraction, std::uint64_t seed,
                           std::optional<double> target_prevalence = std::nullopt);

}  // namespace trinet::labeling
