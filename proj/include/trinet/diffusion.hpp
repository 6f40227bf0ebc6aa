#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trinet/temporal_graph.hpp"

namespace trinet::diffusion {

enum class Model { LinearThreshold, WeightedCascade };

std::string model_name(Model m);
Model parse_model(const std::string& name);

struct SpreadResult {
    std::vector<NodeId> seeds;
    Model model = Model::LinearThreshold;
    int runs = 0;
    double mean = 0.0;
    double stddev = 0.0;
    std::uint64_t master_seed = 0;
};

struct SpreadConfig {
    int runs = 1000;
    std::uint64_t master_seed = 1;
    // Test hook: fixes every LT threshold instead of drawing uniforms.
    std::optional<double> fixed_threshold;
};

SpreadResult simulate_spread(const Snapshot& s, const std::vector<NodeId>& seeds, Model model,
                             const SpreadConfig& cfg = {});

// Single realization; exposed for coupled monotonicity checks.
std::size_t spread_once(const Snapshot& s, const std::vector<NodeId>& seeds, Model model,
                        std::uint64_t master_seed, int run,
                        std::optional<double> fixed_threshold = std::nullopt);

// Classic degree-discount seed selection; ties by ascending node id.
std::vector<NodeId> degree_discount(const Snapshot& s, std::size_t k, double p = 0.01);

struct ComparisonRow {
    std::size_t k = 0;
    std::string selector;  // tpp+, baseline, degreediscount
    std::string model;
    double mean = 0.0;
    double stddev = 0.0;
};

// Seed-size sweep: seed sets picked from the arrival cohort at t by model
// scores or by degree discount at t, spreads measured on the network at t+dT.
std::vector<ComparisonRow> prominence_seed_comparison(
    const TemporalGraph& g, TimeUnit t, TimeUnit delta_t, const std::vector<std::size_t>& ks,
    const std::vector<double>& tpp_scores, const std::vector<double>& baseline_scores,
    const std::vector<NodeId>& cohort, const SpreadConfig& cfg);

}  // namespace trinet::diffusion
