#pragma once

#include <iosfwd>

#include "trinet/temporal_graph.hpp"

namespace trinet::synthetic {

// Seeded temporal-graph generator mixing preferential attachment with
// triadic closure. Arrivals are batched into integer time units; each step
// also adds closure/attachment edges and repeat interactions among existing
// nodes.
struct GeneratorConfig {
    std::size_t num_nodes = 2000;
    std::size_t clique_size = 5;        // initial clique at time 0
    std::size_t nodes_per_time = 100;
    int edges_per_node = 2;
    double closure_prob = 0.6;          // wedge closure vs degree-proportional
    std::size_t internal_edges_per_time = 150;
    std::size_t repeats_per_time = 100;
    std::uint64_t seed = 1;
};

TemporalGraph generate(const GeneratorConfig& cfg);
void write_edge_list(const GeneratorConfig& cfg, std::ostream& out);

}  // namespace trinet::synthetic
