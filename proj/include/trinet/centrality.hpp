#pragma once

#include <array>
#include <vector>

#include "trinet/temporal_graph.hpp"

namespace trinet::centrality {

struct NodeFeatureRow {
    NodeId node = 0;
    double degree = 0;
    double betweenness = 0;
    double closeness = 0;
    double clustering = 0;
    double pagerank = 0;
    double efficiency = 0;
    double constraint = 0;
    double hierarchy = 0;
};

// Fixed export order for feature tables.
inline const std::vector<std::string>& baseline_columns() {
    static const std::vector<std::string> cols = {
        "degree", "betweenness", "closeness", "clustering",
        "pagerank", "efficiency", "constraint", "hierarchy"};
    return cols;
}

struct PageRankConfig {
    double damping = 0.85;
    double tol = 1e-12;  // L1
    int max_iters = 200;
};

// All vectors are indexed by NodeId; entries for absent nodes are 0.
std::vector<double> pagerank(const Snapshot& s, const PageRankConfig& cfg = {});
std::vector<double> betweenness(const Snapshot& s);  // unnormalized, undirected halving
std::vector<double> closeness(const Snapshot& s);    // Wasserman-Faust over reachable set
std::vector<double> clustering(const Snapshot& s);
std::vector<std::size_t> triangles_per_node(const Snapshot& s);

// (efficiency, constraint, hierarchy) over the 1-hop ego network; (0,0,0) for
// isolated nodes.
std::array<double, 3> burt_measures(const Snapshot& s, NodeId v);

std::vector<NodeFeatureRow> baseline_features(const Snapshot& s);

}  // namespace trinet::centrality
