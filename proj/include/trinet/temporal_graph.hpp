#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trinet/common.hpp"

namespace trinet {

struct IngestConfig {
    char separator = ',';
    bool header = false;
    // Raw timestamps are floored into integer bins of this width.
    std::int64_t time_bin_width = 1;
};

// Immutable static view at a cut-off time. Nodes keep their TemporalGraph ids;
// nodes that have not arrived yet are simply absent (empty adjacency, present
// flag off). Neighbor lists are sorted and duplicate-free.
struct Snapshot {
    std::vector<std::vector<NodeId>> adj;
    std::vector<char> present;
    std::size_t num_present = 0;
    std::size_t num_edges = 0;
    TimeUnit cut_time = 0;

    std::size_t degree(NodeId v) const { return adj[v].size(); }
    bool has_edge(NodeId u, NodeId v) const;
    std::vector<NodeId> nodes() const;

    // Build directly from an edge list over nodes 0..n-1, all present.
    static Snapshot from_edges(std::size_t n,
                               const std::vector<std::pair<NodeId, NodeId>>& edges,
                               TimeUnit cut_time = 0);
};

// Time-varying network: node arrival times plus the per-pair interaction log.
// Immutable after ingest.
class TemporalGraph {
public:
    using PairKey = std::pair<NodeId, NodeId>;  // always first < second

    static TemporalGraph ingest(std::istream& in, const IngestConfig& cfg = {});

    std::size_t num_nodes() const { return names_.size(); }
    const std::string& name(NodeId v) const { return names_[v]; }
    NodeId id(const std::string& name) const;
    TimeUnit arrival(NodeId v) const { return arrival_[v]; }
    TimeUnit min_time() const { return min_time_; }
    TimeUnit max_time() const { return max_time_; }
    std::size_t skipped_self_loops() const { return skipped_self_loops_; }

    const std::map<PairKey, std::vector<TimeUnit>>& edge_log() const { return edge_log_; }
    const std::vector<TimeUnit>* timestamps(NodeId u, NodeId v) const;
    TimeUnit first_time(NodeId u, NodeId v) const;

    Snapshot snapshot_at(TimeUnit t) const;
    std::vector<NodeId> arrivals_at(TimeUnit t) const;
    // Sub-log with every interaction after t dropped (nodes with no remaining
    // interaction disappear). Used to fence off future data.
    TemporalGraph truncate(TimeUnit t) const;

    // Canonical sorted dump, re-ingestable with separator ',' and bin width 1.
    void dump(std::ostream& out) const;
    bool operator==(const TemporalGraph& other) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> ids_;
    std::vector<TimeUnit> arrival_;
    std::map<PairKey, std::vector<TimeUnit>> edge_log_;
    TimeUnit min_time_ = 0;
    TimeUnit max_time_ = 0;
    std::size_t skipped_self_loops_ = 0;
};

}  // namespace trinet
