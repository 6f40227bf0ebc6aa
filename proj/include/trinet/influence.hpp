#pragma once

#include <map>
#include <string>
#include <vector>

#include "trinet/temporal_graph.hpp"

namespace trinet::influence {

struct LinkInfluenceEvent {
    NodeId influencer;  // u
    NodeId influenced;  // v
    NodeId target;      // w
    TimeUnit t;         // u's first action on w
    TimeUnit t_prime;   // v's first action on w
    double sigma;       // dyad action-delay threshold used
};

struct DyadStats {
    std::uint64_t events = 0;  // events with this ordered (influencer, influenced) dyad
    double lip = 0.0;          // events / influencer's action count
};

struct DyadInfluenceStats {
    // Ordered dyads (u,v) over existing edges.
    std::map<std::pair<NodeId, NodeId>, DyadStats> dyads;
    std::vector<std::uint64_t> action_count;  // distinct targets per node
    std::vector<std::uint64_t> event_count;   // events with the node as influencer
    std::vector<double> node_lip;             // LIP(u); 0 when undefined
    std::vector<char> lip_defined;            // false when action_count == 0
    double global_mean_gap = 0.0;

    double lip_of(NodeId u, NodeId v) const {
        auto it = dyads.find({u, v});
        return it == dyads.end() ? 0.0 : it->second.lip;
    }
};

struct MiningResult {
    std::vector<LinkInfluenceEvent> events;
    DyadInfluenceStats stats;
};

MiningResult mine_link_influence(const TemporalGraph& g);

// (prominence_prob, prominence_index) over v's neighbors in s.
std::pair<double, double> prominence_features(const DyadInfluenceStats& stats, const Snapshot& s,
                                              NodeId v);

// Link likelihood of a non-adjacent pair from dyad LIPs and the actors' recent
// actions within (now - window, now].
double pair_link_influence_prob(const DyadInfluenceStats& stats, const TemporalGraph& g,
                                const Snapshot& s, NodeId v, NodeId w, TimeUnit now,
                                TimeUnit window);

// Wildcard patterns over the prominence digits of (u, v, w).
inline const std::vector<std::string>& census_patterns() {
    static const std::vector<std::string> p = {"1XX", "0XX", "X1X", "X0X", "XX1",
                                               "XX0", "11X", "00X", "10X", "01X"};
    return p;
}

std::map<std::string, std::uint64_t> event_pattern_census(
    const std::vector<LinkInfluenceEvent>& events, const std::vector<char>& is_prominent);

}  // namespace trinet::influence
