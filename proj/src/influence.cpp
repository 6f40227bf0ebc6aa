#include "trinet/influence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trinet::influence {

MiningResult mine_link_influence(const TemporalGraph& g) {
    const std::size_t N = g.num_nodes();
    MiningResult out;
    auto& st = out.stats;
    st.action_count.assign(N, 0);
    st.event_count.assign(N, 0);
    st.node_lip.assign(N, 0.0);
    st.lip_defined.assign(N, 0);

    // First action per (actor, target): both endpoints of an interaction act.
    std::vector<std::vector<std::pair<NodeId, TimeUnit>>> first_action(N);  // sorted by target
    for (const auto& [key, ts] : g.edge_log()) {
        first_action[key.first].emplace_back(key.second, ts.front());
        first_action[key.second].emplace_back(key.first, ts.front());
    }
    for (NodeId v = 0; v < N; ++v) {
        std::sort(first_action[v].begin(), first_action[v].end());
        st.action_count[v] = first_action[v].size();
    }

    auto first_of = [&](NodeId a, NodeId target) {
        const auto& acts = first_action[a];
        auto it = std::lower_bound(acts.begin(), acts.end(),
                                   std::make_pair(target, std::numeric_limits<TimeUnit>::min()));
        return it->second;  // caller guarantees the target exists
    };

    // Common targets and their first-action gaps per unordered edge.
    struct EdgeInfo {
        NodeId u, v;
        TimeUnit t0;
        std::vector<NodeId> common;
        std::vector<double> gaps;
    };
    std::vector<EdgeInfo> edges;
    double gap_sum = 0.0;
    std::uint64_t gap_n = 0;
    for (const auto& [key, ts] : g.edge_log()) {
        EdgeInfo info;
        info.u = key.first;
        info.v = key.second;
        info.t0 = ts.front();
        const auto& au = first_action[info.u];
        const auto& av = first_action[info.v];
        std::size_t i = 0, j = 0;
        while (i < au.size() && j < av.size()) {
            if (au[i].first < av[j].first) {
                ++i;
            } else if (au[i].first > av[j].first) {
                ++j;
            } else {
                const NodeId w = au[i].first;
                if (w != info.u && w != info.v) {
                    info.common.push_back(w);
                    const double gap =
                        std::fabs(static_cast<double>(au[i].second - av[j].second));
                    info.gaps.push_back(gap);
                    gap_sum += gap;
                    ++gap_n;
                }
                ++i;
                ++j;
            }
        }
        edges.push_back(std::move(info));
    }
    st.global_mean_gap = gap_n > 0 ? gap_sum / static_cast<double>(gap_n) : 0.0;

    for (const auto& e : edges) {
        double sigma = st.global_mean_gap;
        if (!e.gaps.empty()) {
            double s = 0.0;
            for (double gap : e.gaps) s += gap;
            sigma = s / static_cast<double>(e.gaps.size());
        }
        // Both directions of the dyad share sigma.
        for (int dir = 0; dir < 2; ++dir) {
            const NodeId u = dir == 0 ? e.u : e.v;
            const NodeId v = dir == 0 ? e.v : e.u;
            std::uint64_t dyad_events = 0;
            for (NodeId w : e.common) {
                const TimeUnit t = first_of(u, w);
                const TimeUnit tp = first_of(v, w);
                if (e.t0 < t && t < tp && static_cast<double>(tp - t) < sigma) {
                    out.events.push_back({u, v, w, t, tp, sigma});
                    ++dyad_events;
                }
            }
            st.event_count[u] += dyad_events;
            auto& d = st.dyads[{u, v}];
            d.events = dyad_events;
        }
    }

    for (NodeId v = 0; v < N; ++v) {
        if (st.action_count[v] > 0) {
            st.lip_defined[v] = 1;
            st.node_lip[v] = static_cast<double>(st.event_count[v]) /
                             static_cast<double>(st.action_count[v]);
        }
    }
    for (auto& [key, d] : st.dyads) {
        const auto actions = st.action_count[key.first];
        d.lip = actions > 0 ? static_cast<double>(d.events) / static_cast<double>(actions) : 0.0;
    }
    return out;
}

std::pair<double, double> prominence_features(const DyadInfluenceStats& stats, const Snapshot& s,
                                              NodeId v) {
    double prod = 1.0, sum = 0.0;
    for (NodeId u : s.adj[v]) {
        const double lip = stats.node_lip[u];
        prod *= 1.0 - lip;
        sum += lip;
    }
    return {1.0 - prod, sum};
}

double pair_link_influence_prob(const DyadInfluenceStats& stats, const TemporalGraph& g,
                                const Snapshot& s, NodeId v, NodeId w, TimeUnit now,
                                TimeUnit window) {
    if (s.has_edge(v, w)) throw Error("pair_link_influence_prob: pair already adjacent");
    if (window <= 0) throw Error("pair_link_influence_prob: window must be positive");

    auto recent_actions = [&](NodeId a, NodeId target) -> int {
        const auto* ts = g.timestamps(a, target);
        if (!ts) return 0;
        int k = 0;
        for (TimeUnit t : *ts)
            if (t > now - window && t <= now) ++k;
        return k;
    };

    double prod = 1.0;
    const auto& nv = s.adj[v];
    const auto& nw = s.adj[w];
    std::size_t i = 0, j = 0;
    while (i < nv.size() && j < nw.size()) {
        if (nv[i] < nw[j]) {
            ++i;
        } else if (nv[i] > nw[j]) {
            ++j;
        } else {
            const NodeId u = nv[i];
            const double p_uv =
                1.0 - std::pow(1.0 - stats.lip_of(u, v), recent_actions(u, w));
            const double p_uw =
                1.0 - std::pow(1.0 - stats.lip_of(u, w), recent_actions(u, v));
            prod *= 1.0 - std::max(p_uv, p_uw);
            ++i;
            ++j;
        }
    }
    return 1.0 - prod;
}

std::map<std::string, std::uint64_t> event_pattern_census(
    const std::vector<LinkInfluenceEvent>& events, const std::vector<char>& is_prominent) {
    std::map<std::string, std::uint64_t> census;
    for (const auto& p : census_patterns()) census[p] = 0;
    for (const auto& e : events) {
        const NodeId ids[3] = {e.influencer, e.influenced, e.target};
        char digits[3];
        for (int i = 0; i < 3; ++i) {
            if (ids[i] >= is_prominent.size()) throw Error("event_pattern_census: unlabeled node");
            digits[i] = is_prominent[ids[i]] ? '1' : '0';
        }
        for (auto& [pattern, count] : census) {
            bool match = true;
            for (int i = 0; i < 3; ++i)
                if (pattern[i] != 'X' && pattern[i] != digits[i]) match = false;
            if (match) ++count;
        }
    }
    return census;
}

}  // namespace trinet::influence
