#include "trinet/synthetic.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

namespace trinet::synthetic {

namespace {

struct Builder {
    std::vector<std::set<NodeId>> adj;
    std::vector<NodeId> ends;  // one entry per edge endpoint, for PA sampling
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<std::tuple<NodeId, NodeId, TimeUnit>> records;
    std::mt19937_64 rng;

    explicit Builder(std::size_t n, std::uint64_t seed) : adj(n), rng(seed) {}

    std::size_t max_deg = 1;

    bool add_edge(NodeId u, NodeId v, TimeUnit t) {
        if (u == v) return false;
        const bool fresh = adj[u].insert(v).second;
        adj[v].insert(u);
        if (fresh) {
            ends.push_back(u);
            ends.push_back(v);
            edges.emplace_back(u, v);
            max_deg = std::max({max_deg, adj[u].size(), adj[v].size()});
        }
        records.emplace_back(u, v, t);
        return fresh;
    }

    NodeId pa_pick(std::size_t active) {
        if (ends.empty()) return static_cast<NodeId>(rng() % active);
        return ends[rng() % ends.size()];
    }

    NodeId random_neighbor(NodeId v) {
        auto it = adj[v].begin();
        std::advance(it, rng() % adj[v].size());
        return *it;
    }

    // Center of a uniformly random wedge: degree-proportional draw followed by
    // a (d-1)-proportional acceptance, so P(center) ~ d*(d-1).
    NodeId wedge_center() {
        for (int tries = 0; tries < 64 && !ends.empty() && max_deg > 1; ++tries) {
            const NodeId c = ends[rng() % ends.size()];
            const std::size_t d = adj[c].size();
            if (d < 2) continue;
            if (rng() % (max_deg - 1) < d - 1) return c;
        }
        for (NodeId c = 0; c < adj.size(); ++c)
            if (adj[c].size() >= 2) return c;
        return 0;
    }
};

}  // namespace

TemporalGraph generate(const GeneratorConfig& cfg) {
    std::ostringstream buf;
    write_edge_list(cfg, buf);
    std::istringstream in(buf.str());
    return TemporalGraph::ingest(in);
}

void write_edge_list(const GeneratorConfig& cfg, std::ostream& out) {
    const std::size_t n = cfg.num_nodes;
    if (cfg.clique_size < 3 || n <= cfg.clique_size)
        throw Error("generate: need clique_size >= 3 and num_nodes > clique_size");
    Builder b(n, mix64(cfg.seed, 0x73796eULL));
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    for (NodeId u = 0; u < cfg.clique_size; ++u)
        for (NodeId v = u + 1; v < cfg.clique_size; ++v) b.add_edge(u, v, 0);

    std::size_t next_node = cfg.clique_size;
    TimeUnit t = 0;
    while (next_node < n) {
        ++t;
        const std::size_t batch = std::min(cfg.nodes_per_time, n - next_node);
        for (std::size_t i = 0; i < batch; ++i) {
            const NodeId v = static_cast<NodeId>(next_node++);
            const NodeId anchor = b.pa_pick(v);
            b.add_edge(v, anchor, t);
            for (int e = 1; e < cfg.edges_per_node; ++e) {
                NodeId target;
                if (coin(b.rng) < cfg.closure_prob && !b.adj[v].empty()) {
                    // close a wedge through one of v's existing neighbors
                    const NodeId mid = b.random_neighbor(v);
                    target = b.random_neighbor(mid);
                } else {
                    target = b.pa_pick(v);
                }
                if (target != v && !b.adj[v].count(target)) b.add_edge(v, target, t);
            }
        }
        const std::size_t active = next_node;
        for (std::size_t i = 0; i < cfg.internal_edges_per_time; ++i) {
            if (coin(b.rng) < cfg.closure_prob) {
                const NodeId mid = b.wedge_center();
                if (b.adj[mid].size() < 2) continue;
                const NodeId a = b.random_neighbor(mid);
                const NodeId c = b.random_neighbor(mid);
                if (a != c && !b.adj[a].count(c)) b.add_edge(a, c, t);
            } else {
                const NodeId a = b.pa_pick(active);
                const NodeId c = b.pa_pick(active);
                if (a != c && !b.adj[a].count(c)) b.add_edge(a, c, t);
            }
        }
        for (std::size_t i = 0; i < cfg.repeats_per_time && !b.edges.empty(); ++i) {
            const auto [u, v] = b.edges[b.rng() % b.edges.size()];
            b.records.emplace_back(u, v, t);
        }
    }
    // One trailing step of internal evolution so the last arrivals have a future.
    ++t;
    for (std::size_t i = 0; i < cfg.internal_edges_per_time; ++i) {
        const NodeId mid = b.wedge_center();
        if (b.adj[mid].size() < 2) continue;
        const NodeId a = b.random_neighbor(mid);
        const NodeId c = b.random_neighbor(mid);
        if (a != c && !b.adj[a].count(c)) b.add_edge(a, c, t);
    }

    for (const auto& [u, v, time] : b.records)
        out << 'n' << u << ',' << 'n' << v << ',' << time << '\n';
}

}  // namespace trinet::synthetic
