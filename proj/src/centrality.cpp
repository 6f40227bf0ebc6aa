#include "trinet/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "trinet/kernels.hpp"

namespace trinet::centrality {

std::vector<double> pagerank(const Snapshot& s, const PageRankConfig& cfg) {
    const std::size_t N = s.adj.size();
    const double n = static_cast<double>(s.num_present);
    if (s.num_present == 0) throw Error("pagerank: empty snapshot");
    std::vector<double> p(N, 0.0), next(N, 0.0);
    for (NodeId v = 0; v < N; ++v)
        if (s.present[v]) p[v] = 1.0 / n;
    for (int it = 0; it < cfg.max_iters; ++it) {
        double dangling = 0.0;
        for (NodeId v = 0; v < N; ++v)
            if (s.present[v] && s.adj[v].empty()) dangling += p[v];
        const double base = (1.0 - cfg.damping) / n + cfg.damping * dangling / n;
        for (NodeId v = 0; v < N; ++v) next[v] = s.present[v] ? base : 0.0;
        for (NodeId v = 0; v < N; ++v) {
            if (!s.present[v] || s.adj[v].empty()) continue;
            const double share = cfg.damping * p[v] / static_cast<double>(s.adj[v].size());
            for (NodeId u : s.adj[v]) next[u] += share;
        }
        double delta = 0.0;
        for (NodeId v = 0; v < N; ++v) delta += std::fabs(next[v] - p[v]);
        p.swap(next);
        if (delta < cfg.tol) break;
    }
    return p;
}

// Brandes accumulation; each BFS from a present source.
std::vector<double> betweenness(const Snapshot& s) {
    const std::size_t N = s.adj.size();
    std::vector<double> bc(N, 0.0);
    std::vector<int> dist(N);
    std::vector<double> sigma(N), delta(N);
    std::vector<std::vector<NodeId>> preds(N);
    std::vector<NodeId> order;
    order.reserve(N);
    for (NodeId src = 0; src < N; ++src) {
        if (!s.present[src]) continue;
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        order.clear();
        dist[src] = 0;
        sigma[src] = 1.0;
        std::deque<NodeId> queue{src};
        while (!queue.empty()) {
            NodeId v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (NodeId w : s.adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            NodeId w = *it;
            for (NodeId v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            if (w != src) bc[w] += delta[w];
        }
    }
    for (auto& x : bc) x /= 2.0;
    return bc;
}

std::vector<double> closeness(const Snapshot& s) {
    const std::size_t N = s.adj.size();
    const double n = static_cast<double>(s.num_present);
    std::vector<double> cc(N, 0.0);
    std::vector<int> dist(N);
    for (NodeId src = 0; src < N; ++src) {
        if (!s.present[src]) continue;
        std::fill(dist.begin(), dist.end(), -1);
        dist[src] = 0;
        std::deque<NodeId> queue{src};
        double sum = 0.0;
        std::size_t reach = 1;
        while (!queue.empty()) {
            NodeId v = queue.front();
            queue.pop_front();
            for (NodeId w : s.adj[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    sum += dist[w];
                    ++reach;
                    queue.push_back(w);
                }
            }
        }
        if (reach > 1 && n > 1) {
            const double r1 = static_cast<double>(reach - 1);
            cc[src] = (r1 / (n - 1.0)) * (r1 / sum);
        }
    }
    return cc;
}

std::vector<std::size_t> triangles_per_node(const Snapshot& s) {
    const std::size_t N = s.adj.size();
    std::vector<std::size_t> tri(N, 0);
    for (NodeId u = 0; u < N; ++u) {
        for (NodeId v : s.adj[u]) {
            if (v <= u) continue;
            const std::size_t common = kernels::intersect_count(
                s.adj[u].data(), s.adj[u].size(), s.adj[v].data(), s.adj[v].size());
            tri[u] += common;
            tri[v] += common;
        }
    }
    // Each triangle at v counted once per incident edge pair scan: edge (u,v)
    // contributes the common-neighbor count to both ends, so every triangle
    // touches each of its corners exactly twice.
    for (auto& t : tri) t /= 2;
    return tri;
}

std::vector<double> clustering(const Snapshot& s) {
    const std::size_t N = s.adj.size();
    auto tri = triangles_per_node(s);
    std::vector<double> out(N, 0.0);
    for (NodeId v = 0; v < N; ++v) {
        const double d = static_cast<double>(s.adj[v].size());
        if (d >= 2.0) out[v] = 2.0 * static_cast<double>(tri[v]) / (d * (d - 1.0));
    }
    return out;
}

std::array<double, 3> burt_measures(const Snapshot& s, NodeId v) {
    const auto& nbrs = s.adj[v];
    const std::size_t d = nbrs.size();
    if (d == 0) return {0.0, 0.0, 0.0};

    // Ties among v's neighbors, restricted to the ego network.
    std::vector<std::vector<std::size_t>> ego_ties(d);  // indices into nbrs
    std::size_t ties2 = 0;  // directed tie count among neighbors
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (i != j && s.has_edge(nbrs[i], nbrs[j])) {
                ego_ties[i].push_back(j);
                ++ties2;
            }
        }
    }

    const double dd = static_cast<double>(d);
    const double effective_size = dd - static_cast<double>(ties2) / dd;
    const double efficiency = effective_size / dd;

    // Per-neighbor constraint terms; p_vj = 1/d, p_qj over q's ego ties
    // (q is tied to v plus its neighbors inside the ego network).
    std::vector<double> terms(d);
    double constraint = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double indirect = 0.0;
        for (std::size_t q = 0; q < d; ++q) {
            if (q == j) continue;
            if (!s.has_edge(nbrs[q], nbrs[j])) continue;
            const double p_vq = 1.0 / dd;
            const double p_qj = 1.0 / (1.0 + static_cast<double>(ego_ties[q].size()));
            indirect += p_vq * p_qj;
        }
        const double c = (1.0 / dd + indirect) * (1.0 / dd + indirect);
        terms[j] = c;
        constraint += c;
    }

    // Coleman-Theil concentration of the constraint terms.
    double hierarchy = 0.0;
    if (d > 1 && constraint > 0.0) {
        const double mean = constraint / dd;
        double num = 0.0;
        for (double c : terms) {
            const double ratio = c / mean;
            if (ratio > 0.0) num += ratio * std::log(ratio);
        }
        hierarchy = num / (dd * std::log(dd));
    }
    return {efficiency, constraint, hierarchy};
}

std::vector<NodeFeatureRow> baseline_features(const Snapshot& s) {
    if (s.num_present == 0) throw Error("baseline_features: empty snapshot");
    auto pr = pagerank(s);
    auto bc = betweenness(s);
    auto cc = closeness(s);
    auto cl = clustering(s);
    std::vector<NodeFeatureRow> rows;
    rows.reserve(s.num_present);
    for (NodeId v = 0; v < s.adj.size(); ++v) {
        if (!s.present[v]) continue;
        auto [eff, cons, hier] = burt_measures(s, v);
        rows.push_back({v, static_cast<double>(s.adj[v].size()), bc[v], cc[v], cl[v], pr[v],
                        eff, cons, hier});
    }
    return rows;
}

}  // namespace trinet::centrality
