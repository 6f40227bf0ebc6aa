#include "trinet/triads.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "trinet/centrality.hpp"
#include "trinet/kernels.hpp"

namespace trinet::triads {

namespace {

std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

std::uint64_t choose3(std::uint64_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }

std::size_t common_count(const Snapshot& s, NodeId u, NodeId v) {
    return kernels::intersect_count(s.adj[u].data(), s.adj[u].size(), s.adj[v].data(),
                                    s.adj[v].size());
}

}  // namespace

int classify_triple(const Snapshot& s, NodeId a, NodeId b, NodeId c) {
    return static_cast<int>(s.has_edge(a, b)) + static_cast<int>(s.has_edge(a, c)) +
           static_cast<int>(s.has_edge(b, c));
}

TriadClassCounts triad_class_counts(const Snapshot& s) {
    const std::uint64_t n = s.num_present;
    if (n < 3) throw Error("triad_class_counts: need at least 3 nodes");
    TriadClassCounts out;
    std::uint64_t tri3 = 0;  // 3 * triangle count
    for (NodeId u = 0; u < s.adj.size(); ++u) {
        if (!s.present[u]) continue;
        out.c2 += choose2(s.adj[u].size());
        for (NodeId v : s.adj[u]) {
            if (v <= u) continue;
            const std::uint64_t common = common_count(s, u, v);
            tri3 += common;  // per-edge common neighbors; sums to 3 * triangles
            // third nodes not touching the edge (u,v):
            // |N(u) ∪ N(v)| includes u and v themselves (adjacent pair).
            const std::uint64_t touched = s.adj[u].size() + s.adj[v].size() - common;
            out.c1 += n - touched;
        }
    }
    out.c3 = tri3 / 3;
    out.c2 -= 3 * out.c3;
    out.c0 = choose3(n) - out.c1 - out.c2 - out.c3;
    return out;
}

double balance_rate(const Snapshot& s) {
    const auto c = triad_class_counts(s);
    const std::uint64_t denom = c.c2 + 3 * c.c3;
    if (denom == 0) throw Error("balance_rate: no connected triads");
    return 3.0 * static_cast<double>(c.c3) / static_cast<double>(denom);
}

TriadPositionProfile tpp(const Snapshot& s) {
    const std::size_t N = s.adj.size();
    const std::uint64_t n = s.num_present;
    if (n < 3) throw Error("tpp: need at least 3 nodes");
    TriadPositionProfile p;
    p.counts.assign(N, PositionCounts{});
    auto tri = centrality::triangles_per_node(s);
    const std::uint64_t edges = s.num_edges;
    for (NodeId v = 0; v < N; ++v) {
        if (!s.present[v]) continue;
        const std::uint64_t d = s.adj[v].size();
        const std::uint64_t pos5 = tri[v];
        const std::uint64_t pos4 = choose2(d) - pos5;
        std::uint64_t nbr_deg_sum = 0;
        std::uint64_t pos1 = 0;
        for (NodeId u : s.adj[v]) {
            nbr_deg_sum += s.adj[u].size();
            const std::uint64_t common = common_count(s, u, v);
            pos1 += n - (s.adj[u].size() + d - common);
        }
        const std::uint64_t pos3 = nbr_deg_sum - d - 2 * pos5;
        const std::uint64_t pos2 = edges - d - pos5 - pos3;
        p.counts[v] = {pos1, pos2, pos3, pos4, pos5};
    }
    return p;
}

std::pair<double, double> position_conditionals(const TriadPositionProfile& p) {
    std::uint64_t with4 = 0, with3 = 0, both = 0;
    for (const auto& c : p.counts) {
        const bool has3 = c[2] > 0, has4 = c[3] > 0;
        with3 += has3;
        with4 += has4;
        both += has3 && has4;
    }
    if (with4 == 0 || with3 == 0) throw Error("position_conditionals: empty conditioning set");
    return {static_cast<double>(both) / static_cast<double>(with4),
            static_cast<double>(both) / static_cast<double>(with3)};
}

TriadEvolutionMatrix tem(const Snapshot& s_t, const Snapshot& s_t1) {
    if (s_t.cut_time > s_t1.cut_time) throw Error("tem: snapshots out of order");
    const std::size_t N = s_t.adj.size();
    if (N != s_t1.adj.size()) throw Error("tem: snapshots over different node universes");

    const auto base = triad_class_counts(s_t);

    // New edges between nodes already present at t.
    std::vector<std::pair<NodeId, NodeId>> new_edges;
    for (NodeId u = 0; u < N; ++u) {
        if (!s_t.present[u]) continue;
        for (NodeId v : s_t1.adj[u]) {
            if (v <= u || !s_t.present[v]) continue;
            if (!s_t.has_edge(u, v)) new_edges.emplace_back(u, v);
        }
    }

    // Triples touching at least one new edge, classified at both times.
    std::set<std::tuple<NodeId, NodeId, NodeId>> changed;
    for (auto [u, v] : new_edges) {
        for (NodeId w = 0; w < N; ++w) {
            if (w == u || w == v || !s_t.present[w]) continue;
            NodeId a = u, b = v, c = w;
            if (a > b) std::swap(a, b);
            if (b > c) std::swap(b, c);
            if (a > b) std::swap(a, b);
            changed.emplace(a, b, c);
        }
    }

    std::array<std::array<std::uint64_t, 4>, 4> counts{};
    std::array<std::uint64_t, 4> changed_at_t{};
    for (const auto& [a, b, c] : changed) {
        const int ct = classify_triple(s_t, a, b, c);
        const int ct1 = classify_triple(s_t1, a, b, c);
        ++counts[ct][ct1];
        ++changed_at_t[ct];
    }
    for (int i = 0; i < 4; ++i) counts[i][i] += base[i] - changed_at_t[i];

    TriadEvolutionMatrix out;
    out.identical_snapshots = new_edges.empty();
    for (int i = 0; i < 4; ++i) {
        std::uint64_t row_total = 0;
        for (int j = 0; j < 4; ++j) row_total += counts[i][j];
        out.row_count[i] = row_total;
        out.observed[i] = row_total > 0;
        if (row_total > 0) {
            for (int j = 0; j < 4; ++j)
                out.m[i][j] = static_cast<double>(counts[i][j]) / static_cast<double>(row_total);
        } else {
            out.m[i][i] = 1.0;
        }
    }
    return out;
}

TceVector tce(const Snapshot& s, NodeId u, NodeId v) {
    if (u == v) throw Error("tce: identical nodes");
    if (s.has_edge(u, v)) throw Error("tce: pair is adjacent; TCE defined for non-edges only");
    const std::uint64_t n = s.num_present;
    const std::uint64_t common = common_count(s, u, v);
    const std::uint64_t du = s.adj[u].size(), dv = s.adj[v].size();
    // u,v non-adjacent, so neither appears in the other's neighbor list.
    const std::uint64_t only_u = du - common;
    const std::uint64_t only_v = dv - common;
    const std::uint64_t neither = n - 2 - (du + dv - common);
    return {neither, only_u, only_v, common};
}

LikelihoodVector tce_likelihoods(const TriadEvolutionMatrix& tem) {
    const auto& m = tem.m;
    const double l0 = m[0][1] / 3.0 + m[0][2] * 2.0 / 3.0 + m[0][3];
    const double l12 = m[1][2] / 2.0 + m[1][3];
    const double l3 = m[2][3];
    return {l0, l12, l12, l3};
}

std::array<double, 4> tem_prob(const TceVector& tce, const LikelihoodVector& l) {
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) out[i] = static_cast<double>(tce[i]) * l[i];
    return out;
}

}  // namespace trinet::triads
