#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "trinet/triads.hpp"

using namespace trinet;
using namespace trinet::triads;

namespace {

Snapshot path3() { return Snapshot::from_edges(3, {{0, 1}, {1, 2}}); }
Snapshot k3() { return Snapshot::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }

void check_sum_identities(const Snapshot& s) {
    const auto c = triad_class_counts(s);
    const auto p = tpp(s);
    std::uint64_t s1 = 0, s2 = 0, s3 = 0, s4 = 0, s5 = 0;
    for (const auto& row : p.counts) {
        s1 += row[0];
        s2 += row[1];
        s3 += row[2];
        s4 += row[3];
        s5 += row[4];
    }
    CHECK(s1 == 2 * c.c1);
    CHECK(s2 == c.c1);
    CHECK(s3 == 2 * c.c2);
    CHECK(s4 == c.c2);
    CHECK(s5 == 3 * c.c3);
    for (NodeId v = 0; v < s.adj.size(); ++v) {
        if (!s.present[v]) continue;
        const std::uint64_t d = s.adj[v].size();
        CHECK(p.counts[v][3] + p.counts[v][4] == d * (d - 1) / 2);
    }
}

}  // namespace

TEST_CASE("triad class counts on hand graphs") {
    auto c = triad_class_counts(k3());
    CHECK(c.c0 == 0);
    CHECK(c.c3 == 1);

    c = triad_class_counts(path3());
    CHECK(c.c2 == 1);
    CHECK(c.c3 == 0);

    // 4 nodes, single edge
    c = triad_class_counts(Snapshot::from_edges(4, {{0, 1}}));
    CHECK(c.c0 == 2);
    CHECK(c.c1 == 2);
    CHECK(c.c2 == 0);
    CHECK(c.c3 == 0);

    CHECK_THROWS_AS(triad_class_counts(Snapshot::from_edges(2, {{0, 1}})), Error);
}

TEST_CASE("census matches brute force on random graphs") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const double p = seed % 3 == 0 ? 0.1 : seed % 3 == 1 ? 0.3 : 0.5;
        const std::size_t n = 10 + seed % 21;
        auto s = oracles::er_graph(n, p, seed);
        const auto fast = triad_class_counts(s);
        const auto slow = oracles::brute_triad_class_counts(s);
        REQUIRE(fast.c0 == slow[0]);
        REQUIRE(fast.c1 == slow[1]);
        REQUIRE(fast.c2 == slow[2]);
        REQUIRE(fast.c3 == slow[3]);

        const auto profile = tpp(s);
        const auto brute = oracles::brute_tpp(s);
        for (NodeId v = 0; v < n; ++v)
            for (int i = 0; i < 5; ++i) REQUIRE(profile.counts[v][i] == brute[v][i]);
        check_sum_identities(s);
    }
}

TEST_CASE("tpp hand examples") {
    const auto p = tpp(path3());
    CHECK(p.at(0) == PositionCounts{0, 0, 1, 0, 0});
    CHECK(p.at(1) == PositionCounts{0, 0, 0, 1, 0});

    const auto pk = tpp(k3());
    for (NodeId v = 0; v < 3; ++v) CHECK(pk.at(v) == PositionCounts{0, 0, 0, 0, 1});

    const auto p4 = tpp(Snapshot::from_edges(4, {{0, 1}}));
    CHECK(p4.at(0)[0] == 2);  // endpoint of the edge in triads {0,1,2} and {0,1,3}
    CHECK(p4.at(2)[1] == 1);  // isolated third node of triad {0,1,2} only
    CHECK(p4.at(3)[1] == 1);
}

TEST_CASE("balance rate") {
    CHECK(balance_rate(k3()) == doctest::Approx(1.0));
    CHECK(balance_rate(path3()) == doctest::Approx(0.0));
    CHECK_THROWS_AS(balance_rate(Snapshot::from_edges(4, {{0, 1}})), Error);

    auto s = oracles::er_graph(50, 0.2, 99);
    const auto brute = oracles::brute_triad_class_counts(s);
    const double expect = 3.0 * static_cast<double>(brute[3]) /
                          static_cast<double>(brute[2] + 3 * brute[3]);
    CHECK(balance_rate(s) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("position conditionals") {
    const auto star = tpp(Snapshot::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}));
    const auto [p34, p43] = position_conditionals(star);
    CHECK(p34 == doctest::Approx(0.0));
    CHECK(p43 == doctest::Approx(0.0));

    const auto path4 = tpp(Snapshot::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}));
    const auto [q34, q43] = position_conditionals(path4);
    CHECK(q34 == doctest::Approx(1.0));  // both inner nodes hold positions 3 and 4

    CHECK_THROWS_AS(position_conditionals(tpp(k3())), Error);
}

TEST_CASE("tem on hand-built snapshot pairs") {
    auto s_t = Snapshot::from_edges(3, {{0, 1}});
    auto s_t1 = Snapshot::from_edges(3, {{0, 1}, {1, 2}});
    auto m = tem(s_t, s_t1);
    CHECK(m.m[1][2] == doctest::Approx(1.0));
    CHECK(m.row_count[1] == 1);
    CHECK_FALSE(m.observed[0]);
    CHECK(m.m[0][0] == doctest::Approx(1.0));  // identity default

    auto m2 = tem(path3(), k3());
    CHECK(m2.m[2][3] == doctest::Approx(1.0));

    auto same = tem(path3(), path3());
    CHECK(same.identical_snapshots);
    for (int i = 0; i < 4; ++i) CHECK(same.m[i][i] == doctest::Approx(1.0));
}

TEST_CASE("tem matches brute-force triple classification") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        auto s_t = oracles::er_graph(30, 0.15, seed);
        // grow: add extra random edges on top
        auto extra = oracles::er_graph(30, 0.05, seed + 1000);
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (NodeId u = 0; u < 30; ++u)
            for (NodeId v : s_t.adj[u])
                if (v > u) edges.emplace_back(u, v);
        for (NodeId u = 0; u < 30; ++u)
            for (NodeId v : extra.adj[u])
                if (v > u) edges.emplace_back(u, v);
        auto s_t1 = Snapshot::from_edges(30, edges, 1);
        auto m = tem(s_t, s_t1);
        const auto brute = oracles::brute_tem_counts(s_t, s_t1);
        for (int i = 0; i < 4; ++i) {
            std::uint64_t total = 0;
            double row_sum = 0.0;
            for (int j = 0; j < 4; ++j) total += brute[i][j];
            REQUIRE(m.row_count[i] == total);
            for (int j = 0; j < 4; ++j) {
                const double expect =
                    total > 0 ? static_cast<double>(brute[i][j]) / static_cast<double>(total)
                              : (i == j ? 1.0 : 0.0);
                REQUIRE(m.m[i][j] == doctest::Approx(expect).epsilon(1e-15));
                row_sum += m.m[i][j];
                if (j < i) REQUIRE(m.m[i][j] == 0.0);  // cumulative snapshots
            }
            REQUIRE(row_sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("tce identities") {
    auto star = Snapshot::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(tce(star, 1, 2) == TceVector{1, 0, 0, 1});

    CHECK(tce(path3(), 0, 2) == TceVector{0, 0, 0, 1});

    CHECK_THROWS_AS(tce(path3(), 0, 1), Error);
    CHECK_THROWS_AS(tce(path3(), 0, 0), Error);

    auto s = oracles::er_graph(20, 0.3, 5);
    for (NodeId u = 0; u < 20; ++u) {
        for (NodeId v = u + 1; v < 20; ++v) {
            if (s.has_edge(u, v)) continue;
            const auto got = tce(s, u, v);
            const auto expect = oracles::brute_tce(s, u, v);
            REQUIRE(got == expect);
            REQUIRE(got[0] + got[1] + got[2] + got[3] == 18);
        }
    }
}

TEST_CASE("tce likelihoods from hand-built matrices") {
    TriadEvolutionMatrix m{};
    for (int i = 0; i < 4; ++i) m.m[i][i] = 1.0;
    const auto ident = tce_likelihoods(m);
    for (double l : ident) CHECK(l == doctest::Approx(0.0));

    m.m[1] = {0.0, 0.0, 1.0, 0.0};
    m.m[1][1] = 0.0;
    const auto l = tce_likelihoods(m);
    CHECK(l[1] == doctest::Approx(0.5));
    CHECK(l[2] == doctest::Approx(0.5));

    m.m[0] = {0.7, 0.2, 0.09, 0.01};
    const auto l0 = tce_likelihoods(m);
    CHECK(l0[0] == doctest::Approx(0.2 / 3.0 + 0.09 * 2.0 / 3.0 + 0.01).epsilon(1e-12));
}

TEST_CASE("tem_prob is an elementwise product") {
    CHECK(tem_prob({1, 0, 0, 1}, {0.1, 0.2, 0.2, 0.6}) ==
          std::array<double, 4>{0.1, 0.0, 0.0, 0.6});
    CHECK(tem_prob({5, 0, 0, 0}, {0.0, 0.3, 0.3, 0.9}) ==
          std::array<double, 4>{0.0, 0.0, 0.0, 0.0});
    // feature values may exceed 1
    CHECK(tem_prob({0, 0, 0, 3}, {0.0, 0.0, 0.0, 0.5})[3] == doctest::Approx(1.5));
}

TEST_CASE("permutation equivariance of triad statistics") {
    auto s = oracles::er_graph(15, 0.3, 77);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId u = 0; u < 15; ++u)
        for (NodeId v : s.adj[u])
            if (v > u) edges.emplace_back(14 - u, 14 - v);
    auto s2 = Snapshot::from_edges(15, edges);
    CHECK(balance_rate(s) == doctest::Approx(balance_rate(s2)).epsilon(1e-15));
    const auto p1 = tpp(s);
    const auto p2 = tpp(s2);
    for (NodeId v = 0; v < 15; ++v) CHECK(p1.at(v) == p2.at(14 - v));
}
