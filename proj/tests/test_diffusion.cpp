#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "trinet/diffusion.hpp"

using namespace trinet;
using namespace trinet::diffusion;

namespace {

Snapshot star(std::size_t leaves) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return Snapshot::from_edges(leaves + 1, edges);
}

}  // namespace

TEST_CASE("model names round trip") {
    CHECK(parse_model(model_name(Model::LinearThreshold)) == Model::LinearThreshold);
    CHECK(parse_model(model_name(Model::WeightedCascade)) == Model::WeightedCascade);
    CHECK_THROWS_AS(parse_model("bogus"), Error);
}

TEST_CASE("LT with zero thresholds floods connected components") {
    auto s = Snapshot::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {4, 5}});
    SpreadConfig cfg;
    cfg.runs = 3;
    cfg.fixed_threshold = 0.0;
    auto r = simulate_spread(s, {0}, Model::LinearThreshold, cfg);
    CHECK(r.mean == doctest::Approx(4.0));
    CHECK(r.stddev == doctest::Approx(0.0));

    auto r2 = simulate_spread(s, {0, 4}, Model::LinearThreshold, cfg);
    CHECK(r2.mean == doctest::Approx(6.0));

    // node 6 is isolated; seeding it reaches only itself
    auto r3 = simulate_spread(s, {6}, Model::LinearThreshold, cfg);
    CHECK(r3.mean == doctest::Approx(1.0));
}

TEST_CASE("LT with thresholds above one never spreads") {
    auto s = star(5);
    SpreadConfig cfg;
    cfg.runs = 5;
    cfg.fixed_threshold = 1.5;
    auto r = simulate_spread(s, {0}, Model::LinearThreshold, cfg);
    CHECK(r.mean == doctest::Approx(1.0));
}

TEST_CASE("WC star spread has a closed form") {
    auto s = star(4);
    SpreadConfig cfg;
    cfg.runs = 4000;
    cfg.master_seed = 9;

    // center seed: each leaf fires with probability 1/deg(leaf) = 1
    auto center = simulate_spread(s, {0}, Model::WeightedCascade, cfg);
    CHECK(center.mean == doctest::Approx(5.0));
    CHECK(center.stddev == doctest::Approx(0.0));

    // leaf seed: center with prob 1/4, then the other three leaves for sure
    // E = 1 + (1/4) * 4 = 2
    auto leaf = simulate_spread(s, {1}, Model::WeightedCascade, cfg);
    const double se = leaf.stddev / std::sqrt(static_cast<double>(cfg.runs));
    CHECK(std::abs(leaf.mean - 2.0) <= 4.0 * se + 1e-9);
}

TEST_CASE("same seed reproduces the estimate bit for bit") {
    auto s = oracles::er_graph(40, 0.1, 12);
    SpreadConfig cfg;
    cfg.runs = 50;
    cfg.master_seed = 31;
    for (Model m : {Model::LinearThreshold, Model::WeightedCascade}) {
        auto a = simulate_spread(s, {0, 3, 7}, m, cfg);
        auto b = simulate_spread(s, {0, 3, 7}, m, cfg);
        CHECK(a.mean == b.mean);
        CHECK(a.stddev == b.stddev);
    }
}

TEST_CASE("seed-set monotonicity holds per coupled run") {
    auto s = oracles::er_graph(35, 0.12, 8);
    for (Model m : {Model::LinearThreshold, Model::WeightedCascade}) {
        for (int run = 0; run < 40; ++run) {
            const auto small = spread_once(s, {1, 2}, m, 55, run);
            const auto big = spread_once(s, {1, 2, 3, 4}, m, 55, run);
            REQUIRE(big >= small);
        }
    }
}

TEST_CASE("spread is bounded by the component and contains the seeds") {
    auto s = oracles::er_graph(30, 0.08, 21);
    SpreadConfig cfg;
    cfg.runs = 30;
    for (Model m : {Model::LinearThreshold, Model::WeightedCascade}) {
        auto r = simulate_spread(s, {2, 5}, m, cfg);
        CHECK(r.mean >= 2.0);
        CHECK(r.mean <= 30.0);
    }
}

TEST_CASE("simulate_spread rejects bad input") {
    auto s = star(3);
    CHECK_THROWS_AS(simulate_spread(s, {}, Model::LinearThreshold), Error);
    CHECK_THROWS_AS(simulate_spread(s, {9}, Model::LinearThreshold), Error);
}

TEST_CASE("degree discount picks the star center first") {
    auto s = star(6);
    auto seeds = degree_discount(s, 1);
    REQUIRE(seeds.size() == 1);
    CHECK(seeds[0] == 0);

    // two stars joined by an edge between the centers
    auto twin = Snapshot::from_edges(
        9, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}, {4, 8}, {0, 4}});
    auto two = degree_discount(twin, 2);
    CHECK(two == std::vector<NodeId>{4, 0});

    CHECK_THROWS_AS(degree_discount(s, 20), Error);
}

TEST_CASE("degree discount discounts neighbors of chosen seeds") {
    // path of 5: plain degree would pick the three inner nodes greedily;
    // after choosing node 2 its neighbors are discounted
    auto p = Snapshot::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    auto seeds = degree_discount(p, 2);
    REQUIRE(seeds.size() == 2);
    CHECK(seeds[0] == 1);  // lowest id among the degree-2 nodes
    CHECK(seeds[1] == 3);  // node 2 was discounted by the adjacent pick
}

TEST_CASE("prominence seed comparison produces full grid") {
    auto g = oracles::graph_from_records({{"a", "b", 1},
                                          {"b", "c", 1},
                                          {"d", "a", 2},
                                          {"e", "b", 2},
                                          {"f", "c", 2},
                                          {"d", "e", 3},
                                          {"d", "f", 4},
                                          {"a", "e", 4}});
    std::vector<NodeId> cohort = {g.id("d"), g.id("e"), g.id("f")};
    std::vector<double> tpp_scores = {0.9, 0.5, 0.1};
    std::vector<double> base_scores = {0.1, 0.5, 0.9};
    SpreadConfig cfg;
    cfg.runs = 50;
    auto rows = prominence_seed_comparison(g, 2, 2, {1, 2}, tpp_scores, base_scores, cohort, cfg);
    CHECK(rows.size() == 2 * 3 * 2);  // k values x selectors x models
    for (const auto& r : rows) {
        CHECK(r.mean >= static_cast<double>(r.k));
        CHECK((r.selector == "tpp+" || r.selector == "baseline" ||
               r.selector == "degreediscount"));
    }
}
