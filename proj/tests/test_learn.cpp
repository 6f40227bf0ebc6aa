#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "trinet/learn.hpp"

using namespace trinet;
using namespace trinet::learn;
using labeling::LabeledDataset;

namespace {

// Two well-separated gaussian blobs in 2D.
LabeledDataset blobs(std::size_t n, std::uint64_t seed, double gap = 6.0) {
    LabeledDataset ds;
    ds.columns = {"x0", "x1"};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const int y = static_cast<int>(i % 2);
        const double c = y ? gap : -gap;
        ds.rows.push_back({c + noise(rng), c + noise(rng)});
        ds.labels.push_back(y);
        ds.instance_ids.push_back(std::to_string(i));
    }
    return ds;
}

}  // namespace

TEST_CASE("gradient matches finite differences") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 20, d = 4;
        std::vector<std::vector<double>> x(n, std::vector<double>(d));
        std::vector<int> y(n);
        std::vector<double> w(d);
        for (auto& row : x)
            for (auto& v : row) v = gauss(rng);
        for (auto& label : y) label = static_cast<int>(rng() % 2);
        for (auto& v : w) v = 0.5 * gauss(rng);
        double b = 0.5 * gauss(rng);
        const double l2 = trial % 2 ? 1e-4 : 0.0;

        std::vector<double> grad_w;
        double grad_b = 0.0;
        logistic_gradient(x, y, w, b, l2, grad_w, grad_b);

        const double h = 1e-6;
        for (std::size_t j = 0; j < d; ++j) {
            auto wp = w, wm = w;
            wp[j] += h;
            wm[j] -= h;
            const double fd =
                (logistic_loss(x, y, wp, b, l2) - logistic_loss(x, y, wm, b, l2)) / (2 * h);
            REQUIRE(grad_w[j] == doctest::Approx(fd).epsilon(1e-5));
        }
        const double fdb =
            (logistic_loss(x, y, w, b + h, l2) - logistic_loss(x, y, w, b - h, l2)) / (2 * h);
        REQUIRE(grad_b == doctest::Approx(fdb).epsilon(1e-5));
    }
}

TEST_CASE("training separates gaussian blobs") {
    auto ds = blobs(200, 11);
    auto model = train(ds, 10, 7);
    auto scores = predict(model, ds);
    auto report = evaluate(scores, ds.labels, 20);
    CHECK(report.auc >= 0.999);
    CHECK(report.accuracy >= 0.99);
    CHECK(report.top_k_hits == 20);
}

TEST_CASE("same seed gives bitwise-identical models") {
    auto ds = blobs(120, 3);
    auto m1 = train(ds, 8, 42);
    auto m2 = train(ds, 8, 42);
    REQUIRE(m1.members.size() == m2.members.size());
    for (std::size_t i = 0; i < m1.members.size(); ++i) {
        CHECK(m1.members[i].bias == m2.members[i].bias);
        CHECK(m1.members[i].weights == m2.members[i].weights);
    }
    auto m3 = train(ds, 8, 43);
    bool differs = false;
    for (std::size_t i = 0; i < m1.members.size(); ++i)
        if (m1.members[i].weights != m3.members[i].weights) differs = true;
    CHECK(differs);
}

TEST_CASE("model save/load round trip") {
    auto ds = blobs(80, 9);
    auto m = train(ds, 4, 5);
    std::stringstream buf;
    m.save(buf);
    auto m2 = BaggedLogisticModel::load(buf);
    CHECK(m2.columns == m.columns);
    CHECK(m2.mean == m.mean);
    CHECK(m2.stddev == m.stddev);
    REQUIRE(m2.members.size() == m.members.size());
    auto s1 = predict(m, ds);
    auto s2 = predict(m2, ds);
    CHECK(s1 == s2);

    std::stringstream junk("not a model");
    CHECK_THROWS_AS(BaggedLogisticModel::load(junk), Error);
}

TEST_CASE("constant feature survives standardization") {
    LabeledDataset ds;
    ds.columns = {"flat", "x"};
    std::mt19937_64 rng(2);
    for (int i = 0; i < 60; ++i) {
        const int y = i % 2;
        ds.rows.push_back({3.0, y ? 2.0 + 0.1 * (rng() % 10) : -2.0 - 0.1 * (rng() % 10)});
        ds.labels.push_back(y);
        ds.instance_ids.push_back(std::to_string(i));
    }
    auto m = train(ds, 4, 1);
    CHECK(m.stddev[0] == 1.0);  // zero-variance column pinned to 1
    auto scores = predict(m, ds);
    for (double s : scores) CHECK(std::isfinite(s));
    CHECK(evaluate(scores, ds.labels, 10).auc >= 0.999);
}

TEST_CASE("training requires both classes") {
    LabeledDataset ds;
    ds.columns = {"x"};
    for (int i = 0; i < 10; ++i) {
        ds.rows.push_back({1.0 * i});
        ds.labels.push_back(0);
        ds.instance_ids.push_back(std::to_string(i));
    }
    CHECK_THROWS_AS(train(ds, 4, 1), Error);
}

TEST_CASE("auc and aupr on hand-checkable score sets") {
    // perfect ranking
    auto perfect = evaluate({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}, 2);
    CHECK(perfect.auc == doctest::Approx(1.0));
    CHECK(perfect.aupr == doctest::Approx(1.0));
    CHECK(perfect.top_k_hits == 2);

    // reversed ranking
    auto worst = evaluate({0.1, 0.2, 0.8, 0.9}, {1, 1, 0, 0}, 2);
    CHECK(worst.auc == doctest::Approx(0.0));
    CHECK(worst.top_k_hits == 0);

    // one inversion: scores 0.9(1) 0.6(0) 0.5(1) 0.1(0): 3 of 4 pairs correct
    auto mid = evaluate({0.9, 0.6, 0.5, 0.1}, {1, 0, 1, 0}, 2);
    CHECK(mid.auc == doctest::Approx(0.75));

    // all-tied scores: AUC 0.5 by tie averaging
    auto tied = evaluate({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0}, 2);
    CHECK(tied.auc == doctest::Approx(0.5));
}

TEST_CASE("auc and aupr match the pair-counting and step oracles") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 5 + rng() % 60;
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        bool pos = false, neg = false;
        for (std::size_t i = 0; i < n; ++i) {
            // coarse grid forces ties
            scores[i] = std::floor(u(rng) * 8.0) / 8.0;
            labels[i] = static_cast<int>(rng() % 2);
            (labels[i] ? pos : neg) = true;
        }
        if (!pos || !neg) continue;
        auto rep = evaluate(scores, labels, 5);
        REQUIRE(rep.auc == doctest::Approx(oracles::brute_auc(scores, labels)).epsilon(1e-9));
        REQUIRE(rep.aupr == doctest::Approx(oracles::brute_aupr(scores, labels)).epsilon(1e-9));
    }
}

TEST_CASE("evaluation rejects degenerate inputs") {
    CHECK_THROWS_AS(evaluate({0.5}, {1, 0}, 1), Error);
    CHECK_THROWS_AS(evaluate({0.5, 0.6}, {1, 1}, 1), Error);
}

TEST_CASE("feature significance on the documented example") {
    LabeledDataset ds;
    ds.columns = {"m", "flat"};
    for (double v : {10.0, 11.0, 12.0}) {
        ds.rows.push_back({v, 1.0});
        ds.labels.push_back(1);
    }
    for (double v : {1.0, 2.0, 3.0}) {
        ds.rows.push_back({v, 1.0});
        ds.labels.push_back(0);
    }
    ds.instance_ids = {"a", "b", "c", "d", "e", "f"};
    auto rows = feature_significance(ds);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].p_value == doctest::Approx(0.0495).epsilon(0.02));
    CHECK(rows[0].stars == "**");
    CHECK(rows[1].constant);
}

TEST_CASE("significance is symmetric and large for identical distributions") {
    LabeledDataset ds;
    ds.columns = {"m"};
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        ds.rows.push_back({static_cast<double>(rng() % 50)});
        ds.labels.push_back(i % 2);
        ds.instance_ids.push_back(std::to_string(i));
    }
    auto rows = feature_significance(ds);
    CHECK(rows[0].p_value > 0.05);
    CHECK(rows[0].stars.empty());
}
