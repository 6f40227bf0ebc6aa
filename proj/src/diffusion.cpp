#include "trinet/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace trinet::diffusion {

std::string model_name(Model m) {
    return m == Model::LinearThreshold ? "LT" : "WC";
}

Model parse_model(const std::string& name) {
    if (name == "LT" || name == "lt") return Model::LinearThreshold;
    if (name == "WC" || name == "wc") return Model::WeightedCascade;
    throw Error("unknown diffusion model '" + name + "'");
}

namespace {

constexpr std::uint64_t kThresholdStream = 0x74687265ULL;
constexpr std::uint64_t kEdgeStream = 0x65646765ULL;

std::size_t lt_once(const Snapshot& s, const std::vector<NodeId>& seeds, std::uint64_t seed,
                    int run, std::optional<double> fixed_threshold) {
    std::vector<char> active(s.adj.size(), 0);
    std::deque<NodeId> frontier;
    for (NodeId v : seeds) {
        if (!active[v]) {
            active[v] = 1;
            frontier.push_back(v);
        }
    }
    std::vector<double> weight_in(s.adj.size(), 0.0);
    std::size_t count = frontier.size();
    auto threshold = [&](NodeId v) {
        if (fixed_threshold) return *fixed_threshold;
        return u01(mix64(mix64(seed, kThresholdStream),
                         static_cast<std::uint64_t>(run), v));
    };
    // Each newly active node pushes 1/deg(target) onto its neighbors; a node
    // with at least one active neighbor activates once its incoming sum
    // reaches its threshold. Fixpoint in at most n rounds.
    while (!frontier.empty()) {
        std::deque<NodeId> next;
        for (NodeId v : frontier) {
            for (NodeId w : s.adj[v]) {
                if (active[w]) continue;
                weight_in[w] += 1.0 / static_cast<double>(s.adj[w].size());
                if (weight_in[w] >= threshold(w)) {
                    active[w] = 1;
                    ++count;
                    next.push_back(w);
                }
            }
        }
        frontier.swap(next);
    }
    return count;
}

std::size_t wc_once(const Snapshot& s, const std::vector<NodeId>& seeds, std::uint64_t seed,
                    int run) {
    // Pre-decide every directed attempt u->v (success prob 1/deg(v)); the
    // cascade outcome is then reachability in the realized directed graph,
    // which makes spread exactly monotone in the seed set for a fixed run.
    std::vector<char> active(s.adj.size(), 0);
    std::deque<NodeId> frontier;
    std::size_t count = 0;
    for (NodeId v : seeds) {
        if (!active[v]) {
            active[v] = 1;
            ++count;
            frontier.push_back(v);
        }
    }
    const std::uint64_t run_seed = mix64(mix64(seed, kEdgeStream), static_cast<std::uint64_t>(run));
    while (!frontier.empty()) {
        NodeId v = frontier.front();
        frontier.pop_front();
        for (NodeId w : s.adj[v]) {
            if (active[w]) continue;
            const double coin =
                u01(mix64(run_seed, (static_cast<std::uint64_t>(v) << 32) | w));
            if (coin < 1.0 / static_cast<double>(s.adj[w].size())) {
                active[w] = 1;
                ++count;
                frontier.push_back(w);
            }
        }
    }
    return count;
}

}  // namespace

std::size_t spread_once(const Snapshot& s, const std::vector<NodeId>& seeds, Model model,
                        std::uint64_t master_seed, int run,
                        std::optional<double> fixed_threshold) {
    return model == Model::LinearThreshold ? lt_once(s, seeds, master_seed, run, fixed_threshold)
                                           : wc_once(s, seeds, master_seed, run);
}

SpreadResult simulate_spread(const Snapshot& s, const std::vector<NodeId>& seeds, Model model,
                             const SpreadConfig& cfg) {
    if (cfg.runs < 1) throw Error("simulate_spread: runs must be >= 1");
    if (seeds.empty()) throw Error("simulate_spread: empty seed set");
    for (NodeId v : seeds)
        if (v >= s.adj.size() || !s.present[v])
            throw Error("simulate_spread: unknown seed node " + std::to_string(v));
    SpreadResult res;
    res.seeds = seeds;
    res.model = model;
    res.runs = cfg.runs;
    res.master_seed = cfg.master_seed;
    double sum = 0.0, sum_sq = 0.0;
    for (int run = 0; run < cfg.runs; ++run) {
        const double x = static_cast<double>(
            spread_once(s, seeds, model, cfg.master_seed, run, cfg.fixed_threshold));
        sum += x;
        sum_sq += x * x;
    }
    const double n = static_cast<double>(cfg.runs);
    res.mean = sum / n;
    res.stddev = cfg.runs > 1 ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0)))
                              : 0.0;
    return res;
}

std::vector<NodeId> degree_discount(const Snapshot& s, std::size_t k, double p) {
    if (k > s.num_present) throw Error("degree_discount: k exceeds node count");
    std::vector<NodeId> selected;
    std::vector<char> picked(s.adj.size(), 0);
    std::vector<double> t_sel(s.adj.size(), 0.0);  // already-selected neighbors
    while (selected.size() < k) {
        double best = -1.0;
        NodeId best_v = 0;
        bool found = false;
        for (NodeId v = 0; v < s.adj.size(); ++v) {
            if (!s.present[v] || picked[v]) continue;
            const double d = static_cast<double>(s.adj[v].size());
            const double t = t_sel[v];
            const double dd = d - 2.0 * t - (d - t) * t * p;
            if (!found || dd > best) {
                best = dd;
                best_v = v;
                found = true;
            }
        }
        picked[best_v] = 1;
        selected.push_back(best_v);
        for (NodeId w : s.adj[best_v]) t_sel[w] += 1.0;
    }
    return selected;
}

std::vector<ComparisonRow> prominence_seed_comparison(
    const TemporalGraph& g, TimeUnit t, TimeUnit delta_t, const std::vector<std::size_t>& ks,
    const std::vector<double>& tpp_scores, const std::vector<double>& baseline_scores,
    const std::vector<NodeId>& cohort, const SpreadConfig& cfg) {
    if (cohort.empty()) throw Error("prominence_seed_comparison: empty cohort");
    const Snapshot s_t = g.snapshot_at(t);
    const Snapshot s_future = g.snapshot_at(t + delta_t);

    auto top_by_score = [&](const std::vector<double>& scores, std::size_t k) {
        std::vector<std::size_t> order(cohort.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (scores[a] != scores[b]) return scores[a] > scores[b];
            return cohort[a] < cohort[b];
        });
        std::vector<NodeId> seeds;
        for (std::size_t i = 0; i < k; ++i) seeds.push_back(cohort[order[i]]);
        return seeds;
    };
    // Degree discount restricted to the cohort, on the topology at t.
    auto dd_seeds = [&](std::size_t k) {
        std::vector<char> in_cohort(s_t.adj.size(), 0);
        for (NodeId v : cohort) in_cohort[v] = 1;
        std::vector<NodeId> selected;
        std::vector<char> picked(s_t.adj.size(), 0);
        std::vector<double> t_sel(s_t.adj.size(), 0.0);
        const double p = 0.01;
        while (selected.size() < k) {
            double best = -1.0;
            NodeId best_v = 0;
            bool found = false;
            for (NodeId v : cohort) {
                if (picked[v]) continue;
                const double d = static_cast<double>(s_t.adj[v].size());
                const double dd = d - 2.0 * t_sel[v] - (d - t_sel[v]) * t_sel[v] * p;
                if (!found || dd > best) {
                    best = dd;
                    best_v = v;
                    found = true;
                }
            }
            picked[best_v] = 1;
            selected.push_back(best_v);
            for (NodeId w : s_t.adj[best_v]) t_sel[w] += 1.0;
        }
        return selected;
    };

    std::vector<ComparisonRow> rows;
    for (std::size_t k : ks) {
        if (k > cohort.size())
            throw Error("prominence_seed_comparison: k exceeds cohort size");
        const std::vector<std::pair<std::string, std::vector<NodeId>>> selectors = {
            {"tpp+", top_by_score(tpp_scores, k)},
            {"baseline", top_by_score(baseline_scores, k)},
            {"degreediscount", dd_seeds(k)},
        };
        for (Model model : {Model::LinearThreshold, Model::WeightedCascade}) {
            for (const auto& [name, seeds] : selectors) {
                const auto res = simulate_spread(s_future, seeds, model, cfg);
                rows.push_back({k, name, model_name(model), res.mean, res.stddev});
            }
        }
    }
    return rows;
}

}  // namespace trinet::diffusion
