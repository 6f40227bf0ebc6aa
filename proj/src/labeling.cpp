#include "trinet/labeling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>

#include "trinet/centrality.hpp"
#include "trinet/influence.hpp"
#include "trinet/triads.hpp"

namespace trinet::labeling {

std::size_t LabeledDataset::positives() const {
    std::size_t p = 0;
    for (int y : labels) p += y;
    return p;
}

ProminenceLabeling pareto_label(const Snapshot& s, const std::vector<double>& measure,
                                const std::string& measure_name) {
    auto nodes = s.nodes();
    if (nodes.empty()) throw Error("pareto_label: empty snapshot");
    std::sort(nodes.begin(), nodes.end(), [&](NodeId a, NodeId b) {
        if (measure[a] != measure[b]) return measure[a] > measure[b];
        return a < b;
    });
    const std::size_t k =
        static_cast<std::size_t>(std::ceil(0.2 * static_cast<double>(nodes.size())));
    ProminenceLabeling out;
    out.measure_name = measure_name;
    out.cut_time = s.cut_time;
    out.is_pn.assign(s.adj.size(), 0);
    out.pn.assign(nodes.begin(), nodes.begin() + k);
    std::sort(out.pn.begin(), out.pn.end());
    for (NodeId v : out.pn) out.is_pn[v] = 1;
    return out;
}

std::vector<std::pair<NodeId, NodeId>> two_hop_candidates(const Snapshot& s) {
    std::vector<std::pair<NodeId, NodeId>> out;
    std::vector<char> seen(s.adj.size(), 0);
    for (NodeId u = 0; u < s.adj.size(); ++u) {
        if (!s.present[u]) continue;
        std::vector<NodeId> marked;
        for (NodeId w : s.adj[u]) {
            for (NodeId v : s.adj[w]) {
                if (v <= u || seen[v] || s.has_edge(u, v)) continue;
                seen[v] = 1;
                marked.push_back(v);
                out.emplace_back(u, v);
            }
        }
        for (NodeId v : marked) seen[v] = 0;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::array<double, 3> pairwise_baselines(const Snapshot& s, NodeId u, NodeId v) {
    double cn = 0.0, aa = 0.0;
    const auto& nu = s.adj[u];
    const auto& nv = s.adj[v];
    std::size_t i = 0, j = 0;
    while (i < nu.size() && j < nv.size()) {
        if (nu[i] < nv[j]) {
            ++i;
        } else if (nu[i] > nv[j]) {
            ++j;
        } else {
            cn += 1.0;
            aa += 1.0 / std::log(static_cast<double>(s.adj[nu[i]].size()));
            ++i;
            ++j;
        }
    }
    const double pa = static_cast<double>(nu.size()) * static_cast<double>(nv.size());
    return {cn, aa, pa};
}

LabeledDataset build_prominence_dataset(const TemporalGraph& g, TimeUnit t, TimeUnit delta_t,
                                        const std::string& feature_set,
                                        const DatasetConfig& cfg) {
    if (feature_set != "Baseline" && feature_set != "TPP" && feature_set != "TPP+")
        throw Error("build_prominence_dataset: unknown feature set '" + feature_set + "'");
    const auto cohort = g.arrivals_at(t);
    if (cohort.empty())
        throw Error("build_prominence_dataset: empty arrival cohort at t=" + std::to_string(t));

    const Snapshot s_t = g.snapshot_at(t);
    const auto pn_t = pareto_label(
        s_t,
        [&] {
            std::vector<double> deg(s_t.adj.size(), 0.0);
            for (NodeId v = 0; v < s_t.adj.size(); ++v)
                deg[v] = static_cast<double>(s_t.adj[v].size());
            return deg;
        }(),
        "degree");

    std::vector<NodeId> instances;
    for (NodeId v : cohort)
        if (!pn_t.is_pn[v]) instances.push_back(v);
    if (instances.empty())
        throw Error("build_prominence_dataset: cohort at t=" + std::to_string(t) +
                    " has no non-prominent nodes");

    const TimeUnit t_obs = t + cfg.observation_window;
    const Snapshot s_obs = g.snapshot_at(t_obs);

    LabeledDataset ds;
    ds.meta = {cfg.dataset_name, feature_set, t, delta_t, cfg.seed};

    if (feature_set == "Baseline") {
        ds.columns = centrality::baseline_columns();
        auto rows = centrality::baseline_features(s_obs);
        std::vector<const centrality::NodeFeatureRow*> by_id(s_obs.adj.size(), nullptr);
        for (const auto& r : rows) by_id[r.node] = &r;
        for (NodeId v : instances) {
            const auto* r = by_id[v];
            ds.rows.push_back({r->degree, r->betweenness, r->closeness, r->clustering,
                               r->pagerank, r->efficiency, r->constraint, r->hierarchy});
        }
    } else {
        ds.columns = {"pos1", "pos2", "pos3", "pos4", "pos5"};
        const auto profile = triads::tpp(s_obs);
        std::vector<double> prom_prob, prom_index;
        if (feature_set == "TPP+") {
            ds.columns.push_back("prominence_prob");
            ds.columns.push_back("prominence_index");
            const auto mining = influence::mine_link_influence(g.truncate(t_obs));
            for (NodeId v : instances) {
                auto [pp, pi] = influence::prominence_features(mining.stats, s_obs, v);
                prom_prob.push_back(pp);
                prom_index.push_back(pi);
            }
        }
        for (std::size_t i = 0; i < instances.size(); ++i) {
            const auto c = profile.at(instances[i]);
            std::vector<double> row = {static_cast<double>(c[0]), static_cast<double>(c[1]),
                                       static_cast<double>(c[2]), static_cast<double>(c[3]),
                                       static_cast<double>(c[4])};
            if (feature_set == "TPP+") {
                row.push_back(prom_prob[i]);
                row.push_back(prom_index[i]);
            }
            ds.rows.push_back(std::move(row));
        }
    }

    const Snapshot s_future = g.snapshot_at(t + delta_t);
    std::vector<double> future_deg(s_future.adj.size(), 0.0);
    for (NodeId v = 0; v < s_future.adj.size(); ++v)
        future_deg[v] = static_cast<double>(s_future.adj[v].size());
    const auto pn_future = pareto_label(s_future, future_deg, "degree");

    for (NodeId v : instances) {
        ds.instance_ids.push_back(g.name(v));
        ds.labels.push_back(pn_future.is_pn[v] ? 1 : 0);
    }
    return ds;
}

LabeledDataset build_link_dataset(const TemporalGraph& g, TimeUnit t, TimeUnit delta_t,
                                  const std::string& feature_set, const DatasetConfig& cfg) {
    if (feature_set != "TEM-" && feature_set != "TEM" && feature_set != "TEM+" &&
        feature_set != "HPLP")
        throw Error("build_link_dataset: unknown feature set '" + feature_set + "'");

    const Snapshot s_t = g.snapshot_at(t);
    const auto candidates = two_hop_candidates(s_t);
    if (candidates.empty()) throw Error("build_link_dataset: no two-hop candidates at t");
    const Snapshot s_future = g.snapshot_at(t + delta_t);

    LabeledDataset ds;
    ds.meta = {cfg.dataset_name, feature_set, t, delta_t, cfg.seed};

    const bool with_prob = feature_set == "TEM" || feature_set == "TEM+";
    const bool with_influence = feature_set == "TEM+";

    triads::LikelihoodVector likelihoods{};
    if (with_prob) {
        // Fitted strictly on data up to t.
        const TimeUnit t_prev = std::max(g.min_time(), t - cfg.tem_lag);
        likelihoods = triads::tce_likelihoods(triads::tem(g.snapshot_at(t_prev), s_t));
    }
    influence::MiningResult mining;
    if (with_influence) mining = influence::mine_link_influence(g.truncate(t));

    std::vector<double> pr;
    if (feature_set == "HPLP") pr = centrality::pagerank(s_t);

    if (feature_set == "HPLP") {
        ds.columns = {"deg_u", "deg_v", "pagerank_u", "pagerank_v", "cn", "aa", "pa", "dist"};
    } else {
        ds.columns = {"tce0", "tce1", "tce2", "tce3"};
        if (with_prob)
            ds.columns.insert(ds.columns.end(),
                              {"tem_prob0", "tem_prob1", "tem_prob2", "tem_prob3"});
        if (with_influence) ds.columns.push_back("link_influence_prob");
    }

    for (auto [u, v] : candidates) {
        std::vector<double> row;
        if (feature_set == "HPLP") {
            auto [cn, aa, pa] = pairwise_baselines(s_t, u, v);
            row = {static_cast<double>(s_t.adj[u].size()), static_cast<double>(s_t.adj[v].size()),
                   pr[u], pr[v], cn, aa, pa, 2.0};
        } else {
            const auto tc = triads::tce(s_t, u, v);
            for (auto x : tc) row.push_back(static_cast<double>(x));
            if (with_prob) {
                const auto tp = triads::tem_prob(tc, likelihoods);
                row.insert(row.end(), tp.begin(), tp.end());
            }
            if (with_influence)
                row.push_back(influence::pair_link_influence_prob(mining.stats, g, s_t, u, v, t,
                                                                  cfg.influence_window));
        }
        ds.rows.push_back(std::move(row));
        ds.instance_ids.push_back(g.name(u) + "|" + g.name(v));
        ds.labels.push_back(s_future.has_edge(u, v) ? 1 : 0);
    }
    return ds;
}

namespace {

LabeledDataset take(const LabeledDataset& ds, const std::vector<std::size_t>& idx) {
    LabeledDataset out;
    out.columns = ds.columns;
    out.meta = ds.meta;
    for (std::size_t i : idx) {
        out.rows.push_back(ds.rows[i]);
        out.labels.push_back(ds.labels[i]);
        out.instance_ids.push_back(ds.instance_ids[i]);
    }
    return out;
}

}  // namespace

SplitDataset split_dataset(const LabeledDataset& ds, double test_fraction, std::uint64_t seed,
                           std::optional<double> target_prevalence) {
    if (ds.size() < 2) throw Error("split_dataset: dataset too small");
    std::vector<std::size_t> idx(ds.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::mt19937_64 rng(mix64(seed, 0x51b7u));
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t n_test =
        static_cast<std::size_t>(std::round(test_fraction * static_cast<double>(ds.size())));
    std::vector<std::size_t> test_idx(idx.begin(), idx.begin() + n_test);
    std::vector<std::size_t> train_idx(idx.begin() + n_test, idx.end());

    if (target_prevalence) {
        std::vector<std::size_t> pos, neg;
        for (std::size_t i : train_idx)
            (ds.labels[i] ? pos : neg).push_back(i);
        const double ratio = (1.0 - *target_prevalence) / *target_prevalence;
        const std::size_t neg_keep = static_cast<std::size_t>(
            std::floor(static_cast<double>(pos.size()) * ratio + 0.5));
        if (neg.size() > neg_keep) {
            std::shuffle(neg.begin(), neg.end(), rng);
            neg.resize(neg_keep);
        }
        train_idx = pos;
        train_idx.insert(train_idx.end(), neg.begin(), neg.end());
        std::sort(train_idx.begin(), train_idx.end());
    } else {
        std::sort(train_idx.begin(), train_idx.end());
    }
    std::sort(test_idx.begin(), test_idx.end());
    return {take(ds, train_idx), take(ds, test_idx)};
}

}  // namespace trinet::labeling
