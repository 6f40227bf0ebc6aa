#include "trinet/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "trinet/centrality.hpp"
#include "trinet/synthetic.hpp"
#include "trinet/triads.hpp"

namespace trinet::pipeline {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_num(const std::string& key, const std::string& value) {
    std::istringstream ss(value);
    T out;
    ss >> out;
    if (ss.fail()) throw Error("config: bad value for '" + key + "': " + value);
    return out;
}

std::ofstream open_out(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(fs::path(dir) / name);
    if (!out) throw Error("cannot open output file " + name + " in " + dir);
    out.precision(17);
    return out;
}

}  // namespace

PipelineConfig PipelineConfig::from_map(const std::map<std::string, std::string>& kv) {
    PipelineConfig c;
    for (const auto& [key, value] : kv) {
        if (key == "dataset_name") c.dataset_name = value;
        else if (key == "input") c.input = value;
        else if (key == "separator") c.separator = value == "tab" ? "\t" : value;
        else if (key == "header") c.header = value == "1" || value == "true";
        else if (key == "time_bin_width") c.time_bin_width = parse_num<std::int64_t>(key, value);
        else if (key == "t") c.t = parse_num<TimeUnit>(key, value);
        else if (key == "delta_t") c.delta_t = parse_num<TimeUnit>(key, value);
        else if (key == "observation_window") c.observation_window = parse_num<TimeUnit>(key, value);
        else if (key == "tem_lag") c.tem_lag = parse_num<TimeUnit>(key, value);
        else if (key == "influence_window") c.influence_window = parse_num<TimeUnit>(key, value);
        else if (key == "task") c.task = value;
        else if (key == "feature_set") c.feature_set = value;
        else if (key == "bags") c.bags = parse_num<int>(key, value);
        else if (key == "seed") c.seed = parse_num<std::uint64_t>(key, value);
        else if (key == "test_fraction") c.test_fraction = parse_num<double>(key, value);
        else if (key == "link_train_prevalence") c.link_train_prevalence = parse_num<double>(key, value);
        else if (key == "top_k") c.top_k = parse_num<std::size_t>(key, value);
        else if (key == "diffusion_runs") c.diffusion_runs = parse_num<int>(key, value);
        else if (key == "degree_discount_p") c.degree_discount_p = parse_num<double>(key, value);
        else if (key == "out_dir") c.out_dir = value;
        else if (key == "synth_nodes") c.synth_nodes = parse_num<std::size_t>(key, value);
        else if (key == "synth_nodes_per_time") c.synth_nodes_per_time = parse_num<std::size_t>(key, value);
        else if (key == "synth_internal_edges") c.synth_internal_edges = parse_num<std::size_t>(key, value);
        else if (key == "synth_closure_prob") c.synth_closure_prob = parse_num<double>(key, value);
        else if (key == "synth_seed") c.synth_seed = parse_num<std::uint64_t>(key, value);
        else throw Error("config: unknown key '" + key + "'");
    }
    return c;
}

PipelineConfig PipelineConfig::from_file(const std::string& path,
                                         const std::map<std::string, std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw Error("config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw Error("config: " + path + ":" + std::to_string(lineno) + ": expected key=value");
        kv[trim(s.substr(0, eq))] = trim(s.substr(eq + 1));
    }
    for (const auto& [k, v] : overrides) kv[k] = v;
    return from_map(kv);
}

std::map<std::string, std::string> PipelineConfig::to_map() const {
    std::ostringstream tf, lp, dp, cp;
    tf.precision(17);
    lp.precision(17);
    dp.precision(17);
    cp.precision(17);
    tf << test_fraction;
    lp << link_train_prevalence;
    dp << degree_discount_p;
    cp << synth_closure_prob;
    return {
        {"dataset_name", dataset_name},
        {"input", input},
        {"separator", separator},
        {"header", header ? "1" : "0"},
        {"time_bin_width", std::to_string(time_bin_width)},
        {"t", std::to_string(t)},
        {"delta_t", std::to_string(delta_t)},
        {"observation_window", std::to_string(observation_window)},
        {"tem_lag", std::to_string(tem_lag)},
        {"influence_window", std::to_string(influence_window)},
        {"task", task},
        {"feature_set", feature_set},
        {"bags", std::to_string(bags)},
        {"seed", std::to_string(seed)},
        {"test_fraction", tf.str()},
        {"link_train_prevalence", lp.str()},
        {"top_k", std::to_string(top_k)},
        {"diffusion_runs", std::to_string(diffusion_runs)},
        {"degree_discount_p", dp.str()},
        {"out_dir", out_dir},
        {"synth_nodes", std::to_string(synth_nodes)},
        {"synth_nodes_per_time", std::to_string(synth_nodes_per_time)},
        {"synth_internal_edges", std::to_string(synth_internal_edges)},
        {"synth_closure_prob", cp.str()},
        {"synth_seed", std::to_string(synth_seed)},
    };
}

std::uint64_t PipelineConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& [k, v] : to_map()) {
        if (k == "out_dir") continue;  // location does not change the result
        feed(k);
        feed("=");
        feed(v);
        feed("\n");
    }
    return h;
}

TemporalGraph load_graph(const PipelineConfig& cfg) {
    if (cfg.input == "synthetic") {
        synthetic::GeneratorConfig gc;
        gc.num_nodes = cfg.synth_nodes;
        gc.nodes_per_time = cfg.synth_nodes_per_time;
        gc.internal_edges_per_time = cfg.synth_internal_edges;
        gc.closure_prob = cfg.synth_closure_prob;
        gc.seed = cfg.synth_seed;
        return synthetic::generate(gc);
    }
    std::ifstream in(cfg.input);
    if (!in) throw Error("ingest: cannot open input file '" + cfg.input + "'");
    IngestConfig ic;
    ic.separator = cfg.separator.empty() ? ',' : cfg.separator[0];
    ic.header = cfg.header;
    ic.time_bin_width = cfg.time_bin_width;
    return TemporalGraph::ingest(in, ic);
}

namespace {

void write_provenance(std::ostream& out, const PipelineConfig& cfg) {
    out << "config_hash " << cfg.hash() << "\nseed " << cfg.seed << '\n';
}

void write_dataset_meta(std::ostream& out, const PipelineConfig& cfg,
                        const labeling::SplitDataset& split) {
    write_provenance(out, cfg);
    out << "dataset " << cfg.dataset_name << "\nfeature_set " << split.train.meta.feature_set
        << "\nt " << split.train.meta.t << "\ndelta_t " << split.train.meta.delta_t
        << "\ntrain_rows " << split.train.size() << "\ntest_rows " << split.test.size()
        << "\ncolumns";
    for (const auto& c : split.train.columns) out << ' ' << c;
    out << '\n';
}

TaskResult run_task_impl(const PipelineConfig& cfg, const std::string& task) {
    const TemporalGraph g = load_graph(cfg);

    labeling::DatasetConfig dc;
    dc.observation_window = cfg.observation_window;
    dc.tem_lag = cfg.tem_lag;
    dc.influence_window = cfg.influence_window;
    dc.test_fraction = cfg.test_fraction;
    dc.train_positive_prevalence = cfg.link_train_prevalence;
    dc.seed = cfg.seed;
    dc.dataset_name = cfg.dataset_name;

    TaskResult res;
    if (task == "prominence") {
        auto ds = labeling::build_prominence_dataset(g, cfg.t, cfg.delta_t, cfg.feature_set, dc);
        res.split = labeling::split_dataset(ds, cfg.test_fraction, cfg.seed);
    } else if (task == "link") {
        auto ds = labeling::build_link_dataset(g, cfg.t, cfg.delta_t, cfg.feature_set, dc);
        res.split = labeling::split_dataset(ds, cfg.test_fraction, cfg.seed,
                                            cfg.link_train_prevalence);
    } else {
        throw Error("run_task: unknown task '" + task + "'");
    }
    res.model = learn::train(res.split.train, cfg.bags, cfg.seed);
    const auto scores = learn::predict(res.model, res.split.test);
    res.report = learn::evaluate(scores, res.split.test.labels, cfg.top_k);
    return res;
}

}  // namespace

TaskResult run_task(const PipelineConfig& cfg, const std::string& task, bool write_outputs) {
    TaskResult res = run_task_impl(cfg, task);
    if (!write_outputs) return res;

    auto report = open_out(cfg.out_dir, "report.txt");
    write_provenance(report, cfg);
    report << "task " << task << "\nfeature_set " << cfg.feature_set << "\naccuracy "
           << res.report.accuracy << "\nauc " << res.report.auc << "\naupr " << res.report.aupr
           << "\ntop_" << res.report.k << "_hits " << res.report.top_k_hits << '\n';

    auto roc = open_out(cfg.out_dir, "roc.csv");
    roc << "fpr,tpr\n";
    for (auto [x, y] : res.report.roc) roc << x << ',' << y << '\n';
    auto pr = open_out(cfg.out_dir, "pr.csv");
    pr << "recall,precision\n";
    for (auto [x, y] : res.report.pr) pr << x << ',' << y << '\n';

    auto scores_out = open_out(cfg.out_dir, "scores.csv");
    scores_out << "instance,score,label\n";
    for (std::size_t i = 0; i < res.split.test.size(); ++i)
        scores_out << res.split.test.instance_ids[i] << ',' << res.report.scores[i] << ','
                   << res.split.test.labels[i] << '\n';

    auto model_out = open_out(cfg.out_dir, "model.txt");
    res.model.save(model_out);
    auto meta = open_out(cfg.out_dir, "dataset_meta.txt");
    write_dataset_meta(meta, cfg, res.split);
    return res;
}

TransferMatrix run_transfer(const std::vector<PipelineConfig>& configs, const std::string& task,
                            const std::string& feature_set) {
    if (configs.size() < 2) throw Error("run_transfer: need at least two dataset configs");
    TransferMatrix m;
    const std::size_t n = configs.size();
    m.aupr.assign(n, std::vector<double>(n, 0.0));
    m.error.assign(n, std::vector<std::string>(n));

    std::vector<TaskResult> results;
    for (auto cfg : configs) {
        cfg.feature_set = feature_set;
        m.dataset_names.push_back(cfg.dataset_name);
        results.push_back(run_task(cfg, task, false));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            try {
                if (results[i].split.train.columns != results[j].split.test.columns) {
                    std::string cols;
                    for (const auto& c : results[j].split.test.columns) cols += c + " ";
                    throw Error("schema mismatch; test columns: " + cols);
                }
                // The row model, including its standardization, applied as-is.
                const auto scores = learn::predict(results[i].model, results[j].split.test);
                m.aupr[i][j] =
                    learn::evaluate(scores, results[j].split.test.labels, configs[j].top_k).aupr;
            } catch (const std::exception& e) {
                m.error[i][j] = e.what();
            }
        }
    }
    return m;
}

void write_transfer(const TransferMatrix& m, std::ostream& out) {
    out.precision(17);
    out << "train\\test";
    for (const auto& name : m.dataset_names) out << '\t' << name;
    out << '\n';
    for (std::size_t i = 0; i < m.dataset_names.size(); ++i) {
        out << m.dataset_names[i];
        for (std::size_t j = 0; j < m.dataset_names.size(); ++j) {
            out << '\t';
            if (m.error[i][j].empty())
                out << m.aupr[i][j];
            else
                out << "ERROR(" << m.error[i][j] << ")";
        }
        out << '\n';
    }
}

void stats_report(const PipelineConfig& cfg) {
    const TemporalGraph g = load_graph(cfg);
    const Snapshot s_t = g.snapshot_at(cfg.t);
    const Snapshot s_future = g.snapshot_at(cfg.t + cfg.delta_t);

    // Cumulative influence share by rank, for degree and pagerank.
    auto share_curve = [&](const std::vector<double>& measure, const std::string& file) {
        auto nodes = s_t.nodes();
        std::vector<double> values;
        for (NodeId v : nodes) values.push_back(measure[v]);
        std::sort(values.begin(), values.end(), std::greater<>());
        double total = 0.0;
        for (double x : values) total += x;
        auto out = open_out(cfg.out_dir, file);
        write_provenance(out, cfg);
        out << "rank_fraction,cumulative_share\n";
        double cum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            cum += values[i];
            out << static_cast<double>(i + 1) / static_cast<double>(values.size()) << ','
                << (total > 0 ? cum / total : 0.0) << '\n';
        }
    };
    std::vector<double> deg(s_t.adj.size(), 0.0);
    for (NodeId v = 0; v < s_t.adj.size(); ++v) deg[v] = static_cast<double>(s_t.adj[v].size());
    share_curve(deg, "pareto_degree.csv");
    share_curve(centrality::pagerank(s_t), "pareto_pagerank.csv");

    // Balance rate of PN- and NPN-induced subgraphs at t and t + delta_t,
    // with prominence fixed by degree at t + delta_t.
    std::vector<double> future_deg(s_future.adj.size(), 0.0);
    for (NodeId v = 0; v < s_future.adj.size(); ++v)
        future_deg[v] = static_cast<double>(s_future.adj[v].size());
    const auto labels = labeling::pareto_label(s_future, future_deg, "degree");
    auto induced = [](const Snapshot& s, const std::vector<char>& keep) {
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (NodeId u = 0; u < s.adj.size(); ++u) {
            if (!s.present[u] || !keep[u]) continue;
            for (NodeId v : s.adj[u])
                if (v > u && keep[v]) edges.emplace_back(u, v);
        }
        Snapshot out = Snapshot::from_edges(s.adj.size(), edges, s.cut_time);
        out.num_present = 0;
        for (NodeId v = 0; v < s.adj.size(); ++v) {
            out.present[v] = s.present[v] && keep[v];
            out.num_present += out.present[v];
        }
        return out;
    };
    std::vector<char> npn(labels.is_pn.size());
    for (std::size_t i = 0; i < npn.size(); ++i) npn[i] = !labels.is_pn[i];
    auto balance_or_nan = [](const Snapshot& s) {
        try {
            return triads::balance_rate(s);
        } catch (const Error&) {
            return -1.0;  // undefined
        }
    };
    {
        auto out = open_out(cfg.out_dir, "balance.txt");
        write_provenance(out, cfg);
        out << "pn_t " << balance_or_nan(induced(s_t, labels.is_pn)) << '\n'
            << "npn_t " << balance_or_nan(induced(s_t, npn)) << '\n'
            << "pn_future " << balance_or_nan(induced(s_future, labels.is_pn)) << '\n'
            << "npn_future " << balance_or_nan(induced(s_future, npn)) << '\n';
    }

    // Triad evolution ratios per class and the position conditionals.
    {
        const auto m = triads::tem(s_t, s_future);
        auto out = open_out(cfg.out_dir, "triad_evolution.txt");
        write_provenance(out, cfg);
        for (int i = 0; i < 4; ++i) {
            out << "tem_row" << i;
            for (int j = 0; j < 4; ++j) out << ' ' << m.m[i][j];
            out << " count " << m.row_count[i] << '\n';
        }
        for (int i = 0; i < 3; ++i)
            out << "closure_ratio_class" << i << ' ' << m.m[i][3] << '\n';
        const auto profile = triads::tpp(s_t);
        const auto [p34, p43] = triads::position_conditionals(profile);
        out << "prob_3_given_4 " << p34 << "\nprob_4_given_3 " << p43 << '\n';
    }
}

}  // namespace trinet::pipeline
