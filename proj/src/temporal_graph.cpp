#include "trinet/temporal_graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace trinet {

bool Snapshot::has_edge(NodeId u, NodeId v) const {
    const auto& nu = adj[u];
    return std::binary_search(nu.begin(), nu.end(), v);
}

std::vector<NodeId> Snapshot::nodes() const {
    std::vector<NodeId> out;
    out.reserve(num_present);
    for (NodeId v = 0; v < present.size(); ++v)
        if (present[v]) out.push_back(v);
    return out;
}

Snapshot Snapshot::from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                              TimeUnit cut_time) {
    Snapshot s;
    s.adj.resize(n);
    s.present.assign(n, 1);
    s.num_present = n;
    s.cut_time = cut_time;
    for (auto [u, v] : edges) {
        if (u == v) throw Error("Snapshot::from_edges: self-loop");
        s.adj[u].push_back(v);
        s.adj[v].push_back(u);
    }
    for (auto& nbrs : s.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        s.num_edges += nbrs.size();
    }
    s.num_edges /= 2;
    return s;
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

TemporalGraph TemporalGraph::ingest(std::istream& in, const IngestConfig& cfg) {
    if (cfg.time_bin_width <= 0) throw Error("ingest: time_bin_width must be positive");
    TemporalGraph g;
    std::string line;
    std::size_t lineno = 0;
    std::size_t records = 0;
    bool first_data = true;

    auto intern = [&](const std::string& name) -> NodeId {
        auto it = g.ids_.find(name);
        if (it != g.ids_.end()) return it->second;
        NodeId id = static_cast<NodeId>(g.names_.size());
        g.names_.push_back(name);
        g.arrival_.push_back(0);
        g.ids_.emplace(name, id);
        return id;
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (cfg.header && lineno == 1) continue;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line, cfg.separator);
        if (fields.size() < 3) throw Error("ingest: line " + std::to_string(lineno) + ": expected 3 fields");
        const std::string su = trim(fields[0]), sv = trim(fields[1]), st = trim(fields[2]);
        if (su.empty() || sv.empty()) throw Error("ingest: line " + std::to_string(lineno) + ": empty node id");
        std::int64_t raw;
        try {
            std::size_t pos = 0;
            raw = std::stoll(st, &pos);
            if (pos != st.size()) throw std::invalid_argument(st);
        } catch (const std::exception&) {
            throw Error("ingest: line " + std::to_string(lineno) + ": bad timestamp '" + st + "'");
        }
        if (su == sv) {
            ++g.skipped_self_loops_;
            continue;
        }
        TimeUnit t = raw >= 0 ? raw / cfg.time_bin_width
                              : (raw - cfg.time_bin_width + 1) / cfg.time_bin_width;
        NodeId u = intern(su), v = intern(sv);
        PairKey key = u < v ? PairKey{u, v} : PairKey{v, u};
        g.edge_log_[key].push_back(t);
        if (first_data) {
            g.min_time_ = g.max_time_ = t;
            first_data = false;
        } else {
            g.min_time_ = std::min(g.min_time_, t);
            g.max_time_ = std::max(g.max_time_, t);
        }
        ++records;
    }
    if (records == 0) throw Error("ingest: no valid interaction records");

    g.arrival_.assign(g.names_.size(), g.max_time_ + 1);
    for (auto& [key, ts] : g.edge_log_) {
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        g.arrival_[key.first] = std::min(g.arrival_[key.first], ts.front());
        g.arrival_[key.second] = std::min(g.arrival_[key.second], ts.front());
    }
    return g;
}

NodeId TemporalGraph::id(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) throw Error("unknown node '" + name + "'");
    return it->second;
}

const std::vector<TimeUnit>* TemporalGraph::timestamps(NodeId u, NodeId v) const {
    PairKey key = u < v ? PairKey{u, v} : PairKey{v, u};
    auto it = edge_log_.find(key);
    return it == edge_log_.end() ? nullptr : &it->second;
}

TimeUnit TemporalGraph::first_time(NodeId u, NodeId v) const {
    const auto* ts = timestamps(u, v);
    if (!ts) throw Error("no interaction between requested pair");
    return ts->front();
}

Snapshot TemporalGraph::snapshot_at(TimeUnit t) const {
    if (t < min_time_) throw Error("snapshot_at: t=" + std::to_string(t) + " precedes first event");
    Snapshot s;
    s.cut_time = t;
    s.adj.resize(names_.size());
    s.present.assign(names_.size(), 0);
    for (const auto& [key, ts] : edge_log_) {
        if (ts.front() <= t) {
            s.adj[key.first].push_back(key.second);
            s.adj[key.second].push_back(key.first);
            ++s.num_edges;
        }
    }
    for (NodeId v = 0; v < names_.size(); ++v) {
        std::sort(s.adj[v].begin(), s.adj[v].end());
        if (arrival_[v] <= t) {
            s.present[v] = 1;
            ++s.num_present;
        }
    }
    return s;
}

std::vector<NodeId> TemporalGraph::arrivals_at(TimeUnit t) const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < names_.size(); ++v)
        if (arrival_[v] == t) out.push_back(v);
    return out;
}

TemporalGraph TemporalGraph::truncate(TimeUnit t) const {
    std::ostringstream buf;
    for (const auto& [key, ts] : edge_log_) {
        const std::string& a = names_[key.first];
        const std::string& b = names_[key.second];
        for (TimeUnit x : ts) {
            if (x > t) break;
            buf << a << ',' << b << ',' << x << '\n';
        }
    }
    std::istringstream in(buf.str());
    return ingest(in);
}

void TemporalGraph::dump(std::ostream& out) const {
    std::vector<std::tuple<std::string, std::string, TimeUnit>> rows;
    for (const auto& [key, ts] : edge_log_) {
        std::string a = names_[key.first], b = names_[key.second];
        if (b < a) std::swap(a, b);
        for (TimeUnit t : ts) rows.emplace_back(a, b, t);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [a, b, t] : rows) out << a << ',' << b << ',' << t << '\n';
}

bool TemporalGraph::operator==(const TemporalGraph& other) const {
    std::ostringstream a, b;
    dump(a);
    other.dump(b);
    return a.str() == b.str();
}

}  // namespace trinet
