#include "trinet/learn.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "trinet/kernels.hpp"

namespace trinet::learn {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Average ranks (1-based) with ties sharing their midrank.
std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double midrank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = midrank;
        i = j + 1;
    }
    return ranks;
}

double mann_whitney_p(const std::vector<double>& pos, const std::vector<double>& neg) {
    const double n1 = static_cast<double>(pos.size());
    const double n2 = static_cast<double>(neg.size());
    std::vector<double> all(pos);
    all.insert(all.end(), neg.begin(), neg.end());
    const auto ranks = average_ranks(all);
    double r1 = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) r1 += ranks[i];
    const double u = r1 - n1 * (n1 + 1.0) / 2.0;
    const double mu = n1 * n2 / 2.0;
    // tie correction
    std::sort(all.begin(), all.end());
    double tie_term = 0.0;
    std::size_t i = 0;
    const double big_n = n1 + n2;
    while (i < all.size()) {
        std::size_t j = i;
        while (j + 1 < all.size() && all[j + 1] == all[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const double var =
        n1 * n2 / 12.0 * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)));
    if (var <= 0.0) return 1.0;
    const double z = (u - mu) / std::sqrt(var);
    return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

}  // namespace

double logistic_loss(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                     const std::vector<double>& w, double b, double l2) {
    const std::size_t n = x.size();
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = kernels::dot(x[i].data(), w.data(), w.size()) + b;
        // log(1 + exp(-yz)) in a stable form
        const double yz = (y[i] ? 1.0 : -1.0) * z;
        loss += yz > 0 ? std::log1p(std::exp(-yz)) : -yz + std::log1p(std::exp(yz));
    }
    loss /= static_cast<double>(n);
    loss += 0.5 * l2 * kernels::dot(w.data(), w.data(), w.size());
    return loss;
}

void logistic_gradient(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                       const std::vector<double>& w, double b, double l2,
                       std::vector<double>& grad_w, double& grad_b) {
    const std::size_t n = x.size();
    grad_w.assign(w.size(), 0.0);
    grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = kernels::dot(x[i].data(), w.data(), w.size()) + b;
        const double err = sigmoid(z) - (y[i] ? 1.0 : 0.0);
        kernels::axpy(err, x[i].data(), grad_w.data(), w.size());
        grad_b += err;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < w.size(); ++j) grad_w[j] = grad_w[j] * inv_n + l2 * w[j];
    grad_b *= inv_n;
}

BaggedLogisticModel train(const labeling::LabeledDataset& ds, int bags, std::uint64_t seed,
                          const TrainConfig& cfg) {
    if (bags < 1) throw Error("train: need at least one bag");
    const std::size_t n = ds.size();
    const std::size_t d = ds.columns.size();
    const std::size_t pos = ds.positives();
    if (pos == 0 || pos == n) throw Error("train: single-class training data");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (!std::isfinite(ds.rows[i][j]))
                throw Error("train: non-finite value in column '" + ds.columns[j] + "'");

    BaggedLogisticModel model;
    model.columns = ds.columns;
    model.master_seed = seed;
    model.mean.assign(d, 0.0);
    model.stddev.assign(d, 0.0);
    for (const auto& row : ds.rows)
        for (std::size_t j = 0; j < d; ++j) model.mean[j] += row[j];
    for (auto& m : model.mean) m /= static_cast<double>(n);
    for (const auto& row : ds.rows)
        for (std::size_t j = 0; j < d; ++j) {
            const double c = row[j] - model.mean[j];
            model.stddev[j] += c * c;
        }
    for (auto& s : model.stddev) {
        s = std::sqrt(s / static_cast<double>(n));
        if (s == 0.0) s = 1.0;  // constant columns pass through as zeros
    }

    std::vector<std::vector<double>> x(n, std::vector<double>(d));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            x[i][j] = (ds.rows[i][j] - model.mean[j]) / model.stddev[j];

    for (int bag = 0; bag < bags; ++bag) {
        const std::uint64_t bag_seed = mix64(seed, static_cast<std::uint64_t>(bag) + 1);
        std::mt19937_64 rng(bag_seed);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::vector<std::vector<double>> bx;
        std::vector<int> by;
        bx.reserve(n);
        by.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t r = pick(rng);
            bx.push_back(x[r]);
            by.push_back(ds.labels[r]);
        }
        // Bootstrap can lose a class; resample the last draw from the missing one.
        if (std::count(by.begin(), by.end(), 1) == 0 ||
            std::count(by.begin(), by.end(), 0) == static_cast<long>(0)) {
            const int missing = std::count(by.begin(), by.end(), 1) == 0 ? 1 : 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (ds.labels[i] == missing) {
                    bx.back() = x[i];
                    by.back() = missing;
                    break;
                }
            }
        }

        std::vector<double> w(d, 0.0), grad_w(d);
        double b = 0.0, grad_b = 0.0;
        double lr = cfg.learning_rate;
        double prev_loss = logistic_loss(bx, by, w, b, cfg.l2);
        for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
            logistic_gradient(bx, by, w, b, cfg.l2, grad_w, grad_b);
            std::vector<double> w_new(w);
            kernels::axpy(-lr, grad_w.data(), w_new.data(), d);
            const double b_new = b - lr * grad_b;
            const double loss = logistic_loss(bx, by, w_new, b_new, cfg.l2);
            if (loss > prev_loss) {
                lr *= 0.5;
                continue;  // reject the step, retry smaller
            }
            w.swap(w_new);
            b = b_new;
            if (prev_loss - loss < cfg.tol) {
                prev_loss = loss;
                break;
            }
            prev_loss = loss;
        }
        model.members.push_back({std::move(w), b, bag_seed});
    }
    return model;
}

double predict_row(const BaggedLogisticModel& m, const std::vector<double>& row) {
    std::vector<double> z(row.size());
    for (std::size_t j = 0; j < row.size(); ++j) z[j] = (row[j] - m.mean[j]) / m.stddev[j];
    double sum = 0.0;
    for (const auto& member : m.members)
        sum += sigmoid(kernels::dot(z.data(), member.weights.data(), z.size()) + member.bias);
    return sum / static_cast<double>(m.members.size());
}

std::vector<double> predict(const BaggedLogisticModel& m, const labeling::LabeledDataset& ds) {
    if (ds.columns != m.columns) {
        for (const auto& c : m.columns)
            if (std::find(ds.columns.begin(), ds.columns.end(), c) == ds.columns.end())
                throw Error("predict: missing column '" + c + "'");
        throw Error("predict: column schema mismatch");
    }
    std::vector<double> out;
    out.reserve(ds.size());
    for (const auto& row : ds.rows) out.push_back(predict_row(m, row));
    return out;
}

double rank_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double n1 = 0.0, n2 = 0.0, r1 = 0.0;
    const auto ranks = average_ranks(scores);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i]) {
            n1 += 1.0;
            r1 += ranks[i];
        } else {
            n2 += 1.0;
        }
    }
    return (r1 - n1 * (n1 + 1.0) / 2.0) / (n1 * n2);
}

EvaluationReport evaluate(const std::vector<double>& scores, const std::vector<int>& labels,
                          std::size_t k) {
    const std::size_t n = scores.size();
    if (n == 0 || n != labels.size()) throw Error("evaluate: bad input lengths");
    const std::size_t pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    if (pos == 0 || pos == n) throw Error("evaluate: single-class labels");
    const std::size_t neg = n - pos;

    EvaluationReport rep;
    rep.k = k;
    rep.scores = scores;
    rep.auc = rank_auc(scores, labels);

    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i)
        correct += (scores[i] >= 0.5 ? 1 : 0) == labels[i];
    rep.accuracy = static_cast<double>(correct) / static_cast<double>(n);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });

    std::size_t tp = 0, fp = 0;
    double prev_recall = 0.0, aupr = 0.0;
    rep.roc.emplace_back(0.0, 0.0);
    for (std::size_t rank = 0; rank < n; ++rank) {
        const std::size_t i = order[rank];
        if (labels[i]) {
            ++tp;
            if (rank < k) ++rep.top_k_hits;
        } else {
            ++fp;
        }
        const double recall = static_cast<double>(tp) / static_cast<double>(pos);
        const double precision =
            static_cast<double>(tp) / static_cast<double>(tp + fp);
        aupr += (recall - prev_recall) * precision;
        prev_recall = recall;
        rep.pr.emplace_back(recall, precision);
        rep.roc.emplace_back(static_cast<double>(fp) / static_cast<double>(neg), recall);
    }
    rep.aupr = aupr;
    return rep;
}

std::vector<SignificanceRow> feature_significance(const labeling::LabeledDataset& ds) {
    const std::size_t pos = ds.positives();
    if (pos == 0 || pos == ds.size()) throw Error("feature_significance: single-class labels");
    std::vector<SignificanceRow> out;
    for (std::size_t j = 0; j < ds.columns.size(); ++j) {
        std::vector<double> a, b;
        for (std::size_t i = 0; i < ds.size(); ++i)
            (ds.labels[i] ? a : b).push_back(ds.rows[i][j]);
        SignificanceRow row;
        row.feature = ds.columns[j];
        const double first = ds.rows[0][j];
        bool constant = true;
        for (const auto& r : ds.rows)
            if (r[j] != first) constant = false;
        if (constant) {
            row.constant = true;
            row.p_value = 1.0;
        } else {
            row.p_value = mann_whitney_p(a, b);
        }
        row.stars = row.p_value < 0.001  ? "****"
                    : row.p_value < 0.01 ? "***"
                    : row.p_value < 0.05 ? "**"
                    : row.p_value < 0.1  ? "*"
                                         : "";
        out.push_back(std::move(row));
    }
    return out;
}

void BaggedLogisticModel::save(std::ostream& out) const {
    out.precision(17);
    out << "trinet-model 1\n";
    out << "columns";
    for (const auto& c : columns) out << ' ' << c;
    out << "\nmaster_seed " << master_seed << "\nmean";
    for (double m : mean) out << ' ' << m;
    out << "\nstddev";
    for (double s : stddev) out << ' ' << s;
    out << "\nbags " << members.size() << '\n';
    for (const auto& m : members) {
        out << "bag " << m.seed << ' ' << m.bias;
        for (double w : m.weights) out << ' ' << w;
        out << '\n';
    }
}

BaggedLogisticModel BaggedLogisticModel::load(std::istream& in) {
    BaggedLogisticModel m;
    std::string tag;
    int version = 0;
    in >> tag >> version;
    if (tag != "trinet-model" || version != 1) throw Error("model load: bad header");
    std::string line, word;
    std::getline(in, line);
    std::getline(in, line);
    {
        std::istringstream ss(line);
        ss >> word;
        while (ss >> word) m.columns.push_back(word);
    }
    in >> word >> m.master_seed;
    const std::size_t d = m.columns.size();
    in >> word;
    m.mean.resize(d);
    for (auto& x : m.mean) in >> x;
    in >> word;
    m.stddev.resize(d);
    for (auto& x : m.stddev) in >> x;
    std::size_t bags = 0;
    in >> word >> bags;
    for (std::size_t i = 0; i < bags; ++i) {
        Member member;
        in >> word >> member.seed >> member.bias;
        member.weights.resize(d);
        for (auto& w : member.weights) in >> w;
        m.members.push_back(std::move(member));
    }
    if (!in) throw Error("model load: truncated file");
    return m;
}

}  // namespace trinet::learn
