#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "trinet/labeling.hpp"

namespace trinet::learn {

struct TrainConfig {
    int bags = 10;
    double l2 = 1e-4;
    double learning_rate = 0.1;
    int max_epochs = 500;
    double tol = 1e-8;  // loss-change convergence
};

struct BaggedLogisticModel {
    struct Member {
        std::vector<double> weights;
        double bias = 0.0;
        std::uint64_t seed = 0;
    };
    std::vector<std::string> columns;
    std::vector<double> mean, stddev;  // training standardization
    std::vector<Member> members;
    std::uint64_t master_seed = 0;

    void save(std::ostream& out) const;
    static BaggedLogisticModel load(std::istream& in);
};

struct EvaluationReport {
    double accuracy = 0.0;  // threshold 0.5
    double auc = 0.0;
    double aupr = 0.0;
    std::size_t top_k_hits = 0;
    std::size_t k = 50;
    std::vector<std::pair<double, double>> roc;  // (fpr, tpr)
    std::vector<std::pair<double, double>> pr;   // (recall, precision)
    std::vector<double> scores;
};

BaggedLogisticModel train(const labeling::LabeledDataset& ds, int bags, std::uint64_t seed,
                          const TrainConfig& cfg = {});

std::vector<double> predict(const BaggedLogisticModel& m, const labeling::LabeledDataset& ds);
double predict_row(const BaggedLogisticModel& m, const std::vector<double>& row);

// Ties in scores broken by ascending instance index for the Top@k cut.
EvaluationReport evaluate(const std::vector<double>& scores, const std::vector<int>& labels,
                          std::size_t k = 50);

// Mean regularized logistic loss and its gradient; gradient layout is
// (d/dw..., d/db). Exposed for finite-difference checks.
double logistic_loss(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                     const std::vector<double>& w, double b, double l2);
void logistic_gradient(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                       const std::vector<double>& w, double b, double l2,
                       std::vector<double>& grad_w, double& grad_b);

struct SignificanceRow {
    std::string feature;
    double p_value = 1.0;
    std::string stars;  // "", "*", "**", "***", "****"
    bool constant = false;
};

// Two-sided Mann-Whitney U (normal approximation, tie-corrected) per feature,
// comparing positive-label vs negative-label values.
std::vector<SignificanceRow> feature_significance(const labeling::LabeledDataset& ds);

// Tie-averaged rank AUC helper shared with the significance test.
double rank_auc(const std::vector<double>& scores, const std::vector<int>& labels);

}  // namespace trinet::learn
