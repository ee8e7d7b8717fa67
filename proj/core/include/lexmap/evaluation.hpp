#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lexmap/features.hpp"

namespace lexmap {

struct TrainOptions {
    double reg = 1.0;     // L2 regularization strength on (reg/2)|w|^2 + mean hinge
    int epochs = 50;      // maximum coordinate-descent epochs
    uint64_t seed = 42;   // drives the per-epoch visit order
};

// One-vs-rest linear classifiers over the three sentiment classes, trained
// with L2-regularized hinge loss. The loss is averaged over examples so
// duplicating the training set leaves the decision function unchanged.
class LinearModel {
public:
    static constexpr std::array<Label, 3> kClasses = {Label::Negative, Label::Neutral,
                                                      Label::Positive};

    LinearModel() = default;

    double score(Label c, const FeatureVector& v) const;
    // Argmax over class scores; exact ties resolve to the earlier class in
    // kClasses order (negative < neutral < positive).
    Label predict(const FeatureVector& v) const;

    std::size_t feature_count() const { return static_cast<std::size_t>(weights_[0].size()); }
    const Eigen::VectorXd& weights(Label c) const { return weights_[static_cast<std::size_t>(c)]; }
    double bias(Label c) const { return bias_[static_cast<std::size_t>(c)]; }
    const TrainOptions& options() const { return options_; }

    void serialize(std::ostream& out) const;
    static LinearModel parse(std::istream& in);
    static LinearModel parse_file(const std::string& path);

    friend LinearModel train(const LabeledDataset& data, const TrainOptions& options);

private:
    std::array<Eigen::VectorXd, 3> weights_ = {Eigen::VectorXd(), Eigen::VectorXd(),
                                               Eigen::VectorXd()};
    std::array<double, 3> bias_ = {0.0, 0.0, 0.0};
    TrainOptions options_;
};

// Deterministic dual coordinate descent; requires at least two distinct
// labels and finite features.
LinearModel train(const LabeledDataset& data, const TrainOptions& options = {});

struct EvaluationReport {
    // confusion[gold][pred], indexed in kClasses order.
    std::array<std::array<std::size_t, 3>, 3> confusion = {};
    std::array<double, 3> precision = {};
    std::array<double, 3> recall = {};
    std::array<double, 3> f1 = {};
    double macro_f = 0.0;

    void write_table(std::ostream& out) const;
    void write_kv(std::ostream& out) const;
};

// Per-class precision/recall/F1 with zero-denominator conventions
// (P := 0, R := 0, F1 := 0) and the unweighted three-class mean, computed
// over all three classes even when a class is absent from gold.
EvaluationReport macro_f(const std::vector<Label>& gold, const std::vector<Label>& pred);

std::vector<Label> predict_all(const LinearModel& model, const LabeledDataset& data);

struct CrossValReport {
    std::vector<EvaluationReport> folds;
    double mean_macro_f = 0.0;
    double stdev_macro_f = 0.0;  // sample standard deviation over folds

    void write_kv(std::ostream& out) const;
};

// Seeded shuffle, then contiguous fold blocks; deterministic given the seed.
CrossValReport cross_validate(const LabeledDataset& data, int folds, const TrainOptions& options);

}  // namespace lexmap
