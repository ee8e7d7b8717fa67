#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lexmap/errors.hpp"
#include "lexmap/evaluation.hpp"
#include "lexmap/rng.hpp"
#include "oracles.hpp"

using namespace lexmap;

namespace {

FeatureVector dense(const std::vector<double>& values) {
    FeatureVector vec;
    for (std::size_t i = 0; i < values.size(); ++i) vec.add(static_cast<int>(i), values[i]);
    return vec;
}

// Three well-separated gaussian clusters in R^dim.
LabeledDataset separable_clusters(std::size_t per_class, std::size_t dim, uint64_t seed,
                                  double spread = 0.3) {
    Rng rng(seed);
    const Label classes[3] = {Label::Negative, Label::Neutral, Label::Positive};
    LabeledDataset data;
    for (std::size_t i = 0; i < per_class * 3; ++i) {
        const Label label = classes[i % 3];
        std::vector<double> v(dim, 0.0);
        const std::size_t anchor = (i % 3) * (dim / 3);
        for (std::size_t j = 0; j < dim; ++j) v[j] = spread * rng.gaussian();
        v[anchor] += 4.0;
        data.ids.push_back("x" + std::to_string(i));
        data.vectors.push_back(dense(v));
        data.labels.push_back(label);
    }
    return data;
}

std::vector<Label> labels_of(const LabeledDataset& data) {
    std::vector<Label> out;
    for (const auto& label : data.labels) out.push_back(*label);
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("evaluation");

TEST_CASE("train: separable clusters reach a perfect training macro-F") {
    const auto data = separable_clusters(67, 9, 5);  // ~200 vectors
    REQUIRE(data.size() == 201);
    const auto model = train(data, {.reg = 1.0, .epochs = 200, .seed = 42});
    const auto report = macro_f(labels_of(data), predict_all(model, data));
    CHECK(report.macro_f == doctest::Approx(1.0));
}

TEST_CASE("train: duplicating every example leaves the decision function unchanged") {
    const auto data = separable_clusters(12, 6, 9, 0.8);
    LabeledDataset doubled;
    for (int rep = 0; rep < 2; ++rep) {
        for (std::size_t i = 0; i < data.size(); ++i) {
            doubled.ids.push_back(data.ids[i] + (rep ? "_dup" : ""));
            doubled.vectors.push_back(data.vectors[i]);
            doubled.labels.push_back(data.labels[i]);
        }
    }
    const TrainOptions opts{.reg = 1.0, .epochs = 4000, .seed = 42};
    const auto base = train(data, opts);
    const auto twice = train(doubled, opts);
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (const Label c : LinearModel::kClasses) {
            CHECK(std::abs(base.score(c, data.vectors[i]) - twice.score(c, data.vectors[i])) <=
                  1e-6);
        }
    }
}

TEST_CASE("train: all-zero features collapse to one bias-driven class") {
    LabeledDataset data;
    for (int i = 0; i < 12; ++i) {
        data.ids.push_back("z" + std::to_string(i));
        data.vectors.push_back(FeatureVector{});
        data.labels.push_back(i < 8 ? Label::Neutral : Label::Positive);
    }
    const auto model = train(data, {.reg = 1.0, .epochs = 100, .seed = 1});
    const auto predictions = predict_all(model, data);
    for (const Label p : predictions) CHECK(p == predictions.front());
}

TEST_CASE("train: contract errors") {
    LabeledDataset empty;
    CHECK_THROWS_AS(train(empty, {}), ContractError);

    LabeledDataset single;
    single.ids = {"a", "b"};
    single.vectors = {dense({1.0}), dense({2.0})};
    single.labels = {Label::Positive, Label::Positive};
    CHECK_THROWS_AS(train(single, {}), ContractError);

    LabeledDataset unlabeled;
    unlabeled.ids = {"a"};
    unlabeled.vectors = {dense({1.0})};
    unlabeled.labels = {std::nullopt};
    CHECK_THROWS_AS(train(unlabeled, {}), ContractError);
}

TEST_CASE("train: determinism given identical data, seed, options") {
    const auto data = separable_clusters(10, 6, 3);
    const auto a = train(data, {.reg = 0.5, .epochs = 70, .seed = 7});
    const auto b = train(data, {.reg = 0.5, .epochs = 70, .seed = 7});
    for (const Label c : LinearModel::kClasses) {
        CHECK((a.weights(c) - b.weights(c)).norm() == 0.0);
        CHECK(a.bias(c) == b.bias(c));
    }
}

TEST_CASE("predict: zero vector goes to the largest bias, ties to the fixed class order") {
    const auto data = separable_clusters(8, 6, 21);
    const auto model = train(data, {});
    const Label zero_pick = model.predict(FeatureVector{});
    double best = model.bias(zero_pick);
    for (const Label c : LinearModel::kClasses) CHECK(model.bias(c) <= best + 1e-15);

    // a vector that is zero everywhere the model has weights scores by bias
    FeatureVector far;
    far.add(10000, 1.0);
    CHECK(model.predict(far) == zero_pick);
}

TEST_CASE("predict: engineered exact tie goes to the earlier class in fixed order") {
    // hand-written model: neutral and positive biases tie above negative
    std::istringstream model_text(
        "lexmap-linear-model v1\n"
        "classes negative neutral positive\n"
        "features 2 reg 1 epochs 1 seed 1\n"
        "bias -1 0.5 0.5\n"
        "weights negative 0\n"
        "weights neutral 0\n"
        "weights positive 0\n");
    const auto model = LinearModel::parse(model_text);
    CHECK(model.predict(FeatureVector{}) == Label::Neutral);

    // three-way tie resolves to negative, the first class
    std::istringstream all_tied(
        "lexmap-linear-model v1\n"
        "classes negative neutral positive\n"
        "features 0 reg 1 epochs 1 seed 1\n"
        "bias 2 2 2\n"
        "weights negative 0\n"
        "weights neutral 0\n"
        "weights positive 0\n");
    CHECK(LinearModel::parse(all_tied).predict(FeatureVector{}) == Label::Negative);
}

TEST_CASE("predict: invariant under appending zero-valued features") {
    const auto data = separable_clusters(8, 6, 22);
    const auto model = train(data, {});
    for (std::size_t i = 0; i < data.size(); ++i) {
        FeatureVector padded = data.vectors[i];
        padded.add(9999, 0.0);  // explicit zero is dropped by the sparse container
        CHECK(model.predict(padded) == model.predict(data.vectors[i]));
    }
}

TEST_CASE("macro_f: perfect predictions score 1") {
    const std::vector<Label> gold = {Label::Positive, Label::Negative, Label::Neutral,
                                     Label::Positive};
    const auto report = macro_f(gold, gold);
    CHECK(report.macro_f == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.confusion[0][0] == 1);
    CHECK(report.confusion[2][2] == 2);
}

TEST_CASE("macro_f: hand-computed four-item example") {
    using L = Label;
    const std::vector<L> gold = {L::Positive, L::Positive, L::Negative, L::Neutral};
    const std::vector<L> pred = {L::Positive, L::Negative, L::Negative, L::Neutral};
    const auto report = macro_f(gold, pred);
    // per-class F1: positive 2/3, negative 2/3, neutral 1
    CHECK(report.f1[static_cast<std::size_t>(L::Positive)] == doctest::Approx(2.0 / 3.0));
    CHECK(report.f1[static_cast<std::size_t>(L::Negative)] == doctest::Approx(2.0 / 3.0));
    CHECK(report.f1[static_cast<std::size_t>(L::Neutral)] == doctest::Approx(1.0));
    CHECK(report.macro_f == doctest::Approx(0.7778).epsilon(1e-4));
}

TEST_CASE("macro_f: constant wrong prediction scores 0 under the zero conventions") {
    const std::vector<Label> gold = {Label::Positive, Label::Negative};
    const std::vector<Label> pred = {Label::Neutral, Label::Neutral};
    const auto report = macro_f(gold, pred);
    CHECK(report.macro_f == doctest::Approx(0.0));
    for (std::size_t c = 0; c < 3; ++c) CHECK(report.f1[c] == 0.0);
}

TEST_CASE("macro_f: contract errors") {
    CHECK_THROWS_AS(macro_f({}, {}), ContractError);
    CHECK_THROWS_AS(macro_f({Label::Positive}, {}), ContractError);
}

TEST_CASE("macro_f: matches the brute-force confusion oracle on random pairings") {
    Rng rng(77);
    const Label all[3] = {Label::Negative, Label::Neutral, Label::Positive};
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.uniform_index(50);
        std::vector<Label> gold(n), pred(n);
        // one in five trials rolls a degenerate constant-class pairing
        const bool degenerate = rng.uniform_index(5) == 0;
        const Label fixed_gold = all[rng.uniform_index(3)];
        const Label fixed_pred = all[rng.uniform_index(3)];
        for (std::size_t i = 0; i < n; ++i) {
            gold[i] = degenerate ? fixed_gold : all[rng.uniform_index(3)];
            pred[i] = degenerate ? fixed_pred : all[rng.uniform_index(3)];
        }
        const auto report = macro_f(gold, pred);
        CHECK(report.macro_f == oracles::brute_force_macro_f(gold, pred));
        CHECK(report.macro_f >= 0.0);
        CHECK(report.macro_f <= 1.0);
        // row sums equal gold counts
        for (std::size_t c = 0; c < 3; ++c) {
            const std::size_t row_sum =
                report.confusion[c][0] + report.confusion[c][1] + report.confusion[c][2];
            const std::size_t gold_count = static_cast<std::size_t>(
                std::count(gold.begin(), gold.end(), all[c]));
            CHECK(row_sum == gold_count);
        }
    }
}

TEST_CASE("macro_f: invariant under joint permutation, per-class F permutes under relabeling") {
    Rng rng(5);
    const Label all[3] = {Label::Negative, Label::Neutral, Label::Positive};
    std::vector<Label> gold(40), pred(40);
    for (std::size_t i = 0; i < 40; ++i) {
        gold[i] = all[rng.uniform_index(3)];
        pred[i] = all[rng.uniform_index(3)];
    }
    const auto base = macro_f(gold, pred);

    std::vector<std::size_t> perm(40);
    for (std::size_t i = 0; i < 40; ++i) perm[i] = i;
    rng.shuffle(perm);
    std::vector<Label> gold_p(40), pred_p(40);
    for (std::size_t i = 0; i < 40; ++i) {
        gold_p[i] = gold[perm[i]];
        pred_p[i] = pred[perm[i]];
    }
    const auto permuted = macro_f(gold_p, pred_p);
    CHECK(permuted.macro_f == base.macro_f);
    for (std::size_t c = 0; c < 3; ++c) CHECK(permuted.f1[c] == base.f1[c]);

    // relabel classes by every bijection
    const std::array<std::array<std::size_t, 3>, 6> bijections = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (const auto& sigma : bijections) {
        std::vector<Label> gold_r(40), pred_r(40);
        for (std::size_t i = 0; i < 40; ++i) {
            gold_r[i] = all[sigma[static_cast<std::size_t>(gold[i])]];
            pred_r[i] = all[sigma[static_cast<std::size_t>(pred[i])]];
        }
        const auto relabeled = macro_f(gold_r, pred_r);
        CHECK(relabeled.macro_f == doctest::Approx(base.macro_f).epsilon(1e-12));
        for (std::size_t c = 0; c < 3; ++c) {
            CHECK(relabeled.f1[sigma[c]] == doctest::Approx(base.f1[c]).epsilon(1e-12));
        }
    }
}

TEST_CASE("cross_validate: leave-one-out boundary runs to completion") {
    // 6 items, 2 per class: every n-1 subset still has two classes
    const auto data = separable_clusters(2, 6, 31);
    const auto report = cross_validate(data, static_cast<int>(data.size()), {.epochs = 50});
    CHECK(report.folds.size() == data.size());
}

TEST_CASE("cross_validate: deterministic given the seed, sensitive to it") {
    const auto data = separable_clusters(9, 6, 32, 1.5);
    const auto a = cross_validate(data, 3, {.epochs = 60, .seed = 11});
    const auto b = cross_validate(data, 3, {.epochs = 60, .seed = 11});
    REQUIRE(a.folds.size() == b.folds.size());
    CHECK(a.mean_macro_f == b.mean_macro_f);
    for (std::size_t f = 0; f < a.folds.size(); ++f) {
        CHECK(a.folds[f].macro_f == b.folds[f].macro_f);
    }
}

TEST_CASE("cross_validate: separable data scores high on 3 folds") {
    const auto data = separable_clusters(30, 9, 33);
    const auto report = cross_validate(data, 3, {.epochs = 150});
    CHECK(report.mean_macro_f >= 0.95);
}

TEST_CASE("cross_validate: fold-count contract errors") {
    const auto data = separable_clusters(2, 6, 34);
    CHECK_THROWS_AS(cross_validate(data, 1, {}), ContractError);
    CHECK_THROWS_AS(cross_validate(data, static_cast<int>(data.size()) + 1, {}), ContractError);
}

TEST_CASE("model serialization round-trips weights, biases, options") {
    const auto data = separable_clusters(8, 7, 35);
    const auto model = train(data, {.reg = 0.25, .epochs = 80, .seed = 3});
    std::ostringstream first;
    model.serialize(first);
    std::istringstream back(first.str());
    const auto reparsed = LinearModel::parse(back);

    CHECK(reparsed.feature_count() == model.feature_count());
    CHECK(reparsed.options().reg == model.options().reg);
    CHECK(reparsed.options().epochs == model.options().epochs);
    CHECK(reparsed.options().seed == model.options().seed);
    for (const Label c : LinearModel::kClasses) {
        CHECK((reparsed.weights(c) - model.weights(c)).norm() == 0.0);
        CHECK(reparsed.bias(c) == model.bias(c));
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
        CHECK(reparsed.predict(data.vectors[i]) == model.predict(data.vectors[i]));
    }

    std::ostringstream second;
    reparsed.serialize(second);
    CHECK(first.str() == second.str());
}

TEST_CASE("model parse: malformed files") {
    std::istringstream bad_magic("something else\n");
    CHECK_THROWS_AS(LinearModel::parse(bad_magic), ParseError);
    std::istringstream truncated("lexmap-linear-model v1\nclasses negative neutral positive\n");
    CHECK_THROWS_AS(LinearModel::parse(truncated), ParseError);
}

TEST_CASE("report formatting: table and key-value outputs") {
    const std::vector<Label> gold = {Label::Positive, Label::Negative, Label::Neutral};
    const auto report = macro_f(gold, gold);
    std::ostringstream table;
    report.write_table(table);
    CHECK(table.str().find("macro_f    1.0000") != std::string::npos);
    std::ostringstream kv;
    report.write_kv(kv);
    CHECK(kv.str().find("macro_f=1\n") != std::string::npos);
    CHECK(kv.str().find("confusion_negative_negative=1") != std::string::npos);
}

TEST_SUITE_END();
