#include <doctest.h>

#include <Eigen/LU>

#include <cmath>
#include <numeric>
#include <sstream>

#include "lexmap/alignment.hpp"
#include "lexmap/errors.hpp"
#include "lexmap/experiments.hpp"
#include "lexmap/rng.hpp"
#include "oracles.hpp"

using namespace lexmap;

namespace {

Eigen::MatrixXd gaussian(std::size_t rows, std::size_t cols, uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.gaussian();
    }
    return m;
}

PairSet pairs_of(Eigen::MatrixXd x, Eigen::MatrixXd y) {
    PairSet pairs;
    pairs.X = std::move(x);
    pairs.Y = std::move(y);
    pairs.pair_words.resize(static_cast<std::size_t>(pairs.X.rows()));
    return pairs;
}

EmbeddingTable tiny_table(const std::vector<std::string>& vocab, const Eigen::MatrixXd& vectors) {
    return EmbeddingTable("toy", vocab, vectors);
}

}  // namespace

TEST_SUITE_BEGIN("alignment");

TEST_CASE("dictionary parse: tabs, comments, duplicates") {
    std::istringstream in("# comment\ncat\tchat\n\ndog\tchien\ncat\tchat\ncat\tfelin\n");
    const auto dict = BilingualDictionary::parse(in);
    REQUIRE(dict.size() == 3);  // exact duplicate dropped, second translation kept
    CHECK(dict.duplicate_pairs_skipped == 1);
    CHECK(dict.entries[0].source == "cat");
    CHECK(dict.entries[0].target == "chat");
    CHECK(dict.entries[2].target == "felin");
}

TEST_CASE("dictionary parse: malformed line errors") {
    std::istringstream no_tab("cat chat\n");
    CHECK_THROWS_AS(BilingualDictionary::parse(no_tab), ParseError);
    std::istringstream three("a\tb\tc\n");
    CHECK_THROWS_AS(BilingualDictionary::parse(three), ParseError);
}

TEST_CASE("build_pairs: in-vocabulary entries, OOV skipping, shared source rows") {
    Eigen::MatrixXd src_vecs(2, 2), tgt_vecs(3, 2);
    src_vecs << 1, 0, 0, 1;
    tgt_vecs << 2, 0, 0, 2, 1, 1;
    const auto src = tiny_table({"cat", "bank"}, src_vecs);
    const auto tgt = tiny_table({"chat", "banque", "rive"}, tgt_vecs);

    BilingualDictionary dict;
    dict.entries = {{"cat", "chat"}, {"zzz", "chat"}, {"bank", "banque"}, {"bank", "rive"}};
    const auto pairs = build_pairs(dict, src, tgt);
    CHECK(pairs.size() == 3);
    CHECK(pairs.skipped == 1);
    // the repeated source word contributes one pair per translation, same x row
    CHECK((pairs.X.row(1) - pairs.X.row(2)).norm() == 0.0);
    CHECK((pairs.Y.row(1) - pairs.Y.row(2)).norm() != 0.0);
}

TEST_CASE("build_pairs: fully OOV dictionary is an error naming the skipped count") {
    const auto src = tiny_table({"a"}, Eigen::MatrixXd::Ones(1, 2));
    const auto tgt = tiny_table({"b"}, Eigen::MatrixXd::Ones(1, 2));
    BilingualDictionary dict;
    dict.entries = {{"x", "y"}, {"p", "q"}};
    CHECK_THROWS_WITH_AS(build_pairs(dict, src, tgt), doctest::Contains("empty training set"),
                         ContractError);
}

TEST_CASE("fit: identity pairs over the standard basis recover I") {
    const int d = 6;
    const auto pairs = pairs_of(Eigen::MatrixXd::Identity(d, d), Eigen::MatrixXd::Identity(d, d));
    const auto map = fit_linear_map(pairs);
    CHECK((map.W - Eigen::MatrixXd::Identity(d, d)).norm() <= 1e-9);
    CHECK(map.mean_squared_residual <= 1e-18);
    CHECK(map.train_pair_count == d);
}

TEST_CASE("fit: scaling pairs recover 2I") {
    const auto x = gaussian(20, 5, 3);
    const auto map = fit_linear_map(pairs_of(x, 2.0 * x));
    CHECK((map.W - 2.0 * Eigen::MatrixXd::Identity(5, 5)).norm() <= 1e-9);
}

TEST_CASE("fit matches the normal-equations oracle on noisy data") {
    Rng rng(17);
    const auto x = gaussian(200, 50, 21);
    const auto a = gaussian(40, 50, 22);
    Eigen::MatrixXd y = x * a.transpose();
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        for (Eigen::Index j = 0; j < y.cols(); ++j) y(i, j) += 0.01 * rng.gaussian();
    }
    const auto pairs = pairs_of(x, y);
    const auto map = fit_linear_map(pairs);
    const Eigen::MatrixXd oracle = oracles::normal_equations_fit(pairs.X, pairs.Y);
    CHECK((map.W - oracle).norm() <= 1e-6);
    CHECK(map.solver_tag == "cod");
}

TEST_CASE("fit: rank-deficient systems resolve to the minimum-norm solution") {
    // x vectors live in a 2-dimensional subspace of R^4
    Eigen::MatrixXd basis = gaussian(2, 4, 5);
    Eigen::MatrixXd coeffs = gaussian(30, 2, 6);
    Eigen::MatrixXd x = coeffs * basis;
    Eigen::MatrixXd y = coeffs;  // perfectly predictable from the subspace
    const auto map = fit_linear_map(pairs_of(x, y));
    CHECK(map.mean_squared_residual <= 1e-16);

    // any W' = W + N with N X^T = 0 fits equally well; minimum norm means
    // W has no component outside the row space of X
    Eigen::FullPivLU<Eigen::MatrixXd> lu(x);
    const Eigen::MatrixXd kernel = lu.kernel();  // 4 x 2 null-space basis
    CHECK((map.W * kernel).norm() <= 1e-9);
}

TEST_CASE("fit: permutation invariance") {
    const auto x = gaussian(60, 8, 31);
    Eigen::MatrixXd y = gaussian(60, 7, 32);
    const auto map = fit_linear_map(pairs_of(x, y));

    std::vector<std::size_t> perm(60);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(33);
    rng.shuffle(perm);
    Eigen::MatrixXd xp(60, 8), yp(60, 7);
    for (std::size_t i = 0; i < 60; ++i) {
        xp.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(perm[i]));
        yp.row(static_cast<Eigen::Index>(i)) = y.row(static_cast<Eigen::Index>(perm[i]));
    }
    const auto shuffled = fit_linear_map(pairs_of(xp, yp));
    CHECK((map.W - shuffled.W).norm() <= 1e-9);
}

TEST_CASE("fit: exact recovery when Y = X A^T and X has full column rank") {
    const auto x = gaussian(120, 30, 41);
    Rng rng(42);
    const Eigen::MatrixXd a = random_conditioned_matrix(25, 30, 50.0, rng);
    const auto map = fit_linear_map(pairs_of(x, x * a.transpose()));
    CHECK((map.W - a).norm() / a.norm() <= 1e-8);
}

TEST_CASE("fit: stored mean squared residual is recomputable") {
    Rng rng(55);
    auto x = gaussian(80, 10, 56);
    auto y = gaussian(80, 9, 57);
    const auto pairs = pairs_of(std::move(x), std::move(y));
    const auto map = fit_linear_map(pairs);
    const double recomputed =
        (pairs.X * map.W.transpose() - pairs.Y).squaredNorm() / static_cast<double>(pairs.X.rows());
    CHECK(std::abs(map.mean_squared_residual - recomputed) <= 1e-9);
}

TEST_CASE("fit: convex optimality under random unit perturbations") {
    Rng rng(60);
    const auto x = gaussian(100, 12, 61);
    Eigen::MatrixXd y = gaussian(100, 8, 62);
    const auto pairs = pairs_of(x, y);
    const auto map = fit_linear_map(pairs);
    const double fitted = alignment_objective(map.W, pairs);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::MatrixXd delta = gaussian(8, 12, 100 + static_cast<uint64_t>(trial));
        delta *= 1e-3 / delta.norm();
        CHECK(alignment_objective(map.W + delta, pairs) >= fitted - 1e-12);
    }
}

TEST_CASE("project: identity, hand-computed product, linearity") {
    LinearMap identity;
    identity.W = Eigen::MatrixXd::Identity(3, 3);
    Eigen::VectorXd x(3);
    x << 1, 2, 3;
    CHECK((identity.project(x) - x).norm() == 0.0);

    LinearMap map;
    map.W.resize(2, 2);
    map.W << 1, 2, 3, 4;
    Eigen::VectorXd ones(2);
    ones << 1, 1;
    const Eigen::VectorXd projected = map.project(ones);
    CHECK(projected(0) == doctest::Approx(3.0));
    CHECK(projected(1) == doctest::Approx(7.0));

    Rng rng(70);
    Eigen::VectorXd u(2), v(2);
    u << rng.gaussian(), rng.gaussian();
    v << rng.gaussian(), rng.gaussian();
    const double alpha = rng.gaussian(), beta = rng.gaussian();
    CHECK((map.project(alpha * u + beta * v) - (alpha * map.project(u) + beta * map.project(v)))
              .norm() <= 1e-9);

    Eigen::VectorXd wrong(3);
    wrong << 1, 2, 3;
    CHECK_THROWS_AS(map.project(wrong), ContractError);
}

TEST_CASE("residual gradient: zero at an exact fit, tiny at a least-squares fit") {
    const auto x = gaussian(50, 6, 81);
    const Eigen::MatrixXd a = gaussian(5, 6, 82);
    const auto exact_pairs = pairs_of(x, x * a.transpose());
    const auto exact_map = fit_linear_map(exact_pairs);
    CHECK(residual_gradient_norm(exact_map, exact_pairs) <= 1e-8);

    Rng rng(83);
    Eigen::MatrixXd y = x * a.transpose();
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        for (Eigen::Index j = 0; j < y.cols(); ++j) y(i, j) += 0.05 * rng.gaussian();
    }
    const auto noisy_pairs = pairs_of(x, y);
    const auto noisy_map = fit_linear_map(noisy_pairs);
    CHECK(residual_gradient_norm(noisy_map, noisy_pairs) <=
          1e-6 * noisy_pairs.X.norm() * noisy_pairs.Y.norm());

    // perturbing one entry strictly increases the objective
    Eigen::MatrixXd perturbed = noisy_map.W;
    perturbed(0, 0) += 0.1;
    CHECK(alignment_objective(perturbed, noisy_pairs) >
          alignment_objective(noisy_map.W, noisy_pairs));
}

TEST_CASE("precision_at_k: identity setup scores 1") {
    const auto vectors = gaussian(20, 6, 91);
    std::vector<std::string> vocab;
    for (int i = 0; i < 20; ++i) vocab.push_back("w" + std::to_string(i));
    const auto table = tiny_table(vocab, vectors);

    LinearMap identity;
    identity.W = Eigen::MatrixXd::Identity(6, 6);
    BilingualDictionary heldout;
    for (const auto& w : vocab) heldout.entries.push_back({w, w});
    heldout.entries.push_back({"oov", "oov"});
    const auto report = precision_at_k(identity, heldout, table, table, 1);
    CHECK(report.value == doctest::Approx(1.0));
    CHECK(report.evaluated == 20);
    CHECK(report.skipped == 1);
}

TEST_CASE("precision_at_k: random map on unrelated spaces scores near chance") {
    const std::size_t vocab_size = 200;
    const std::size_t k = 4;
    double total = 0.0;
    for (uint64_t trial = 0; trial < 20; ++trial) {
        const auto src_vecs = gaussian(vocab_size, 10, 900 + trial);
        const auto tgt_vecs = gaussian(vocab_size, 10, 950 + trial);
        std::vector<std::string> src_vocab, tgt_vocab;
        for (std::size_t i = 0; i < vocab_size; ++i) {
            src_vocab.push_back("s" + std::to_string(i));
            tgt_vocab.push_back("t" + std::to_string(i));
        }
        const auto src = tiny_table(src_vocab, src_vecs);
        const auto tgt = tiny_table(tgt_vocab, tgt_vecs);
        LinearMap random_map;
        random_map.W = gaussian(10, 10, 990 + trial);
        random_map.solver_tag = "random";
        BilingualDictionary heldout;
        for (std::size_t i = 0; i < vocab_size; ++i) {
            heldout.entries.push_back({src_vocab[i], tgt_vocab[i]});
        }
        total += precision_at_k(random_map, heldout, src, tgt, k).value;
    }
    const double mean = total / 20.0;
    const double chance = static_cast<double>(k) / static_cast<double>(vocab_size);
    CHECK(mean >= 0.0);
    CHECK(mean <= 4.0 * chance + 0.02);
}

TEST_CASE("precision_at_k: no resolvable held-out pairs is an error") {
    const auto table = tiny_table({"a"}, Eigen::MatrixXd::Ones(1, 2));
    LinearMap identity;
    identity.W = Eigen::MatrixXd::Identity(2, 2);
    BilingualDictionary heldout;
    heldout.entries = {{"x", "y"}};
    CHECK_THROWS_AS(precision_at_k(identity, heldout, table, table, 1), ContractError);
}

TEST_CASE("linear map serialization round-trips exactly") {
    Rng rng(101);
    LinearMap map;
    map.W = gaussian(7, 5, 102);
    map.train_pair_count = 321;
    map.mean_squared_residual = 0.012345678901234567;
    map.solver_tag = "cod";

    std::ostringstream first;
    map.serialize(first);
    std::istringstream back(first.str());
    const auto reparsed = LinearMap::parse(back);

    CHECK((reparsed.W - map.W).norm() == 0.0);  // 17 significant digits round-trip doubles exactly
    CHECK(reparsed.train_pair_count == map.train_pair_count);
    CHECK(reparsed.mean_squared_residual == map.mean_squared_residual);
    CHECK(reparsed.solver_tag == map.solver_tag);

    std::ostringstream second;
    reparsed.serialize(second);
    CHECK(first.str() == second.str());
}

TEST_CASE("linear map parse: malformed inputs") {
    std::istringstream empty("");
    CHECK_THROWS_AS(LinearMap::parse(empty), ParseError);
    std::istringstream bad_header("2 2 cod 5\n1 0\n0 1\n");
    CHECK_THROWS_AS(LinearMap::parse(bad_header), ParseError);
    std::istringstream truncated("2 2 cod 5 0.0\n1 0\n");
    CHECK_THROWS_AS(LinearMap::parse(truncated), ParseError);
    std::istringstream bad_row("2 2 cod 5 0.0\n1 0\n0 1 2\n");
    CHECK_THROWS_AS(LinearMap::parse(bad_row), ParseError);
}

TEST_SUITE_END();
