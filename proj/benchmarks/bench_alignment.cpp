#include <benchmark/benchmark.h>

#include "lexmap/alignment.hpp"
#include "lexmap/rng.hpp"

using namespace lexmap;

namespace {

PairSet make_pairs(std::size_t n, std::size_t d_src, std::size_t d_tgt) {
    Rng rng(3);
    PairSet pairs;
    pairs.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d_src));
    pairs.Y.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d_tgt));
    for (Eigen::Index i = 0; i < pairs.X.rows(); ++i) {
        for (Eigen::Index j = 0; j < pairs.X.cols(); ++j) pairs.X(i, j) = rng.gaussian();
        for (Eigen::Index j = 0; j < pairs.Y.cols(); ++j) pairs.Y(i, j) = rng.gaussian();
    }
    pairs.pair_words.resize(n);
    return pairs;
}

}  // namespace

static void BM_FitLinearMap(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto pairs = make_pairs(n, 200, 200);
    for (auto _ : state) {
        auto map = fit_linear_map(pairs);
        benchmark::DoNotOptimize(map);
    }
}
BENCHMARK(BM_FitLinearMap)->Arg(500)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_Project(benchmark::State& state) {
    const auto pairs = make_pairs(400, 200, 200);
    const auto map = fit_linear_map(pairs);
    const Eigen::VectorXd x = pairs.X.row(0).transpose();
    for (auto _ : state) {
        auto y = map.project(x);
        benchmark::DoNotOptimize(y);
    }
}
BENCHMARK(BM_Project);

BENCHMARK_MAIN();
