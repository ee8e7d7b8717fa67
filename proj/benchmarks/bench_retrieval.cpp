#include <benchmark/benchmark.h>

#include <vector>

#include "lexmap/embeddings.hpp"
#include "lexmap/rng.hpp"

using namespace lexmap;

namespace {

EmbeddingTable make_table(std::size_t vocab, std::size_t dim) {
    Rng rng(1);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(vocab), static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.gaussian();
    }
    std::vector<std::string> words;
    words.reserve(vocab);
    for (std::size_t i = 0; i < vocab; ++i) words.push_back("w" + std::to_string(i));
    return EmbeddingTable("bench", std::move(words), std::move(m));
}

Eigen::VectorXd make_query(std::size_t dim) {
    Rng rng(2);
    Eigen::VectorXd q(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < q.size(); ++i) q(i) = rng.gaussian();
    return q;
}

}  // namespace

static void BM_NeighborsAbove(benchmark::State& state) {
    const auto vocab = static_cast<std::size_t>(state.range(0));
    const std::size_t dim = 200;
    const auto table = make_table(vocab, dim);
    const auto query = make_query(dim);
    for (auto _ : state) {
        auto neighbors = table.neighbors_above(query, 0.65);
        benchmark::DoNotOptimize(neighbors);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(vocab));
}
BENCHMARK(BM_NeighborsAbove)->Arg(1000)->Arg(10000)->Arg(50000);

static void BM_TopK(benchmark::State& state) {
    const std::size_t dim = 200;
    const auto table = make_table(10000, dim);
    const auto query = make_query(dim);
    const auto k = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto neighbors = table.top_k(query, k);
        benchmark::DoNotOptimize(neighbors);
    }
}
BENCHMARK(BM_TopK)->Arg(1)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
