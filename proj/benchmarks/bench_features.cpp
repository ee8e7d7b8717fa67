#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "lexmap/experiments.hpp"
#include "lexmap/features.hpp"

using namespace lexmap;

namespace {

std::vector<Tweet> bench_tweets(std::size_t count) {
    const PipelineSynthesis params{.filler_vocab = 400, .sentiment_per_polarity = 40,
                                   .latent_dim = 8, .noise = 0.01, .view_condition = 3.0,
                                   .dict_size = 100, .train_tweets = count, .test_tweets = 2};
    return make_pipeline_instance(params, 4).train_tweets;
}

PolarityLexicon bench_lexicon() {
    PolarityLexicon lex("bench");
    for (int i = 0; i < 40; ++i) {
        lex.add("tpos" + std::to_string(i), Polarity::Positive);
        lex.add("tneg" + std::to_string(i), Polarity::Negative);
    }
    return lex;
}

}  // namespace

static void BM_Tokenize(benchmark::State& state) {
    const auto tweets = bench_tweets(256);
    std::size_t i = 0;
    for (auto _ : state) {
        auto tokens = tokenize(tweets[i % tweets.size()].text);
        benchmark::DoNotOptimize(tokens);
        ++i;
    }
}
BENCHMARK(BM_Tokenize);

static void BM_FeaturizeDataset(benchmark::State& state) {
    const auto tweets = bench_tweets(static_cast<std::size_t>(state.range(0)));
    const auto lex = bench_lexicon();
    for (auto _ : state) {
        FeatureIndex index;
        auto data = featurize_dataset(tweets, {&lex}, index, 2, FeaturizeMode::Train);
        benchmark::DoNotOptimize(data);
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_FeaturizeDataset)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
