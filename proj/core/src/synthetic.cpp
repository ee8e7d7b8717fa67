#include <Eigen/QR>

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "lexmap/errors.hpp"
#include "lexmap/experiments.hpp"

namespace lexmap {

namespace {

Eigen::MatrixXd gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.gaussian();
    }
    return m;
}

std::string numbered(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%04zu", prefix, i);
    return buf;
}

}  // namespace

Eigen::MatrixXd random_conditioned_matrix(std::size_t rows, std::size_t cols, double condition,
                                          Rng& rng) {
    const std::size_t n = std::min(rows, cols);
    const Eigen::MatrixXd u =
        Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian_matrix(rows, rows, rng))
            .householderQ() *
        Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
    const Eigen::MatrixXd v =
        Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian_matrix(cols, cols, rng))
            .householderQ() *
        Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(cols), static_cast<Eigen::Index>(n));
    Eigen::VectorXd sigma(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
        sigma(static_cast<Eigen::Index>(i)) = std::pow(condition, -t);  // 1 down to 1/condition
    }
    return u * sigma.asDiagonal() * v.transpose();
}

AlignmentInstance make_alignment_instance(const AlignmentSynthesis& params, uint64_t seed) {
    if (params.vocab < 1 || params.latent_dim < 1) {
        throw ContractError("alignment synthesis needs vocab >= 1 and latent_dim >= 1");
    }
    if (params.noise < 0.0 || params.view_condition < 1.0) {
        throw ContractError("alignment synthesis needs noise >= 0 and view_condition >= 1");
    }
    const std::size_t src_dim = params.src_dim ? params.src_dim : params.latent_dim;
    const std::size_t tgt_dim = params.tgt_dim ? params.tgt_dim : params.latent_dim;
    Rng rng(seed);

    const Eigen::MatrixXd latent = gaussian_matrix(params.vocab, params.latent_dim, rng);
    const Eigen::MatrixXd view_src =
        random_conditioned_matrix(src_dim, params.latent_dim, params.view_condition, rng);
    const Eigen::MatrixXd view_tgt =
        random_conditioned_matrix(tgt_dim, params.latent_dim, params.view_condition, rng);

    Eigen::MatrixXd x = latent * view_src.transpose();
    Eigen::MatrixXd y = latent * view_tgt.transpose();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) += params.noise * rng.gaussian();
    }
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        for (Eigen::Index j = 0; j < y.cols(); ++j) y(i, j) += params.noise * rng.gaussian();
    }

    std::vector<std::string> src_vocab, tgt_vocab;
    src_vocab.reserve(params.vocab);
    tgt_vocab.reserve(params.vocab);
    for (std::size_t i = 0; i < params.vocab; ++i) {
        src_vocab.push_back(numbered("sw", i));
        tgt_vocab.push_back(numbered("tw", i));
    }

    std::vector<std::size_t> order(params.vocab);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    const std::size_t n_train = std::min(params.dict_size, params.vocab);

    BilingualDictionary train_dict, heldout_dict;
    for (std::size_t i = 0; i < order.size(); ++i) {
        auto& dict = i < n_train ? train_dict : heldout_dict;
        dict.entries.push_back({src_vocab[order[i]], tgt_vocab[order[i]]});
    }

    return AlignmentInstance{
        EmbeddingTable("src", std::move(src_vocab), std::move(x)),
        EmbeddingTable("tgt", std::move(tgt_vocab), std::move(y)),
        std::move(train_dict),
        std::move(heldout_dict),
    };
}

PipelineInstance make_pipeline_instance(const PipelineSynthesis& params, uint64_t seed) {
    if (params.filler_vocab < 1 || params.sentiment_per_polarity < 2) {
        throw ContractError("pipeline synthesis needs filler_vocab >= 1 and sentiment_per_polarity >= 2");
    }
    const std::size_t n_sent = 2 * params.sentiment_per_polarity;  // positives then negatives
    const std::size_t vocab = params.filler_vocab + n_sent;
    Rng rng(seed);

    AlignmentSynthesis align;
    align.vocab = vocab;
    align.latent_dim = params.latent_dim;
    align.noise = params.noise;
    align.view_condition = params.view_condition;
    align.dict_size = 0;  // dictionaries are built below, over filler words only
    AlignmentInstance spaces = make_alignment_instance(align, rng.next_u64());

    // Rebuild vocab names: filler words first, then sentiment words.
    std::vector<std::string> src_vocab, tgt_vocab;
    src_vocab.reserve(vocab);
    tgt_vocab.reserve(vocab);
    for (std::size_t i = 0; i < params.filler_vocab; ++i) {
        src_vocab.push_back(numbered("sfil", i));
        tgt_vocab.push_back(numbered("tfil", i));
    }
    for (std::size_t i = 0; i < params.sentiment_per_polarity; ++i) {
        src_vocab.push_back(numbered("spos", i));
        tgt_vocab.push_back(numbered("tpos", i));
    }
    for (std::size_t i = 0; i < params.sentiment_per_polarity; ++i) {
        src_vocab.push_back(numbered("sneg", i));
        tgt_vocab.push_back(numbered("tneg", i));
    }
    EmbeddingTable src("src", src_vocab, spaces.src.vectors());
    EmbeddingTable tgt("tgt", tgt_vocab, spaces.tgt.vectors());

    // Frequent-word dictionary: filler pairs in a random rank order.
    std::vector<std::size_t> filler_order(params.filler_vocab);
    std::iota(filler_order.begin(), filler_order.end(), 0);
    rng.shuffle(filler_order);
    BilingualDictionary dict;
    const std::size_t n_dict = std::min(params.dict_size, params.filler_vocab);
    for (std::size_t i = 0; i < n_dict; ++i) {
        dict.entries.push_back({src_vocab[filler_order[i]], tgt_vocab[filler_order[i]]});
    }

    PolarityLexicon source_lexicon("planted");
    BilingualDictionary gold_translations;
    for (std::size_t i = 0; i < n_sent; ++i) {
        const std::size_t idx = params.filler_vocab + i;
        const Polarity polarity =
            i < params.sentiment_per_polarity ? Polarity::Positive : Polarity::Negative;
        source_lexicon.add(src_vocab[idx], polarity);
        gold_translations.entries.push_back({src_vocab[idx], tgt_vocab[idx]});
    }

    // Tweets in the target language. Positive/negative tweets embed 2-4
    // planted sentiment words; neutral tweets carry filler words only. The
    // train split draws from the first half of each polarity's words, the
    // test split from the second half.
    auto make_tweets = [&](std::size_t count, bool test_split, const char* id_prefix) {
        std::vector<Tweet> tweets;
        tweets.reserve(count);
        const std::size_t half = params.sentiment_per_polarity / 2;
        for (std::size_t t = 0; t < count; ++t) {
            const std::size_t cls = rng.uniform_index(3);  // 0 neg, 1 neu, 2 pos
            std::vector<std::string> tokens;
            const std::size_t n_filler = 6 + rng.uniform_index(7);
            for (std::size_t i = 0; i < n_filler; ++i) {
                tokens.push_back(tgt_vocab[rng.uniform_index(params.filler_vocab)]);
            }
            Label label = Label::Neutral;
            if (cls != 1) {
                label = cls == 2 ? Label::Positive : Label::Negative;
                const std::size_t base =
                    params.filler_vocab + (cls == 2 ? 0 : params.sentiment_per_polarity);
                const std::size_t n_sentiment = 2 + rng.uniform_index(3);
                for (std::size_t i = 0; i < n_sentiment; ++i) {
                    const std::size_t pick = test_split ? half + rng.uniform_index(half)
                                                        : rng.uniform_index(half);
                    tokens.push_back(tgt_vocab[base + pick]);
                }
            }
            rng.shuffle(tokens);
            std::string text;
            for (std::size_t i = 0; i < tokens.size(); ++i) {
                if (i > 0) text += ' ';
                text += tokens[i];
            }
            char id[32];
            std::snprintf(id, sizeof(id), "%s%05zu", id_prefix, t);
            tweets.push_back({id, std::move(text), label});
        }
        return tweets;
    };

    std::vector<Tweet> train_tweets = make_tweets(params.train_tweets, false, "tr");
    std::vector<Tweet> test_tweets = make_tweets(params.test_tweets, true, "te");

    return PipelineInstance{
        std::move(src),          std::move(tgt),          std::move(dict),
        std::move(source_lexicon), std::move(gold_translations),
        std::move(train_tweets), std::move(test_tweets),
    };
}

}  // namespace lexmap
