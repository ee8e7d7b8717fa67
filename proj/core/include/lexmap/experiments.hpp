#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "lexmap/alignment.hpp"
#include "lexmap/embeddings.hpp"
#include "lexmap/evaluation.hpp"
#include "lexmap/features.hpp"
#include "lexmap/lexicon.hpp"
#include "lexmap/rng.hpp"

namespace lexmap {

// ---------------------------------------------------------------------------
// Synthetic data: a shared latent vocabulary rendered into two embedding
// spaces through random linear views plus gaussian noise. Word i in the
// source space translates to word i in the target space by construction,
// which gives every experiment a planted ground truth.
// ---------------------------------------------------------------------------

struct AlignmentSynthesis {
    std::size_t vocab = 1000;
    std::size_t latent_dim = 50;
    std::size_t src_dim = 0;  // 0 -> latent_dim
    std::size_t tgt_dim = 0;
    double noise = 0.01;
    double view_condition = 10.0;
    std::size_t dict_size = 500;
};

struct AlignmentInstance {
    EmbeddingTable src;
    EmbeddingTable tgt;
    BilingualDictionary train_dict;    // rank-ordered; head(n) = "n most frequent"
    BilingualDictionary heldout_dict;  // disjoint from train_dict
};

AlignmentInstance make_alignment_instance(const AlignmentSynthesis& params, uint64_t seed);

// Labeled tweets whose positive/negative labels are driven entirely by
// planted sentiment words; the train and test splits use disjoint halves of
// the sentiment vocabulary so lexicon features are the only way to
// generalize. The bilingual dictionary covers filler words only.
struct PipelineSynthesis {
    std::size_t filler_vocab = 1000;
    std::size_t sentiment_per_polarity = 100;  // first half train-only, second half test-only
    std::size_t latent_dim = 50;
    double noise = 0.01;
    double view_condition = 5.0;
    std::size_t dict_size = 500;
    std::size_t train_tweets = 2000;
    std::size_t test_tweets = 500;
};

struct PipelineInstance {
    EmbeddingTable src;
    EmbeddingTable tgt;
    BilingualDictionary dict;               // filler pairs, rank-ordered
    PolarityLexicon source_lexicon;         // all sentiment words, source language
    BilingualDictionary gold_translations;  // sentiment pairs, the planted truth
    std::vector<Tweet> train_tweets;
    std::vector<Tweet> test_tweets;
};

PipelineInstance make_pipeline_instance(const PipelineSynthesis& params, uint64_t seed);

// Random matrix with singular values spread geometrically over
// [1/condition, 1]; shared by generators and tests.
Eigen::MatrixXd random_conditioned_matrix(std::size_t rows, std::size_t cols, double condition,
                                          Rng& rng);

// ---------------------------------------------------------------------------
// Run configuration and commands
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string command;

    std::string src_emb;
    std::string tgt_emb;
    std::string dict_path;
    std::string heldout_dict_path;
    std::string map_path;
    std::vector<std::string> lexicon_specs;  // "NAME=PATH" or "PATH" (name = file stem)
    std::string train_data;
    std::string test_data;
    std::string gold_translations_path;
    std::string src_lang = "src";
    std::string tgt_lang = "tgt";

    double lambda = 0.65;
    int ngram_max = 2;
    double reg = 1.0;
    int epochs = 50;
    uint64_t seed = 42;
    int cv_folds = 0;
    int k = 1;
    bool case_fold = true;

    std::string out_dir;
    bool force = false;

    int num_seeds = 5;
    std::vector<long> sweep_points;

    bool synthetic = false;
    std::string synth_kind = "alignment";  // "alignment" | "pipeline"
    AlignmentSynthesis align_synth;
    PipelineSynthesis pipeline_synth;

    std::string union_name = "union";

    std::string canonical() const;  // stable key=value dump, input to the run hash
    uint64_t hash() const;
    CaseFold fold() const { return case_fold ? CaseFold::Lower : CaseFold::None; }
};

// out_dir/<command>-<12 hex of config hash>. Refuses to reuse an existing
// directory unless force is set, so nothing is overwritten silently.
std::filesystem::path prepare_run_dir(const RunConfig& config);

std::vector<PolarityLexicon> load_lexicons(const RunConfig& config);

struct SweepPoint {
    long x = 0;
    double score = 0.0;
    double dispersion = 0.0;  // sample standard deviation over seeds
};

struct SweepCurve {
    std::string kind;
    std::string metric;
    uint64_t seed = 0;
    int num_seeds = 0;
    std::vector<SweepPoint> points;
    std::vector<std::pair<long, long>> clamps;  // requested -> clamped

    void serialize(std::ostream& out) const;  // plot-ready TSV with '#' metadata
    static SweepCurve parse(std::istream& in);
    static SweepCurve parse_file(const std::string& path);
};

struct AlignOutcome {
    std::filesystem::path run_dir;
    LinearMap map;
    std::size_t pairs_used = 0;
    std::size_t pairs_skipped = 0;
    double gradient_norm = 0.0;
};

struct TransferOutcome {
    std::filesystem::path run_dir;
    PolarityLexicon lexicon;
    TransferReport report;
};

struct UnionOutcome {
    std::filesystem::path run_dir;
    PolarityLexicon lexicon;
    std::size_t conflicts = 0;
    std::size_t native_overrides = 0;
};

struct FeaturizeOutcome {
    std::filesystem::path run_dir;
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
    std::size_t feature_count = 0;
};

struct TrainEvalRow {
    std::string name;  // "with_lexicons" or "no_lexicon"
    bool cross_validated = false;
    EvaluationReport report;   // test-split scores when not cross-validated
    CrossValReport cv;
};

struct TrainEvalOutcome {
    std::filesystem::path run_dir;
    std::vector<TrainEvalRow> rows;
};

struct SweepOutcome {
    std::filesystem::path run_dir;
    SweepCurve curve;
};

struct GenOutcome {
    std::filesystem::path run_dir;
};

// Fit W on the dictionary and write map + diagnostics.
AlignOutcome cmd_align(const RunConfig& config);

// Project one lexicon through a fitted map and write the induced lexicon
// with provenance plus a transfer report sidecar.
TransferOutcome cmd_transfer(const RunConfig& config);

// Union of the supplied lexicons (conflicting words dropped, native labels
// winning over transferred ones).
UnionOutcome cmd_union(const RunConfig& config);

// Feature matrices + feature index for the supplied datasets.
FeaturizeOutcome cmd_featurize(const RunConfig& config);

// Train/evaluate once with the configured lexicons and once with none (the
// ablation row); cross-validates instead when cv_folds >= 2 and no test
// split is given.
TrainEvalOutcome cmd_train_eval(const RunConfig& config);

// Fit quality as a function of dictionary size. Metric: macro-F through the
// full transfer pipeline when datasets are supplied, precision@k on held-out
// pairs otherwise.
SweepOutcome cmd_sweep_dict(const RunConfig& config);

// Transfer accuracy as a function of how many lexicon words are manually
// translated and used as the training dictionary.
SweepOutcome cmd_sweep_seed_lexicon(const RunConfig& config);

// Write a synthetic workspace (vector files, dictionaries, lexicon, tweet
// datasets) for the configured kind.
GenOutcome cmd_gen_synthetic(const RunConfig& config);

}  // namespace lexmap
