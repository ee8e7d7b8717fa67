// lexmap: translate sentiment polarity lexicons across languages through a
// linear map between word-embedding spaces, and verify the result in a
// 3-class tweet polarity pipeline.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>

#include "lexmap/errors.hpp"
#include "lexmap/experiments.hpp"
#include "lexmap/text.hpp"

namespace {

using lexmap::RunConfig;

void add_common_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--seed", config.seed, "Seed for every random choice in this command");
    cmd->add_option("--out", config.out_dir, "Output directory (a run subdirectory is created inside)");
    cmd->add_flag("--force", config.force, "Reuse an existing run directory");
    cmd->add_flag("!--no-case-fold", config.case_fold,
                  "Disable ASCII lower-casing of words at load time");
}

void add_embedding_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--src-emb", config.src_emb, "Source-language vector file");
    cmd->add_option("--tgt-emb", config.tgt_emb, "Target-language vector file");
    cmd->add_option("--src-lang", config.src_lang, "Source language tag (default src)");
    cmd->add_option("--tgt-lang", config.tgt_lang, "Target language tag (default tgt)");
}

void add_synth_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--synth-vocab", config.align_synth.vocab, "Synthetic latent vocabulary size");
    cmd->add_option("--synth-dim", config.align_synth.latent_dim, "Synthetic latent dimension");
    cmd->add_option("--synth-noise", config.align_synth.noise, "Synthetic view noise sigma");
    cmd->add_option("--synth-condition", config.align_synth.view_condition,
                    "Condition number of the synthetic view matrices");
    cmd->add_option("--synth-dict-size", config.align_synth.dict_size,
                    "Synthetic training-dictionary size");
}

int dispatch(const RunConfig& config) {
    using namespace lexmap;
    if (config.command == "align") {
        const AlignOutcome outcome = cmd_align(config);
        std::cerr << "[align] pairs_used=" << outcome.pairs_used
                  << " pairs_skipped=" << outcome.pairs_skipped
                  << " mean_squared_residual=" << format_real(outcome.map.mean_squared_residual, 6)
                  << '\n';
        std::cout << "run_dir=" << outcome.run_dir.string() << '\n';
    } else if (config.command == "transfer") {
        const TransferOutcome outcome = cmd_transfer(config);
        outcome.report.write_block(std::cerr);
        std::cout << "run_dir=" << outcome.run_dir.string() << '\n';
    } else if (config.command == "union") {
        const UnionOutcome outcome = cmd_union(config);
        std::cerr << "[union] output_size=" << outcome.lexicon.size()
                  << " conflicts_dropped=" << outcome.conflicts
                  << " native_overrides=" << outcome.native_overrides << '\n';
        std::cout << "run_dir=" << outcome.run_dir.string() << '\n';
    } else if (config.command == "featurize") {
        const FeaturizeOutcome outcome = cmd_featurize(config);
        std::cerr << "[featurize] train_rows=" << outcome.train_rows
                  << " test_rows=" << outcome.test_rows
                  << " features=" << outcome.feature_count << '\n';
        std::cout << "run_dir=" << outcome.run_dir.string() << '\n';
    } else if (config.command == "train-eval") {
        const TrainEvalOutcome outcome = cmd_train_eval(config);
        for (const auto& row : outcome.rows) {
            const double score = row.cross_validated ? row.cv.mean_macro_f : row.report.macro_f;
            std::cout << row.name << (row.cross_validated ? " mean_macro_f=" : " macro_f=")
                      << format_real(score, 6) << '\n';
        }
        std::cout << "run_dir=" << outcome.run_dir.string() << '\n';
    } else if (config.command == "sweep-dict") {
        const SweepOutcome outcome = cmd_sweep_dict(config);
        for (const auto& point : outcome.curve.points) {
            std::cout << point.x << '\t' << format_real(point.score, 6) << '\t'
                      << format_real(point.dispersion, 6) << '\n';
        }
        std::cout << "run_dir=" << outcome.run_dir.string() << '\n';
    } else if (config.command == "sweep-seed-lexicon") {
        const SweepOutcome outcome = cmd_sweep_seed_lexicon(config);
        for (const auto& point : outcome.curve.points) {
            std::cout << point.x << '\t' << format_real(point.score, 6) << '\t'
                      << format_real(point.dispersion, 6) << '\n';
        }
        std::cout << "run_dir=" << outcome.run_dir.string() << '\n';
    } else if (config.command == "gen-synthetic") {
        const GenOutcome outcome = cmd_gen_synthetic(config);
        std::cout << "run_dir=" << outcome.run_dir.string() << '\n';
    } else {
        throw lexmap::ContractError("unknown command: " + config.command);
    }
    return lexmap::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cross-lingual sentiment lexicon transfer through aligned word embeddings"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a key-value file (flags override it)");

    RunConfig config;

    auto* align = app.add_subcommand("align", "Fit the linear map W from a bilingual dictionary");
    add_embedding_options(align, config);
    align->add_option("--dict", config.dict_path, "Bilingual dictionary (source<TAB>target)")
        ->required();
    add_common_options(align, config);

    auto* transfer =
        app.add_subcommand("transfer", "Project a polarity lexicon into the target language");
    add_embedding_options(transfer, config);
    transfer->add_option("--map", config.map_path, "Fitted linear-map file")->required();
    transfer->add_option("--lexicon", config.lexicon_specs,
                         "Source polarity lexicon (NAME=PATH or PATH)");
    transfer->add_option("--lambda", config.lambda, "Cosine threshold (default 0.65)");
    add_common_options(transfer, config);

    auto* union_cmd = app.add_subcommand("union", "Combine lexicons by set union");
    union_cmd->add_option("--lexicon", config.lexicon_specs, "Input lexicon (repeatable)");
    union_cmd->add_option("--name", config.union_name, "Name of the union lexicon");
    add_common_options(union_cmd, config);

    auto* featurize = app.add_subcommand("featurize", "Extract sparse feature matrices from tweets");
    featurize->add_option("--train-data", config.train_data, "Training tweets TSV")->required();
    featurize->add_option("--test-data", config.test_data, "Test tweets TSV (featurized frozen)");
    featurize->add_option("--lexicon", config.lexicon_specs, "Polarity lexicon (repeatable)");
    featurize->add_option("--ngram-max", config.ngram_max, "Maximum word n-gram order (default 2)");
    add_common_options(featurize, config);

    auto* train_eval = app.add_subcommand(
        "train-eval", "Train the classifier and report macro-F, with and without lexicons");
    train_eval->add_option("--train-data", config.train_data, "Training tweets TSV")->required();
    train_eval->add_option("--test-data", config.test_data, "Test tweets TSV");
    train_eval->add_option("--cv-folds", config.cv_folds,
                           "Cross-validate on the training set instead of using --test-data");
    train_eval->add_option("--lexicon", config.lexicon_specs, "Polarity lexicon (repeatable)");
    train_eval->add_option("--ngram-max", config.ngram_max, "Maximum word n-gram order (default 2)");
    train_eval->add_option("--reg", config.reg, "L2 regularization strength (default 1.0)");
    train_eval->add_option("--epochs", config.epochs, "Training epochs (default 50)");
    add_common_options(train_eval, config);

    auto* sweep_dict =
        app.add_subcommand("sweep-dict", "Fit quality as a function of dictionary size");
    add_embedding_options(sweep_dict, config);
    sweep_dict->add_option("--sizes", config.sweep_points, "Dictionary sizes (strictly increasing)")
        ->required()
        ->delimiter(',');
    sweep_dict->add_option("--dict", config.dict_path, "Rank-ordered bilingual dictionary");
    sweep_dict->add_option("--heldout-dict", config.heldout_dict_path,
                           "Held-out pairs for precision@k");
    sweep_dict->add_option("--train-data", config.train_data, "Training tweets (macro-F mode)");
    sweep_dict->add_option("--test-data", config.test_data, "Test tweets (macro-F mode)");
    sweep_dict->add_option("--lexicon", config.lexicon_specs, "Source lexicon (macro-F mode)");
    sweep_dict->add_option("--lambda", config.lambda, "Cosine threshold (default 0.65)");
    sweep_dict->add_option("--ngram-max", config.ngram_max, "Maximum word n-gram order");
    sweep_dict->add_option("--reg", config.reg, "L2 regularization strength");
    sweep_dict->add_option("--epochs", config.epochs, "Training epochs");
    sweep_dict->add_option("--k", config.k, "Neighborhood size for precision@k (default 1)");
    sweep_dict->add_option("--num-seeds", config.num_seeds, "Seeds per sweep point (default 5)");
    sweep_dict->add_flag("--synthetic", config.synthetic, "Generate data instead of reading files");
    add_synth_options(sweep_dict, config);
    add_common_options(sweep_dict, config);

    auto* sweep_seed = app.add_subcommand(
        "sweep-seed-lexicon", "Transfer accuracy as a function of manually translated lexicon words");
    add_embedding_options(sweep_seed, config);
    sweep_seed->add_option("--counts", config.sweep_points, "Translated-word counts (strictly increasing)")
        ->required()
        ->delimiter(',');
    sweep_seed->add_option("--gold-translations", config.gold_translations_path,
                           "Gold in-lexicon translation list (source<TAB>target)");
    sweep_seed->add_option("--k", config.k, "Neighborhood size for accuracy@k (default 1)");
    sweep_seed->add_option("--num-seeds", config.num_seeds, "Seeds per sweep point (default 5)");
    sweep_seed->add_flag("--synthetic", config.synthetic, "Generate data instead of reading files");
    add_synth_options(sweep_seed, config);
    add_common_options(sweep_seed, config);

    auto* gen = app.add_subcommand("gen-synthetic", "Write a synthetic workspace");
    gen->add_option("--kind", config.synth_kind, "alignment | pipeline")->required();
    add_synth_options(gen, config);
    gen->add_option("--synth-filler", config.pipeline_synth.filler_vocab,
                    "Pipeline: filler vocabulary size");
    gen->add_option("--synth-sentiment", config.pipeline_synth.sentiment_per_polarity,
                    "Pipeline: sentiment words per polarity");
    gen->add_option("--synth-train-tweets", config.pipeline_synth.train_tweets,
                    "Pipeline: training tweets");
    gen->add_option("--synth-test-tweets", config.pipeline_synth.test_tweets,
                    "Pipeline: test tweets");
    add_common_options(gen, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? lexmap::kExitOk : lexmap::kExitContract;
    }

    CLI::App* sub = app.get_subcommands().front();
    config.command = sub->get_name();

    // Pipeline synthesis shares the latent geometry options when given.
    auto given = [&](const char* name) {
        const CLI::Option* opt = sub->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--synth-dim")) config.pipeline_synth.latent_dim = config.align_synth.latent_dim;
    if (given("--synth-noise")) config.pipeline_synth.noise = config.align_synth.noise;
    if (given("--synth-dict-size")) config.pipeline_synth.dict_size = config.align_synth.dict_size;
    if (given("--synth-condition")) {
        config.pipeline_synth.view_condition = config.align_synth.view_condition;
    }

    try {
        return dispatch(config);
    } catch (const lexmap::ParseError& e) {
        std::cerr << "error (data): " << e.what() << '\n';
        return lexmap::kExitData;
    } catch (const lexmap::IoError& e) {
        std::cerr << "error (io): " << e.what() << '\n';
        return lexmap::kExitData;
    } catch (const lexmap::NumericError& e) {
        std::cerr << "error (numeric): " << e.what() << '\n';
        return lexmap::kExitNumeric;
    } catch (const lexmap::ContractError& e) {
        std::cerr << "error (config): " << e.what() << '\n';
        return lexmap::kExitContract;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lexmap::kExitContract;
    }
}
