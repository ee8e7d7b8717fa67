#include "lexmap/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "lexmap/errors.hpp"

namespace lexmap {

namespace fs = std::filesystem;

namespace {

std::string lexicon_name_of(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq != std::string::npos && eq > 0) return spec.substr(0, eq);
    return fs::path(spec).stem().string();
}

std::string lexicon_path_of(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq != std::string::npos && eq > 0) return spec.substr(eq + 1);
    return spec;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ContractError(what);
}

void require_file(const std::string& path, const std::string& flag) {
    require(!path.empty(), "missing required option " + flag);
    if (!fs::exists(path)) throw ContractError(flag + ": path not resolvable: " + path);
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

void write_kv_line(std::ostream& out, const char* key, const std::string& value) {
    out << key << '=' << value << '\n';
}

// Validates requested sweep sizes and clamps them to the available budget.
// Requested values must be positive and strictly increasing; values clamped
// onto an already-present x are dropped.
std::vector<std::pair<long, long>> clamp_sizes(const std::vector<long>& requested, long available,
                                               std::vector<long>& kept,
                                               std::vector<std::pair<long, long>>& clamps) {
    require(!requested.empty(), "sweep needs at least one size");
    long prev = 0;
    for (const long x : requested) {
        require(x > 0, "sweep sizes must be positive (cannot fit on zero pairs)");
        require(x > prev, "sweep sizes must be strictly increasing");
        prev = x;
    }
    std::vector<std::pair<long, long>> pairs;  // (clamped, requested)
    for (const long x : requested) {
        const long clamped = std::min(x, available);
        if (clamped != x) clamps.emplace_back(x, clamped);
        if (!kept.empty() && kept.back() == clamped) continue;  // duplicate after clamping
        kept.push_back(clamped);
        pairs.emplace_back(clamped, x);
    }
    return pairs;
}

double sample_stdev(const std::vector<double>& values, double mean) {
    if (values.size() < 2) return 0.0;
    double var = 0.0;
    for (const double v : values) var += (v - mean) * (v - mean);
    return std::sqrt(var / static_cast<double>(values.size() - 1));
}

}  // namespace

std::string RunConfig::canonical() const {
    std::ostringstream out;
    out << "command=" << command << '\n'
        << "src_emb=" << src_emb << '\n'
        << "tgt_emb=" << tgt_emb << '\n'
        << "dict=" << dict_path << '\n'
        << "heldout_dict=" << heldout_dict_path << '\n'
        << "map=" << map_path << '\n';
    for (const auto& spec : lexicon_specs) out << "lexicon=" << spec << '\n';
    out << "train_data=" << train_data << '\n'
        << "test_data=" << test_data << '\n'
        << "gold_translations=" << gold_translations_path << '\n'
        << "src_lang=" << src_lang << '\n'
        << "tgt_lang=" << tgt_lang << '\n'
        << "lambda=" << format_real(lambda, 17) << '\n'
        << "ngram_max=" << ngram_max << '\n'
        << "reg=" << format_real(reg, 17) << '\n'
        << "epochs=" << epochs << '\n'
        << "seed=" << seed << '\n'
        << "cv_folds=" << cv_folds << '\n'
        << "k=" << k << '\n'
        << "case_fold=" << (case_fold ? 1 : 0) << '\n'
        << "num_seeds=" << num_seeds << '\n';
    out << "sweep_points=";
    for (std::size_t i = 0; i < sweep_points.size(); ++i) {
        if (i > 0) out << ',';
        out << sweep_points[i];
    }
    out << '\n';
    out << "synthetic=" << (synthetic ? 1 : 0) << '\n' << "synth_kind=" << synth_kind << '\n';
    out << "align_synth=" << align_synth.vocab << ',' << align_synth.latent_dim << ','
        << align_synth.src_dim << ',' << align_synth.tgt_dim << ','
        << format_real(align_synth.noise, 17) << ',' << format_real(align_synth.view_condition, 17)
        << ',' << align_synth.dict_size << '\n';
    out << "pipeline_synth=" << pipeline_synth.filler_vocab << ','
        << pipeline_synth.sentiment_per_polarity << ',' << pipeline_synth.latent_dim << ','
        << format_real(pipeline_synth.noise, 17) << ','
        << format_real(pipeline_synth.view_condition, 17) << ',' << pipeline_synth.dict_size << ','
        << pipeline_synth.train_tweets << ',' << pipeline_synth.test_tweets << '\n';
    out << "union_name=" << union_name << '\n';
    return out.str();
}

uint64_t RunConfig::hash() const { return fnv1a64(canonical()); }

std::filesystem::path prepare_run_dir(const RunConfig& config) {
    require(!config.out_dir.empty(), "missing required option --out");
    const std::string tag = config.command + "-" + hex64(config.hash()).substr(4);
    const fs::path run_dir = fs::path(config.out_dir) / tag;
    if (fs::exists(run_dir) && !config.force) {
        throw ContractError("run directory already exists (use --force to reuse): " +
                            run_dir.string());
    }
    fs::create_directories(run_dir);
    auto config_file = open_out(run_dir / "config.txt");
    config_file << config.canonical();
    return run_dir;
}

std::vector<PolarityLexicon> load_lexicons(const RunConfig& config) {
    std::vector<PolarityLexicon> lexicons;
    std::set<std::string> names;
    for (const auto& spec : config.lexicon_specs) {
        const std::string name = lexicon_name_of(spec);
        const std::string path = lexicon_path_of(spec);
        require_file(path, "--lexicon");
        if (!names.insert(name).second) {
            throw ContractError("duplicate lexicon name \"" + name + "\"; use NAME=PATH to rename");
        }
        lexicons.push_back(PolarityLexicon::parse_file(path, name, config.fold()));
    }
    return lexicons;
}

// ---------------------------------------------------------------------------
// Sweep curve files
// ---------------------------------------------------------------------------

void SweepCurve::serialize(std::ostream& out) const {
    out << "# lexmap sweep curve\n";
    out << "# kind=" << kind << " metric=" << metric << " seed=" << seed
        << " seeds=" << num_seeds << '\n';
    for (const auto& [requested, clamped] : clamps) {
        out << "# clamped: " << requested << " -> " << clamped << '\n';
    }
    out << "x\tscore\tdispersion\n";
    for (const auto& point : points) {
        out << point.x << '\t' << format_real(point.score, 17) << '\t'
            << format_real(point.dispersion, 17) << '\n';
    }
}

SweepCurve SweepCurve::parse(std::istream& in) {
    SweepCurve curve;
    std::string raw;
    bool header_seen = false;
    long line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = strip_cr(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto fields = split_ws(line.substr(1));
            for (const auto& field : fields) {
                const auto kv = split_char(field, '=');
                if (kv.size() != 2) continue;
                if (kv[0] == "kind") curve.kind = std::string(kv[1]);
                else if (kv[0] == "metric") curve.metric = std::string(kv[1]);
                else if (kv[0] == "seed") curve.seed = static_cast<uint64_t>(parse_int(kv[1]).value_or(0));
                else if (kv[0] == "seeds") curve.num_seeds = static_cast<int>(parse_int(kv[1]).value_or(0));
            }
            continue;
        }
        if (!header_seen) {
            if (line != "x\tscore\tdispersion") {
                throw ParseError("malformed sweep-curve header at line " + std::to_string(line_no),
                                 line_no);
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_char(line, '\t');
        const auto x = fields.size() == 3 ? parse_int(fields[0]) : std::nullopt;
        const auto score = fields.size() == 3 ? parse_real(fields[1]) : std::nullopt;
        const auto dispersion = fields.size() == 3 ? parse_real(fields[2]) : std::nullopt;
        if (!x || !score || !dispersion) {
            throw ParseError("malformed sweep-curve row at line " + std::to_string(line_no), line_no);
        }
        curve.points.push_back({static_cast<long>(*x), *score, *dispersion});
    }
    if (!header_seen) throw ParseError("sweep-curve file has no header row");
    return curve;
}

SweepCurve SweepCurve::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open sweep-curve file: " + path);
    return parse(in);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

AlignOutcome cmd_align(const RunConfig& config) {
    require_file(config.src_emb, "--src-emb");
    require_file(config.tgt_emb, "--tgt-emb");
    require_file(config.dict_path, "--dict");
    const fs::path run_dir = prepare_run_dir(config);

    const EmbeddingTable src = EmbeddingTable::parse_file(config.src_emb, config.src_lang, config.fold());
    const EmbeddingTable tgt = EmbeddingTable::parse_file(config.tgt_emb, config.tgt_lang, config.fold());
    const BilingualDictionary dict = BilingualDictionary::parse_file(config.dict_path, config.fold());

    const PairSet pairs = build_pairs(dict, src, tgt);
    const LinearMap map = fit_linear_map(pairs);

    AlignOutcome outcome{run_dir, map, pairs.size(), pairs.skipped,
                         residual_gradient_norm(map, pairs)};

    auto map_file = open_out(run_dir / "map.txt");
    map.serialize(map_file);

    auto report = open_out(run_dir / "align_report.txt");
    write_kv_line(report, "pairs_used", std::to_string(outcome.pairs_used));
    write_kv_line(report, "pairs_skipped_oov", std::to_string(outcome.pairs_skipped));
    write_kv_line(report, "dict_duplicates_skipped", std::to_string(dict.duplicate_pairs_skipped));
    write_kv_line(report, "d_src", std::to_string(map.d_src()));
    write_kv_line(report, "d_tgt", std::to_string(map.d_tgt()));
    write_kv_line(report, "solver", map.solver_tag);
    write_kv_line(report, "mean_squared_residual", format_real(map.mean_squared_residual, 17));
    write_kv_line(report, "residual_gradient_norm", format_real(outcome.gradient_norm, 17));
    return outcome;
}

TransferOutcome cmd_transfer(const RunConfig& config) {
    require_file(config.map_path, "--map");
    require_file(config.src_emb, "--src-emb");
    require_file(config.tgt_emb, "--tgt-emb");
    require(config.lexicon_specs.size() == 1, "transfer needs exactly one --lexicon");
    const fs::path run_dir = prepare_run_dir(config);

    const LinearMap map = LinearMap::parse_file(config.map_path);
    const EmbeddingTable src = EmbeddingTable::parse_file(config.src_emb, config.src_lang, config.fold());
    const EmbeddingTable tgt = EmbeddingTable::parse_file(config.tgt_emb, config.tgt_lang, config.fold());
    const PolarityLexicon lexicon = load_lexicons(config).front();

    TransferResult result = transfer_lexicon(lexicon, map, src, tgt, config.lambda);

    auto lex_file = open_out(run_dir / "transferred.lex");
    result.lexicon.serialize(lex_file);
    auto report_file = open_out(run_dir / "transfer_report.txt");
    result.report.write_kv(report_file);
    return TransferOutcome{run_dir, std::move(result.lexicon), result.report};
}

UnionOutcome cmd_union(const RunConfig& config) {
    require(config.lexicon_specs.size() >= 2, "union needs at least two --lexicon inputs");
    const fs::path run_dir = prepare_run_dir(config);

    const std::vector<PolarityLexicon> lexicons = load_lexicons(config);
    std::vector<const PolarityLexicon*> pointers;
    pointers.reserve(lexicons.size());
    for (const auto& lexicon : lexicons) pointers.push_back(&lexicon);
    UnionResult result = union_many(pointers, config.union_name);

    auto lex_file = open_out(run_dir / "union.lex");
    result.lexicon.serialize(lex_file);
    const LexiconStats stats = lexicon_stats(result.lexicon);
    auto report = open_out(run_dir / "union_report.txt");
    write_kv_line(report, "inputs", std::to_string(lexicons.size()));
    write_kv_line(report, "output_size", std::to_string(result.lexicon.size()));
    write_kv_line(report, "positive", std::to_string(stats.positive_count));
    write_kv_line(report, "negative", std::to_string(stats.negative_count));
    write_kv_line(report, "conflicts_dropped", std::to_string(result.conflicts));
    write_kv_line(report, "native_overrides", std::to_string(result.native_overrides));
    return UnionOutcome{run_dir, std::move(result.lexicon), result.conflicts,
                        result.native_overrides};
}

namespace {

std::vector<const PolarityLexicon*> pointers_of(const std::vector<PolarityLexicon>& lexicons) {
    std::vector<const PolarityLexicon*> out;
    out.reserve(lexicons.size());
    for (const auto& lexicon : lexicons) out.push_back(&lexicon);
    return out;
}

}  // namespace

FeaturizeOutcome cmd_featurize(const RunConfig& config) {
    require_file(config.train_data, "--train-data");
    const fs::path run_dir = prepare_run_dir(config);

    const std::vector<PolarityLexicon> lexicons = load_lexicons(config);
    const auto lexicon_ptrs = pointers_of(lexicons);

    FeatureIndex index;
    const auto train_tweets = parse_dataset_file(config.train_data);
    const LabeledDataset train =
        featurize_dataset(train_tweets, lexicon_ptrs, index, config.ngram_max, FeaturizeMode::Train);
    auto train_file = open_out(run_dir / "features_train.txt");
    serialize_feature_matrix(train, train_file);

    FeaturizeOutcome outcome{run_dir, train.size(), 0, index.size()};
    if (!config.test_data.empty()) {
        require_file(config.test_data, "--test-data");
        const auto test_tweets = parse_dataset_file(config.test_data);
        const LabeledDataset test = featurize_dataset(test_tweets, lexicon_ptrs, index,
                                                      config.ngram_max, FeaturizeMode::Frozen);
        auto test_file = open_out(run_dir / "features_test.txt");
        serialize_feature_matrix(test, test_file);
        outcome.test_rows = test.size();
    }

    auto index_file = open_out(run_dir / "feature_index.txt");
    index.serialize(index_file);
    outcome.feature_count = index.size();
    return outcome;
}

namespace {

TrainEvalRow run_train_eval_row(const RunConfig& config, const std::string& row_name,
                                const std::vector<const PolarityLexicon*>& lexicons,
                                const std::vector<Tweet>& train_tweets,
                                const std::vector<Tweet>& test_tweets, const fs::path& run_dir) {
    TrainOptions options{config.reg, config.epochs, config.seed};
    FeatureIndex index;
    const LabeledDataset train_set =
        featurize_dataset(train_tweets, lexicons, index, config.ngram_max, FeaturizeMode::Train);

    TrainEvalRow row;
    row.name = row_name;
    if (test_tweets.empty()) {
        row.cross_validated = true;
        row.cv = cross_validate(train_set, config.cv_folds, options);
        auto kv = open_out(run_dir / ("cv_report_" + row_name + ".kv"));
        row.cv.write_kv(kv);
    } else {
        const LinearModel model = train(train_set, options);
        const LabeledDataset test_set =
            featurize_dataset(test_tweets, lexicons, index, config.ngram_max, FeaturizeMode::Frozen);
        std::vector<Label> gold;
        gold.reserve(test_set.size());
        for (const auto& label : test_set.labels) {
            if (!label) throw ContractError("test dataset must be labeled for evaluation");
            gold.push_back(*label);
        }
        row.report = macro_f(gold, predict_all(model, test_set));

        auto table = open_out(run_dir / ("report_" + row_name + ".txt"));
        row.report.write_table(table);
        auto kv = open_out(run_dir / ("report_" + row_name + ".kv"));
        row.report.write_kv(kv);
        auto model_file = open_out(run_dir / ("model_" + row_name + ".txt"));
        model.serialize(model_file);
        auto index_file = open_out(run_dir / ("feature_index_" + row_name + ".txt"));
        index.serialize(index_file);
    }
    return row;
}

}  // namespace

TrainEvalOutcome cmd_train_eval(const RunConfig& config) {
    require_file(config.train_data, "--train-data");
    const bool cv_mode = config.test_data.empty();
    if (cv_mode) {
        require(config.cv_folds >= 2, "train-eval needs --test-data or --cv-folds >= 2");
    } else {
        require_file(config.test_data, "--test-data");
    }
    const fs::path run_dir = prepare_run_dir(config);

    const auto train_tweets = parse_dataset_file(config.train_data);
    const std::vector<Tweet> test_tweets =
        cv_mode ? std::vector<Tweet>{} : parse_dataset_file(config.test_data);

    const std::vector<PolarityLexicon> lexicons = load_lexicons(config);

    TrainEvalOutcome outcome{run_dir, {}};
    if (!lexicons.empty()) {
        outcome.rows.push_back(run_train_eval_row(config, "with_lexicons", pointers_of(lexicons),
                                                  train_tweets, test_tweets, run_dir));
    }
    outcome.rows.push_back(
        run_train_eval_row(config, "no_lexicon", {}, train_tweets, test_tweets, run_dir));

    auto summary = open_out(run_dir / "summary.txt");
    for (const auto& row : outcome.rows) {
        const double score = row.cross_validated ? row.cv.mean_macro_f : row.report.macro_f;
        summary << row.name << (row.cross_validated ? " mean_macro_f=" : " macro_f=")
                << format_real(score, 17) << '\n';
    }
    return outcome;
}

namespace {

SweepOutcome finish_sweep(SweepCurve curve, const fs::path& run_dir) {
    auto curve_file = open_out(run_dir / "curve.tsv");
    curve.serialize(curve_file);
    return SweepOutcome{run_dir, std::move(curve)};
}

// Macro-F of a full align -> transfer -> train-eval pass with the map fitted
// on the given dictionary head.
double pipeline_macro_f(const BilingualDictionary& dict_head, const EmbeddingTable& src,
                        const EmbeddingTable& tgt, const std::vector<PolarityLexicon>& lexicons,
                        const std::vector<Tweet>& train_tweets,
                        const std::vector<Tweet>& test_tweets, const RunConfig& config,
                        uint64_t classifier_seed) {
    const LinearMap map = fit_linear_map(build_pairs(dict_head, src, tgt));
    std::vector<PolarityLexicon> transferred;
    transferred.reserve(lexicons.size());
    for (const auto& lexicon : lexicons) {
        transferred.push_back(transfer_lexicon(lexicon, map, src, tgt, config.lambda).lexicon);
    }

    FeatureIndex index;
    const auto lexicon_ptrs = pointers_of(transferred);
    const LabeledDataset train_set = featurize_dataset(train_tweets, lexicon_ptrs, index,
                                                       config.ngram_max, FeaturizeMode::Train);
    TrainOptions options{config.reg, config.epochs, classifier_seed};
    const LinearModel model = train(train_set, options);
    const LabeledDataset test_set = featurize_dataset(test_tweets, lexicon_ptrs, index,
                                                      config.ngram_max, FeaturizeMode::Frozen);
    std::vector<Label> gold;
    gold.reserve(test_set.size());
    for (const auto& label : test_set.labels) gold.push_back(*label);
    return macro_f(gold, predict_all(model, test_set)).macro_f;
}

}  // namespace

SweepOutcome cmd_sweep_dict(const RunConfig& config) {
    require(config.num_seeds >= 1, "--num-seeds must be at least 1");
    const fs::path run_dir = prepare_run_dir(config);

    SweepCurve curve;
    curve.kind = "dict";
    curve.seed = config.seed;
    curve.num_seeds = config.num_seeds;

    if (config.synthetic) {
        curve.metric = "precision_at_" + std::to_string(config.k);
        const long available = static_cast<long>(
            std::min(config.align_synth.dict_size, config.align_synth.vocab));
        std::vector<long> kept;
        const auto sizes = clamp_sizes(config.sweep_points, available, kept, curve.clamps);

        std::vector<std::vector<double>> scores(sizes.size());
        for (int s = 0; s < config.num_seeds; ++s) {
            const AlignmentInstance instance =
                make_alignment_instance(config.align_synth, config.seed + static_cast<uint64_t>(s));
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                const auto head = instance.train_dict.head(static_cast<std::size_t>(sizes[i].first));
                const LinearMap map = fit_linear_map(build_pairs(head, instance.src, instance.tgt));
                scores[i].push_back(precision_at_k(map, instance.heldout_dict, instance.src,
                                                   instance.tgt, static_cast<std::size_t>(config.k))
                                        .value);
            }
        }
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            double sum = 0.0;
            for (const double v : scores[i]) sum += v;
            const double mean = sum / static_cast<double>(scores[i].size());
            curve.points.push_back({sizes[i].first, mean, sample_stdev(scores[i], mean)});
        }
        return finish_sweep(std::move(curve), run_dir);
    }

    require_file(config.src_emb, "--src-emb");
    require_file(config.tgt_emb, "--tgt-emb");
    require_file(config.dict_path, "--dict");
    const EmbeddingTable src = EmbeddingTable::parse_file(config.src_emb, config.src_lang, config.fold());
    const EmbeddingTable tgt = EmbeddingTable::parse_file(config.tgt_emb, config.tgt_lang, config.fold());
    const BilingualDictionary dict = BilingualDictionary::parse_file(config.dict_path, config.fold());

    std::vector<long> kept;
    const auto sizes = clamp_sizes(config.sweep_points, static_cast<long>(dict.size()), kept,
                                   curve.clamps);

    const bool macro_f_mode = !config.train_data.empty();
    std::vector<std::vector<double>> scores(sizes.size());
    if (macro_f_mode) {
        curve.metric = "macro_f";
        require_file(config.train_data, "--train-data");
        require_file(config.test_data, "--test-data");
        const std::vector<PolarityLexicon> lexicons = load_lexicons(config);
        require(!lexicons.empty(), "macro-F sweep needs at least one --lexicon");
        const auto train_tweets = parse_dataset_file(config.train_data);
        const auto test_tweets = parse_dataset_file(config.test_data);
        for (int s = 0; s < config.num_seeds; ++s) {
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                scores[i].push_back(pipeline_macro_f(
                    dict.head(static_cast<std::size_t>(sizes[i].first)), src, tgt, lexicons,
                    train_tweets, test_tweets, config, config.seed + static_cast<uint64_t>(s)));
            }
        }
    } else {
        curve.metric = "precision_at_" + std::to_string(config.k);
        require_file(config.heldout_dict_path, "--heldout-dict");
        const BilingualDictionary heldout =
            BilingualDictionary::parse_file(config.heldout_dict_path, config.fold());
        for (int s = 0; s < config.num_seeds; ++s) {
            for (std::size_t i = 0; i < sizes.size(); ++i) {
                const LinearMap map =
                    fit_linear_map(build_pairs(dict.head(static_cast<std::size_t>(sizes[i].first)), src, tgt));
                scores[i].push_back(
                    precision_at_k(map, heldout, src, tgt, static_cast<std::size_t>(config.k)).value);
            }
        }
    }
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        double sum = 0.0;
        for (const double v : scores[i]) sum += v;
        const double mean = sum / static_cast<double>(scores[i].size());
        curve.points.push_back({sizes[i].first, mean, sample_stdev(scores[i], mean)});
    }
    return finish_sweep(std::move(curve), run_dir);
}

namespace {

// One seed-lexicon sweep evaluation: fit on `count` shuffled gold pairs,
// then measure precision@k of the remaining gold pairs.
double seed_lexicon_accuracy(const BilingualDictionary& gold, const EmbeddingTable& src,
                             const EmbeddingTable& tgt, std::size_t count, std::size_t k,
                             uint64_t seed) {
    std::vector<std::size_t> order(gold.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    BilingualDictionary train_dict, rest;
    for (std::size_t i = 0; i < order.size(); ++i) {
        (i < count ? train_dict : rest).entries.push_back(gold.entries[order[i]]);
    }
    if (rest.entries.empty()) {
        throw ContractError("seed-lexicon sweep: no gold pairs left to evaluate after training split");
    }
    const LinearMap map = fit_linear_map(build_pairs(train_dict, src, tgt));
    return precision_at_k(map, rest, src, tgt, k).value;
}

}  // namespace

SweepOutcome cmd_sweep_seed_lexicon(const RunConfig& config) {
    require(config.num_seeds >= 1, "--num-seeds must be at least 1");
    const fs::path run_dir = prepare_run_dir(config);

    SweepCurve curve;
    curve.kind = "seed-lexicon";
    curve.metric = "transfer_accuracy_at_" + std::to_string(config.k);
    curve.seed = config.seed;
    curve.num_seeds = config.num_seeds;

    std::optional<AlignmentSynthesis> synth;
    EmbeddingTable const* src = nullptr;
    EmbeddingTable const* tgt = nullptr;
    BilingualDictionary gold;
    std::optional<EmbeddingTable> src_storage, tgt_storage;

    if (!config.synthetic) {
        require_file(config.src_emb, "--src-emb");
        require_file(config.tgt_emb, "--tgt-emb");
        require_file(config.gold_translations_path, "--gold-translations");
        src_storage = EmbeddingTable::parse_file(config.src_emb, config.src_lang, config.fold());
        tgt_storage = EmbeddingTable::parse_file(config.tgt_emb, config.tgt_lang, config.fold());
        gold = BilingualDictionary::parse_file(config.gold_translations_path, config.fold());
        src = &*src_storage;
        tgt = &*tgt_storage;
        require(gold.size() >= 2, "--gold-translations needs at least two pairs");
    } else {
        synth = config.align_synth;
    }

    // Leave at least one pair for evaluation.
    const long available = config.synthetic ? static_cast<long>(config.align_synth.vocab) - 1
                                            : static_cast<long>(gold.size()) - 1;
    require(available >= 1, "not enough gold pairs to sweep");
    std::vector<long> kept;
    const auto counts = clamp_sizes(config.sweep_points, available, kept, curve.clamps);

    std::vector<std::vector<double>> scores(counts.size());
    for (int s = 0; s < config.num_seeds; ++s) {
        const uint64_t run_seed = config.seed + static_cast<uint64_t>(s);
        std::optional<AlignmentInstance> instance;
        if (synth) {
            instance = make_alignment_instance(*synth, run_seed);
            // All planted pairs act as the gold in-lexicon translation list.
            gold.entries.clear();
            for (const auto& entry : instance->train_dict.entries) gold.entries.push_back(entry);
            for (const auto& entry : instance->heldout_dict.entries) gold.entries.push_back(entry);
            src = &instance->src;
            tgt = &instance->tgt;
        }
        for (std::size_t i = 0; i < counts.size(); ++i) {
            scores[i].push_back(seed_lexicon_accuracy(gold, *src, *tgt,
                                                      static_cast<std::size_t>(counts[i].first),
                                                      static_cast<std::size_t>(config.k),
                                                      run_seed * 1000003 + static_cast<uint64_t>(i)));
        }
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
        double sum = 0.0;
        for (const double v : scores[i]) sum += v;
        const double mean = sum / static_cast<double>(scores[i].size());
        curve.points.push_back({counts[i].first, mean, sample_stdev(scores[i], mean)});
    }
    return finish_sweep(std::move(curve), run_dir);
}

GenOutcome cmd_gen_synthetic(const RunConfig& config) {
    require(config.synth_kind == "alignment" || config.synth_kind == "pipeline",
            "--kind must be \"alignment\" or \"pipeline\"");
    const fs::path run_dir = prepare_run_dir(config);

    if (config.synth_kind == "alignment") {
        const AlignmentInstance instance = make_alignment_instance(config.align_synth, config.seed);
        auto src_file = open_out(run_dir / "src.vec");
        instance.src.serialize(src_file);
        auto tgt_file = open_out(run_dir / "tgt.vec");
        instance.tgt.serialize(tgt_file);
        auto train_file = open_out(run_dir / "train.dict");
        instance.train_dict.serialize(train_file);
        auto heldout_file = open_out(run_dir / "heldout.dict");
        instance.heldout_dict.serialize(heldout_file);
    } else {
        const PipelineInstance instance = make_pipeline_instance(config.pipeline_synth, config.seed);
        auto src_file = open_out(run_dir / "src.vec");
        instance.src.serialize(src_file);
        auto tgt_file = open_out(run_dir / "tgt.vec");
        instance.tgt.serialize(tgt_file);
        auto dict_file = open_out(run_dir / "train.dict");
        instance.dict.serialize(dict_file);
        auto lexicon_file = open_out(run_dir / "lexicon.tsv");
        instance.source_lexicon.serialize(lexicon_file);
        auto gold_file = open_out(run_dir / "gold.dict");
        instance.gold_translations.serialize(gold_file);
        auto train_file = open_out(run_dir / "tweets_train.tsv");
        serialize_dataset(instance.train_tweets, train_file);
        auto test_file = open_out(run_dir / "tweets_test.tsv");
        serialize_dataset(instance.test_tweets, test_file);
    }
    return GenOutcome{run_dir};
}

}  // namespace lexmap
