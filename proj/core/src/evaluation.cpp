#include "lexmap/evaluation.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "lexmap/errors.hpp"
#include "lexmap/rng.hpp"

namespace lexmap {

double LinearModel::score(Label c, const FeatureVector& v) const {
    const Eigen::VectorXd& w = weights_[static_cast<std::size_t>(c)];
    double s = bias_[static_cast<std::size_t>(c)];
    for (const auto& [id, value] : v.entries()) {
        if (id >= 0 && id < w.size()) s += w(id) * value;
    }
    return s;
}

Label LinearModel::predict(const FeatureVector& v) const {
    Label best = kClasses[0];
    double best_score = score(best, v);
    for (std::size_t i = 1; i < kClasses.size(); ++i) {
        const double s = score(kClasses[i], v);
        if (s > best_score) {
            best_score = s;
            best = kClasses[i];
        }
    }
    return best;
}

namespace {

// Dual coordinate descent for the binary L1-loss SVM
//   min_w (1/2)|w|^2 + C sum_i max(0, 1 - z_i w.x_i),  C = 1/(reg*n),
// with the bias folded in as a constant augmented feature.
Eigen::VectorXd train_binary(const LabeledDataset& data, const std::vector<double>& z,
                             Eigen::Index dim, const TrainOptions& options, uint64_t seed) {
    const std::size_t n = data.size();
    const double c_upper = 1.0 / (options.reg * static_cast<double>(n));

    std::vector<double> q_diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        double q = 1.0;  // augmented bias feature
        for (const auto& [id, value] : data.vectors[i].entries()) q += value * value;
        q_diag[i] = q;
    }

    Eigen::VectorXd w = Eigen::VectorXd::Zero(dim + 1);
    std::vector<double> alpha(n, 0.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);

    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        rng.shuffle(order);
        double max_violation = 0.0;
        for (const std::size_t i : order) {
            double wx = w(dim);
            for (const auto& [id, value] : data.vectors[i].entries()) wx += w(id) * value;
            const double gradient = z[i] * wx - 1.0;

            double projected = gradient;
            if (alpha[i] <= 0.0) projected = std::min(gradient, 0.0);
            else if (alpha[i] >= c_upper) projected = std::max(gradient, 0.0);
            max_violation = std::max(max_violation, std::abs(projected));
            if (std::abs(projected) < 1e-14) continue;

            const double updated =
                std::min(std::max(alpha[i] - gradient / q_diag[i], 0.0), c_upper);
            const double delta = (updated - alpha[i]) * z[i];
            alpha[i] = updated;
            w(dim) += delta;
            for (const auto& [id, value] : data.vectors[i].entries()) w(id) += delta * value;
        }
        if (max_violation < 1e-12) break;
    }
    return w;
}

}  // namespace

LinearModel train(const LabeledDataset& data, const TrainOptions& options) {
    if (data.size() == 0) throw ContractError("train: empty dataset");
    if (options.reg <= 0.0) throw ContractError("train: regularization strength must be positive");
    if (options.epochs <= 0) throw ContractError("train: epochs must be positive");

    std::set<Label> present;
    Eigen::Index dim = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!data.labels[i]) throw ContractError("train: unlabeled example at position " + std::to_string(i));
        present.insert(*data.labels[i]);
        for (const auto& [id, value] : data.vectors[i].entries()) {
            if (!std::isfinite(value)) throw NumericError("train: non-finite feature value");
            dim = std::max(dim, static_cast<Eigen::Index>(id) + 1);
        }
    }
    if (present.size() < 2) throw ContractError("train: need at least two distinct classes");

    LinearModel model;
    model.options_ = options;
    for (std::size_t c = 0; c < LinearModel::kClasses.size(); ++c) {
        std::vector<double> z(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) {
            z[i] = *data.labels[i] == LinearModel::kClasses[c] ? 1.0 : -1.0;
        }
        const Eigen::VectorXd w = train_binary(data, z, dim, options, options.seed + c);
        if (!w.allFinite()) throw NumericError("train: non-finite weights");
        model.weights_[c] = w.head(dim);
        model.bias_[c] = w(dim);
    }
    return model;
}

EvaluationReport macro_f(const std::vector<Label>& gold, const std::vector<Label>& pred) {
    if (gold.size() != pred.size()) {
        throw ContractError("macro_f: gold and prediction lists differ in length");
    }
    if (gold.empty()) throw ContractError("macro_f: need at least one item");

    EvaluationReport report;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        ++report.confusion[static_cast<std::size_t>(gold[i])][static_cast<std::size_t>(pred[i])];
    }
    double f_sum = 0.0;
    for (std::size_t c = 0; c < 3; ++c) {
        const double tp = static_cast<double>(report.confusion[c][c]);
        double fp = 0.0, fn = 0.0;
        for (std::size_t o = 0; o < 3; ++o) {
            if (o == c) continue;
            fp += static_cast<double>(report.confusion[o][c]);
            fn += static_cast<double>(report.confusion[c][o]);
        }
        const double p = tp + fp > 0.0 ? tp / (tp + fp) : 0.0;
        const double r = tp + fn > 0.0 ? tp / (tp + fn) : 0.0;
        const double f = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
        report.precision[c] = p;
        report.recall[c] = r;
        report.f1[c] = f;
        f_sum += f;
    }
    report.macro_f = f_sum / 3.0;
    return report;
}

std::vector<Label> predict_all(const LinearModel& model, const LabeledDataset& data) {
    std::vector<Label> out;
    out.reserve(data.size());
    for (const auto& vec : data.vectors) out.push_back(model.predict(vec));
    return out;
}

CrossValReport cross_validate(const LabeledDataset& data, int folds, const TrainOptions& options) {
    if (folds < 2) throw ContractError("cross_validate: need at least 2 folds");
    if (static_cast<std::size_t>(folds) > data.size()) {
        throw ContractError("cross_validate: more folds than examples");
    }

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(options.seed);
    rng.shuffle(order);

    const std::size_t base = data.size() / static_cast<std::size_t>(folds);
    const std::size_t extra = data.size() % static_cast<std::size_t>(folds);

    CrossValReport report;
    std::size_t cursor = 0;
    for (int f = 0; f < folds; ++f) {
        const std::size_t fold_size = base + (static_cast<std::size_t>(f) < extra ? 1 : 0);
        const std::size_t begin = cursor;
        const std::size_t end = cursor + fold_size;
        cursor = end;

        LabeledDataset train_split, test_split;
        for (std::size_t i = 0; i < order.size(); ++i) {
            LabeledDataset& dst = (i >= begin && i < end) ? test_split : train_split;
            dst.ids.push_back(data.ids[order[i]]);
            dst.vectors.push_back(data.vectors[order[i]]);
            dst.labels.push_back(data.labels[order[i]]);
        }

        const LinearModel model = train(train_split, options);
        std::vector<Label> gold;
        gold.reserve(test_split.size());
        for (const auto& label : test_split.labels) gold.push_back(*label);
        report.folds.push_back(macro_f(gold, predict_all(model, test_split)));
    }

    double sum = 0.0;
    for (const auto& fold : report.folds) sum += fold.macro_f;
    report.mean_macro_f = sum / static_cast<double>(report.folds.size());
    double var = 0.0;
    for (const auto& fold : report.folds) {
        const double d = fold.macro_f - report.mean_macro_f;
        var += d * d;
    }
    report.stdev_macro_f =
        report.folds.size() > 1 ? std::sqrt(var / static_cast<double>(report.folds.size() - 1)) : 0.0;
    return report;
}

namespace {
const char* kClassNames[3] = {"negative", "neutral", "positive"};
}

void EvaluationReport::write_table(std::ostream& out) const {
    char buf[128];
    out << "class      precision  recall     f1\n";
    for (std::size_t c = 0; c < 3; ++c) {
        std::snprintf(buf, sizeof(buf), "%-10s %-10.4f %-10.4f %-10.4f\n", kClassNames[c],
                      precision[c], recall[c], f1[c]);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "macro_f    %.4f\n", macro_f);
    out << buf;
    out << "confusion (rows gold, cols predicted)\n";
    for (std::size_t g = 0; g < 3; ++g) {
        std::snprintf(buf, sizeof(buf), "%-10s %8zu %8zu %8zu\n", kClassNames[g], confusion[g][0],
                      confusion[g][1], confusion[g][2]);
        out << buf;
    }
}

void EvaluationReport::write_kv(std::ostream& out) const {
    out << "macro_f=" << format_real(macro_f, 17) << '\n';
    for (std::size_t c = 0; c < 3; ++c) {
        out << "precision_" << kClassNames[c] << '=' << format_real(precision[c], 17) << '\n'
            << "recall_" << kClassNames[c] << '=' << format_real(recall[c], 17) << '\n'
            << "f1_" << kClassNames[c] << '=' << format_real(f1[c], 17) << '\n';
    }
    for (std::size_t g = 0; g < 3; ++g) {
        for (std::size_t p = 0; p < 3; ++p) {
            out << "confusion_" << kClassNames[g] << '_' << kClassNames[p] << '=' << confusion[g][p]
                << '\n';
        }
    }
}

void CrossValReport::write_kv(std::ostream& out) const {
    out << "folds=" << folds.size() << '\n'
        << "mean_macro_f=" << format_real(mean_macro_f, 17) << '\n'
        << "stdev_macro_f=" << format_real(stdev_macro_f, 17) << '\n';
    for (std::size_t f = 0; f < folds.size(); ++f) {
        out << "fold_" << f << "_macro_f=" << format_real(folds[f].macro_f, 17) << '\n';
    }
}

void LinearModel::serialize(std::ostream& out) const {
    out << "lexmap-linear-model v1\n";
    out << "classes negative neutral positive\n";
    out << "features " << feature_count() << " reg " << format_real(options_.reg, 17) << " epochs "
        << options_.epochs << " seed " << options_.seed << '\n';
    out << "bias " << format_real(bias_[0], 17) << ' ' << format_real(bias_[1], 17) << ' '
        << format_real(bias_[2], 17) << '\n';
    for (std::size_t c = 0; c < 3; ++c) {
        const Eigen::VectorXd& w = weights_[c];
        std::size_t nnz = 0;
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            if (w(i) != 0.0) ++nnz;
        }
        out << "weights " << kClassNames[c] << ' ' << nnz;
        for (Eigen::Index i = 0; i < w.size(); ++i) {
            if (w(i) != 0.0) out << ' ' << i << ':' << format_real(w(i), 17);
        }
        out << '\n';
    }
}

LinearModel LinearModel::parse(std::istream& in) {
    std::string line;
    auto next_line = [&](const char* what) -> std::string {
        if (!std::getline(in, line)) throw ParseError(std::string("model file truncated: ") + what);
        return std::string(strip_cr(line));
    };

    if (next_line("magic") != "lexmap-linear-model v1") {
        throw ParseError("not a lexmap-linear-model v1 file", 1);
    }
    if (next_line("classes") != "classes negative neutral positive") {
        throw ParseError("unexpected class list", 2);
    }
    const std::string meta_line = next_line("metadata");
    const auto meta = split_ws(meta_line);
    if (meta.size() != 8 || meta[0] != "features" || meta[2] != "reg" || meta[4] != "epochs" ||
        meta[6] != "seed") {
        throw ParseError("malformed model metadata", 3);
    }
    const auto nfeat = parse_int(meta[1]);
    const auto reg = parse_real(meta[3]);
    const auto epochs = parse_int(meta[5]);
    const auto seed = parse_int(meta[7]);
    if (!nfeat || *nfeat < 0 || !reg || !epochs || !seed) {
        throw ParseError("malformed model metadata values", 3);
    }

    LinearModel model;
    model.options_.reg = *reg;
    model.options_.epochs = static_cast<int>(*epochs);
    model.options_.seed = static_cast<uint64_t>(*seed);

    const std::string bias_line = next_line("bias");
    const auto bias_fields = split_ws(bias_line);
    if (bias_fields.size() != 4 || bias_fields[0] != "bias") throw ParseError("malformed bias line", 4);
    for (std::size_t c = 0; c < 3; ++c) {
        const auto b = parse_real(bias_fields[c + 1]);
        if (!b || !std::isfinite(*b)) throw ParseError("malformed bias value", 4);
        model.bias_[c] = *b;
    }

    for (std::size_t c = 0; c < 3; ++c) {
        const std::string weights_line = next_line("weights");
        const auto fields = split_ws(weights_line);
        if (fields.size() < 3 || fields[0] != "weights" || fields[1] != kClassNames[c]) {
            throw ParseError(std::string("malformed weights line for class ") + kClassNames[c]);
        }
        const auto nnz = parse_int(fields[2]);
        if (!nnz || *nnz < 0 || fields.size() != 3 + static_cast<std::size_t>(*nnz)) {
            throw ParseError(std::string("weight count mismatch for class ") + kClassNames[c]);
        }
        Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(*nfeat));
        for (std::size_t p = 0; p < static_cast<std::size_t>(*nnz); ++p) {
            const auto pair = split_char(fields[3 + p], ':');
            const auto id = pair.size() == 2 ? parse_int(pair[0]) : std::nullopt;
            const auto value = pair.size() == 2 ? parse_real(pair[1]) : std::nullopt;
            if (!id || *id < 0 || *id >= *nfeat || !value || !std::isfinite(*value)) {
                throw ParseError(std::string("malformed weight entry for class ") + kClassNames[c]);
            }
            w(static_cast<Eigen::Index>(*id)) = *value;
        }
        model.weights_[c] = std::move(w);
    }
    return model;
}

LinearModel LinearModel::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    return parse(in);
}

}  // namespace lexmap
