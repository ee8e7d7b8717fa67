#include "lexmap/alignment.hpp"

#include <Eigen/QR>

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "lexmap/errors.hpp"

namespace lexmap {

BilingualDictionary BilingualDictionary::parse(std::istream& in, CaseFold fold) {
    BilingualDictionary dict;
    std::set<std::pair<std::string, std::string>> seen;
    std::string raw;
    long line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = strip_cr(raw);
        if (is_comment_or_blank(line)) continue;
        const auto fields = split_char(line, '\t');
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
            throw ParseError("expected \"source<TAB>target\" at line " + std::to_string(line_no),
                             line_no);
        }
        Entry entry{fold_case(fields[0], fold), fold_case(fields[1], fold)};
        if (!seen.insert({entry.source, entry.target}).second) {
            ++dict.duplicate_pairs_skipped;
            continue;
        }
        dict.entries.push_back(std::move(entry));
    }
    return dict;
}

BilingualDictionary BilingualDictionary::parse_file(const std::string& path, CaseFold fold) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dictionary file: " + path);
    return parse(in, fold);
}

void BilingualDictionary::serialize(std::ostream& out) const {
    for (const auto& entry : entries) out << entry.source << '\t' << entry.target << '\n';
}

BilingualDictionary BilingualDictionary::head(std::size_t n) const {
    BilingualDictionary out;
    const std::size_t take = std::min(n, entries.size());
    out.entries.assign(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(take));
    return out;
}

PairSet build_pairs(const BilingualDictionary& dict, const EmbeddingTable& src,
                    const EmbeddingTable& tgt) {
    std::vector<std::pair<std::size_t, std::size_t>> rows;
    PairSet pairs;
    for (const auto& entry : dict.entries) {
        const auto si = src.find(entry.source);
        const auto ti = tgt.find(entry.target);
        if (!si || !ti) {
            ++pairs.skipped;
            continue;
        }
        rows.emplace_back(*si, *ti);
        pairs.pair_words.emplace_back(entry.source, entry.target);
    }
    if (rows.empty()) {
        throw ContractError("empty training set: 0 dictionary entries resolvable, " +
                            std::to_string(pairs.skipped) + " skipped as out-of-vocabulary");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
    pairs.X.resize(n, static_cast<Eigen::Index>(src.dim()));
    pairs.Y.resize(n, static_cast<Eigen::Index>(tgt.dim()));
    for (Eigen::Index i = 0; i < n; ++i) {
        pairs.X.row(i) = src.vectors().row(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].first));
        pairs.Y.row(i) = tgt.vectors().row(static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].second));
    }
    return pairs;
}

LinearMap fit_linear_map(const PairSet& pairs) {
    if (pairs.X.rows() < 1 || pairs.X.rows() != pairs.Y.rows()) {
        throw ContractError("fit_linear_map: need at least one (x, y) pair with matching rows");
    }
    if (pairs.X.cols() < 1 || pairs.Y.cols() < 1) {
        throw ContractError("fit_linear_map: dimensions must be positive");
    }
    if (!pairs.X.allFinite() || !pairs.Y.allFinite()) {
        throw NumericError("fit_linear_map: non-finite training data");
    }

    // min_B |X B - Y|_F with B = W^T; COD yields the minimum-norm solution
    // on rank-deficient X.
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(pairs.X);
    const Eigen::MatrixXd Wt = cod.solve(pairs.Y);
    if (!Wt.allFinite()) throw NumericError("fit_linear_map: solver produced non-finite values");

    LinearMap map;
    map.W = Wt.transpose();
    map.train_pair_count = static_cast<std::size_t>(pairs.X.rows());
    map.mean_squared_residual =
        (pairs.X * Wt - pairs.Y).squaredNorm() / static_cast<double>(pairs.X.rows());
    map.solver_tag = "cod";
    return map;
}

Eigen::VectorXd LinearMap::project(const Eigen::VectorXd& x) const {
    if (x.size() != W.cols()) {
        throw ContractError("project: vector has " + std::to_string(x.size()) +
                            " entries, map expects " + std::to_string(W.cols()));
    }
    return W * x;
}

double alignment_objective(const Eigen::MatrixXd& W, const PairSet& pairs) {
    if (W.cols() != pairs.X.cols() || W.rows() != pairs.Y.cols()) {
        throw ContractError("alignment_objective: dimension mismatch");
    }
    return (pairs.X * W.transpose() - pairs.Y).squaredNorm();
}

double residual_gradient_norm(const LinearMap& map, const PairSet& pairs) {
    if (map.W.cols() != pairs.X.cols() || map.W.rows() != pairs.Y.cols()) {
        throw ContractError("residual_gradient_norm: dimension mismatch");
    }
    const Eigen::MatrixXd residual = pairs.X * map.W.transpose() - pairs.Y;  // n x d_tgt
    const Eigen::MatrixXd grad = 2.0 * residual.transpose() * pairs.X;       // d_tgt x d_src
    return grad.norm();
}

PrecisionAtK precision_at_k(const LinearMap& map, const BilingualDictionary& heldout,
                            const EmbeddingTable& src, const EmbeddingTable& tgt, std::size_t k) {
    if (k == 0) throw ContractError("precision_at_k: k must be positive");
    if (src.dim() != map.d_src() || tgt.dim() != map.d_tgt()) {
        throw ContractError("precision_at_k: table dimensions do not match the map");
    }

    PrecisionAtK report;
    std::size_t hits = 0;
    for (const auto& entry : heldout.entries) {
        const auto si = src.find(entry.source);
        const auto ti = tgt.find(entry.target);
        if (!si || !ti) {
            ++report.skipped;
            continue;
        }
        ++report.evaluated;
        const Eigen::VectorXd projected =
            map.project(src.vectors().row(static_cast<Eigen::Index>(*si)).transpose());
        if (projected.norm() == 0.0) continue;  // no retrieval possible, counts as a miss
        for (const auto& neighbor : tgt.top_k(projected, k)) {
            if (neighbor.word == entry.target) {
                ++hits;
                break;
            }
        }
    }
    if (report.evaluated == 0) {
        throw ContractError("precision_at_k: no resolvable held-out pairs (" +
                            std::to_string(report.skipped) + " skipped)");
    }
    report.value = static_cast<double>(hits) / static_cast<double>(report.evaluated);
    return report;
}

void LinearMap::serialize(std::ostream& out) const {
    out << W.rows() << ' ' << W.cols() << ' ' << solver_tag << ' ' << train_pair_count << ' '
        << format_real(mean_squared_residual, 17) << '\n';
    for (Eigen::Index i = 0; i < W.rows(); ++i) {
        for (Eigen::Index j = 0; j < W.cols(); ++j) {
            if (j > 0) out << ' ';
            out << format_real(W(i, j), 17);
        }
        out << '\n';
    }
}

LinearMap LinearMap::parse(std::istream& in) {
    std::string raw;
    if (!std::getline(in, raw)) throw ParseError("empty linear-map file: missing header", 1);
    const auto header = split_ws(strip_cr(raw));
    if (header.size() != 5) {
        throw ParseError("malformed linear-map header: expected \"d_tgt d_src solver_tag n residual\"", 1);
    }
    const auto d_tgt = parse_int(header[0]);
    const auto d_src = parse_int(header[1]);
    const auto n = parse_int(header[3]);
    const auto residual = parse_real(header[4]);
    if (!d_tgt || !d_src || *d_tgt < 1 || *d_src < 1 || !n || *n < 0 || !residual || *residual < 0) {
        throw ParseError("malformed linear-map header values", 1);
    }

    LinearMap map;
    map.solver_tag = std::string(header[2]);
    map.train_pair_count = static_cast<std::size_t>(*n);
    map.mean_squared_residual = *residual;
    map.W.resize(static_cast<Eigen::Index>(*d_tgt), static_cast<Eigen::Index>(*d_src));

    long line_no = 1;
    for (Eigen::Index i = 0; i < map.W.rows(); ++i) {
        if (!std::getline(in, raw)) {
            throw ParseError("linear-map file truncated: expected " + std::to_string(map.W.rows()) +
                                 " rows, got " + std::to_string(i),
                             line_no + 1);
        }
        ++line_no;
        const auto fields = split_ws(strip_cr(raw));
        if (fields.size() != static_cast<std::size_t>(map.W.cols())) {
            throw ParseError("expected " + std::to_string(map.W.cols()) + " values, got " +
                                 std::to_string(fields.size()) + " at line " + std::to_string(line_no),
                             line_no);
        }
        for (Eigen::Index j = 0; j < map.W.cols(); ++j) {
            const auto value = parse_real(fields[static_cast<std::size_t>(j)]);
            if (!value || !std::isfinite(*value)) {
                throw ParseError("non-finite or unparsable value at line " + std::to_string(line_no),
                                 line_no);
            }
            map.W(i, j) = *value;
        }
    }
    return map;
}

LinearMap LinearMap::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open linear-map file: " + path);
    return parse(in);
}

}  // namespace lexmap
