#include "lexmap/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lexmap/errors.hpp"

namespace lexmap {

double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    if (u.size() != v.size()) {
        throw ContractError("cosine: dimension mismatch (" + std::to_string(u.size()) +
                            " vs " + std::to_string(v.size()) + ")");
    }
    const double nu = u.norm();
    const double nv = v.norm();
    if (nu == 0.0 || nv == 0.0) throw DomainError("cosine: zero-norm input");
    return u.dot(v) / (nu * nv);
}

EmbeddingTable::EmbeddingTable(std::string language_tag, std::vector<std::string> vocab,
                               Eigen::MatrixXd vectors, CaseFold fold)
    : language_tag_(std::move(language_tag)), fold_(fold) {
    if (static_cast<std::size_t>(vectors.rows()) != vocab.size()) {
        throw ContractError("embedding table: vocab/vector row count mismatch");
    }
    if (vocab.size() > 0 && vectors.cols() < 1) {
        throw ContractError("embedding table: dimension must be positive");
    }
    if (!vectors.allFinite()) {
        throw ContractError("embedding table: non-finite vector entry");
    }
    dim_ = static_cast<std::size_t>(vectors.cols());

    // Fold, then drop duplicate words keeping the first occurrence.
    std::vector<Eigen::Index> keep;
    keep.reserve(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        std::string word = fold_case(vocab[i], fold_);
        auto [it, inserted] = index_.try_emplace(std::move(word), vocab_.size());
        if (!inserted) {
            ++duplicates_skipped_;
            continue;
        }
        vocab_.push_back(it->first);
        keep.push_back(static_cast<Eigen::Index>(i));
    }
    vectors_.resize(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(dim_));
    for (std::size_t r = 0; r < keep.size(); ++r) vectors_.row(static_cast<Eigen::Index>(r)) = vectors.row(keep[r]);

    unit_vectors_ = vectors_;
    degenerate_.assign(vocab_.size(), false);
    for (Eigen::Index i = 0; i < unit_vectors_.rows(); ++i) {
        const double norm = unit_vectors_.row(i).norm();
        if (norm == 0.0) {
            degenerate_[static_cast<std::size_t>(i)] = true;
            ++degenerate_count_;
        } else {
            unit_vectors_.row(i) /= norm;
        }
    }
}

EmbeddingTable EmbeddingTable::parse(std::istream& in, std::string language_tag, CaseFold fold) {
    std::string raw;
    long line_no = 0;

    if (!std::getline(in, raw)) throw ParseError("empty vector file: missing header", 1);
    ++line_no;
    const auto header = split_ws(strip_cr(raw));
    if (header.size() != 2) {
        throw ParseError("malformed header at line 1: expected \"vocab_count dim\"", 1);
    }
    const auto count = parse_int(header[0]);
    const auto dim = parse_int(header[1]);
    if (!count || *count < 0) throw ParseError("malformed header at line 1: bad vocab_count", 1);
    if (!dim || *dim < 1) throw ParseError("malformed header at line 1: dim must be positive", 1);

    const std::size_t n = static_cast<std::size_t>(*count);
    const std::size_t d = static_cast<std::size_t>(*dim);

    std::vector<std::string> vocab;
    vocab.reserve(n);
    Eigen::MatrixXd vectors(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));

    std::size_t rows = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = strip_cr(raw);
        if (line.empty()) {
            if (rows == n) continue;  // tolerate trailing blank lines
            throw ParseError("unexpected empty line at line " + std::to_string(line_no), line_no);
        }
        if (rows == n) {
            throw ParseError("expected " + std::to_string(n) + " vectors, found extra content at line " +
                                 std::to_string(line_no),
                             line_no);
        }
        const auto fields = split_ws(line);
        if (fields.size() != d + 1) {
            throw ParseError("expected " + std::to_string(d) + " values, got " +
                                 std::to_string(fields.size() == 0 ? 0 : fields.size() - 1) +
                                 " at line " + std::to_string(line_no),
                             line_no);
        }
        for (std::size_t j = 0; j < d; ++j) {
            const auto value = parse_real(fields[j + 1]);
            if (!value || !std::isfinite(*value)) {
                throw ParseError("non-finite or unparsable value \"" + std::string(fields[j + 1]) +
                                     "\" at line " + std::to_string(line_no),
                                 line_no);
            }
            vectors(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(j)) = *value;
        }
        vocab.emplace_back(fields[0]);
        ++rows;
    }
    if (rows != n) {
        throw ParseError("expected " + std::to_string(n) + " vectors, got " + std::to_string(rows) +
                             " at line " + std::to_string(line_no + 1),
                         line_no + 1);
    }

    return EmbeddingTable(std::move(language_tag), std::move(vocab), std::move(vectors), fold);
}

EmbeddingTable EmbeddingTable::parse_file(const std::string& path, std::string language_tag,
                                          CaseFold fold) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open vector file: " + path);
    return parse(in, std::move(language_tag), fold);
}

void EmbeddingTable::serialize(std::ostream& out) const {
    out << size() << ' ' << dim_ << '\n';
    for (std::size_t i = 0; i < size(); ++i) {
        out << vocab_[i];
        for (std::size_t j = 0; j < dim_; ++j) {
            out << ' ' << format_real(vectors_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), 6);
        }
        out << '\n';
    }
}

std::optional<std::size_t> EmbeddingTable::find(std::string_view word) const {
    const std::string folded = fold_case(word, fold_);
    auto it = index_.find(folded);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Eigen::VectorXd> EmbeddingTable::lookup(std::string_view word) const {
    const auto idx = find(word);
    if (!idx) return std::nullopt;
    return Eigen::VectorXd(vectors_.row(static_cast<Eigen::Index>(*idx)));
}

Eigen::VectorXd EmbeddingTable::checked_unit_query(const Eigen::VectorXd& query) const {
    if (static_cast<std::size_t>(query.size()) != dim_) {
        throw ContractError("query dimension " + std::to_string(query.size()) +
                            " does not match table dimension " + std::to_string(dim_));
    }
    const double norm = query.norm();
    if (norm == 0.0) throw DomainError("zero-norm query");
    return query / norm;
}

std::vector<Neighbor> EmbeddingTable::neighbors_above(const Eigen::VectorXd& query,
                                                      double lambda) const {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw ContractError("lambda must lie in (0, 1], got " + format_real(lambda, 6));
    }
    const Eigen::VectorXd q = checked_unit_query(query);

    std::vector<std::pair<double, std::size_t>> hits;
    for (Eigen::Index i = 0; i < unit_vectors_.rows(); ++i) {
        if (degenerate_[static_cast<std::size_t>(i)]) continue;
        const double sim = unit_vectors_.row(i).dot(q);
        if (sim > lambda) hits.emplace_back(sim, static_cast<std::size_t>(i));
    }
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });

    std::vector<Neighbor> out;
    out.reserve(hits.size());
    for (const auto& [sim, idx] : hits) out.push_back({vocab_[idx], sim});
    return out;
}

std::vector<Neighbor> EmbeddingTable::top_k(const Eigen::VectorXd& query, std::size_t k) const {
    if (k == 0) throw ContractError("top_k: k must be positive");
    const Eigen::VectorXd q = checked_unit_query(query);

    std::vector<std::pair<double, std::size_t>> sims;
    sims.reserve(size());
    for (Eigen::Index i = 0; i < unit_vectors_.rows(); ++i) {
        if (degenerate_[static_cast<std::size_t>(i)]) continue;
        sims.emplace_back(unit_vectors_.row(i).dot(q), static_cast<std::size_t>(i));
    }
    const std::size_t take = std::min(k, sims.size());
    std::partial_sort(sims.begin(), sims.begin() + static_cast<std::ptrdiff_t>(take), sims.end(),
                      [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first > b.first;
                          return a.second < b.second;
                      });

    std::vector<Neighbor> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back({vocab_[sims[i].second], sims[i].first});
    return out;
}

}  // namespace lexmap
