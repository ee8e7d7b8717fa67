#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexmap/text.hpp"

namespace lexmap {

struct Neighbor {
    std::string word;
    double similarity = 0.0;
};

// u.v / (|u||v|). Throws DomainError on a zero-norm input.
double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

// Immutable vocabulary -> dense vector table for one language. Raw vectors
// are kept exactly as read; a unit-normalized copy backs cosine retrieval.
// Rows of zero norm are flagged as degenerate and never retrieved.
class EmbeddingTable {
public:
    EmbeddingTable(std::string language_tag, std::vector<std::string> vocab,
                   Eigen::MatrixXd vectors, CaseFold fold = CaseFold::None);

    // Textual layout: header "N D", then one "word v1 ... vD" line per word.
    // Duplicate words keep the first occurrence and are counted, not fatal.
    static EmbeddingTable parse(std::istream& in, std::string language_tag,
                                CaseFold fold = CaseFold::Lower);
    static EmbeddingTable parse_file(const std::string& path, std::string language_tag,
                                     CaseFold fold = CaseFold::Lower);

    // Same layout, reals at 6 significant digits.
    void serialize(std::ostream& out) const;

    const std::string& language_tag() const { return language_tag_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return vocab_.size(); }
    const std::vector<std::string>& vocab() const { return vocab_; }
    const Eigen::MatrixXd& vectors() const { return vectors_; }
    const Eigen::MatrixXd& unit_vectors() const { return unit_vectors_; }
    CaseFold case_fold() const { return fold_; }
    std::size_t duplicates_skipped() const { return duplicates_skipped_; }
    std::size_t degenerate_count() const { return degenerate_count_; }
    bool degenerate(std::size_t row) const { return degenerate_[row]; }

    // Exact match after this table's case-folding policy.
    std::optional<std::size_t> find(std::string_view word) const;
    std::optional<Eigen::VectorXd> lookup(std::string_view word) const;

    // All words with cosine(vec, query) strictly above lambda, sorted by
    // similarity descending, ties by vocabulary order. Exhaustive scan.
    std::vector<Neighbor> neighbors_above(const Eigen::VectorXd& query, double lambda) const;

    // The k most similar words (fewer if the vocabulary is smaller).
    std::vector<Neighbor> top_k(const Eigen::VectorXd& query, std::size_t k) const;

private:
    Eigen::VectorXd checked_unit_query(const Eigen::VectorXd& query) const;

    std::string language_tag_;
    std::size_t dim_ = 0;
    std::vector<std::string> vocab_;
    Eigen::MatrixXd vectors_;
    Eigen::MatrixXd unit_vectors_;
    std::vector<bool> degenerate_;
    std::size_t degenerate_count_ = 0;
    std::size_t duplicates_skipped_ = 0;
    CaseFold fold_ = CaseFold::None;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace lexmap
