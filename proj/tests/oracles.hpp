// Independent reference implementations used only to check production code.
// They deliberately avoid the library's retrieval and solver paths: scans are
// plain double loops, the least-squares oracle goes through explicit normal
// equations, and the scorer counts with raw maps.
#pragma once

#include <Eigen/Core>

#include <map>
#include <string>
#include <vector>

#include "lexmap/embeddings.hpp"
#include "lexmap/features.hpp"
#include "lexmap/lexicon.hpp"

namespace oracles {

struct ScoredWord {
    std::string word;
    double similarity;
};

// Exhaustive cosine scan over the table's raw vectors; zero-norm rows are
// skipped. Sorted by similarity descending, ties by vocabulary order.
std::vector<ScoredWord> brute_force_ranking(const lexmap::EmbeddingTable& table,
                                            const std::vector<double>& query);

std::vector<ScoredWord> brute_force_above(const lexmap::EmbeddingTable& table,
                                          const std::vector<double>& query, double lambda);

std::vector<ScoredWord> brute_force_top_k(const lexmap::EmbeddingTable& table,
                                          const std::vector<double>& query, std::size_t k);

// Least squares through the normal equations: W = ((X^T X)^-1 X^T Y)^T.
Eigen::MatrixXd normal_equations_fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

// Transfer oracle: project every lexicon word with plain loops, scan the
// whole target vocabulary, keep cosines strictly above lambda, then drop
// targets reached from both polarities.
struct TransferExpectation {
    // target word -> (polarity, best similarity)
    std::map<std::string, std::pair<lexmap::Polarity, double>> entries;
    std::size_t conflicts = 0;
};
TransferExpectation brute_force_transfer(const lexmap::PolarityLexicon& lex,
                                         const Eigen::MatrixXd& W,
                                         const lexmap::EmbeddingTable& src,
                                         const lexmap::EmbeddingTable& tgt, double lambda);

// Confusion-matrix macro-F computed with raw counting maps.
double brute_force_macro_f(const std::vector<lexmap::Label>& gold,
                           const std::vector<lexmap::Label>& pred);

}  // namespace oracles
