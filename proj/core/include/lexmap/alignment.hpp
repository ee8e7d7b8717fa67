#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lexmap/embeddings.hpp"
#include "lexmap/text.hpp"

namespace lexmap {

// Ordered (source, target) translation pairs. File layout: one
// "source<TAB>target" per line, '#' comment lines ignored. Entry order is
// the frequency rank used by the dictionary-size sweeps.
struct BilingualDictionary {
    struct Entry {
        std::string source;
        std::string target;
    };

    std::vector<Entry> entries;
    std::size_t duplicate_pairs_skipped = 0;

    static BilingualDictionary parse(std::istream& in, CaseFold fold = CaseFold::Lower);
    static BilingualDictionary parse_file(const std::string& path, CaseFold fold = CaseFold::Lower);
    void serialize(std::ostream& out) const;

    std::size_t size() const { return entries.size(); }

    // The first n entries (the n most frequent words when the file is
    // rank-ordered).
    BilingualDictionary head(std::size_t n) const;
};

// Training matrices for the least-squares fit: row i of X and Y hold the raw
// source and target vectors of the i-th retained dictionary entry.
struct PairSet {
    Eigen::MatrixXd X;  // n x d_src
    Eigen::MatrixXd Y;  // n x d_tgt
    std::vector<std::pair<std::string, std::string>> pair_words;
    std::size_t skipped = 0;

    std::size_t size() const { return pair_words.size(); }
};

// Drops entries with an out-of-vocabulary word on either side and counts
// them; preserves dictionary order. Throws ContractError when nothing is
// left to train on.
PairSet build_pairs(const BilingualDictionary& dict, const EmbeddingTable& src,
                    const EmbeddingTable& tgt);

// d_tgt x d_src matrix minimizing sum_i |W x_i - y_i|^2, plus fit
// diagnostics. Serialization: header "d_tgt d_src solver_tag n residual",
// then one row of 17-significant-digit reals per line (round-trip exact).
struct LinearMap {
    Eigen::MatrixXd W;
    std::size_t train_pair_count = 0;
    double mean_squared_residual = 0.0;
    std::string solver_tag;

    Eigen::VectorXd project(const Eigen::VectorXd& x) const;

    void serialize(std::ostream& out) const;
    static LinearMap parse(std::istream& in);
    static LinearMap parse_file(const std::string& path);

    std::size_t d_src() const { return static_cast<std::size_t>(W.cols()); }
    std::size_t d_tgt() const { return static_cast<std::size_t>(W.rows()); }
};

// Least-squares fit through a complete orthogonal decomposition; returns the
// minimum-Frobenius-norm solution on rank-deficient systems. The
// normal-equations route is reserved for test oracles.
LinearMap fit_linear_map(const PairSet& pairs);

// Frobenius norm of the objective gradient 2 sum_i (W x_i - y_i) x_i^T,
// an optimality diagnostic for the fit.
double residual_gradient_norm(const LinearMap& map, const PairSet& pairs);

// Objective value sum_i |W x_i - y_i|^2.
double alignment_objective(const Eigen::MatrixXd& W, const PairSet& pairs);

struct PrecisionAtK {
    double value = 0.0;        // fraction of resolvable pairs hit
    std::size_t evaluated = 0;
    std::size_t skipped = 0;   // held-out entries with an OOV word
};

// Fraction of held-out source words whose gold target appears among the k
// nearest target words of the projected source vector.
PrecisionAtK precision_at_k(const LinearMap& map, const BilingualDictionary& heldout,
                            const EmbeddingTable& src, const EmbeddingTable& tgt, std::size_t k);

}  // namespace lexmap
