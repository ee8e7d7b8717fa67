#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexmap/alignment.hpp"
#include "lexmap/embeddings.hpp"
#include "lexmap/text.hpp"

namespace lexmap {

enum class Polarity { Positive, Negative };

std::string_view to_string(Polarity p);
Polarity polarity_from_string(std::string_view token);  // throws ParseError on unknown tokens

enum class ProvenanceTag { Native, Transferred, Union };

struct Provenance {
    std::string origin;                    // source-language word, when transferred
    std::optional<double> similarity;      // cosine score, when transferred
    ProvenanceTag method = ProvenanceTag::Native;
};

// word -> polarity set with provenance. Entries are kept sorted by word so
// serialization is order-normalized. File layout: one
// "word<TAB>polarity[<TAB>origin<TAB>similarity]" per line, '#' comments
// ignored, extra columns beyond the fourth ignored.
class PolarityLexicon {
public:
    PolarityLexicon() = default;
    explicit PolarityLexicon(std::string name) : name_(std::move(name)) {}

    static PolarityLexicon parse(std::istream& in, std::string name,
                                 CaseFold fold = CaseFold::Lower);
    static PolarityLexicon parse_file(const std::string& path, std::string name,
                                      CaseFold fold = CaseFold::Lower);
    void serialize(std::ostream& out) const;

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const std::map<std::string, Polarity>& entries() const { return entries_; }
    std::optional<Polarity> polarity_of(const std::string& word) const;
    const Provenance* provenance_of(const std::string& word) const;

    // Inserting a word twice with the same polarity is a no-op; a
    // conflicting polarity throws ContractError.
    void add(std::string word, Polarity polarity, Provenance provenance = {});

    std::size_t count(Polarity p) const;

private:
    std::string name_;
    std::map<std::string, Polarity> entries_;
    std::map<std::string, Provenance> provenance_;
};

struct TransferReport {
    std::size_t source_size = 0;
    std::size_t translated_source_words = 0;   // source words with >= 1 neighbor above lambda
    std::size_t oov_source_words = 0;
    std::size_t no_neighbor_source_words = 0;  // in vocabulary but nothing above lambda
    std::size_t conflict_drops = 0;            // target words reached from both polarities
    std::size_t output_size = 0;
    double lambda_used = 0.0;

    void write_kv(std::ostream& out) const;
    void write_block(std::ostream& out) const;  // human-readable key-value block
};

struct TransferResult {
    PolarityLexicon lexicon;
    TransferReport report;
};

// Projects every lexicon word through the map and collects all target words
// with cosine strictly above lambda, each inheriting the source polarity.
// Target words reached from both polarities are dropped and counted.
TransferResult transfer_lexicon(const PolarityLexicon& lex, const LinearMap& map,
                                const EmbeddingTable& src, const EmbeddingTable& tgt,
                                double lambda = 0.65);

struct UnionResult {
    PolarityLexicon lexicon;
    std::size_t conflicts = 0;         // words dropped for conflicting polarity
    std::size_t native_overrides = 0;  // conflicts resolved in favor of a native entry
};

// Set union; a word present in several inputs with one polarity is kept once
// with provenance "union". Conflicting polarity drops the word unless
// exactly one side is native, in which case the native label wins.
UnionResult union_lexicons(const PolarityLexicon& a, const PolarityLexicon& b);
UnionResult union_many(const std::vector<const PolarityLexicon*>& inputs, std::string name);

struct LexiconStats {
    std::size_t positive_count = 0;
    std::size_t negative_count = 0;
    std::optional<double> mean_transferred_similarity;
};

LexiconStats lexicon_stats(const PolarityLexicon& lex);

}  // namespace lexmap
