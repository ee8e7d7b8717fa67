#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexmap/lexicon.hpp"

namespace lexmap {

// Three-class sentiment label. The enum order is the fixed tie-break order
// used by classifier argmax.
enum class Label { Negative = 0, Neutral = 1, Positive = 2 };

std::string_view to_string(Label label);
Label label_from_string(std::string_view token);  // throws ParseError on unknown tokens

struct Tweet {
    std::string id;
    std::string text;
    std::optional<Label> label;
};

// Dataset layout: TSV "id<TAB>label<TAB>text"; the label column may be
// omitted for inference ("id<TAB>text").
std::vector<Tweet> parse_dataset(std::istream& in);
std::vector<Tweet> parse_dataset_file(const std::string& path);
void serialize_dataset(const std::vector<Tweet>& tweets, std::ostream& out);

enum class TokenKind { Word, Hashtag, Usertag, EmoticonPos, EmoticonNeg, PunctRun, Other };

struct Token {
    std::string surface;
    TokenKind kind;
};

// Fixed shipped emoticon inventory; returns the polarity of an exact match.
std::optional<Polarity> classify_emoticon(std::string_view surface);
const std::vector<std::pair<std::string_view, Polarity>>& emoticon_table();

// Rule-based tweet tokenizer: whitespace split, then per chunk runs of
// '!'/'?' are isolated as punct_run tokens and the remaining pieces are
// classified as emoticon (exact table match), hashtag ('#...', surface
// replaced by "<hashtag>"), usertag ('@...', surface "<user>"), word
// (contains an alphanumeric or non-ASCII byte) or other.
std::vector<Token> tokenize(std::string_view text);

// Persistent feature name <-> id mapping shared between training and
// inference. File layout: one "id<TAB>name" line per feature.
class FeatureIndex {
public:
    int intern(const std::string& name);
    std::optional<int> find(std::string_view name) const;
    std::size_t size() const { return names_.size(); }
    const std::string& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
    const std::vector<std::string>& names() const { return names_; }

    void serialize(std::ostream& out) const;
    static FeatureIndex parse(std::istream& in);
    static FeatureIndex parse_file(const std::string& path);

private:
    std::unordered_map<std::string, int> ids_;
    std::vector<std::string> names_;
};

// Sparse feature vector over FeatureIndex ids.
class FeatureVector {
public:
    void add(int id, double value);
    double get(int id) const;
    const std::map<int, double>& entries() const { return values_; }
    std::size_t nonzeros() const { return values_.size(); }

private:
    std::map<int, double> values_;
};

struct LabeledDataset {
    std::vector<std::string> ids;
    std::vector<FeatureVector> vectors;
    std::vector<std::optional<Label>> labels;

    std::size_t size() const { return vectors.size(); }
};

enum class FeaturizeMode { Train, Frozen };

// Emits the tweet-classification feature families: word n-gram indicators,
// all-caps / hashtag / elongated-word counts, per-(lexicon, polarity) hit
// counts, punctuation-run counts, last-token punctuation, and emoticon
// presence/last-position booleans.
FeatureVector extract_features(const Tweet& tweet,
                               const std::vector<const PolarityLexicon*>& lexicons,
                               FeatureIndex& index, int ngram_max, FeaturizeMode mode);

LabeledDataset featurize_dataset(const std::vector<Tweet>& tweets,
                                 const std::vector<const PolarityLexicon*>& lexicons,
                                 FeatureIndex& index, int ngram_max, FeaturizeMode mode);

// Sparse export: one "id<TAB>label<TAB>fid:value ..." line per tweet ('-'
// when unlabeled), ids ascending.
void serialize_feature_matrix(const LabeledDataset& data, std::ostream& out);

}  // namespace lexmap
