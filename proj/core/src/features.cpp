#include "lexmap/features.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "lexmap/errors.hpp"

namespace lexmap {

std::string_view to_string(Label label) {
    switch (label) {
        case Label::Negative: return "negative";
        case Label::Neutral: return "neutral";
        case Label::Positive: return "positive";
    }
    return "neutral";
}

Label label_from_string(std::string_view token) {
    if (token == "negative") return Label::Negative;
    if (token == "neutral") return Label::Neutral;
    if (token == "positive") return Label::Positive;
    throw ParseError("unknown label token \"" + std::string(token) + "\"");
}

std::vector<Tweet> parse_dataset(std::istream& in) {
    std::vector<Tweet> tweets;
    std::string raw;
    long line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = strip_cr(raw);
        if (line.empty()) continue;
        const auto fields = split_char(line, '\t');
        Tweet tweet;
        if (fields.size() >= 3) {
            tweet.id = std::string(fields[0]);
            try {
                tweet.label = label_from_string(fields[1]);
            } catch (const ParseError& e) {
                throw ParseError(std::string(e.what()) + " at line " + std::to_string(line_no),
                                 line_no);
            }
            // Re-join any tabs inside the text column.
            std::string text(fields[2]);
            for (std::size_t i = 3; i < fields.size(); ++i) {
                text += '\t';
                text += fields[i];
            }
            tweet.text = std::move(text);
        } else if (fields.size() == 2) {
            tweet.id = std::string(fields[0]);
            tweet.text = std::string(fields[1]);
        } else {
            throw ParseError("expected \"id<TAB>[label<TAB>]text\" at line " + std::to_string(line_no),
                             line_no);
        }
        if (tweet.id.empty()) {
            throw ParseError("empty tweet id at line " + std::to_string(line_no), line_no);
        }
        tweets.push_back(std::move(tweet));
    }
    return tweets;
}

std::vector<Tweet> parse_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path);
    return parse_dataset(in);
}

void serialize_dataset(const std::vector<Tweet>& tweets, std::ostream& out) {
    for (const auto& tweet : tweets) {
        out << tweet.id << '\t';
        if (tweet.label) out << to_string(*tweet.label) << '\t';
        out << tweet.text << '\n';
    }
}

namespace {

bool is_punct_run_char(char c) { return c == '!' || c == '?'; }

bool looks_like_word(std::string_view piece) {
    for (unsigned char c : piece) {
        if ((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80) {
            return true;
        }
    }
    return false;
}

void classify_piece(std::string_view piece, std::vector<Token>& out) {
    if (const auto polarity = classify_emoticon(piece)) {
        out.push_back({std::string(piece),
                       *polarity == Polarity::Positive ? TokenKind::EmoticonPos : TokenKind::EmoticonNeg});
        return;
    }
    if (piece.size() >= 2 && piece.front() == '#') {
        out.push_back({"<hashtag>", TokenKind::Hashtag});
        return;
    }
    if (piece.size() >= 2 && piece.front() == '@') {
        out.push_back({"<user>", TokenKind::Usertag});
        return;
    }
    out.push_back({std::string(piece), looks_like_word(piece) ? TokenKind::Word : TokenKind::Other});
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) continue;
        const std::string_view chunk = text.substr(start, i - start);

        // Whole-chunk emoticons first so "<3" style surfaces survive intact.
        if (const auto polarity = classify_emoticon(chunk)) {
            tokens.push_back({std::string(chunk), *polarity == Polarity::Positive
                                                      ? TokenKind::EmoticonPos
                                                      : TokenKind::EmoticonNeg});
            continue;
        }

        std::size_t p = 0;
        while (p < chunk.size()) {
            if (is_punct_run_char(chunk[p])) {
                std::size_t q = p;
                while (q < chunk.size() && is_punct_run_char(chunk[q])) ++q;
                tokens.push_back({std::string(chunk.substr(p, q - p)), TokenKind::PunctRun});
                p = q;
            } else {
                std::size_t q = p;
                while (q < chunk.size() && !is_punct_run_char(chunk[q])) ++q;
                classify_piece(chunk.substr(p, q - p), tokens);
                p = q;
            }
        }
    }
    return tokens;
}

int FeatureIndex::intern(const std::string& name) {
    auto [it, inserted] = ids_.try_emplace(name, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
}

std::optional<int> FeatureIndex::find(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

void FeatureIndex::serialize(std::ostream& out) const {
    for (std::size_t i = 0; i < names_.size(); ++i) out << i << '\t' << names_[i] << '\n';
}

FeatureIndex FeatureIndex::parse(std::istream& in) {
    FeatureIndex index;
    std::string raw;
    long line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = strip_cr(raw);
        if (line.empty()) continue;
        const auto fields = split_char(line, '\t');
        const auto id = fields.size() == 2 ? parse_int(fields[0]) : std::nullopt;
        if (!id || *id != static_cast<long long>(index.size()) || fields[1].empty()) {
            throw ParseError("malformed feature-index line " + std::to_string(line_no), line_no);
        }
        index.intern(std::string(fields[1]));
    }
    return index;
}

FeatureIndex FeatureIndex::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open feature-index file: " + path);
    return parse(in);
}

void FeatureVector::add(int id, double value) {
    if (!std::isfinite(value)) throw NumericError("non-finite feature value");
    if (value == 0.0) return;
    values_[id] += value;
}

double FeatureVector::get(int id) const {
    auto it = values_.find(id);
    return it == values_.end() ? 0.0 : it->second;
}

namespace {

// Emits value under name, interning in Train mode and dropping unseen names
// in Frozen mode.
void emit(FeatureVector& vec, FeatureIndex& index, FeaturizeMode mode, const std::string& name,
          double value) {
    if (value == 0.0) return;
    if (mode == FeaturizeMode::Train) {
        vec.add(index.intern(name), value);
    } else if (const auto id = index.find(name)) {
        vec.add(*id, value);
    }
}

bool all_caps_word(std::string_view surface) {
    if (surface.size() < 2) return false;
    for (unsigned char c : surface) {
        if (c < 'A' || c > 'Z') return false;
    }
    return true;
}

// One character repeated more than three times in a row.
bool elongated_word(std::string_view surface) {
    std::size_t run = 1;
    for (std::size_t i = 1; i < surface.size(); ++i) {
        run = surface[i] == surface[i - 1] ? run + 1 : 1;
        if (run >= 4) return true;
    }
    return false;
}

}  // namespace

FeatureVector extract_features(const Tweet& tweet,
                               const std::vector<const PolarityLexicon*>& lexicons,
                               FeatureIndex& index, int ngram_max, FeaturizeMode mode) {
    if (ngram_max <= 0) throw ContractError("ngram_max must be positive");
    if (tweet.text.empty()) throw ContractError("cannot featurize empty tweet text (id " + tweet.id + ")");

    const auto tokens = tokenize(tweet.text);
    FeatureVector vec;

    // Word n-gram indicators over word-kind tokens, lower-cased.
    std::vector<std::string> words;
    for (const auto& token : tokens) {
        if (token.kind == TokenKind::Word) words.push_back(ascii_lower(token.surface));
    }
    for (int n = 1; n <= ngram_max; ++n) {
        if (words.size() < static_cast<std::size_t>(n)) break;
        for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= words.size(); ++i) {
            std::string name = "ng" + std::to_string(n) + "=";
            for (int j = 0; j < n; ++j) {
                if (j > 0) name += ' ';
                name += words[i + static_cast<std::size_t>(j)];
            }
            std::optional<int> id;
            if (mode == FeaturizeMode::Train) id = index.intern(name);
            else id = index.find(name);
            if (id && vec.get(*id) == 0.0) vec.add(*id, 1.0);  // indicator, not count
        }
    }

    // Count families.
    int all_caps = 0, hashtags = 0, elongated = 0;
    int runs_exclaim = 0, runs_question = 0, runs_mixed = 0;
    bool has_pos_emoticon = false, has_neg_emoticon = false;
    for (const auto& token : tokens) {
        switch (token.kind) {
            case TokenKind::Word:
                if (all_caps_word(token.surface)) ++all_caps;
                if (elongated_word(token.surface)) ++elongated;
                break;
            case TokenKind::Hashtag: ++hashtags; break;
            case TokenKind::EmoticonPos: has_pos_emoticon = true; break;
            case TokenKind::EmoticonNeg: has_neg_emoticon = true; break;
            case TokenKind::PunctRun: {
                const bool has_exclaim = token.surface.find('!') != std::string::npos;
                const bool has_question = token.surface.find('?') != std::string::npos;
                if (has_exclaim && has_question) ++runs_mixed;
                else if (has_exclaim) ++runs_exclaim;
                else ++runs_question;
                break;
            }
            default: break;
        }
    }
    emit(vec, index, mode, "allcaps_count", all_caps);
    emit(vec, index, mode, "hashtag_count", hashtags);
    emit(vec, index, mode, "elongated_count", elongated);
    emit(vec, index, mode, "punct_runs=exclaim", runs_exclaim);
    emit(vec, index, mode, "punct_runs=question", runs_question);
    emit(vec, index, mode, "punct_runs=mixed", runs_mixed);

    // Per-(lexicon, polarity) hit counts; generic <hashtag>/<user> surfaces
    // never match a lexicon.
    for (const PolarityLexicon* lexicon : lexicons) {
        int positive_hits = 0, negative_hits = 0;
        for (const auto& token : tokens) {
            if (token.kind == TokenKind::Hashtag || token.kind == TokenKind::Usertag) continue;
            const auto polarity = lexicon->polarity_of(ascii_lower(token.surface));
            if (!polarity) continue;
            if (*polarity == Polarity::Positive) ++positive_hits;
            else ++negative_hits;
        }
        emit(vec, index, mode, "lex=" + lexicon->name() + "|positive", positive_hits);
        emit(vec, index, mode, "lex=" + lexicon->name() + "|negative", negative_hits);
    }

    // Last-token and presence booleans.
    if (!tokens.empty()) {
        const Token& last = tokens.back();
        const bool last_punct = last.surface.find('!') != std::string::npos ||
                                last.surface.find('?') != std::string::npos;
        emit(vec, index, mode, "last_token_punct", last_punct ? 1.0 : 0.0);
        emit(vec, index, mode, "last_emoticon_pos", last.kind == TokenKind::EmoticonPos ? 1.0 : 0.0);
        emit(vec, index, mode, "last_emoticon_neg", last.kind == TokenKind::EmoticonNeg ? 1.0 : 0.0);
    }
    emit(vec, index, mode, "emoticon_pos_any", has_pos_emoticon ? 1.0 : 0.0);
    emit(vec, index, mode, "emoticon_neg_any", has_neg_emoticon ? 1.0 : 0.0);

    return vec;
}

LabeledDataset featurize_dataset(const std::vector<Tweet>& tweets,
                                 const std::vector<const PolarityLexicon*>& lexicons,
                                 FeatureIndex& index, int ngram_max, FeaturizeMode mode) {
    if (mode == FeaturizeMode::Frozen && index.size() == 0) {
        throw ContractError("cannot featurize in frozen mode with an empty feature index");
    }
    LabeledDataset data;
    data.ids.reserve(tweets.size());
    data.vectors.reserve(tweets.size());
    data.labels.reserve(tweets.size());
    for (const auto& tweet : tweets) {
        data.ids.push_back(tweet.id);
        data.vectors.push_back(extract_features(tweet, lexicons, index, ngram_max, mode));
        data.labels.push_back(tweet.label);
    }
    return data;
}

void serialize_feature_matrix(const LabeledDataset& data, std::ostream& out) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        out << data.ids[i] << '\t' << (data.labels[i] ? to_string(*data.labels[i]) : "-");
        out << '\t';
        bool first = true;
        for (const auto& [id, value] : data.vectors[i].entries()) {
            if (!first) out << ' ';
            out << id << ':' << format_real(value, 17);
            first = false;
        }
        out << '\n';
    }
}

}  // namespace lexmap
