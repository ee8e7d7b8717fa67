#include "lexmap/lexicon.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "lexmap/errors.hpp"

namespace lexmap {

std::string_view to_string(Polarity p) {
    return p == Polarity::Positive ? "positive" : "negative";
}

Polarity polarity_from_string(std::string_view token) {
    if (token == "positive") return Polarity::Positive;
    if (token == "negative") return Polarity::Negative;
    throw ParseError("unknown polarity token \"" + std::string(token) + "\"");
}

std::optional<Polarity> PolarityLexicon::polarity_of(const std::string& word) const {
    auto it = entries_.find(word);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

const Provenance* PolarityLexicon::provenance_of(const std::string& word) const {
    auto it = provenance_.find(word);
    return it == provenance_.end() ? nullptr : &it->second;
}

void PolarityLexicon::add(std::string word, Polarity polarity, Provenance provenance) {
    auto it = entries_.find(word);
    if (it != entries_.end()) {
        if (it->second != polarity) {
            throw ContractError("conflicting polarity for word \"" + word + "\" in lexicon " + name_);
        }
        return;
    }
    provenance_.emplace(word, std::move(provenance));
    entries_.emplace(std::move(word), polarity);
}

std::size_t PolarityLexicon::count(Polarity p) const {
    std::size_t n = 0;
    for (const auto& [word, polarity] : entries_) {
        if (polarity == p) ++n;
    }
    return n;
}

PolarityLexicon PolarityLexicon::parse(std::istream& in, std::string name, CaseFold fold) {
    PolarityLexicon lex(std::move(name));
    std::string raw;
    long line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = strip_cr(raw);
        if (is_comment_or_blank(line)) continue;
        const auto fields = split_char(line, '\t');
        if (fields.size() < 2 || fields[0].empty()) {
            throw ParseError("expected \"word<TAB>polarity\" at line " + std::to_string(line_no),
                             line_no);
        }
        Polarity polarity;
        try {
            polarity = polarity_from_string(fields[1]);
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " at line " + std::to_string(line_no), line_no);
        }

        Provenance prov;
        if (fields.size() >= 4) {
            const auto sim = parse_real(fields[3]);
            if (sim && std::isfinite(*sim)) {
                prov.origin = std::string(fields[2]);
                prov.similarity = *sim;
                prov.method = ProvenanceTag::Transferred;
            }
        }

        const std::string word = fold_case(fields[0], fold);
        const auto existing = lex.polarity_of(word);
        if (existing && *existing != polarity) {
            throw ParseError("conflicting polarity for word \"" + word + "\" at line " +
                                 std::to_string(line_no),
                             line_no);
        }
        lex.add(word, polarity, std::move(prov));
    }
    if (lex.empty()) throw ParseError("empty lexicon: no entries parsed");
    return lex;
}

PolarityLexicon PolarityLexicon::parse_file(const std::string& path, std::string name,
                                            CaseFold fold) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open lexicon file: " + path);
    return parse(in, std::move(name), fold);
}

void PolarityLexicon::serialize(std::ostream& out) const {
    for (const auto& [word, polarity] : entries_) {
        out << word << '\t' << to_string(polarity);
        auto it = provenance_.find(word);
        if (it != provenance_.end() && it->second.similarity) {
            out << '\t' << it->second.origin << '\t' << format_real(*it->second.similarity, 17);
        }
        out << '\n';
    }
}

void TransferReport::write_kv(std::ostream& out) const {
    out << "source_size=" << source_size << '\n'
        << "translated_source_words=" << translated_source_words << '\n'
        << "oov_source_words=" << oov_source_words << '\n'
        << "no_neighbor_source_words=" << no_neighbor_source_words << '\n'
        << "conflict_drops=" << conflict_drops << '\n'
        << "output_size=" << output_size << '\n'
        << "lambda=" << format_real(lambda_used, 17) << '\n';
}

void TransferReport::write_block(std::ostream& out) const {
    out << "[transfer report]\n"
        << "  source words:        " << source_size << '\n'
        << "  translated:          " << translated_source_words << '\n'
        << "  out-of-vocabulary:   " << oov_source_words << '\n'
        << "  below threshold:     " << no_neighbor_source_words << '\n'
        << "  conflict drops:      " << conflict_drops << '\n'
        << "  output entries:      " << output_size << '\n'
        << "  lambda:              " << format_real(lambda_used, 6) << '\n';
}

TransferResult transfer_lexicon(const PolarityLexicon& lex, const LinearMap& map,
                                const EmbeddingTable& src, const EmbeddingTable& tgt,
                                double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw ContractError("transfer_lexicon: lambda must lie in (0, 1]");
    }
    if (src.dim() != map.d_src() || tgt.dim() != map.d_tgt()) {
        throw ContractError("transfer_lexicon: table dimensions do not match the map");
    }

    struct Candidate {
        bool positive_seen = false;
        bool negative_seen = false;
        double best_similarity = -2.0;
        std::string best_origin;
        Polarity best_polarity = Polarity::Positive;
    };
    std::map<std::string, Candidate> candidates;

    TransferResult result;
    result.report.source_size = lex.size();
    result.report.lambda_used = lambda;
    result.lexicon.set_name(lex.name());

    for (const auto& [word, polarity] : lex.entries()) {
        const auto si = src.find(word);
        if (!si) {
            ++result.report.oov_source_words;
            continue;
        }
        const Eigen::VectorXd x = src.vectors().row(static_cast<Eigen::Index>(*si)).transpose();
        const Eigen::VectorXd projected = map.project(x);
        if (projected.norm() == 0.0) {
            ++result.report.no_neighbor_source_words;
            continue;
        }
        const auto neighbors = tgt.neighbors_above(projected, lambda);
        if (neighbors.empty()) {
            ++result.report.no_neighbor_source_words;
            continue;
        }
        ++result.report.translated_source_words;
        for (const auto& neighbor : neighbors) {
            Candidate& c = candidates[neighbor.word];
            if (polarity == Polarity::Positive) c.positive_seen = true;
            else c.negative_seen = true;
            // Keep the highest-similarity origin; ties resolve to the
            // lexicographically smaller origin word.
            if (neighbor.similarity > c.best_similarity ||
                (neighbor.similarity == c.best_similarity && word < c.best_origin)) {
                c.best_similarity = neighbor.similarity;
                c.best_origin = word;
                c.best_polarity = polarity;
            }
        }
    }

    for (const auto& [target_word, c] : candidates) {
        if (c.positive_seen && c.negative_seen) {
            ++result.report.conflict_drops;
            continue;
        }
        Provenance prov;
        prov.origin = c.best_origin;
        prov.similarity = c.best_similarity;
        prov.method = ProvenanceTag::Transferred;
        result.lexicon.add(target_word, c.best_polarity, std::move(prov));
    }
    result.report.output_size = result.lexicon.size();
    return result;
}

UnionResult union_many(const std::vector<const PolarityLexicon*>& inputs, std::string name) {
    struct Merged {
        bool positive_seen = false;
        bool negative_seen = false;
        bool native_positive = false;
        bool native_negative = false;
        std::size_t sources = 0;
        const Provenance* best = nullptr;
        bool any_native = false;
    };
    std::map<std::string, Merged> merged;

    auto better = [](const Provenance* a, const Provenance* b) {
        // Provenance carried into the union: prefer a scored (transferred)
        // record, then higher similarity, then smaller origin.
        if (!b) return true;
        if (!a) return false;
        const bool sa = a->similarity.has_value();
        const bool sb = b->similarity.has_value();
        if (sa != sb) return sa;
        if (sa && sb && *a->similarity != *b->similarity) return *a->similarity > *b->similarity;
        return a->origin < b->origin;
    };

    for (const PolarityLexicon* lex : inputs) {
        for (const auto& [word, polarity] : lex->entries()) {
            Merged& m = merged[word];
            ++m.sources;
            const Provenance* prov = lex->provenance_of(word);
            const bool native = prov == nullptr || prov->method != ProvenanceTag::Transferred;
            if (polarity == Polarity::Positive) {
                m.positive_seen = true;
                m.native_positive = m.native_positive || native;
            } else {
                m.negative_seen = true;
                m.native_negative = m.native_negative || native;
            }
            m.any_native = m.any_native || native;
            if (prov && better(prov, m.best)) m.best = prov;
        }
    }

    UnionResult result;
    result.lexicon.set_name(std::move(name));
    for (const auto& [word, m] : merged) {
        Polarity polarity;
        if (m.positive_seen && m.negative_seen) {
            // Human-labelled entries outrank induced ones; a conflict among
            // native labels (or among transferred-only labels) drops the word.
            if (m.native_positive && !m.native_negative) {
                polarity = Polarity::Positive;
                ++result.native_overrides;
            } else if (m.native_negative && !m.native_positive) {
                polarity = Polarity::Negative;
                ++result.native_overrides;
            } else {
                ++result.conflicts;
                continue;
            }
        } else {
            polarity = m.positive_seen ? Polarity::Positive : Polarity::Negative;
        }
        Provenance prov;
        if (m.sources > 1) {
            prov.method = ProvenanceTag::Union;
            if (!m.any_native && m.best) {
                prov.origin = m.best->origin;
                prov.similarity = m.best->similarity;
            }
        } else if (m.best) {
            prov = *m.best;
        }
        result.lexicon.add(word, polarity, std::move(prov));
    }
    return result;
}

UnionResult union_lexicons(const PolarityLexicon& a, const PolarityLexicon& b) {
    return union_many({&a, &b}, a.name() + "+" + b.name());
}

LexiconStats lexicon_stats(const PolarityLexicon& lex) {
    LexiconStats stats;
    double sum = 0.0;
    std::size_t scored = 0;
    for (const auto& [word, polarity] : lex.entries()) {
        if (polarity == Polarity::Positive) ++stats.positive_count;
        else ++stats.negative_count;
        const Provenance* prov = lex.provenance_of(word);
        if (prov && prov->similarity) {
            sum += *prov->similarity;
            ++scored;
        }
    }
    if (scored > 0) stats.mean_transferred_similarity = sum / static_cast<double>(scored);
    return stats;
}

}  // namespace lexmap
