#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexmap {

// Load-time case folding policy, applied identically to embeddings,
// dictionaries and lexicons. Lower folds ASCII A-Z only; multi-byte UTF-8
// sequences pass through untouched.
enum class CaseFold { None, Lower };

std::string fold_case(std::string_view word, CaseFold fold);
std::string ascii_lower(std::string_view word);

// Split on runs of spaces/tabs; never returns empty fields.
std::vector<std::string_view> split_ws(std::string_view line);

// Exact split on a separator; keeps empty fields.
std::vector<std::string_view> split_char(std::string_view line, char sep);

// Full-token numeric parses. Return nullopt on any trailing garbage.
std::optional<double> parse_real(std::string_view token);
std::optional<long long> parse_int(std::string_view token);

// printf %.<digits>g formatting; 17 digits round-trips a double exactly.
std::string format_real(double value, int significant_digits);

// Drops a trailing '\r' so CRLF input parses like LF input.
std::string_view strip_cr(std::string_view line);

bool is_comment_or_blank(std::string_view line);

uint64_t fnv1a64(std::string_view data);
std::string hex64(uint64_t value);

}  // namespace lexmap
