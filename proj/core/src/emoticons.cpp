#include "lexmap/features.hpp"

namespace lexmap {

// 42-entry inventory, matched against token surfaces verbatim (no case
// folding: "XD" and "xD" are separate entries).
const std::vector<std::pair<std::string_view, Polarity>>& emoticon_table() {
    static const std::vector<std::pair<std::string_view, Polarity>> table = {
        {":)", Polarity::Positive},   {":-)", Polarity::Positive},
        {":]", Polarity::Positive},   {":-]", Polarity::Positive},
        {":}", Polarity::Positive},   {"=)", Polarity::Positive},
        {"=D", Polarity::Positive},   {":D", Polarity::Positive},
        {":-D", Polarity::Positive},  {";)", Polarity::Positive},
        {";-)", Polarity::Positive},  {":p", Polarity::Positive},
        {":P", Polarity::Positive},   {":-P", Polarity::Positive},
        {"xD", Polarity::Positive},   {"XD", Polarity::Positive},
        {"^^", Polarity::Positive},   {"^_^", Polarity::Positive},
        {":3", Polarity::Positive},   {"<3", Polarity::Positive},
        {"(:", Polarity::Positive},   {":')", Polarity::Positive},

        {":(", Polarity::Negative},   {":-(", Polarity::Negative},
        {":[", Polarity::Negative},   {":-[", Polarity::Negative},
        {":{", Polarity::Negative},   {"=(", Polarity::Negative},
        {";(", Polarity::Negative},   {";-(", Polarity::Negative},
        {"D:", Polarity::Negative},   {":/", Polarity::Negative},
        {":-/", Polarity::Negative},  {":\\", Polarity::Negative},
        {":-\\", Polarity::Negative}, {":|", Polarity::Negative},
        {":-|", Polarity::Negative},  {":'(", Polarity::Negative},
        {"</3", Polarity::Negative},  {">:(", Polarity::Negative},
        {"T_T", Polarity::Negative},  {"-_-", Polarity::Negative},
    };
    return table;
}

std::optional<Polarity> classify_emoticon(std::string_view surface) {
    for (const auto& [emoticon, polarity] : emoticon_table()) {
        if (surface == emoticon) return polarity;
    }
    return std::nullopt;
}

}  // namespace lexmap
