// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_TEXTNORM_HPP
#define OCRBENCH_TEXTNORM_HPP

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ocrbench/csv.hpp"
#include "ocrbench/error.hpp"
#include "ocrbench/field.hpp"
#include "ocrbench/unicode.hpp"

namespace ocrbench {

/// Controls normalization and anchor-keyword handling. Letters, digits and
/// the ASCII space are always kept; `keep_extra` lists further characters
/// that survive special-character filtering.
struct NormalizationConfig {
    std::u32string keep_extra = U".,%():-/";
    std::vector<std::string> ingredient_anchors{"ingredients:", "ingredients", "ingrediente",
                                                "bestanddele"};
    std::vector<std::string> nfp_anchors{"nutrition information", "nutritional information",
                                         "nutrition facts", "typical nutritional information"};
    /// Winner when both fields score equally and above zero.
    FieldType tie_preference = FieldType::ingredients;

    const std::vector<std::string>& anchors(FieldType field) const
    {
        return field == FieldType::nfp ? nfp_anchors : ingredient_anchors;
    }

    bool keeps(char32_t c) const noexcept
    {
        if (c == U' ') {
            return true;
        }
        if (unicode::is_space(c)) {
            return false;
        }
        return unicode::is_letter(c) || unicode::is_digit(c) ||
               keep_extra.find(c) != std::u32string::npos;
    }

    void validate() const
    {
        if (ingredient_anchors.empty() || nfp_anchors.empty()) {
            throw Error(Errc::invalid_config, "anchor keyword lists must be non-empty");
        }
        for (const auto* list : {&ingredient_anchors, &nfp_anchors}) {
            for (const auto& a : *list) {
                if (a.empty()) {
                    throw Error(Errc::invalid_config, "anchor keywords must be non-empty");
                }
            }
        }
        if (tie_preference == FieldType::unclassified) {
            throw Error(Errc::invalid_config, "tie_preference must be ingredients or nfp");
        }
    }
};

/// Lowercase, replace characters outside the keep-set with spaces, collapse
/// whitespace runs and trim. Idempotent; never lengthens the input.
inline std::string normalize_text(std::string_view raw, const NormalizationConfig& cfg = {})
{
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char32_t c : unicode::decode(raw)) {
        c = unicode::to_lower(c);
        if (c == U' ' || !cfg.keeps(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        unicode::append(out, c);
    }
    return out;
}

/// Splits on whitespace; never yields empty tokens.
inline std::vector<std::string> tokenize(std::string_view text)
{
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || (text[i] >= '\t' && text[i] <= '\r'))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < text.size() && !(text[i] == ' ' || (text[i] >= '\t' && text[i] <= '\r'))) {
            ++i;
        }
        if (i > start) {
            tokens.emplace_back(text.substr(start, i - start));
        }
    }
    return tokens;
}

struct AnchorMatch {
    std::size_t offset = 0; // bytes
    std::size_t length = 0; // bytes
};

/// Leftmost anchor occurrence; at equal offsets the longest anchor wins.
inline std::optional<AnchorMatch> find_first_anchor(std::string_view text,
                                                    const std::vector<std::string>& anchors)
{
    std::optional<AnchorMatch> best;
    for (const auto& a : anchors) {
        if (a.empty()) {
            continue;
        }
        const auto pos = text.find(a);
        if (pos == std::string_view::npos) {
            continue;
        }
        if (!best || pos < best->offset || (pos == best->offset && a.size() > best->length)) {
            best = AnchorMatch{pos, a.size()};
        }
    }
    return best;
}

/// Non-overlapping leftmost-longest anchor occurrences.
inline std::size_t count_anchor_hits(std::string_view text, const std::vector<std::string>& anchors)
{
    std::vector<std::string_view> by_length(anchors.begin(), anchors.end());
    std::stable_sort(by_length.begin(), by_length.end(),
                     [](std::string_view a, std::string_view b) { return a.size() > b.size(); });
    std::size_t hits = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t advance = 1;
        for (std::string_view a : by_length) {
            if (!a.empty() && text.substr(i, a.size()) == a) {
                ++hits;
                advance = a.size();
                break;
            }
        }
        i += advance;
    }
    return hits;
}

struct Extraction {
    std::string text;
    bool no_anchor = false;
};

/// Text strictly after the earliest anchor for `field`, without the
/// whitespace that separated it from the anchor. Input passes through
/// unchanged (flagged `no_anchor`) when no anchor occurs.
inline Extraction extract_after_keyword(std::string_view text, FieldType field,
                                        const NormalizationConfig& cfg = {})
{
    const auto match = find_first_anchor(text, cfg.anchors(field));
    if (!match) {
        return {std::string(text), true};
    }
    std::string_view rest = text.substr(match->offset + match->length);
    while (!rest.empty() && (rest.front() == ' ' || (rest.front() >= '\t' && rest.front() <= '\r'))) {
        rest.remove_prefix(1);
    }
    return {std::string(rest), false};
}

namespace detail {

inline std::vector<std::string> anchor_list(const nlohmann::json& j, const char* key,
                                            const NormalizationConfig& cfg)
{
    if (!j.is_array()) {
        throw Error(Errc::invalid_config, std::string("anchors.") + key + " must be an array");
    }
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) {
            throw Error(Errc::invalid_config, std::string("anchors.") + key + " entries must be strings");
        }
        // Anchors are matched against normalized text, so normalize them too.
        std::string a = normalize_text(item.get<std::string>(), cfg);
        if (a.empty()) {
            throw Error(Errc::invalid_config,
                        std::string("anchors.") + key + " entry normalizes to an empty string");
        }
        out.push_back(std::move(a));
    }
    return out;
}

} // namespace detail

/// Reads `keep_charset` (string of extra kept characters), `anchors.ingredients`,
/// `anchors.nfp` and optionally `tie_preference`. Absent keys keep defaults.
inline NormalizationConfig config_from_json(const nlohmann::json& j)
{
    NormalizationConfig cfg;
    if (!j.is_object()) {
        throw Error(Errc::invalid_config, "config must be a JSON object");
    }
    if (auto it = j.find("keep_charset"); it != j.end()) {
        if (!it->is_string()) {
            throw Error(Errc::invalid_config, "keep_charset must be a string");
        }
        cfg.keep_extra = unicode::decode(it->get<std::string>());
    }
    if (auto it = j.find("anchors"); it != j.end()) {
        if (!it->is_object()) {
            throw Error(Errc::invalid_config, "anchors must be an object");
        }
        if (auto a = it->find("ingredients"); a != it->end()) {
            cfg.ingredient_anchors = detail::anchor_list(*a, "ingredients", cfg);
        }
        if (auto a = it->find("nfp"); a != it->end()) {
            cfg.nfp_anchors = detail::anchor_list(*a, "nfp", cfg);
        }
    }
    if (auto it = j.find("tie_preference"); it != j.end()) {
        const auto f = it->is_string() ? parse_field_type(it->get<std::string>()) : std::nullopt;
        if (!f) {
            throw Error(Errc::invalid_config, "tie_preference must be \"ingredients\" or \"nfp\"");
        }
        cfg.tie_preference = *f;
    }
    cfg.validate();
    return cfg;
}

inline NormalizationConfig load_config(const std::filesystem::path& path)
{
    const std::string text = csv::read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::invalid_config, path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

} // namespace ocrbench

#endif // OCRBENCH_TEXTNORM_HPP
