// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_SECTIONER_HPP
#define OCRBENCH_SECTIONER_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ocrbench/corpus.hpp"
#include "ocrbench/error.hpp"
#include "ocrbench/field.hpp"
#include "ocrbench/parallel.hpp"
#include "ocrbench/textnorm.hpp"
#include "ocrbench/unicode.hpp"

namespace ocrbench {

enum class ClassifyMethod { keyword, fuzzy };

struct ClassifiedBlock {
    std::string product_key;
    std::string image_filename;
    FieldType field = FieldType::unclassified;
    std::string text; // normalized, before anchor extraction
    double density = 0.0;
    ClassifyMethod method = ClassifyMethod::keyword;
};

struct FuzzyConfig {
    /// Minimum partial-ratio score (0-100) for a fuzzy assignment.
    int threshold = 80;
};

/// Anchor hits for `field` divided by the token count; 0 for empty text.
inline double keyword_density(std::string_view text, FieldType field,
                              const NormalizationConfig& cfg = {})
{
    const std::size_t tokens = tokenize(text).size();
    if (tokens == 0) {
        return 0.0;
    }
    return static_cast<double>(count_anchor_hits(text, cfg.anchors(field))) /
           static_cast<double>(tokens);
}

namespace detail {

inline FieldType pick_field(double ingredients, double nfp, const NormalizationConfig& cfg)
{
    if (ingredients > nfp) {
        return FieldType::ingredients;
    }
    if (nfp > ingredients) {
        return FieldType::nfp;
    }
    return cfg.tie_preference;
}

} // namespace detail

/// Field with the higher keyword density; unclassified when neither field's
/// anchors occur.
inline FieldType classify_text(std::string_view text, const NormalizationConfig& cfg = {})
{
    const double ing = keyword_density(text, FieldType::ingredients, cfg);
    const double nfp = keyword_density(text, FieldType::nfp, cfg);
    if (ing == 0.0 && nfp == 0.0) {
        return FieldType::unclassified;
    }
    return detail::pick_field(ing, nfp, cfg);
}

/// Best window similarity of `needle` inside `haystack`, scaled to 0-100.
///
/// Every window of `haystack` of length min(|needle|, |haystack|), sliding
/// one scalar at a time, is scored as 1 - lev(needle, window) / |needle|;
/// the maximum is rounded half-up to an integer. Empty haystack scores 0.
inline int partial_ratio(std::u32string_view needle, std::u32string_view haystack)
{
    if (needle.empty()) {
        throw Error(Errc::empty_needle, "partial_ratio needs a non-empty needle");
    }
    if (haystack.empty()) {
        return 0;
    }
    const std::size_t len = needle.size();
    const std::size_t width = std::min(len, haystack.size());
    std::size_t best = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> row(width + 1);
    for (std::size_t start = 0; start + width <= haystack.size() && best > 0; ++start) {
        const std::u32string_view window = haystack.substr(start, width);
        for (std::size_t j = 0; j <= width; ++j) {
            row[j] = j;
        }
        for (std::size_t i = 1; i <= len; ++i) {
            std::size_t diag = row[0];
            row[0] = i;
            for (std::size_t j = 1; j <= width; ++j) {
                const std::size_t up = row[j];
                row[j] = std::min({up + 1, row[j - 1] + 1,
                                   diag + (needle[i - 1] == window[j - 1] ? 0 : 1)});
                diag = up;
            }
        }
        best = std::min(best, row[width]);
    }
    // round(100 * (len - best) / len), half-up, in integers
    return static_cast<int>((200 * (len - best) + len) / (2 * len));
}

inline int partial_ratio(std::string_view needle, std::string_view haystack)
{
    return partial_ratio(unicode::decode(needle), unicode::decode(haystack));
}

/// Best partial-ratio score of any anchor of `field` against `text`.
inline int best_anchor_score(std::u32string_view text, FieldType field,
                             const NormalizationConfig& cfg)
{
    int best = 0;
    for (const auto& anchor : cfg.anchors(field)) {
        best = std::max(best, partial_ratio(unicode::decode(anchor), text));
        if (best == 100) {
            break;
        }
    }
    return best;
}

/// Fuzzy counterpart of classify_text for fragmented OCR output: the field
/// whose best anchor score is highest and at least `fz.threshold`.
inline FieldType classify_fuzzy(std::string_view text, const NormalizationConfig& cfg = {},
                                const FuzzyConfig& fz = {})
{
    const std::u32string decoded = unicode::decode(text);
    if (decoded.empty()) {
        return FieldType::unclassified;
    }
    const int ing = best_anchor_score(decoded, FieldType::ingredients, cfg);
    const int nfp = best_anchor_score(decoded, FieldType::nfp, cfg);
    if (std::max(ing, nfp) < fz.threshold) {
        return FieldType::unclassified;
    }
    return detail::pick_field(ing, nfp, cfg);
}

struct SectionerOptions {
    /// Fall back to fuzzy classification for blocks with no exact anchor.
    bool fuzzy = false;
    FuzzyConfig fuzzy_config;
};

/// Normalizes and classifies one image's raw OCR text.
inline ClassifiedBlock classify_block(const ImageRecord& record, const NormalizationConfig& cfg = {},
                                      const SectionerOptions& opts = {})
{
    ClassifiedBlock block;
    block.product_key = record.product_key;
    block.image_filename = record.image_filename;
    block.text = normalize_text(record.raw_text, cfg);
    block.field = classify_text(block.text, cfg);
    if (block.field == FieldType::unclassified && opts.fuzzy) {
        block.field = classify_fuzzy(block.text, cfg, opts.fuzzy_config);
        block.method = ClassifyMethod::fuzzy;
    }
    if (block.field != FieldType::unclassified) {
        block.density = keyword_density(block.text, block.field, cfg);
    }
    return block;
}

namespace detail {

// True when `a` should be retained over `b`.
inline bool better_candidate(const ClassifiedBlock& a, const ClassifiedBlock& b)
{
    if (a.density != b.density) {
        return a.density > b.density;
    }
    const std::size_t la = unicode::length(a.text);
    const std::size_t lb = unicode::length(b.text);
    if (la != lb) {
        return la > lb;
    }
    return a.image_filename < b.image_filename;
}

} // namespace detail

/// Highest-density block for (product, field); ties go to the longer text,
/// then the lexicographically smaller filename.
inline std::optional<ClassifiedBlock> select_candidate(std::span<const ClassifiedBlock> blocks,
                                                       std::string_view product, FieldType field)
{
    const ClassifiedBlock* best = nullptr;
    for (const auto& b : blocks) {
        if (b.product_key != product || b.field != field) {
            continue;
        }
        if (best == nullptr || detail::better_candidate(b, *best)) {
            best = &b;
        }
    }
    if (best == nullptr) {
        return std::nullopt;
    }
    return *best;
}

/// Full sectioning pass: classify every record (in parallel when jobs > 1),
/// keep one block per (product, field) and cut it at the field's anchor.
/// Output is sorted by product, then field.
inline std::vector<SectionedText> section_records(std::span<const ImageRecord> records,
                                                  const NormalizationConfig& cfg = {},
                                                  const SectionerOptions& opts = {},
                                                  unsigned jobs = 1)
{
    std::vector<ClassifiedBlock> blocks(records.size());
    parallel_for(records.size(), jobs,
                 [&](std::size_t i) { blocks[i] = classify_block(records[i], cfg, opts); });

    std::map<std::string, std::vector<ClassifiedBlock>> by_product;
    for (auto& b : blocks) {
        if (b.field != FieldType::unclassified) {
            by_product[b.product_key].push_back(std::move(b));
        }
    }
    std::vector<SectionedText> out;
    for (const auto& [product, list] : by_product) {
        for (FieldType field : target_fields) {
            if (auto chosen = select_candidate(list, product, field)) {
                out.push_back({chosen->product_key, chosen->image_filename, field,
                               extract_after_keyword(chosen->text, field, cfg).text});
            }
        }
    }
    return out;
}

/// Sectioning applied to already-sectioned rows: field assignments are
/// kept and text is re-normalized (a no-op on normalized text).
inline std::vector<SectionedText> resection(std::vector<SectionedText> rows,
                                            const NormalizationConfig& cfg = {})
{
    for (auto& r : rows) {
        r.text = normalize_text(r.text, cfg);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const SectionedText& a, const SectionedText& b) {
        return std::tie(a.product_key, a.field) < std::tie(b.product_key, b.field);
    });
    return rows;
}

} // namespace ocrbench

#endif // OCRBENCH_SECTIONER_HPP
