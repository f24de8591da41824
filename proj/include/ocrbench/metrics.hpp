// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_METRICS_HPP
#define OCRBENCH_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ocrbench/corpus.hpp"
#include "ocrbench/error.hpp"
#include "ocrbench/field.hpp"
#include "ocrbench/textnorm.hpp"
#include "ocrbench/unicode.hpp"

namespace ocrbench {

/// Unit-cost edit operations turning a source into a target sequence.
struct EditOps {
    std::size_t substitutions = 0;
    std::size_t deletions = 0;  // source elements dropped
    std::size_t insertions = 0; // target elements added

    std::size_t total() const noexcept { return substitutions + deletions + insertions; }

    friend bool operator==(const EditOps&, const EditOps&) = default;
};

struct EditResult {
    std::size_t distance = 0;
    EditOps ops;
};

/// Levenshtein distance in O(min(|a|,|b|)) memory.
template <std::ranges::random_access_range A, std::ranges::random_access_range B>
std::size_t edit_distance(const A& a, const B& b)
{
    const auto n = static_cast<std::size_t>(std::ranges::size(a));
    const auto m = static_cast<std::size_t>(std::ranges::size(b));
    if (n < m) {
        return edit_distance(b, a);
    }
    if (m == 0) {
        return n;
    }
    auto first_b = std::ranges::begin(b);
    auto first_a = std::ranges::begin(a);
    std::vector<std::size_t> row(m + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        const auto& ai = first_a[static_cast<std::ptrdiff_t>(i - 1)];
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t up = row[j];
            const std::size_t cost = (ai == first_b[static_cast<std::ptrdiff_t>(j - 1)]) ? 0 : 1;
            row[j] = std::min({up + 1, row[j - 1] + 1, diag + cost});
            diag = up;
        }
    }
    return row[m];
}

/// Levenshtein distance plus the S/D/I split of one optimal alignment.
/// Traceback prefers the diagonal, then deletion, then insertion.
template <std::ranges::random_access_range A, std::ranges::random_access_range B>
EditResult levenshtein(const A& a, const B& b)
{
    const auto n = static_cast<std::size_t>(std::ranges::size(a));
    const auto m = static_cast<std::size_t>(std::ranges::size(b));
    auto ia = std::ranges::begin(a);
    auto ib = std::ranges::begin(b);
    const auto at = [&](std::size_t i, std::size_t j) -> std::size_t { return i * (m + 1) + j; };
    const auto same = [&](std::size_t i, std::size_t j) {
        return ia[static_cast<std::ptrdiff_t>(i - 1)] == ib[static_cast<std::ptrdiff_t>(j - 1)];
    };

    std::vector<std::uint32_t> dp((n + 1) * (m + 1));
    for (std::size_t i = 0; i <= n; ++i) {
        dp[at(i, 0)] = static_cast<std::uint32_t>(i);
    }
    for (std::size_t j = 0; j <= m; ++j) {
        dp[at(0, j)] = static_cast<std::uint32_t>(j);
    }
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            dp[at(i, j)] = std::min({dp[at(i - 1, j)] + 1, dp[at(i, j - 1)] + 1,
                                     dp[at(i - 1, j - 1)] + (same(i, j) ? 0u : 1u)});
        }
    }

    EditResult result;
    result.distance = dp[at(n, m)];
    std::size_t i = n;
    std::size_t j = m;
    while (i > 0 || j > 0) {
        if (i > 0 && j > 0 && dp[at(i, j)] == dp[at(i - 1, j - 1)] + (same(i, j) ? 0u : 1u)) {
            if (!same(i, j)) {
                ++result.ops.substitutions;
            }
            --i;
            --j;
        } else if (i > 0 && dp[at(i, j)] == dp[at(i - 1, j)] + 1) {
            ++result.ops.deletions;
            --i;
        } else {
            ++result.ops.insertions;
            --j;
        }
    }
    return result;
}

/// Character error rate: edits / reference length, in Unicode scalars.
/// Exceeds 1 when the hypothesis carries many insertions.
inline double cer(std::string_view reference, std::string_view hypothesis)
{
    const std::u32string ref = unicode::decode(reference);
    if (ref.empty()) {
        throw Error(Errc::empty_reference, "CER needs a non-empty reference");
    }
    const std::u32string hyp = unicode::decode(hypothesis);
    return static_cast<double>(edit_distance(ref, hyp)) / static_cast<double>(ref.size());
}

/// Word error rate over whitespace tokens.
inline double wer(std::string_view reference, std::string_view hypothesis)
{
    const auto ref = tokenize(reference);
    if (ref.empty()) {
        throw Error(Errc::empty_reference, "WER needs at least one reference token");
    }
    const auto hyp = tokenize(hypothesis);
    return static_cast<double>(edit_distance(ref, hyp)) / static_cast<double>(ref.size());
}

struct NgramCount {
    std::size_t matches = 0;
    std::size_t total = 0;

    friend bool operator==(const NgramCount&, const NgramCount&) = default;
};

namespace detail {

using NgramTable = std::map<std::vector<std::string_view>, std::size_t>;

inline NgramTable count_ngrams(std::span<const std::string> tokens, std::size_t n)
{
    NgramTable table;
    if (n == 0 || tokens.size() < n) {
        return table;
    }
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        ++table[std::vector<std::string_view>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                              tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
    }
    return table;
}

} // namespace detail

/// Clipped n-gram matches against a single reference. `total` is the number
/// of hypothesis n-grams, 0 when the hypothesis is shorter than n.
inline NgramCount modified_ngram_precision(std::span<const std::string> reference,
                                           std::span<const std::string> hypothesis, std::size_t n)
{
    if (n == 0) {
        throw Error(Errc::invalid_config, "n-gram order must be >= 1");
    }
    NgramCount out;
    if (hypothesis.size() < n) {
        return out;
    }
    const auto ref = detail::count_ngrams(reference, n);
    for (const auto& [gram, count] : detail::count_ngrams(hypothesis, n)) {
        const auto it = ref.find(gram);
        out.matches += std::min(count, it == ref.end() ? std::size_t{0} : it->second);
    }
    out.total = hypothesis.size() - n + 1;
    return out;
}

enum class BleuSmoothing { none, method4 };

struct BleuParams {
    std::size_t max_order = 4;
    /// Per-order weights; empty means uniform 1/max_order.
    std::vector<double> weights;
    BleuSmoothing smoothing = BleuSmoothing::method4;
    /// Smoothing-4 constant K.
    double k = 5.0;

    std::vector<double> resolved_weights() const
    {
        if (max_order == 0) {
            throw Error(Errc::invalid_config, "BLEU max_order must be >= 1");
        }
        if (weights.empty()) {
            return std::vector<double>(max_order, 1.0 / static_cast<double>(max_order));
        }
        if (weights.size() != max_order) {
            throw Error(Errc::invalid_config, "BLEU weights must have max_order entries");
        }
        const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
        if (std::abs(sum - 1.0) > 1e-9 ||
            std::any_of(weights.begin(), weights.end(), [](double w) { return w < 0; })) {
            throw Error(Errc::invalid_config, "BLEU weights must be non-negative and sum to 1");
        }
        return weights;
    }
};

/// Sentence BLEU against one reference:
///
///   BLEU = BP * exp(sum_n w_n log p_n),   BP = 1 if c > r else exp(1 - r/c)
///
/// with c/r the hypothesis/reference token counts. Orders longer than the
/// hypothesis are dropped and the remaining weights rescaled to sum to 1,
/// so identical inputs always score 1. No unigram match scores 0.
///
/// Smoothing method 4 (Chen & Cherry 2014, as in NLTK): the i-th order with
/// zero matches, counting from 1, gets p_n = ln(c) / (K * 2^i * total_n).
inline double bleu_tokens(std::span<const std::string> reference,
                          std::span<const std::string> hypothesis, const BleuParams& params = {})
{
    if (reference.empty()) {
        throw Error(Errc::empty_reference, "BLEU needs a non-empty reference");
    }
    const std::vector<double> weights = params.resolved_weights();
    const std::size_t c = hypothesis.size();
    if (c == 0) {
        return 0.0;
    }
    const std::size_t order = std::min(params.max_order, c);
    const double weight_sum = std::accumulate(weights.begin(),
                                              weights.begin() + static_cast<std::ptrdiff_t>(order), 0.0);
    if (weight_sum <= 0.0) {
        return 0.0;
    }

    double log_sum = 0.0;
    int smoothed = 0;
    for (std::size_t n = 1; n <= order; ++n) {
        const NgramCount count = modified_ngram_precision(reference, hypothesis, n);
        double p = 0.0;
        if (count.matches > 0) {
            p = static_cast<double>(count.matches) / static_cast<double>(count.total);
        } else if (n == 1 || params.smoothing == BleuSmoothing::none) {
            return 0.0;
        } else {
            ++smoothed;
            p = std::log(static_cast<double>(c)) / (params.k * std::ldexp(1.0, smoothed)) /
                static_cast<double>(count.total);
        }
        log_sum += weights[n - 1] / weight_sum * std::log(p);
    }

    const double r = static_cast<double>(reference.size());
    const double bp = static_cast<double>(c) > r ? 1.0 : std::exp(1.0 - r / static_cast<double>(c));
    return bp * std::exp(log_sum);
}

inline double bleu(std::string_view reference, std::string_view hypothesis,
                   const BleuParams& params = {})
{
    return bleu_tokens(tokenize(reference), tokenize(hypothesis), params);
}

template <std::ranges::random_access_range A, std::ranges::random_access_range B>
std::size_t lcs_length(const A& a, const B& b)
{
    const auto n = static_cast<std::size_t>(std::ranges::size(a));
    const auto m = static_cast<std::size_t>(std::ranges::size(b));
    auto ia = std::ranges::begin(a);
    auto ib = std::ranges::begin(b);
    std::vector<std::size_t> row(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        std::size_t diag = 0;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t up = row[j];
            row[j] = ia[static_cast<std::ptrdiff_t>(i - 1)] == ib[static_cast<std::ptrdiff_t>(j - 1)]
                         ? diag + 1
                         : std::max(up, row[j - 1]);
            diag = up;
        }
    }
    return row[m];
}

/// Token-level ROUGE-L F-measure with beta = 1.
inline double rouge_l(std::string_view reference, std::string_view hypothesis)
{
    const auto ref = tokenize(reference);
    if (ref.empty()) {
        throw Error(Errc::empty_reference, "ROUGE-L needs a non-empty reference");
    }
    const auto hyp = tokenize(hypothesis);
    if (hyp.empty()) {
        return 0.0;
    }
    const auto lcs = static_cast<double>(lcs_length(ref, hyp));
    if (lcs == 0.0) {
        return 0.0;
    }
    const double recall = lcs / static_cast<double>(ref.size());
    const double precision = lcs / static_cast<double>(hyp.size());
    constexpr double beta2 = 1.0;
    return (1.0 + beta2) * recall * precision / (recall + beta2 * precision);
}

/// Bag-of-tokens F1: overlap counts each token min(ref count, hyp count) times.
inline double token_f1(std::string_view reference, std::string_view hypothesis)
{
    const auto ref = tokenize(reference);
    if (ref.empty()) {
        throw Error(Errc::empty_reference, "F1 needs a non-empty reference");
    }
    const auto hyp = tokenize(hypothesis);
    if (hyp.empty()) {
        return 0.0;
    }
    std::map<std::string_view, std::size_t> ref_counts;
    for (const auto& t : ref) {
        ++ref_counts[t];
    }
    std::size_t overlap = 0;
    for (const auto& t : hyp) {
        if (auto it = ref_counts.find(t); it != ref_counts.end() && it->second > 0) {
            --it->second;
            ++overlap;
        }
    }
    if (overlap == 0) {
        return 0.0;
    }
    const double precision = static_cast<double>(overlap) / static_cast<double>(hyp.size());
    const double recall = static_cast<double>(overlap) / static_cast<double>(ref.size());
    return 2.0 * precision * recall / (precision + recall);
}

struct MetricRow {
    std::string product_key;
    std::string image_filename;
    FieldType field = FieldType::ingredients;
    double cer = 0.0;
    double wer = 0.0;
    double bleu = 0.0;
    double rouge_l = 0.0;
    double f1 = 0.0;
    bool missing = false;

    friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

/// Scores one ground-truth entry. A null `pred` means no text was selected
/// for that field: CER = WER = 1, BLEU = ROUGE-L = F1 = 0, flagged missing.
/// Both texts are expected to be normalized already.
inline MetricRow evaluate_pair(const GroundTruthEntry& gt, const SectionedText* pred,
                               const BleuParams& params = {})
{
    MetricRow row{gt.product_key, gt.image_filename, gt.field};
    if (pred == nullptr) {
        row.cer = 1.0;
        row.wer = 1.0;
        row.missing = true;
        return row;
    }
    if (pred->field != gt.field || pred->product_key != gt.product_key) {
        throw Error(Errc::field_mismatch,
                    "prediction (" + pred->product_key + ", " + std::string(to_string(pred->field)) +
                        ") does not belong to ground truth (" + gt.product_key + ", " +
                        std::string(to_string(gt.field)) + ")");
    }
    row.cer = cer(gt.gt_text, pred->text);
    row.wer = wer(gt.gt_text, pred->text);
    row.bleu = bleu(gt.gt_text, pred->text, params);
    row.rouge_l = rouge_l(gt.gt_text, pred->text);
    row.f1 = token_f1(gt.gt_text, pred->text);
    return row;
}

} // namespace ocrbench

#endif // OCRBENCH_METRICS_HPP
