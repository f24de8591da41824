// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_AGGREGATE_HPP
#define OCRBENCH_AGGREGATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "ocrbench/corpus.hpp"
#include "ocrbench/error.hpp"
#include "ocrbench/field.hpp"
#include "ocrbench/metrics.hpp"

namespace ocrbench {

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

namespace detail {

// Neumaier compensated summation.
class Accumulator {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace detail

/// Mean and sample standard deviation (n - 1 denominator; 0 for n = 1).
inline MeanSd mean_sd(std::span<const double> values)
{
    if (values.empty()) {
        throw Error(Errc::empty_input, "mean/SD of an empty sample");
    }
    detail::Accumulator sum;
    for (double v : values) {
        sum.add(v);
    }
    const double n = static_cast<double>(values.size());
    MeanSd out{sum.value() / n, 0.0};
    if (values.size() > 1) {
        detail::Accumulator sq;
        for (double v : values) {
            const double d = v - out.mean;
            sq.add(d * d);
        }
        out.sd = std::sqrt(sq.value() / (n - 1.0));
    }
    return out;
}

/// Field presence (or production) per product key.
using FieldTable = std::map<std::string, FieldSet>;

inline FieldTable fields_present(std::span<const GroundTruthEntry> entries)
{
    FieldTable table;
    for (const auto& e : entries) {
        table[e.product_key].set(e.field);
    }
    return table;
}

/// Fields for which a non-empty sectioned text was selected.
inline FieldTable fields_produced(std::span<const SectionedText> rows)
{
    FieldTable table;
    for (const auto& r : rows) {
        if (!r.text.empty()) {
            table[r.product_key].set(r.field);
        }
    }
    return table;
}

struct CoverageLevel {
    std::size_t covered = 0;
    std::size_t total = 0;

    std::optional<double> pct() const
    {
        if (total == 0) {
            return std::nullopt;
        }
        return 100.0 * static_cast<double>(covered) / static_cast<double>(total);
    }

    friend bool operator==(const CoverageLevel&, const CoverageLevel&) = default;
};

struct CoverageReport {
    CoverageLevel product;
    CoverageLevel ingredients;
    CoverageLevel nfp;

    const CoverageLevel& field(FieldType f) const { return f == FieldType::nfp ? nfp : ingredients; }
};

namespace detail {

inline bool produced(const FieldTable& table, const std::string& product, FieldType f)
{
    const auto it = table.find(product);
    return it != table.end() && it->second.has(f);
}

} // namespace detail

/// A product is covered when at least one field it actually carries has a
/// non-empty selected text. Products carrying neither field are not counted.
inline CoverageLevel product_coverage(const FieldTable& present, const FieldTable& produced)
{
    CoverageLevel level;
    for (const auto& [product, fields] : present) {
        if (!fields.any()) {
            continue;
        }
        ++level.total;
        const bool covered = std::any_of(target_fields.begin(), target_fields.end(), [&](FieldType f) {
            return fields.has(f) && detail::produced(produced, product, f);
        });
        if (covered) {
            ++level.covered;
        }
    }
    return level;
}

inline CoverageLevel field_coverage_level(FieldType field, const FieldTable& present,
                                          const FieldTable& produced)
{
    CoverageLevel level;
    for (const auto& [product, fields] : present) {
        if (!fields.has(field)) {
            continue;
        }
        ++level.total;
        if (detail::produced(produced, product, field)) {
            ++level.covered;
        }
    }
    return level;
}

/// Percentage of products carrying `field` that got non-empty text for it.
inline double field_coverage(FieldType field, const FieldTable& present, const FieldTable& produced)
{
    const auto pct = field_coverage_level(field, present, produced).pct();
    if (!pct) {
        throw Error(Errc::no_products_with_field,
                    "no product carries field '" + std::string(to_string(field)) + "'");
    }
    return *pct;
}

inline CoverageReport coverage(const FieldTable& present, const FieldTable& produced)
{
    return {product_coverage(present, produced),
            field_coverage_level(FieldType::ingredients, present, produced),
            field_coverage_level(FieldType::nfp, present, produced)};
}

struct TimingSummary {
    double total_s = 0.0;
    double mean_per_image_s = 0.0;
    std::size_t image_count = 0;
};

inline TimingSummary timing_aggregate(std::span<const ImageRecord> records)
{
    if (records.empty()) {
        throw Error(Errc::missing_timing, "no timed records");
    }
    detail::Accumulator total;
    for (const auto& r : records) {
        if (!r.time_seconds) {
            throw Error(Errc::missing_timing, "record '" + r.image_filename + "' has no time_seconds");
        }
        total.add(*r.time_seconds);
    }
    const double sum = total.value();
    return {sum, sum / static_cast<double>(records.size()), records.size()};
}

struct MetricSummary {
    MeanSd cer;
    MeanSd wer;
    MeanSd bleu;
    MeanSd rouge_l;
    MeanSd f1;
};

struct AggregateReport {
    std::string model_name;
    MetricSummary metrics;
    CoverageReport coverage;
    std::optional<TimingSummary> timing;
    std::size_t image_count = 0;   // distinct images among scored rows
    std::size_t row_count = 0;     // scored (image, field) rows
    std::size_t missing_count = 0; // rows with no prediction, scored or not
};

/// Reduces per-image rows to means and SDs. Rows are sorted by
/// (product, image, field) first so the result does not depend on the
/// order they were produced in. With `skip_missing`, missing rows are
/// left out of the means.
inline AggregateReport summarize(std::string model_name, std::span<const MetricRow> rows,
                                 const CoverageReport& cov,
                                 std::optional<TimingSummary> timing = std::nullopt,
                                 bool skip_missing = false)
{
    std::vector<const MetricRow*> sorted;
    sorted.reserve(rows.size());
    for (const auto& r : rows) {
        sorted.push_back(&r);
    }
    std::sort(sorted.begin(), sorted.end(), [](const MetricRow* a, const MetricRow* b) {
        return std::tie(a->product_key, a->image_filename, a->field) <
               std::tie(b->product_key, b->image_filename, b->field);
    });

    AggregateReport report;
    report.model_name = std::move(model_name);
    report.coverage = cov;
    report.timing = timing;

    std::vector<double> cer, wer, bleu, rouge, f1;
    std::set<std::string> images;
    for (const MetricRow* r : sorted) {
        if (r->missing) {
            ++report.missing_count;
            if (skip_missing) {
                continue;
            }
        }
        images.insert(r->image_filename);
        cer.push_back(r->cer);
        wer.push_back(r->wer);
        bleu.push_back(r->bleu);
        rouge.push_back(r->rouge_l);
        f1.push_back(r->f1);
    }
    if (cer.empty()) {
        throw Error(Errc::empty_input, "no scored rows for model '" + report.model_name + "'");
    }
    report.metrics = {mean_sd(cer), mean_sd(wer), mean_sd(bleu), mean_sd(rouge), mean_sd(f1)};
    report.image_count = images.size();
    report.row_count = cer.size();
    return report;
}

} // namespace ocrbench

#endif // OCRBENCH_AGGREGATE_HPP
