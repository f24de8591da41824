// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_REPORT_HPP
#define OCRBENCH_REPORT_HPP

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "ocrbench/aggregate.hpp"
#include "ocrbench/corpus.hpp"
#include "ocrbench/csv.hpp"
#include "ocrbench/error.hpp"
#include "ocrbench/metrics.hpp"
#include "ocrbench/unicode.hpp"

namespace ocrbench {

inline constexpr std::string_view metric_rows_header =
    "product_id,image_filename,text_type,cer,wer,bleu,rouge_l,f1,missing";

inline constexpr int summary_schema_version = 1;

namespace detail {

inline std::string fixed(double v, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

// "1322.1" -> "1,322.10"
inline std::string grouped(double v, int decimals)
{
    std::string s = fixed(v, decimals);
    const std::size_t sign = (!s.empty() && s.front() == '-') ? 1 : 0;
    std::size_t point = s.find('.');
    if (point == std::string::npos) {
        point = s.size();
    }
    for (std::size_t i = point; i > sign + 3; i -= 3) {
        s.insert(i - 3, ",");
    }
    return s;
}

inline double parse_double(const std::string& s, std::size_t line)
{
    double v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw Error(Errc::malformed_row,
                    "metric rows line " + std::to_string(line) + ": '" + s + "' is not a number");
    }
    return v;
}

} // namespace detail

/// Metric rows as CSV: sorted by (product, image, field), six decimals.
inline std::string format_metric_rows(std::span<const MetricRow> rows)
{
    std::vector<const MetricRow*> sorted;
    for (const auto& r : rows) {
        sorted.push_back(&r);
    }
    std::sort(sorted.begin(), sorted.end(), [](const MetricRow* a, const MetricRow* b) {
        return std::tie(a->product_key, a->image_filename, a->field) <
               std::tie(b->product_key, b->image_filename, b->field);
    });
    std::string out(metric_rows_header);
    out.push_back('\n');
    for (const MetricRow* r : sorted) {
        const std::string cer = detail::fixed(r->cer, 6), wer = detail::fixed(r->wer, 6),
                          bleu = detail::fixed(r->bleu, 6), rouge = detail::fixed(r->rouge_l, 6),
                          f1 = detail::fixed(r->f1, 6);
        csv::append_row(out, {r->product_key, r->image_filename, to_string(r->field), cer, wer, bleu,
                              rouge, f1, r->missing ? "1" : "0"});
    }
    return out;
}

inline void write_metric_rows(std::span<const MetricRow> rows, const std::filesystem::path& path,
                              bool allow_empty = false)
{
    if (rows.empty() && !allow_empty) {
        throw Error(Errc::empty_input, "no metric rows to write to " + path.string());
    }
    csv::write_file(path, format_metric_rows(rows));
}

inline std::vector<MetricRow> parse_metric_rows(std::string_view data)
{
    std::vector<MetricRow> rows;
    const detail::RowPolicy policy{"<metric-rows>", Mode::strict, nullptr};
    const csv::Header h = detail::read_header(data, policy.source);
    const std::size_t c_product = h.require("product_id", policy.source);
    const std::size_t c_image = h.require("image_filename", policy.source);
    const std::size_t c_type = h.require("text_type", policy.source);
    const std::size_t c_cer = h.require("cer", policy.source);
    const std::size_t c_wer = h.require("wer", policy.source);
    const std::size_t c_bleu = h.require("bleu", policy.source);
    const std::size_t c_rouge = h.require("rouge_l", policy.source);
    const std::size_t c_f1 = h.require("f1", policy.source);
    const std::size_t c_missing = h.require("missing", policy.source);
    detail::for_each_row(data, policy, [&](csv::Row& f, std::size_t line) {
        const auto field = parse_field_type(f[c_type]);
        if (!field) {
            throw Error(Errc::unknown_field_type, "metric rows line " + std::to_string(line));
        }
        MetricRow r{f[c_product], f[c_image], *field};
        r.cer = detail::parse_double(f[c_cer], line);
        r.wer = detail::parse_double(f[c_wer], line);
        r.bleu = detail::parse_double(f[c_bleu], line);
        r.rouge_l = detail::parse_double(f[c_rouge], line);
        r.f1 = detail::parse_double(f[c_f1], line);
        r.missing = f[c_missing] == "1";
        rows.push_back(std::move(r));
    });
    return rows;
}

namespace detail {

inline nlohmann::json to_json(const MeanSd& m) { return {{"mean", m.mean}, {"sd", m.sd}}; }

inline nlohmann::json to_json(const CoverageLevel& c)
{
    nlohmann::json j{{"covered", c.covered}, {"total", c.total}};
    const auto pct = c.pct();
    j["pct"] = pct ? nlohmann::json(*pct) : nlohmann::json(nullptr);
    return j;
}

inline MeanSd mean_sd_from(const nlohmann::json& j)
{
    return {j.at("mean").get<double>(), j.at("sd").get<double>()};
}

inline CoverageLevel coverage_from(const nlohmann::json& j)
{
    return {j.at("covered").get<std::size_t>(), j.at("total").get<std::size_t>()};
}

} // namespace detail

inline nlohmann::json to_json(const AggregateReport& r)
{
    nlohmann::json j;
    j["model"] = r.model_name;
    j["image_count"] = r.image_count;
    j["row_count"] = r.row_count;
    j["missing_count"] = r.missing_count;
    j["metrics"] = {{"cer", detail::to_json(r.metrics.cer)},
                    {"wer", detail::to_json(r.metrics.wer)},
                    {"bleu", detail::to_json(r.metrics.bleu)},
                    {"rouge_l", detail::to_json(r.metrics.rouge_l)},
                    {"f1", detail::to_json(r.metrics.f1)}};
    j["coverage"] = {{"product", detail::to_json(r.coverage.product)},
                     {"ingredients", detail::to_json(r.coverage.ingredients)},
                     {"nfp", detail::to_json(r.coverage.nfp)}};
    if (r.timing) {
        j["timing"] = {{"total_s", r.timing->total_s},
                       {"mean_per_image_s", r.timing->mean_per_image_s},
                       {"image_count", r.timing->image_count}};
    } else {
        j["timing"] = nullptr;
    }
    return j;
}

inline nlohmann::json summary_json(std::span<const AggregateReport> reports)
{
    nlohmann::json models = nlohmann::json::array();
    for (const auto& r : reports) {
        models.push_back(to_json(r));
    }
    return {{"schema_version", summary_schema_version}, {"models", std::move(models)}};
}

inline std::vector<AggregateReport> reports_from_json(const nlohmann::json& j)
{
    std::vector<AggregateReport> out;
    try {
        if (j.at("schema_version").get<int>() != summary_schema_version) {
            throw Error(Errc::malformed_row, "unsupported summary schema_version");
        }
        for (const auto& m : j.at("models")) {
            AggregateReport r;
            r.model_name = m.at("model").get<std::string>();
            r.image_count = m.at("image_count").get<std::size_t>();
            r.row_count = m.at("row_count").get<std::size_t>();
            r.missing_count = m.at("missing_count").get<std::size_t>();
            const auto& mt = m.at("metrics");
            r.metrics = {detail::mean_sd_from(mt.at("cer")), detail::mean_sd_from(mt.at("wer")),
                         detail::mean_sd_from(mt.at("bleu")), detail::mean_sd_from(mt.at("rouge_l")),
                         detail::mean_sd_from(mt.at("f1"))};
            const auto& cv = m.at("coverage");
            r.coverage = {detail::coverage_from(cv.at("product")),
                          detail::coverage_from(cv.at("ingredients")),
                          detail::coverage_from(cv.at("nfp"))};
            if (const auto& t = m.at("timing"); !t.is_null()) {
                r.timing = TimingSummary{t.at("total_s").get<double>(),
                                         t.at("mean_per_image_s").get<double>(),
                                         t.at("image_count").get<std::size_t>()};
            }
            out.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::malformed_row, std::string("summary JSON: ") + e.what());
    }
    return out;
}

inline void write_summary(std::span<const AggregateReport> reports, const std::filesystem::path& path)
{
    if (reports.empty()) {
        throw Error(Errc::empty_input, "no model reports to summarize");
    }
    csv::write_file(path, summary_json(reports).dump(2) + "\n");
}

inline std::vector<AggregateReport> load_summary(const std::filesystem::path& path)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(csv::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::malformed_row, path.string() + ": " + e.what());
    }
    return reports_from_json(j);
}

namespace detail {

struct Column {
    std::string title;
    bool right_aligned = true;
};

inline std::string pad(const std::string& s, std::size_t width, bool right)
{
    const std::size_t len = unicode::length(s);
    const std::string fill(width > len ? width - len : 0, ' ');
    return right ? fill + s : s + fill;
}

// Markdown pipe table with columns padded to a common width.
inline std::string render_table(const std::string& title, const std::vector<Column>& cols,
                                const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        width[c] = std::max<std::size_t>(unicode::length(cols[c].title), 3);
        for (const auto& row : rows) {
            width[c] = std::max(width[c], unicode::length(row[c]));
        }
    }
    std::string out = title + "\n\n|";
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out += " " + pad(cols[c].title, width[c], false) + " |";
    }
    out += "\n|";
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out += cols[c].right_aligned ? " " + std::string(width[c] - 1, '-') + ": |"
                                     : " " + std::string(width[c], '-') + " |";
    }
    out += "\n";
    for (const auto& row : rows) {
        out += "|";
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out += " " + pad(row[c], width[c], cols[c].right_aligned) + " |";
        }
        out += "\n";
    }
    return out;
}

inline std::string pct_cell(const CoverageLevel& level)
{
    const auto pct = level.pct();
    return pct ? fixed(*pct, 2) : "n/a";
}

inline std::string pm_cell(const MeanSd& m)
{
    return fixed(m.mean, 3) + " ± " + fixed(m.sd, 3);
}

} // namespace detail

/// Plain-text tables: semantic scores with product coverage, CER/WER as
/// "mean ± SD", execution time, and field-level coverage.
inline std::string render_summary_tables(std::span<const AggregateReport> reports)
{
    using detail::Column;
    std::vector<std::vector<std::string>> semantic, errors, timing, fields;
    for (const auto& r : reports) {
        semantic.push_back({r.model_name, detail::pct_cell(r.coverage.product),
                            detail::fixed(r.metrics.bleu.mean, 3),
                            detail::fixed(r.metrics.rouge_l.mean, 3), detail::fixed(r.metrics.f1.mean, 3)});
        errors.push_back({r.model_name, detail::pm_cell(r.metrics.cer), detail::pm_cell(r.metrics.wer)});
        if (r.timing) {
            timing.push_back({r.model_name, detail::grouped(r.timing->total_s, 2),
                              detail::fixed(r.timing->mean_per_image_s, 2),
                              std::to_string(r.timing->image_count)});
        } else {
            timing.push_back({r.model_name, "n/a", "n/a", "0"});
        }
        fields.push_back({r.model_name, detail::pct_cell(r.coverage.ingredients),
                          detail::pct_cell(r.coverage.nfp),
                          std::to_string(r.coverage.product.total)});
    }
    std::string out;
    out += detail::render_table("Overall semantic performance",
                                {{"Model", false}, {"Coverage (%)"}, {"BLEU"}, {"ROUGE-L"}, {"F1"}},
                                semantic);
    out += "\n";
    out += detail::render_table("Per-image CER and WER (mean ± SD)",
                                {{"Model", false}, {"CER mean ± SD"}, {"WER mean ± SD"}}, errors);
    out += "\n";
    out += detail::render_table(
        "Execution time",
        {{"Model", false}, {"Total Time (s)"}, {"Avg Time/Image (s)"}, {"Images"}}, timing);
    out += "\n";
    out += detail::render_table("Field-level coverage",
                                {{"Model", false}, {"Ingredients (%)"}, {"NFP (%)"}, {"Products"}},
                                fields);
    return out;
}

inline void write_summary_text(std::span<const AggregateReport> reports,
                               const std::filesystem::path& path)
{
    if (reports.empty()) {
        throw Error(Errc::empty_input, "no model reports to render");
    }
    csv::write_file(path, render_summary_tables(reports));
}

} // namespace ocrbench

#endif // OCRBENCH_REPORT_HPP
