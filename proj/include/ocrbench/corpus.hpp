// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_CORPUS_HPP
#define OCRBENCH_CORPUS_HPP

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "ocrbench/csv.hpp"
#include "ocrbench/error.hpp"
#include "ocrbench/field.hpp"

namespace ocrbench {

inline constexpr std::string_view predictions_header =
    "product_id,image_filename,raw_ocr_text,time_seconds";
inline constexpr std::string_view ground_truth_header =
    "product_id,image_filename,text_type,gt_text";
inline constexpr std::string_view sectioned_header =
    "product_id,image_filename,text_type,ocr_text";

/// Strict ingestion turns every row-level problem into an exception.
/// Lenient ingestion skips the row and records a warning.
enum class Mode { lenient, strict };

struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
};

/// Components of a dataset image name `YYYYMMDD_XX_YY_ZZZ (N).ext`.
struct FilenameParts {
    std::chrono::year_month_day capture_date{};
    std::string session_id;     // XX
    std::string sub_id;         // YY, carried without interpretation
    std::string fieldworker_id; // ZZZ
    std::uint32_t image_index = 0;
    std::string product_key;    // YYYYMMDD_XX_YY_ZZZ
    std::string extension;      // as written, without the dot

    friend bool operator==(const FilenameParts&, const FilenameParts&) = default;
};

struct ImageRecord {
    std::string product_key;
    std::string image_filename;
    std::string raw_text;
    std::optional<double> time_seconds;
    std::uint32_t image_index = 0; // 0 when the name carries no index

    friend bool operator==(const ImageRecord&, const ImageRecord&) = default;
};

struct GroundTruthEntry {
    std::string product_key;
    std::string image_filename;
    FieldType field = FieldType::ingredients;
    std::string gt_text;

    friend bool operator==(const GroundTruthEntry&, const GroundTruthEntry&) = default;
};

/// Classified and normalized text for one (product, field); the canonical
/// four-column sectioned CSV holds one of these per row.
struct SectionedText {
    std::string product_key;
    std::string image_filename;
    FieldType field = FieldType::ingredients;
    std::string text;

    friend bool operator==(const SectionedText&, const SectionedText&) = default;
};

namespace detail {

inline bool is_ascii_digit(char c) noexcept { return c >= '0' && c <= '9'; }

inline bool is_ascii_alnum(char c) noexcept
{
    return is_ascii_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

inline std::string ascii_lower(std::string_view s)
{
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c + 32);
        }
    }
    return out;
}

inline std::string_view trim(std::string_view s) noexcept
{
    constexpr std::string_view ws = " \t\r\n\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline bool take_alnum(std::string_view& s, std::size_t n, std::string& out)
{
    if (s.size() < n || !std::all_of(s.begin(), s.begin() + n, is_ascii_alnum)) {
        return false;
    }
    out.assign(s.substr(0, n));
    s.remove_prefix(n);
    return true;
}

inline bool take_char(std::string_view& s, char c)
{
    if (s.empty() || s.front() != c) {
        return false;
    }
    s.remove_prefix(1);
    return true;
}

inline std::string format_seconds(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

inline std::optional<double> parse_seconds(std::string_view s)
{
    double v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v) || v < 0) {
        return std::nullopt;
    }
    return v;
}

inline std::string format_date(std::chrono::year_month_day d)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d%02u%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

} // namespace detail

/// Parses `YYYYMMDD_XX_YY_ZZZ (N).jpg` (also .jpeg/.png, any case).
/// Directory components in `name` are ignored.
inline FilenameParts parse_filename(std::string_view name)
{
    if (auto slash = name.find_last_of("/\\"); slash != std::string_view::npos) {
        name.remove_prefix(slash + 1);
    }
    const auto bad = [&](const char* why) {
        return Error(Errc::malformed_filename, "'" + std::string(name) + "': " + why);
    };

    const auto dot = name.rfind('.');
    if (dot == std::string_view::npos) {
        throw bad("no extension");
    }
    FilenameParts parts;
    parts.extension = std::string(name.substr(dot + 1));
    const std::string ext = detail::ascii_lower(parts.extension);
    if (ext != "jpg" && ext != "jpeg" && ext != "png") {
        throw bad("not an image extension");
    }

    std::string_view s = name.substr(0, dot);
    if (s.size() < 8 || !std::all_of(s.begin(), s.begin() + 8, detail::is_ascii_digit)) {
        throw bad("expected YYYYMMDD date prefix");
    }
    const int y = std::stoi(std::string(s.substr(0, 4)));
    const unsigned m = static_cast<unsigned>(std::stoi(std::string(s.substr(4, 2))));
    const unsigned d = static_cast<unsigned>(std::stoi(std::string(s.substr(6, 2))));
    parts.capture_date = std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m},
                                                     std::chrono::day{d}};
    if (!parts.capture_date.ok()) {
        throw bad("invalid calendar date");
    }
    s.remove_prefix(8);

    if (!detail::take_char(s, '_') || !detail::take_alnum(s, 2, parts.session_id) ||
        !detail::take_char(s, '_') || !detail::take_alnum(s, 2, parts.sub_id) ||
        !detail::take_char(s, '_') || !detail::take_alnum(s, 3, parts.fieldworker_id)) {
        throw bad("expected _XX_YY_ZZZ after the date");
    }
    if (!detail::take_char(s, ' ') || !detail::take_char(s, '(') || s.empty() ||
        s.back() != ')') {
        throw bad("expected ' (N)' image index");
    }
    s.remove_suffix(1);
    if (s.empty() || s.size() > 9 || s.front() == '0' ||
        !std::all_of(s.begin(), s.end(), detail::is_ascii_digit)) {
        throw bad("image index must be a positive integer without leading zeros");
    }
    parts.image_index = static_cast<std::uint32_t>(std::stoul(std::string(s)));
    parts.product_key = detail::format_date(parts.capture_date) + "_" + parts.session_id + "_" +
                        parts.sub_id + "_" + parts.fieldworker_id;
    return parts;
}

inline std::string format_filename(const FilenameParts& p)
{
    return detail::format_date(p.capture_date) + "_" + p.session_id + "_" + p.sub_id + "_" +
           p.fieldworker_id + " (" + std::to_string(p.image_index) + ")." + p.extension;
}

namespace detail {

// Shared row-level error policy for the three loaders.
struct RowPolicy {
    std::string_view source;
    Mode mode;
    Diagnostics* diag;

    void reject(Errc code, std::size_t line, const std::string& why) const
    {
        std::string msg = std::string(source) + ":" + std::to_string(line) + ": " + why;
        if (mode == Mode::strict) {
            throw Error(code, msg);
        }
        if (diag != nullptr) {
            diag->warn(std::string(to_string(code)) + ": " + msg + " (row skipped)");
        }
    }
};

inline bool is_blank_record(const csv::Record& rec)
{
    return !rec.error && rec.fields.size() == 1 && rec.fields.front().empty();
}

// Iterates the data rows of a CSV document, handing well-formed rows of the
// header's arity to `on_row(fields, line)`.
template <typename OnRow>
csv::Header for_each_row(std::string_view data, const RowPolicy& policy, OnRow&& on_row)
{
    csv::Reader reader(data);
    auto first = reader.next();
    if (!first || first->error) {
        throw Error(Errc::missing_column, std::string(policy.source) + ": missing header row");
    }
    csv::Header header(first->fields);
    while (auto rec = reader.next()) {
        if (is_blank_record(*rec)) {
            continue;
        }
        if (rec->error) {
            policy.reject(Errc::malformed_row, rec->line, *rec->error);
            continue;
        }
        if (rec->fields.size() != header.size()) {
            policy.reject(Errc::malformed_row, rec->line,
                          "expected " + std::to_string(header.size()) + " fields, got " +
                              std::to_string(rec->fields.size()));
            continue;
        }
        on_row(rec->fields, rec->line);
    }
    return header;
}

inline csv::Header read_header(std::string_view data, std::string_view source)
{
    csv::Reader reader(data);
    auto first = reader.next();
    if (!first || first->error) {
        throw Error(Errc::missing_column, std::string(source) + ": missing header row");
    }
    return csv::Header(first->fields);
}

} // namespace detail

/// Parses predictions CSV text. Rows keep file order.
inline std::vector<ImageRecord> parse_predictions(std::string_view data,
                                                  std::string_view source = "<predictions>",
                                                  Mode mode = Mode::lenient,
                                                  Diagnostics* diag = nullptr)
{
    const csv::Header header = detail::read_header(data, source);
    const std::size_t c_product = header.require("product_id", source);
    const std::size_t c_image = header.require("image_filename", source);
    const std::size_t c_text = header.require("raw_ocr_text", source);
    const std::optional<std::size_t> c_time = header.find("time_seconds");

    const detail::RowPolicy policy{source, mode, diag};
    std::vector<ImageRecord> records;
    std::set<std::string, std::less<>> seen;
    detail::for_each_row(data, policy, [&](csv::Row& f, std::size_t line) {
        ImageRecord rec;
        rec.image_filename = std::move(f[c_image]);
        FilenameParts parts;
        try {
            parts = parse_filename(rec.image_filename);
        } catch (const Error& e) {
            policy.reject(Errc::malformed_filename, line, e.what());
            return;
        }
        if (c_time && !f[*c_time].empty()) {
            rec.time_seconds = detail::parse_seconds(f[*c_time]);
            if (!rec.time_seconds) {
                policy.reject(Errc::malformed_row, line,
                              "time_seconds '" + f[*c_time] + "' is not a finite value >= 0");
                return;
            }
        }
        if (seen.contains(rec.image_filename)) {
            policy.reject(Errc::duplicate_image, line,
                          "image '" + rec.image_filename + "' already listed");
            return;
        }
        seen.insert(rec.image_filename);
        rec.product_key = f[c_product].empty() ? parts.product_key : std::move(f[c_product]);
        rec.raw_text = std::move(f[c_text]);
        rec.image_index = parts.image_index;
        records.push_back(std::move(rec));
    });
    return records;
}

inline std::vector<ImageRecord> load_predictions(const std::filesystem::path& path,
                                                 Mode mode = Mode::lenient,
                                                 Diagnostics* diag = nullptr)
{
    return parse_predictions(csv::read_file(path), path.string(), mode, diag);
}

inline std::string format_predictions(const std::vector<ImageRecord>& records)
{
    std::string out(predictions_header);
    out.push_back('\n');
    for (const auto& r : records) {
        const std::string t = r.time_seconds ? detail::format_seconds(*r.time_seconds) : "";
        csv::append_row(out, {r.product_key, r.image_filename, r.raw_text, t});
    }
    return out;
}

inline void save_predictions(const std::filesystem::path& path,
                             const std::vector<ImageRecord>& records)
{
    csv::write_file(path, format_predictions(records));
}

/// Ground truth is curated input, so every violation is fatal.
inline std::vector<GroundTruthEntry> parse_ground_truth(std::string_view data,
                                                        std::string_view source = "<ground-truth>")
{
    const csv::Header header = detail::read_header(data, source);
    const std::size_t c_product = header.require("product_id", source);
    const std::size_t c_image = header.require("image_filename", source);
    const std::size_t c_type = header.require("text_type", source);
    const std::size_t c_text = header.require("gt_text", source);

    const detail::RowPolicy policy{source, Mode::strict, nullptr};
    std::vector<GroundTruthEntry> entries;
    std::set<std::pair<std::string, FieldType>> seen;
    detail::for_each_row(data, policy, [&](csv::Row& f, std::size_t line) {
        const auto where = std::string(source) + ":" + std::to_string(line);
        const auto field = parse_field_type(f[c_type]);
        if (!field) {
            throw Error(Errc::unknown_field_type,
                        where + ": text_type '" + f[c_type] + "' is not 'ingredients' or 'nfp'");
        }
        if (detail::trim(f[c_text]).empty()) {
            throw Error(Errc::empty_ground_truth, where + ": gt_text is blank");
        }
        GroundTruthEntry e;
        e.image_filename = std::move(f[c_image]);
        e.field = *field;
        if (!seen.emplace(e.image_filename, e.field).second) {
            throw Error(Errc::duplicate_image, where + ": duplicate (" + e.image_filename + ", " +
                                                   std::string(to_string(e.field)) + ")");
        }
        e.product_key = f[c_product].empty() ? parse_filename(e.image_filename).product_key
                                             : std::move(f[c_product]);
        e.gt_text = std::move(f[c_text]);
        entries.push_back(std::move(e));
    });
    return entries;
}

inline std::vector<GroundTruthEntry> load_ground_truth(const std::filesystem::path& path)
{
    return parse_ground_truth(csv::read_file(path), path.string());
}

inline std::string format_ground_truth(const std::vector<GroundTruthEntry>& entries)
{
    std::string out(ground_truth_header);
    out.push_back('\n');
    for (const auto& e : entries) {
        csv::append_row(out, {e.product_key, e.image_filename, to_string(e.field), e.gt_text});
    }
    return out;
}

inline std::vector<SectionedText> parse_sectioned(std::string_view data,
                                                  std::string_view source = "<sectioned>",
                                                  Mode mode = Mode::lenient,
                                                  Diagnostics* diag = nullptr)
{
    const csv::Header header = detail::read_header(data, source);
    const std::size_t c_product = header.require("product_id", source);
    const std::size_t c_image = header.require("image_filename", source);
    const std::size_t c_type = header.require("text_type", source);
    const std::size_t c_text = header.require("ocr_text", source);

    const detail::RowPolicy policy{source, mode, diag};
    std::vector<SectionedText> rows;
    detail::for_each_row(data, policy, [&](csv::Row& f, std::size_t line) {
        const auto field = parse_field_type(f[c_type]);
        if (!field) {
            policy.reject(Errc::unknown_field_type, line,
                          "text_type '" + f[c_type] + "' is not 'ingredients' or 'nfp'");
            return;
        }
        rows.push_back({std::move(f[c_product]), std::move(f[c_image]), *field,
                        std::move(f[c_text])});
    });
    return rows;
}

inline std::vector<SectionedText> load_sectioned(const std::filesystem::path& path,
                                                 Mode mode = Mode::lenient,
                                                 Diagnostics* diag = nullptr)
{
    return parse_sectioned(csv::read_file(path), path.string(), mode, diag);
}

inline std::string format_sectioned(const std::vector<SectionedText>& rows)
{
    std::string out(sectioned_header);
    out.push_back('\n');
    for (const auto& r : rows) {
        csv::append_row(out, {r.product_key, r.image_filename, to_string(r.field), r.text});
    }
    return out;
}

inline void save_sectioned(const std::filesystem::path& path, const std::vector<SectionedText>& rows)
{
    csv::write_file(path, format_sectioned(rows));
}

enum class CsvKind { predictions, sectioned, ground_truth, unknown };

/// Identifies a CSV document by the columns in its header row.
inline CsvKind sniff_kind(std::string_view data)
{
    const csv::Header h = detail::read_header(data, "<sniff>");
    if (h.find("raw_ocr_text")) {
        return CsvKind::predictions;
    }
    if (h.find("ocr_text") && h.find("text_type")) {
        return CsvKind::sectioned;
    }
    if (h.find("gt_text")) {
        return CsvKind::ground_truth;
    }
    return CsvKind::unknown;
}

using ProductGroups = std::map<std::string, std::vector<ImageRecord>>;

/// Per-product lists are ordered by image index, then filename.
inline ProductGroups group_by_product(std::vector<ImageRecord> records)
{
    ProductGroups groups;
    for (auto& r : records) {
        groups[r.product_key].push_back(std::move(r));
    }
    for (auto& [key, list] : groups) {
        std::stable_sort(list.begin(), list.end(), [](const ImageRecord& a, const ImageRecord& b) {
            return std::tie(a.image_index, a.image_filename) <
                   std::tie(b.image_index, b.image_filename);
        });
    }
    return groups;
}

} // namespace ocrbench

#endif // OCRBENCH_CORPUS_HPP
