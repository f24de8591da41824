// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_CSV_HPP
#define OCRBENCH_CSV_HPP

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ocrbench/error.hpp"

namespace ocrbench::csv {

using Row = std::vector<std::string>;

/// One parsed record or the reason it could not be parsed. `line` is the
/// 1-based physical line on which the record starts.
struct Record {
    Row fields;
    std::size_t line = 0;
    std::optional<std::string> error;
};

/// RFC-4180 reader: comma delimiter, double-quote quoting with "" escapes,
/// CRLF or LF record separators, quoted fields may span lines. A malformed
/// record is reported and the reader resynchronises at the next line break.
class Reader {
public:
    explicit Reader(std::string_view data) : data_(data)
    {
        // UTF-8 byte order mark
        if (data_.substr(0, 3) == "\xEF\xBB\xBF") {
            pos_ = 3;
        }
    }

    bool done() const noexcept { return pos_ >= data_.size(); }

    std::optional<Record> next()
    {
        if (done()) {
            return std::nullopt;
        }
        Record rec;
        rec.line = line_;
        std::string field;
        bool in_quotes = false;
        bool was_quoted = false;
        while (pos_ < data_.size()) {
            const char c = data_[pos_];
            if (in_quotes) {
                if (c == '"') {
                    if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '"') {
                        field.push_back('"');
                        pos_ += 2;
                    } else {
                        in_quotes = false;
                        ++pos_;
                    }
                } else {
                    if (c == '\n') {
                        ++line_;
                    }
                    field.push_back(c);
                    ++pos_;
                }
                continue;
            }
            if (c == '"') {
                if (!field.empty() || was_quoted) {
                    return fail(rec, "unexpected quote inside unquoted field");
                }
                in_quotes = true;
                was_quoted = true;
                ++pos_;
            } else if (c == ',') {
                rec.fields.push_back(std::move(field));
                field.clear();
                was_quoted = false;
                ++pos_;
            } else if (c == '\r' || c == '\n') {
                consume_line_break();
                rec.fields.push_back(std::move(field));
                return rec;
            } else {
                if (was_quoted) {
                    return fail(rec, "characters after closing quote");
                }
                field.push_back(c);
                ++pos_;
            }
        }
        if (in_quotes) {
            rec.error = "unterminated quoted field";
            return rec;
        }
        rec.fields.push_back(std::move(field));
        return rec;
    }

private:
    void consume_line_break()
    {
        if (data_[pos_] == '\r' && pos_ + 1 < data_.size() && data_[pos_ + 1] == '\n') {
            ++pos_;
        }
        ++pos_;
        ++line_;
    }

    Record fail(Record& rec, std::string message)
    {
        rec.error = std::move(message);
        rec.fields.clear();
        while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') {
            ++pos_;
        }
        if (pos_ < data_.size()) {
            consume_line_break();
        }
        return rec;
    }

    std::string_view data_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

inline bool needs_quoting(std::string_view field)
{
    return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline void append_field(std::string& out, std::string_view field)
{
    if (!needs_quoting(field)) {
        out.append(field);
        return;
    }
    out.push_back('"');
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
}

/// Rows are terminated with LF.
inline void append_row(std::string& out, const std::vector<std::string_view>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out.push_back(',');
        }
        append_field(out, fields[i]);
    }
    out.push_back('\n');
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::io_failure, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) {
        throw Error(Errc::io_failure, "read failed for " + path.string());
    }
    return std::move(ss).str();
}

/// Creates missing parent directories.
inline void write_file(const std::filesystem::path& path, std::string_view contents)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(Errc::io_failure, "cannot open " + path.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
        throw Error(Errc::io_failure, "write failed for " + path.string());
    }
}

/// Maps header names to column positions.
class Header {
public:
    explicit Header(const Row& names) : names_(names) {}

    std::optional<std::size_t> find(std::string_view name) const
    {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i] == name) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::size_t require(std::string_view name, std::string_view source) const
    {
        if (auto idx = find(name)) {
            return *idx;
        }
        throw Error(Errc::missing_column,
                    std::string(source) + ": required column '" + std::string(name) + "' absent");
    }

    std::size_t size() const noexcept { return names_.size(); }

private:
    Row names_;
};

} // namespace ocrbench::csv

#endif // OCRBENCH_CSV_HPP
