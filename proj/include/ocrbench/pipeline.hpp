// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_PIPELINE_HPP
#define OCRBENCH_PIPELINE_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include "ocrbench/aggregate.hpp"
#include "ocrbench/corpus.hpp"
#include "ocrbench/csv.hpp"
#include "ocrbench/error.hpp"
#include "ocrbench/metrics.hpp"
#include "ocrbench/parallel.hpp"
#include "ocrbench/report.hpp"
#include "ocrbench/sectioner.hpp"
#include "ocrbench/textnorm.hpp"

extern char** environ;

namespace ocrbench {

// ---------------------------------------------------------------- section

struct SectionCommand {
    std::filesystem::path input;
    std::filesystem::path output;
    NormalizationConfig config;
    SectionerOptions options;
    Mode mode = Mode::lenient;
    unsigned jobs = 1;
};

/// Raw predictions are classified, selected and cut at their anchors.
/// Already-sectioned input keeps its field assignments and is only
/// re-normalized, so sectioning twice leaves the text unchanged.
inline std::vector<SectionedText> run_section(const SectionCommand& cmd, Diagnostics* diag = nullptr)
{
    const std::string data = csv::read_file(cmd.input);
    std::vector<SectionedText> rows;
    switch (sniff_kind(data)) {
    case CsvKind::predictions: {
        const auto records = parse_predictions(data, cmd.input.string(), cmd.mode, diag);
        rows = section_records(records, cmd.config, cmd.options, cmd.jobs);
        break;
    }
    case CsvKind::sectioned:
        rows = resection(parse_sectioned(data, cmd.input.string(), cmd.mode, diag), cmd.config);
        break;
    default:
        throw Error(Errc::missing_column,
                    cmd.input.string() + ": header matches neither the predictions nor the sectioned layout");
    }
    save_sectioned(cmd.output, rows);
    return rows;
}

// --------------------------------------------------------------- evaluate

struct EvaluateOptions {
    std::string model_name = "model";
    bool skip_missing = false;
    unsigned jobs = 1;
    BleuParams bleu;
};

struct Evaluation {
    std::vector<MetricRow> rows;
    AggregateReport report;
};

/// Scores every ground-truth entry against the sectioned predictions.
///
/// A prediction is matched on (image, field) first and on (product, field)
/// otherwise, since sectioning may retain a different view of the product
/// than the one that was transcribed. Both sides are normalized with `cfg`.
inline Evaluation evaluate(std::span<const SectionedText> predictions,
                           std::span<const GroundTruthEntry> ground_truth,
                           const NormalizationConfig& cfg, const EvaluateOptions& opts,
                           std::optional<TimingSummary> timing = std::nullopt,
                           Diagnostics* diag = nullptr)
{
    std::vector<SectionedText> preds(predictions.begin(), predictions.end());
    for (auto& p : preds) {
        p.text = normalize_text(p.text, cfg);
    }
    std::map<std::pair<std::string, FieldType>, const SectionedText*> by_image;
    std::map<std::pair<std::string, FieldType>, const SectionedText*> by_product;
    for (const auto& p : preds) {
        by_image.emplace(std::pair{p.image_filename, p.field}, &p);
        if (!by_product.emplace(std::pair{p.product_key, p.field}, &p).second && diag != nullptr) {
            diag->warn("more than one prediction for (" + p.product_key + ", " +
                       std::string(to_string(p.field)) + "); using the first");
        }
    }

    std::vector<GroundTruthEntry> gt(ground_truth.begin(), ground_truth.end());
    std::sort(gt.begin(), gt.end(), [](const GroundTruthEntry& a, const GroundTruthEntry& b) {
        return std::tie(a.product_key, a.image_filename, a.field) <
               std::tie(b.product_key, b.image_filename, b.field);
    });
    for (auto& e : gt) {
        e.gt_text = normalize_text(e.gt_text, cfg);
        if (e.gt_text.empty()) {
            throw Error(Errc::empty_ground_truth,
                        "'" + e.image_filename + "' ground truth is empty after normalization");
        }
    }

    Evaluation result;
    result.rows.resize(gt.size());
    parallel_for(gt.size(), opts.jobs, [&](std::size_t i) {
        const GroundTruthEntry& e = gt[i];
        const SectionedText* pred = nullptr;
        if (auto it = by_image.find({e.image_filename, e.field});
            it != by_image.end() && it->second->product_key == e.product_key) {
            pred = it->second;
        } else if (auto jt = by_product.find({e.product_key, e.field}); jt != by_product.end()) {
            pred = jt->second;
        }
        result.rows[i] = evaluate_pair(e, pred, opts.bleu);
    });

    const CoverageReport cov = coverage(fields_present(gt), fields_produced(preds));
    result.report = summarize(opts.model_name, result.rows, cov, timing, opts.skip_missing);
    return result;
}

struct EvaluateCommand {
    std::filesystem::path sectioned;
    std::filesystem::path ground_truth;
    std::filesystem::path out_dir;
    NormalizationConfig config;
    EvaluateOptions options;
    /// Predictions CSV whose time_seconds feed the timing aggregate.
    std::optional<std::filesystem::path> timing_source;
    bool no_timing = false;
    Mode mode = Mode::lenient;
};

inline constexpr std::string_view metrics_file_name = "metrics.csv";
inline constexpr std::string_view summary_json_name = "summary.json";
inline constexpr std::string_view summary_text_name = "summary.txt";

/// Writes metrics.csv, summary.json and summary.txt into `out_dir`.
inline Evaluation run_evaluate(const EvaluateCommand& cmd, Diagnostics* diag = nullptr)
{
    const auto preds = load_sectioned(cmd.sectioned, cmd.mode, diag);
    const auto gt = load_ground_truth(cmd.ground_truth);
    std::optional<TimingSummary> timing;
    if (cmd.timing_source && !cmd.no_timing) {
        const auto records = load_predictions(*cmd.timing_source, cmd.mode, diag);
        timing = timing_aggregate(records);
    }
    Evaluation eval = evaluate(preds, gt, cmd.config, cmd.options, timing, diag);

    std::error_code ec;
    std::filesystem::create_directories(cmd.out_dir, ec);
    if (ec) {
        throw Error(Errc::io_failure, "cannot create " + cmd.out_dir.string() + ": " + ec.message());
    }
    write_metric_rows(eval.rows, cmd.out_dir / metrics_file_name, true);
    const std::vector<AggregateReport> reports{eval.report};
    write_summary(reports, cmd.out_dir / summary_json_name);
    write_summary_text(reports, cmd.out_dir / summary_text_name);
    return eval;
}

// -------------------------------------------------------------------- run

struct RunCommand {
    /// Adapter program and leading arguments; the harness appends
    /// `--input <path> --output <csv>`.
    std::vector<std::string> adapter;
    std::filesystem::path image_dir;
    std::filesystem::path output;
    /// One adapter call for the whole directory instead of one per image.
    bool batch = false;
    Mode mode = Mode::lenient;
    std::optional<std::filesystem::path> wallclock_log;
};

struct RunOutcome {
    std::vector<ImageRecord> records;
    std::vector<std::string> failed_images;
    double wall_total_s = 0.0;
};

namespace detail {

inline bool has_image_extension(const std::filesystem::path& p)
{
    const std::string ext = ascii_lower(p.extension().string());
    return ext == ".jpg" || ext == ".jpeg" || ext == ".png";
}

inline std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::vector<std::filesystem::path> images;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && has_image_extension(entry.path())) {
            images.push_back(entry.path());
        }
    }
    if (ec) {
        throw Error(Errc::io_failure, "cannot list " + dir.string() + ": " + ec.message());
    }
    std::sort(images.begin(), images.end(),
              [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
    return images;
}

/// Runs argv to completion; returns the exit status (-1 if it could not start).
inline int run_process(const std::vector<std::string>& argv)
{
    std::vector<char*> args;
    for (const auto& a : argv) {
        args.push_back(const_cast<char*>(a.c_str()));
    }
    args.push_back(nullptr);
    pid_t pid = 0;
    if (posix_spawnp(&pid, args[0], nullptr, nullptr, args.data(), environ) != 0) {
        return -1;
    }
    int status = 0;
    while (waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) {
            return -1;
        }
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
}

inline std::filesystem::path scratch_csv()
{
    static std::atomic<unsigned> counter{0};
    return std::filesystem::temp_directory_path() /
           ("ocrbench-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".csv");
}

struct AdapterCall {
    int status = -1;
    double wall_s = 0.0;
    std::vector<ImageRecord> rows;
};

inline AdapterCall call_adapter(const std::vector<std::string>& adapter,
                                const std::filesystem::path& input, Diagnostics* diag)
{
    const auto out = scratch_csv();
    std::vector<std::string> argv = adapter;
    argv.insert(argv.end(), {"--input", input.string(), "--output", out.string()});

    AdapterCall call;
    const auto start = std::chrono::steady_clock::now();
    call.status = run_process(argv);
    call.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (call.status == 0) {
        try {
            call.rows = load_predictions(out, Mode::lenient, diag);
        } catch (const Error& e) {
            if (diag != nullptr) {
                diag->warn(std::string("adapter output unreadable: ") + e.what());
            }
            call.status = -1;
        }
    }
    std::error_code ec;
    std::filesystem::remove(out, ec);
    return call;
}

inline const ImageRecord* find_row(const std::vector<ImageRecord>& rows, const std::string& name)
{
    for (const auto& r : rows) {
        if (std::filesystem::path(r.image_filename).filename() == name) {
            return &r;
        }
    }
    return nullptr;
}

} // namespace detail

/// Invokes the adapter over every image in `image_dir` and writes the
/// canonical predictions CSV. Each row's time is the adapter's own figure
/// when it reports one, else the harness wall-clock for that call. A failed
/// image yields an empty-text row and a warning, or AdapterFailure in
/// strict mode.
inline RunOutcome run_adapter(const RunCommand& cmd, Diagnostics* diag = nullptr)
{
    if (cmd.adapter.empty()) {
        throw Error(Errc::adapter_failure, "no adapter command given");
    }
    const auto images = detail::list_images(cmd.image_dir);
    if (images.empty()) {
        throw Error(Errc::io_failure, "no images in " + cmd.image_dir.string());
    }

    struct Planned {
        std::string name;
        FilenameParts parts;
        std::filesystem::path path;
    };
    std::vector<Planned> planned;
    for (const auto& p : images) {
        const std::string name = p.filename().string();
        try {
            planned.push_back({name, parse_filename(name), p});
        } catch (const Error& e) {
            if (cmd.mode == Mode::strict) {
                throw;
            }
            if (diag != nullptr) {
                diag->warn(std::string(e.what()) + " (image skipped)");
            }
        }
    }

    RunOutcome outcome;
    std::vector<std::pair<std::string, double>> wall;
    const auto fail = [&](const std::string& name, const std::string& why) {
        if (cmd.mode == Mode::strict) {
            throw Error(Errc::adapter_failure, name + ": " + why);
        }
        if (diag != nullptr) {
            diag->warn("AdapterFailure: " + name + ": " + why + " (empty row recorded)");
        }
        outcome.failed_images.push_back(name);
    };
    const auto record = [&](const Planned& p, const ImageRecord* row, double wall_s) {
        ImageRecord rec;
        rec.product_key = p.parts.product_key;
        rec.image_filename = p.name;
        rec.image_index = p.parts.image_index;
        rec.raw_text = row != nullptr ? row->raw_text : std::string();
        rec.time_seconds = (row != nullptr && row->time_seconds) ? *row->time_seconds : wall_s;
        outcome.records.push_back(std::move(rec));
    };

    if (cmd.batch) {
        const auto call = detail::call_adapter(cmd.adapter, cmd.image_dir, diag);
        outcome.wall_total_s = call.wall_s;
        const double share = call.wall_s / static_cast<double>(planned.size());
        for (const auto& p : planned) {
            const ImageRecord* row = call.status == 0 ? detail::find_row(call.rows, p.name) : nullptr;
            if (row == nullptr) {
                fail(p.name, call.status == 0 ? "no row in adapter output"
                                              : "adapter exited with status " + std::to_string(call.status));
            }
            record(p, row, share);
            wall.emplace_back(p.name, share);
        }
    } else {
        for (const auto& p : planned) {
            const auto call = detail::call_adapter(cmd.adapter, p.path, diag);
            outcome.wall_total_s += call.wall_s;
            const ImageRecord* row = nullptr;
            if (call.status == 0) {
                row = detail::find_row(call.rows, p.name);
                if (row == nullptr && call.rows.size() == 1) {
                    row = &call.rows.front();
                }
            }
            if (row == nullptr) {
                fail(p.name, call.status == 0 ? "no row in adapter output"
                                              : "adapter exited with status " + std::to_string(call.status));
            }
            record(p, row, call.wall_s);
            wall.emplace_back(p.name, call.wall_s);
        }
    }

    save_predictions(cmd.output, outcome.records);
    if (cmd.wallclock_log) {
        std::string log = "image_filename,wall_seconds\n";
        for (const auto& [name, s] : wall) {
            csv::append_row(log, {name, detail::format_seconds(s)});
        }
        csv::write_file(*cmd.wallclock_log, log);
    }
    return outcome;
}

// ----------------------------------------------------------------- report

/// Concatenates the models of several summary.json files, in argument order.
inline std::vector<AggregateReport> merge_summaries(std::span<const std::filesystem::path> inputs)
{
    std::vector<AggregateReport> all;
    for (const auto& p : inputs) {
        auto reports = load_summary(p);
        all.insert(all.end(), std::make_move_iterator(reports.begin()),
                   std::make_move_iterator(reports.end()));
    }
    if (all.empty()) {
        throw Error(Errc::empty_input, "no model reports found");
    }
    return all;
}

} // namespace ocrbench

#endif // OCRBENCH_PIPELINE_HPP
