// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

// ocrbench: sectioning, scoring and reporting for OCR output on food
// packaging photos.
//
//   ocrbench section  raw.csv -o sectioned.csv [--fuzzy]
//   ocrbench evaluate sectioned.csv ground_truth.csv --out-dir results/
//   ocrbench run      --adapter "python3 adapter.py" --images dir/ -o raw.csv
//   ocrbench report   a/summary.json b/summary.json -o tables.txt

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ocrbench/ocrbench.hpp"

namespace fs = std::filesystem;
using namespace ocrbench;

namespace {

constexpr int exit_fatal = 1;
constexpr int exit_adapter = 2;

struct GlobalFlags {
    std::string config;
    bool strict = false;
    unsigned jobs = 1;
};

NormalizationConfig resolve_config(const GlobalFlags& g)
{
    std::string path = g.config;
    if (path.empty()) {
        if (const char* env = std::getenv("OCRBENCH_CONFIG"); env != nullptr && *env != '\0') {
            path = env;
        }
    }
    return path.empty() ? NormalizationConfig{} : load_config(path);
}

void flush_warnings(const Diagnostics& diag)
{
    for (const auto& w : diag.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
}

std::vector<std::string> split_command(const std::string& command)
{
    std::istringstream in(command);
    std::vector<std::string> argv;
    for (std::string word; in >> word;) {
        argv.push_back(word);
    }
    return argv;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"OCR benchmark harness for ingredient lists and nutrition panels"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags global;
    app.add_option("--config", global.config, "Normalization config JSON (fallback: $OCRBENCH_CONFIG)");
    app.add_flag("--strict", global.strict, "Treat malformed rows and adapter failures as fatal");
    app.add_option("--jobs", global.jobs, "Worker threads for section/evaluate")
        ->check(CLI::Range(1u, 1024u));

    // section
    SectionCommand section;
    auto* section_cmd = app.add_subcommand("section", "Classify raw OCR text into ingredients/nfp fields");
    section_cmd->add_option("input", section.input, "Predictions CSV (or a sectioned CSV)")->required();
    section_cmd->add_option("-o,--output", section.output, "Sectioned CSV to write")->required();
    section_cmd->add_flag("--fuzzy", section.options.fuzzy,
                          "Partial-ratio fallback for blocks without an exact anchor");
    section_cmd->add_option("--fuzzy-threshold", section.options.fuzzy_config.threshold,
                            "Minimum partial-ratio score (0-100)")
        ->check(CLI::Range(0, 100))
        ->capture_default_str();

    // evaluate
    EvaluateCommand evaluate;
    std::string model_name;
    std::string timing_source;
    auto* eval_cmd = app.add_subcommand("evaluate", "Score sectioned text against ground truth");
    eval_cmd->add_option("sectioned", evaluate.sectioned, "Sectioned CSV")->required();
    eval_cmd->add_option("ground_truth", evaluate.ground_truth, "Ground-truth CSV")->required();
    eval_cmd->add_option("--out-dir", evaluate.out_dir, "Directory for metrics.csv and summaries")
        ->required();
    eval_cmd->add_option("--model", model_name, "Model name in the summary (default: input file stem)");
    eval_cmd->add_flag("--skip-missing", evaluate.options.skip_missing,
                       "Leave images without a prediction out of the means");
    eval_cmd->add_option("--timing", timing_source, "Predictions CSV supplying time_seconds");
    eval_cmd->add_flag("--no-timing", evaluate.no_timing, "Omit timing from the summary");

    // run
    RunCommand run;
    std::string adapter_command;
    std::string wallclock_log;
    auto* run_cmd = app.add_subcommand("run", "Drive an OCR adapter over an image directory");
    run_cmd->add_option("--adapter", adapter_command,
                        "Adapter command line; '--input <path> --output <csv>' is appended")
        ->required();
    run_cmd->add_option("--images", run.image_dir, "Directory of dataset images")->required();
    run_cmd->add_option("-o,--output", run.output, "Predictions CSV to write")->required();
    run_cmd->add_flag("--batch", run.batch, "Call the adapter once with the whole directory");
    run_cmd->add_option("--wallclock-log", wallclock_log, "CSV of harness wall-clock seconds per image");

    // report
    std::vector<fs::path> summaries;
    std::string report_out;
    std::string report_json;
    auto* report_cmd = app.add_subcommand("report", "Render summary tables from summary.json files");
    report_cmd->add_option("summaries", summaries, "summary.json files, one or more models each")
        ->required()
        ->check(CLI::ExistingFile);
    report_cmd->add_option("-o,--output", report_out, "Text file for the tables (default: stdout)");
    report_cmd->add_option("--json", report_json, "Write the merged summary JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_fatal;
    }

    const Mode mode = global.strict ? Mode::strict : Mode::lenient;
    Diagnostics diag;
    try {
        if (*section_cmd) {
            section.config = resolve_config(global);
            section.mode = mode;
            section.jobs = global.jobs;
            const auto rows = run_section(section, &diag);
            flush_warnings(diag);
            std::cerr << "sectioned " << rows.size() << " field rows -> " << section.output.string()
                      << "\n";
        } else if (*eval_cmd) {
            evaluate.config = resolve_config(global);
            evaluate.mode = mode;
            evaluate.options.jobs = global.jobs;
            evaluate.options.model_name =
                model_name.empty() ? evaluate.sectioned.stem().string() : model_name;
            if (!timing_source.empty()) {
                evaluate.timing_source = timing_source;
            }
            const auto result = run_evaluate(evaluate, &diag);
            flush_warnings(diag);
            std::cout << render_summary_tables(std::span(&result.report, 1));
        } else if (*run_cmd) {
            run.adapter = split_command(adapter_command);
            run.mode = mode;
            if (!wallclock_log.empty()) {
                run.wallclock_log = wallclock_log;
            }
            const auto outcome = run_adapter(run, &diag);
            flush_warnings(diag);
            std::cerr << "ran adapter on " << outcome.records.size() << " images ("
                      << outcome.failed_images.size() << " failed), harness wall-clock "
                      << outcome.wall_total_s << " s\n";
        } else if (*report_cmd) {
            const auto reports = merge_summaries(summaries);
            if (!report_json.empty()) {
                write_summary(reports, report_json);
            }
            if (report_out.empty()) {
                std::cout << render_summary_tables(reports);
            } else {
                write_summary_text(reports, report_out);
            }
        }
    } catch (const Error& e) {
        flush_warnings(diag);
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == Errc::adapter_failure ? exit_adapter : exit_fatal;
    } catch (const std::exception& e) {
        flush_warnings(diag);
        std::cerr << "error: " << e.what() << "\n";
        return exit_fatal;
    }
    return 0;
}
