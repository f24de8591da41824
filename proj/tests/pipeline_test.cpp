// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "ocrbench/pipeline.hpp"
#include "support/fixture.hpp"

namespace ocrbench {
namespace {

namespace fs = std::filesystem;

class Workspace : public ::testing::Test {
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("ocrbench-pipeline-" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }

    void TearDown() override { fs::remove_all(dir_); }

    fs::path path(const std::string& name) const { return dir_ / name; }

    void write_fixture(const testing::Fixture& fx)
    {
        save_predictions(path("raw.csv"), fx.records);
        csv::write_file(path("gt.csv"), format_ground_truth(fx.ground_truth));
    }

    static int cli(const std::string& args)
    {
        const std::string cmd = std::string("\"") + OCRBENCH_CLI + "\" " + args + " 2>/dev/null >/dev/null";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static SectionCommand section(const fs::path& in, const fs::path& out)
    {
        SectionCommand cmd;
        cmd.input = in;
        cmd.output = out;
        return cmd;
    }

    static std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

    fs::path dir_;
};

TEST_F(Workspace, SectionThenEvaluatePerfectOcr)
{
    const auto fx = testing::make_fixture();
    write_fixture(fx);
    const auto rows = run_section(section(path("raw.csv"), path("sectioned.csv")));
    EXPECT_EQ(rows.size(), 113u);

    EvaluateCommand ev;
    ev.sectioned = path("sectioned.csv");
    ev.ground_truth = path("gt.csv");
    ev.out_dir = path("out");
    ev.timing_source = path("raw.csv");
    const auto result = run_evaluate(ev);
    EXPECT_EQ(result.rows.size(), 113u);
    EXPECT_EQ(result.report.metrics.cer.mean, 0.0);
    EXPECT_EQ(result.report.metrics.bleu.mean, 1.0);
    EXPECT_EQ(result.report.coverage.product, (CoverageLevel{60, 60}));
    ASSERT_TRUE(result.report.timing);
    EXPECT_EQ(result.report.timing->image_count, 113u);
    EXPECT_TRUE(fs::exists(path("out/metrics.csv")));
    EXPECT_TRUE(fs::exists(path("out/summary.json")));
    EXPECT_TRUE(fs::exists(path("out/summary.txt")));
}

TEST_F(Workspace, ResectioningIsStable)
{
    write_fixture(testing::make_fixture());
    run_section(section(path("raw.csv"), path("s1.csv")));
    run_section(section(path("s1.csv"), path("s2.csv")));
    EXPECT_EQ(csv::read_file(path("s1.csv")), csv::read_file(path("s2.csv")));
}

TEST_F(Workspace, MissingPredictionsScoredOrSkipped)
{
    const auto fx = testing::make_fixture();
    std::vector<SectionedText> preds = section_records(fx.records);
    preds.erase(preds.begin()); // drop one (product, field)
    EvaluateOptions opts;
    const auto with = evaluate(preds, fx.ground_truth, {}, opts);
    EXPECT_EQ(with.report.missing_count, 1u);
    EXPECT_EQ(with.report.row_count, 113u);
    EXPECT_GT(with.report.metrics.cer.mean, 0.0);
    opts.skip_missing = true;
    const auto without = evaluate(preds, fx.ground_truth, {}, opts);
    EXPECT_EQ(without.report.row_count, 112u);
    EXPECT_EQ(without.report.metrics.cer.mean, 0.0);
}

TEST_F(Workspace, EvaluateFallsBackToProductMatch)
{
    const std::vector<GroundTruthEntry> gt{{"P", "P (1).jpg", FieldType::nfp, "Energy 450kJ"}};
    const std::vector<SectionedText> preds{{"P", "P (2).jpg", FieldType::nfp, "energy 450kj"}};
    const auto r = evaluate(preds, gt, {}, {});
    EXPECT_FALSE(r.rows[0].missing);
    EXPECT_EQ(r.rows[0].cer, 0.0);
    const std::vector<GroundTruthEntry> blank{{"P", "P (1).jpg", FieldType::nfp, "***"}};
    EXPECT_THROW(evaluate(preds, blank, {}, {}), Error);
}

TEST_F(Workspace, CliSectionEvaluateReport)
{
    write_fixture(testing::make_fixture());
    ASSERT_EQ(cli("section " + quoted(path("raw.csv")) + " -o " + quoted(path("s.csv"))), 0);
    ASSERT_EQ(cli("evaluate " + quoted(path("s.csv")) + " " + quoted(path("gt.csv")) + " --out-dir " +
                  quoted(path("out")) + " --model fixture --timing " + quoted(path("raw.csv"))),
              0);
    ASSERT_EQ(cli("report " + quoted(path("out/summary.json")) + " " + quoted(path("out/summary.json")) +
                  " -o " + quoted(path("tables.txt")) + " --json " + quoted(path("merged.json"))),
              0);
    EXPECT_EQ(load_summary(path("merged.json")).size(), 2u);
    EXPECT_NE(csv::read_file(path("tables.txt")).find("| fixture |"), std::string::npos);
}

TEST_F(Workspace, CliErrorsExitOne)
{
    csv::write_file(path("bad.csv"), "product_id,image_filename\n");
    EXPECT_EQ(cli("section " + quoted(path("bad.csv")) + " -o " + quoted(path("s.csv"))), 1);
    EXPECT_EQ(cli("section --fuzzy-threshold 101 " + quoted(path("bad.csv")) + " -o x"), 1);
    EXPECT_EQ(cli("frobnicate"), 1);
}

TEST_F(Workspace, CliConfigFromEnvironment)
{
    csv::write_file(path("raw.csv"), "product_id,image_filename,raw_ocr_text,time_seconds\n"
                                     ",20230613_04_03_001 (1).jpg,ZUTATEN: Zucker,0.1\n");
    csv::write_file(path("cfg.json"), R"({"anchors": {"ingredients": ["zutaten:"]}})");
    const std::string env = "OCRBENCH_CONFIG=" + quoted(path("cfg.json")) + " ";
    const std::string cmd = env + "\"" + OCRBENCH_CLI + "\" section " + quoted(path("raw.csv")) +
                            " -o " + quoted(path("s.csv")) + " 2>/dev/null";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    const auto rows = load_sectioned(path("s.csv"));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].text, "zucker");
}

class AdapterRun : public Workspace {
protected:
    void SetUp() override
    {
        Workspace::SetUp();
        fs::create_directories(path("images"));
        image("20230613_04_03_001 (1).jpg", "INGREDIENTS: sugar, salt");
        image("20230613_04_03_001 (2).jpg", "NUTRITION FACTS energy 12kJ");
        image("20230613_04_03_002 (1).png", "FAIL");
        image("notes.txt", "ignored");
        adapter_ = fs::path(OCRBENCH_TEST_DATA_DIR) / "fake_adapter.sh";
    }

    void image(const std::string& name, const std::string& content)
    {
        std::ofstream(path("images") / name) << content;
    }

    RunCommand command(bool batch, Mode mode) const
    {
        RunCommand cmd;
        cmd.adapter = {adapter_.string()};
        cmd.image_dir = path("images");
        cmd.output = path("preds.csv");
        cmd.batch = batch;
        cmd.mode = mode;
        cmd.wallclock_log = path("wall.csv");
        return cmd;
    }

    fs::path adapter_;
};

TEST_F(AdapterRun, PerImageFailureRecordedAsEmptyRow)
{
    Diagnostics diag;
    const auto outcome = run_adapter(command(false, Mode::lenient), &diag);
    ASSERT_EQ(outcome.records.size(), 3u);
    EXPECT_EQ(outcome.failed_images, std::vector<std::string>{"20230613_04_03_002 (1).png"});
    EXPECT_EQ(outcome.records[0].raw_text, "INGREDIENTS: sugar, salt");
    EXPECT_EQ(*outcome.records[0].time_seconds, 0.125);
    EXPECT_EQ(outcome.records[2].raw_text, "");
    EXPECT_GT(*outcome.records[2].time_seconds, 0.0);
    EXPECT_EQ(diag.warnings.size(), 1u);
    const auto reread = load_predictions(path("preds.csv"), Mode::strict);
    EXPECT_EQ(reread.size(), 3u);
    EXPECT_EQ(reread[1].product_key, "20230613_04_03_001");
    EXPECT_TRUE(fs::exists(path("wall.csv")));
}

TEST_F(AdapterRun, StrictFailureThrows)
{
    try {
        run_adapter(command(false, Mode::strict));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::adapter_failure);
    }
}

TEST_F(AdapterRun, BatchSuccess)
{
    fs::remove(path("images") / "20230613_04_03_002 (1).png");
    const auto outcome = run_adapter(command(true, Mode::lenient));
    ASSERT_EQ(outcome.records.size(), 2u);
    EXPECT_TRUE(outcome.failed_images.empty());
    EXPECT_EQ(outcome.records[1].raw_text, "NUTRITION FACTS energy 12kJ");
}

TEST_F(AdapterRun, CliExitCodes)
{
    const std::string base = "run --adapter " + quoted(adapter_) + " --images " +
                             quoted(path("images")) + " -o " + quoted(path("preds.csv"));
    EXPECT_EQ(cli(base), 0);
    EXPECT_EQ(cli("--strict " + base), 2);
}

} // namespace
} // namespace ocrbench
