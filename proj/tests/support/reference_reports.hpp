// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

// Four model reports with published-style figures, used for golden output.

#ifndef OCRBENCH_TESTS_REFERENCE_REPORTS_HPP
#define OCRBENCH_TESTS_REFERENCE_REPORTS_HPP

#include <vector>

#include "ocrbench/aggregate.hpp"

namespace ocrbench::testing {

inline AggregateReport reference_report(const char* name, std::size_t product_covered,
                                        double bleu, double rouge, double f1, MeanSd cer, MeanSd wer,
                                        double total_s, double mean_s, std::size_t timed_images,
                                        CoverageLevel ingredients, CoverageLevel nfp)
{
    AggregateReport r;
    r.model_name = name;
    r.metrics = {cer, wer, {bleu, 0.1}, {rouge, 0.1}, {f1, 0.1}};
    r.coverage = {{product_covered, 59}, ingredients, nfp};
    r.timing = TimingSummary{total_s, mean_s, timed_images};
    r.image_count = 113;
    r.row_count = 113;
    r.missing_count = 113 - product_covered;
    return r;
}

inline std::vector<AggregateReport> reference_reports()
{
    return {
        reference_report("EasyOCR", 54, 0.153, 0.314, 0.265, {1.075, 0.569}, {7.408, 4.253},
                         1322.10, 0.81, 1632, {48, 53}, {44, 51}),
        reference_report("Tesseract", 47, 0.245, 0.391, 0.345, {0.912, 0.584}, {6.262, 4.247},
                         949.53, 0.58, 1637, {40, 53}, {38, 51}),
        reference_report("PaddleOCR", 58, 0.163, 0.361, 0.248, {0.985, 0.539}, {6.857, 4.004},
                         10161.16, 6.24, 1628, {52, 53}, {50, 51}),
        reference_report("TrOCR", 59, 0.010, 0.026, 0.017, {1.049, 0.484}, {7.243, 3.759},
                         3573.58, 2.20, 1624, {53, 53}, {51, 51}),
    };
}

} // namespace ocrbench::testing

#endif // OCRBENCH_TESTS_REFERENCE_REPORTS_HPP
