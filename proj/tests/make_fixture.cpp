// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

// Writes the synthetic fixture as raw.csv and ground_truth.csv.
//   make_fixture <out-dir> [--corrupt]

#include <cstring>
#include <filesystem>
#include <iostream>

#include "ocrbench/corpus.hpp"
#include "support/fixture.hpp"

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::cerr << "usage: make_fixture <out-dir> [--corrupt]\n";
        return 1;
    }
    const std::filesystem::path dir = argv[1];
    const bool corrupt = argc > 2 && std::strcmp(argv[2], "--corrupt") == 0;
    const auto fx = ocrbench::testing::make_fixture(20230613, corrupt);
    try {
        std::filesystem::create_directories(dir);
        ocrbench::save_predictions(dir / "raw.csv", fx.records);
        ocrbench::csv::write_file(dir / "ground_truth.csv", ocrbench::format_ground_truth(fx.ground_truth));
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
