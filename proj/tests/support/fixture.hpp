// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

// Synthetic packaging corpus: 60 products, 113 images, each image carrying
// exactly one planted field with a transcribed ground truth.

#ifndef OCRBENCH_TESTS_FIXTURE_HPP
#define OCRBENCH_TESTS_FIXTURE_HPP

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "ocrbench/corpus.hpp"
#include "ocrbench/field.hpp"

namespace ocrbench::testing {

struct Fixture {
    std::vector<ImageRecord> records;
    std::vector<GroundTruthEntry> ground_truth; // one per record, same order
    std::vector<FieldType> planted;             // field per record
};

namespace detail {

inline const std::vector<std::string> ingredient_words{
    "Sugar", "wheat flour", "salt", "vegetable oil (palm)", "milk solids", "cocoa butter",
    "emulsifier (soya lecithin)", "flavourant", "yeast", "water", "maize starch",
    "raising agent (sodium bicarbonate)", "preservative (potassium sorbate)", "glucose syrup",
    "rice", "DEXTROSE", "skimmed milk powder", "colourant (caramel)", "whey powder", "vinegar",
    "tomato paste", "spices", "garlic", "onion powder", "antioxidant (ascorbic acid)"};

inline const std::vector<std::string> distractors{
    "Best before 12/2024", "Keep in a cool dry place", "Product of South Africa",
    "Net weight 500 g", "HALAAL", "www.example.co.za", "Store below 25 C", "Batch no 4471-B"};

inline const std::vector<std::string> ingredient_anchors{"INGREDIENTS:", "Ingredients:",
                                                         "ingredients", "INGREDIENTS"};
inline const std::vector<std::string> nfp_anchors{"NUTRITION INFORMATION", "Nutritional Information",
                                                  "TYPICAL NUTRITIONAL INFORMATION", "Nutrition Facts"};

inline char confusable(char c)
{
    switch (c) {
    case 'i': return '1';
    case 'l': return '1';
    case 'o': return '0';
    case 'e': return 'c';
    case 'n': return 'm';
    case 't': return 'f';
    case 'r': return 'n';
    case 'u': return 'v';
    case 'd': return 'b';
    case 'g': return 'q';
    default: return 'x';
    }
}

// Replaces one character inside the anchor's core word ("ingredient" or
// "nutrition") with an OCR-style confusion.
inline std::string corrupt_anchor(std::string anchor, std::mt19937& rng)
{
    std::string lower = anchor;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); });
    std::size_t core = lower.find("ingredient");
    std::size_t core_len = 10;
    if (core == std::string::npos) {
        core = lower.find("nutrition");
        core_len = 9;
    }
    const std::size_t pos = core + std::uniform_int_distribution<std::size_t>(0, core_len - 1)(rng);
    anchor[pos] = confusable(lower[pos]);
    return anchor;
}

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937& rng)
{
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

inline std::string ingredient_body(std::mt19937& rng)
{
    std::vector<std::string> words = ingredient_words;
    std::shuffle(words.begin(), words.end(), rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 9)(rng);
    std::string body;
    for (std::size_t i = 0; i < n; ++i) {
        body += (i == 0 ? "" : ", ") + words[i];
    }
    return body + ".";
}

inline std::string nfp_body(std::mt19937& rng)
{
    auto num = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "Per 100g Energy %dkJ Protein %d.%dg Glycaemic carbohydrate %d.%dg of which total "
                  "sugar %d.%dg Total fat %d.%dg Dietary fibre %d.%dg Total sodium %dmg",
                  num(200, 2400), num(0, 30), num(0, 9), num(0, 90), num(0, 9), num(0, 60), num(0, 9),
                  num(0, 40), num(0, 9), num(0, 12), num(0, 9), num(5, 900));
    return buf;
}

} // namespace detail

/// Deterministic for a given seed. With `corrupt_anchors` every planted
/// anchor carries one OCR-style character substitution.
inline Fixture make_fixture(unsigned seed = 20230613, bool corrupt_anchors = false)
{
    using namespace detail;
    std::mt19937 rng(seed);
    Fixture fx;
    constexpr int products = 60;
    constexpr int two_view_products = 53; // 53 * 2 + 7 = 113 images
    for (int p = 1; p <= products; ++p) {
        char key[32];
        std::snprintf(key, sizeof key, "20230613_04_03_%03d", p);
        std::vector<FieldType> fields;
        if (p <= two_view_products) {
            fields = {FieldType::ingredients, FieldType::nfp};
            if (rng() % 2 == 0) {
                std::swap(fields[0], fields[1]);
            }
        } else {
            fields = {p % 2 == 0 ? FieldType::ingredients : FieldType::nfp};
        }
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const FieldType field = fields[i];
            const std::string body =
                field == FieldType::ingredients ? ingredient_body(rng) : nfp_body(rng);
            std::string anchor =
                pick(field == FieldType::ingredients ? ingredient_anchors : nfp_anchors, rng);
            if (corrupt_anchors) {
                anchor = corrupt_anchor(anchor, rng);
            }
            std::string raw;
            const int n_distract = std::uniform_int_distribution<int>(0, 2)(rng);
            for (int d = 0; d < n_distract; ++d) {
                raw += pick(distractors, rng) + " * ";
            }
            raw += anchor + " " + body;

            ImageRecord rec;
            rec.product_key = key;
            rec.image_index = static_cast<std::uint32_t>(i + 1);
            rec.image_filename = std::string(key) + " (" + std::to_string(i + 1) + ").jpg";
            rec.raw_text = raw;
            rec.time_seconds = std::uniform_real_distribution<double>(0.3, 0.9)(rng);
            fx.ground_truth.push_back({rec.product_key, rec.image_filename, field, body});
            fx.records.push_back(std::move(rec));
            fx.planted.push_back(field);
        }
    }
    return fx;
}

} // namespace ocrbench::testing

#endif // OCRBENCH_TESTS_FIXTURE_HPP
