// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

// Reference values computed outside this library. BLEU values come from
// tests/oracles/bleu_oracle.py (exact fractions, cross-checked with NLTK);
// ROUGE-L values were worked by hand from the LCS table.

#ifndef OCRBENCH_TESTS_PINNED_HPP
#define OCRBENCH_TESTS_PINNED_HPP

#include <array>

namespace ocrbench::testing {

struct PinnedCase {
    const char* reference;
    const char* hypothesis;
    double expected;
};

inline constexpr std::array<PinnedCase, 13> bleu_cases{{
    {"a b c d", "a b c e", 0.43146827293898643},
    {"the cat sat on the mat", "the cat sat on mat", 0.5789300674674098},
    {"ingredients sugar wheat flour salt", "sugar wheat flour", 0.513417119032592},
    {"a b c d e f", "a x c y e z", 0.049475702907177795},
    {"energy 450 kj protein 5 g", "energy 450 kj protein 5g", 0.5475182535069453},
    {"a b", "a c", 0.18616487055295167},
    {"a a a a", "a a", 0.36787944117144233},
    {"one two three four five", "five four three two one", 0.06826221297363252},
    {"x y z", "x y z w v u t", 0.19308506685901675},
    {"sugar salt", "sugar", 0.36787944117144233},
    {"a b c d e f g h", "a b c d x f g h", 0.5},
    {"milk", "water", 0.0},
    {"wheat flour, sugar, vegetable oil (palm), salt",
     "wheat fl0ur, sugar, vegetable oil (palm) salt", 0.21938699234088677},
}};

// LCS l, |ref| m, |hyp| n: F = 2l / (m + n).
inline constexpr std::array<PinnedCase, 7> rouge_cases{{
    {"a b c", "a c", 0.8},                               // l=2, 4/5
    {"a b c d e", "a c e", 0.75},                        // l=3, 6/8
    {"a b c d", "d c b a", 0.25},                        // l=1, 2/8
    {"a b", "a b c d", 2.0 / 3.0},                       // l=2, 4/6
    {"sugar salt water oil", "salt sugar water", 4.0 / 7.0}, // l=2, 4/7
    {"a a b", "a b b", 2.0 / 3.0},                       // l=2, 4/6
    {"x y", "z", 0.0},                                   // l=0
}};

} // namespace ocrbench::testing

#endif // OCRBENCH_TESTS_PINNED_HPP
