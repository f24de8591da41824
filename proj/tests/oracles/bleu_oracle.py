#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The ocrbench Authors
"""Independent sentence-BLEU oracle (smoothing method 4, K = 5).

Written with exact Fractions for the clipped precisions and only the final
log/exp in floating point. The pinned values in tests/metrics_test.cpp and
the acceptance suite were produced by this script. When nltk is importable
every value is cross-checked against nltk's sentence_bleu.
"""
import math
from collections import Counter
from fractions import Fraction

K = 5
MAX_ORDER = 4

CASES = [
    ("a b c d", "a b c e"),
    ("the cat sat on the mat", "the cat sat on mat"),
    ("ingredients sugar wheat flour salt", "sugar wheat flour"),
    ("a b c d e f", "a x c y e z"),
    ("energy 450 kj protein 5 g", "energy 450 kj protein 5g"),
    ("a b", "a c"),
    ("a a a a", "a a"),
    ("one two three four five", "five four three two one"),
    ("x y z", "x y z w v u t"),
    ("sugar salt", "sugar"),
    ("a b c d e f g h", "a b c d x f g h"),
    ("milk", "water"),
    ("wheat flour, sugar, vegetable oil (palm), salt", "wheat fl0ur, sugar, vegetable oil (palm) salt"),
]


def ngrams(tokens, n):
    return [tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1)]


def bleu(ref, hyp):
    r, h = ref.split(), hyp.split()
    c = len(h)
    if c == 0:
        return 0.0
    order = min(MAX_ORDER, c)
    weights = [Fraction(1, order)] * order
    precisions = []
    for n in range(1, order + 1):
        hc, rc = Counter(ngrams(h, n)), Counter(ngrams(r, n))
        matches = sum(min(v, rc[g]) for g, v in hc.items())
        total = max(1, sum(hc.values()))
        precisions.append((matches, total))
    if precisions[0][0] == 0:
        return 0.0
    inc = 1
    logs = []
    for (m, t), w in zip(precisions, weights):
        if m == 0:
            p = math.log(c) / (K * 2 ** inc) / t
            inc += 1
        else:
            p = m / t
        logs.append(float(w) * math.log(p))
    bp = 1.0 if c > len(r) else math.exp(1 - len(r) / c)
    return bp * math.exp(math.fsum(logs))


def main():
    try:
        from nltk.translate.bleu_score import SmoothingFunction, sentence_bleu
    except ImportError:
        sentence_bleu = None
    for ref, hyp in CASES:
        value = bleu(ref, hyp)
        line = f'{{"{ref}", "{hyp}", {value!r}}},'
        if sentence_bleu is not None:
            other = sentence_bleu([ref.split()], hyp.split(),
                                  smoothing_function=SmoothingFunction().method4,
                                  auto_reweigh=True)
            assert abs(other - value) < 1e-12, (ref, hyp, value, other)
            line += "  // nltk agrees"
        print(line)


if __name__ == "__main__":
    main()
