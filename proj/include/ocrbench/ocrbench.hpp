// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ocrbench Authors

#ifndef OCRBENCH_OCRBENCH_HPP
#define OCRBENCH_OCRBENCH_HPP

#include "ocrbench/aggregate.hpp"
#include "ocrbench/corpus.hpp"
#include "ocrbench/csv.hpp"
#include "ocrbench/error.hpp"
#include "ocrbench/field.hpp"
#include "ocrbench/metrics.hpp"
#include "ocrbench/parallel.hpp"
#include "ocrbench/pipeline.hpp"
#include "ocrbench/report.hpp"
#include "ocrbench/sectioner.hpp"
#include "ocrbench/textnorm.hpp"
#include "ocrbench/unicode.hpp"

#endif // OCRBENCH_OCRBENCH_HPP
