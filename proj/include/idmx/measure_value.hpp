// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <optional>

namespace idmx {

// Why a cell has no value. Degenerate data never produces NaN; it produces
// one of these, and the reason travels with the report metadata.
enum class Undefined {
  zero_row,        // the category issued no references
  no_journals,     // the category has no journals assigned
  no_publications, // no (referencing) publications to aggregate over
  degenerate_n,    // fewer data points than the statistic needs
  zero_variance,   // a correlation input is constant
};

inline const char* to_string(Undefined u) {
  switch (u) {
    case Undefined::zero_row: return "zero_row";
    case Undefined::no_journals: return "no_journals";
    case Undefined::no_publications: return "no_publications";
    case Undefined::degenerate_n: return "degenerate_n";
    case Undefined::zero_variance: return "zero_variance";
  }
  return "unknown";
}

struct MeasureValue {
  std::optional<double> value;
  std::optional<Undefined> reason;  // may be unset for values read back from CSV

  static MeasureValue of(double v) { return {v, std::nullopt}; }
  static MeasureValue undefined(Undefined r) { return {std::nullopt, r}; }
  bool defined() const { return value.has_value(); }
};

}  // namespace idmx
