// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "idmx/matrix.hpp"
#include "idmx/measure_value.hpp"
#include "idmx/numeric.hpp"

namespace idmx {

// 1 - sum(p^2) over cited-category proportions.
inline MeasureValue simpson(const TransactionMatrix& tm, std::size_t cat) {
  auto p = row_proportions(tm, cat);
  if (!p) return MeasureValue::undefined(Undefined::zero_row);
  NeumaierSum sq;
  for (const auto& [_, v] : *p) sq.add(v * v);
  return MeasureValue::of(1.0 - sq.value());
}

// -sum(p ln p) in nats; empty terms contribute nothing.
inline MeasureValue shannon(const TransactionMatrix& tm, std::size_t cat) {
  auto p = row_proportions(tm, cat);
  if (!p) return MeasureValue::undefined(Undefined::zero_row);
  NeumaierSum h;
  for (const auto& [_, v] : *p)
    if (v > 0.0) h.add(-v * std::log(v));
  return MeasureValue::of(h.value());
}

// Brillouin's finite-population diversity, (ln N! - sum ln n_k!) / N, on the
// row's reference counts. The counts must be integers, so fractional-counting
// rows are rounded to nearest for this measure alone; `rounding_applied`
// reports whether that changed anything. A row whose every count rounds to
// zero has no population left to describe.
inline MeasureValue brillouin(const TransactionMatrix& tm, std::size_t cat,
                              bool* rounding_applied = nullptr) {
  if (rounding_applied) *rounding_applied = false;
  const auto& row = tm.row(cat);
  if (row.empty()) return MeasureValue::undefined(Undefined::zero_row);
  std::vector<long long> counts;
  counts.reserve(row.size());
  long long total = 0;
  for (const auto& [_, v] : row) {
    const long long c = std::llround(v);
    if (rounding_applied && std::abs(v - static_cast<double>(c)) > 1e-9)
      *rounding_applied = true;
    if (c > 0) {
      counts.push_back(c);
      total += c;
    }
  }
  if (total == 0) return MeasureValue::undefined(Undefined::zero_row);
  NeumaierSum s;
  s.add(std::lgamma(static_cast<double>(total) + 1.0));
  for (long long c : counts) s.add(-std::lgamma(static_cast<double>(c) + 1.0));
  return MeasureValue::of(s.value() / static_cast<double>(total));
}

// Which categories the Gini ranking runs over: just the cited ones, or every
// category in the table (zeros included).
enum class GiniSupport { observed, all };

inline const char* to_string(GiniSupport g) {
  return g == GiniSupport::observed ? "observed" : "all";
}

// Complement of the Gini concentration of the row's reference counts,
// G = sum_k (2h - n - 1) c_k / (n sum c), counts sorted ascending. With a
// single category in support the row is maximally concentrated (G := 1), so
// the complement is 0. Tie order cannot affect the sum.
inline MeasureValue gini_complement(const TransactionMatrix& tm, std::size_t cat,
                                    GiniSupport support = GiniSupport::observed) {
  const auto& row = tm.row(cat);
  if (row.empty()) return MeasureValue::undefined(Undefined::zero_row);
  std::vector<double> counts;
  if (support == GiniSupport::all) {
    counts.assign(tm.size(), 0.0);
    for (const auto& [k, v] : row) counts[k] = v;
  } else {
    counts.reserve(row.size());
    for (const auto& [_, v] : row) counts.push_back(v);
  }
  const std::size_t n = counts.size();
  if (n == 1) return MeasureValue::of(0.0);
  std::sort(counts.begin(), counts.end());
  NeumaierSum num;
  NeumaierSum denom_sum;
  for (std::size_t h = 1; h <= n; ++h) {
    num.add((2.0 * static_cast<double>(h) - static_cast<double>(n) - 1.0) *
            counts[h - 1]);
    denom_sum.add(counts[h - 1]);
  }
  const double g = num.value() / (static_cast<double>(n) * denom_sum.value());
  return MeasureValue::of(1.0 - g);
}

}  // namespace idmx
