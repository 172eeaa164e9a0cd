// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "idmx/error.hpp"

namespace idmx {

struct Histogram {
  std::vector<double> edges;        // bins + 1, ascending
  std::vector<std::size_t> counts;  // one per bin
  std::size_t excluded = 0;         // values that were undefined upstream
};

// Equal-width bins over the observed [min, max]; values equal to max land in
// the last bin. A single-point range is widened by 0.5 on both sides so one
// bin still holds everything. bins must be >= 1.
inline Histogram make_histogram(const std::vector<double>& values, std::size_t bins) {
  if (bins == 0) throw ValidationError("histogram needs at least one bin");
  Histogram h;
  h.counts.assign(bins, 0);
  double lo = 0.0, hi = 1.0;
  if (!values.empty()) {
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    lo = *mn;
    hi = *mx;
    if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b)
    h.edges[b] = lo + width * static_cast<double>(b);
  h.edges[bins] = hi;
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - lo) / width);
    if (b >= bins) b = bins - 1;
    ++h.counts[b];
  }
  return h;
}

}  // namespace idmx
