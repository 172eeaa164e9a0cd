// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "idmx/corpus.hpp"
#include "idmx/matrix.hpp"
#include "idmx/measure_value.hpp"
#include "idmx/numeric.hpp"

namespace idmx {

// Share of the category's journals assigned to two or more categories.
inline MeasureValue p_multi(const Corpus& corpus, std::size_t cat) {
  const auto& js = category_journals(corpus, cat);
  if (js.empty()) return MeasureValue::undefined(Undefined::no_journals);
  std::size_t multi = 0;
  for (std::size_t j : js)
    if (corpus.journal(j).categories.size() >= 2) ++multi;
  return MeasureValue::of(static_cast<double>(multi) / static_cast<double>(js.size()));
}

// Share of the category's journals whose categories span two or more areas.
inline MeasureValue p_outside(const Corpus& corpus, std::size_t cat) {
  const auto& js = category_journals(corpus, cat);
  if (js.empty()) return MeasureValue::undefined(Undefined::no_journals);
  std::size_t outside = 0;
  for (std::size_t j : js) {
    std::set<AreaId> areas;
    for (std::size_t c : corpus.journal(j).categories)
      areas.insert(corpus.category(c).area);
    if (areas.size() >= 2) ++outside;
  }
  return MeasureValue::of(static_cast<double>(outside) / static_cast<double>(js.size()));
}

// Share of the category's outgoing reference weight landing outside itself.
inline MeasureValue pro(const TransactionMatrix& tm, std::size_t cat) {
  const double total = tm.row_sum(cat);
  if (total == 0.0) return MeasureValue::undefined(Undefined::zero_row);
  return MeasureValue::of(1.0 - tm.at(cat, cat) / total);
}

// Distinct co-assigned category pairs across the category's journals, per
// journal. Every pair a journal's category set induces counts, including
// pairs not involving the focal category itself.
inline MeasureValue d_links(const Corpus& corpus, std::size_t cat) {
  const auto& js = category_journals(corpus, cat);
  if (js.empty()) return MeasureValue::undefined(Undefined::no_journals);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j : js) {
    const auto& cats = corpus.journal(j).categories;
    for (std::size_t a = 0; a < cats.size(); ++a)
      for (std::size_t b = a + 1; b < cats.size(); ++b)
        pairs.insert({std::min(cats[a], cats[b]), std::max(cats[a], cats[b])});
  }
  return MeasureValue::of(static_cast<double>(pairs.size()) /
                          static_cast<double>(js.size()));
}

// Complement of Pratt's concentration index over the row's cited-category
// proportions. Proportions are ranked decreasing with ties averaged; a
// single cited category is maximal concentration, so the complement is 0.
inline MeasureValue pratt_complement(const TransactionMatrix& tm, std::size_t cat) {
  auto p = row_proportions(tm, cat);
  if (!p) return MeasureValue::undefined(Undefined::zero_row);
  const std::size_t n = p->size();
  if (n == 1) return MeasureValue::of(0.0);
  std::vector<double> props;
  props.reserve(n);
  for (const auto& [_, v] : *p) props.push_back(v);
  const std::vector<double> ranks = average_ranks(props, /*descending=*/true);
  NeumaierSum qbar;
  for (std::size_t k = 0; k < n; ++k) qbar.add(ranks[k] * props[k]);
  const double c = 2.0 * ((static_cast<double>(n) + 1.0) / 2.0 - qbar.value()) /
                   (static_cast<double>(n) - 1.0);
  return MeasureValue::of(1.0 - c);
}

// Complement of the specialization index: one minus the sum of squared
// cited-category proportions. Numerically this is the same quantity as the
// Simpson diversity of the row.
inline MeasureValue spec_complement(const TransactionMatrix& tm, std::size_t cat) {
  auto p = row_proportions(tm, cat);
  if (!p) return MeasureValue::undefined(Undefined::zero_row);
  NeumaierSum sq;
  for (const auto& [_, v] : *p) sq.add(v * v);
  return MeasureValue::of(1.0 - sq.value());
}

}  // namespace idmx
