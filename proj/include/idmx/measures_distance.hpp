// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "idmx/corpus.hpp"
#include "idmx/matrix.hpp"
#include "idmx/measure_value.hpp"
#include "idmx/numeric.hpp"
#include "idmx/similarity.hpp"

namespace idmx {

// sum over ordered category pairs (j, k), diagonal included, of
// d_jk * p_j * p_k. Under one_minus the diagonal contributes nothing; under
// reciprocal it contributes p_j^2 because self-dissimilarity is 1.
inline double rao_stirling(const ProbMap& p, const DissimilarityMatrix& d) {
  NeumaierSum s;
  for (const auto& [j, pj] : p)
    for (const auto& [k, pk] : p) s.add(d.at(j, k) * pj * pk);
  return s.value();
}

// Rao-Stirling on the category's pooled citing row.
inline MeasureValue rs_pooled(const TransactionMatrix& tm, std::size_t cat,
                              const DissimilarityMatrix& d) {
  auto p = row_proportions(tm, cat);
  if (!p) return MeasureValue::undefined(Undefined::zero_row);
  return MeasureValue::of(rao_stirling(*p, d));
}

// Arithmetic mean of per-publication Rao-Stirling over the category's
// publications that have references. Reference-free publications cannot carry
// a profile; they are skipped, and `excluded` reports how many were.
inline MeasureValue rs_per_publication(const Corpus& corpus, std::size_t cat,
                                       const DissimilarityMatrix& d, Counting counting,
                                       std::size_t* excluded = nullptr) {
  if (excluded) *excluded = 0;
  NeumaierSum sum;
  std::size_t used = 0;
  for (std::size_t j : category_journals(corpus, cat)) {
    for (std::size_t pub : corpus.publications_of_journal(j)) {
      auto q = publication_profile(corpus, pub, counting);
      if (!q) {
        if (excluded) ++*excluded;
        continue;
      }
      sum.add(rao_stirling(*q, d));
      ++used;
    }
  }
  if (used == 0) return MeasureValue::undefined(Undefined::no_publications);
  return MeasureValue::of(sum.value() / static_cast<double>(used));
}

// Hill-type diversity 1 / sum_{j,k} s_jk p_j p_k (ordered pairs, unit
// diagonal included). Always >= 1; equals 1 when everything cited is one
// fully self-similar category.
inline MeasureValue hill_type(const TransactionMatrix& tm, std::size_t cat,
                              const SimilarityMatrix& s) {
  auto p = row_proportions(tm, cat);
  if (!p) return MeasureValue::undefined(Undefined::zero_row);
  NeumaierSum denom;
  for (const auto& [j, pj] : *p)
    for (const auto& [k, pk] : *p) denom.add(s.at(j, k) * pj * pk);
  return MeasureValue::of(1.0 / denom.value());
}

// sum over unordered cited-category pairs of link weight times (1 - s).
// Counts raw link mass, so the value grows with category size; it is
// deliberately not normalized. Only the one_minus transform is meaningful
// here.
inline double coherence(const CoherenceLinkCounts& links, const DissimilarityMatrix& d) {
  if (d.transform() != DissimTransform::one_minus)
    throw ValidationError("coherence requires the one_minus dissimilarity transform");
  NeumaierSum s;
  for (const auto& [jk, w] : links.pairs()) s.add(w * d.at(jk.first, jk.second));
  return s.value();
}

// The eight Rao-Stirling report variants: aggregation level x transform x
// similarity kind.
struct RSVariant {
  enum class Level { per_publication, pooled };
  Level level;
  DissimTransform transform;
  SimilarityKind similarity;

  std::string name() const {
    std::string s = level == Level::per_publication ? "rsp" : "rsg";
    s += "_";
    s += short_tag(transform);
    s += "_";
    s += short_tag(similarity);
    return s;
  }

  static const std::array<RSVariant, 8>& all() {
    static const std::array<RSVariant, 8> v = {{
        {Level::per_publication, DissimTransform::one_minus, SimilarityKind::cosine_vector},
        {Level::pooled, DissimTransform::one_minus, SimilarityKind::cosine_vector},
        {Level::per_publication, DissimTransform::reciprocal, SimilarityKind::cosine_vector},
        {Level::pooled, DissimTransform::reciprocal, SimilarityKind::cosine_vector},
        {Level::per_publication, DissimTransform::one_minus, SimilarityKind::ochiai},
        {Level::pooled, DissimTransform::one_minus, SimilarityKind::ochiai},
        {Level::per_publication, DissimTransform::reciprocal, SimilarityKind::ochiai},
        {Level::pooled, DissimTransform::reciprocal, SimilarityKind::ochiai},
    }};
    return v;
  }
};

}  // namespace idmx
