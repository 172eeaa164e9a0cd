// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "idmx/csv.hpp"
#include "idmx/error.hpp"
#include "idmx/histogram.hpp"
#include "idmx/matrix.hpp"
#include "idmx/numeric.hpp"

namespace idmx {

enum class SimilarityKind { cosine_vector, ochiai };

inline const char* to_string(SimilarityKind k) {
  return k == SimilarityKind::cosine_vector ? "cosine_vector" : "ochiai";
}
// Short tags used in measure column names and metadata keys.
inline const char* short_tag(SimilarityKind k) {
  return k == SimilarityKind::cosine_vector ? "sc" : "so";
}

// Dense symmetric category-by-category similarity in [0, 1], unit diagonal.
// Categories whose defining data is all zero (empty citing row for the
// cosine kind, empty row+column marginal for ochiai) get flagged: their
// off-diagonal entries are fixed at 0, the diagonal at 1, and downstream
// consumers can see exactly which categories carry no information.
class SimilarityMatrix {
 public:
  SimilarityMatrix(std::vector<std::string> category_ids, SimilarityKind kind)
      : kind_(kind),
        n_(category_ids.size()),
        category_ids_(std::move(category_ids)),
        data_(n_ * n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) set(i, i, 1.0);
  }

  // Fixture entry point; enforces the class invariants on raw data.
  static SimilarityMatrix from_dense(std::vector<std::string> category_ids,
                                     const std::vector<std::vector<double>>& values,
                                     SimilarityKind kind) {
    SimilarityMatrix s(std::move(category_ids), kind);
    if (values.size() != s.n_) throw ValidationError("similarity matrix size mismatch");
    for (std::size_t i = 0; i < s.n_; ++i) {
      if (values[i].size() != s.n_)
        throw ValidationError("similarity matrix must be square");
      for (std::size_t j = 0; j < s.n_; ++j) {
        const double v = values[i][j];
        if (v < 0.0 || v > 1.0)
          throw ValidationError("similarity entries must lie in [0, 1]");
        if (j < i && values[j][i] != v)
          throw ValidationError("similarity matrix must be symmetric");
        if (j == i && v != 1.0)
          throw ValidationError("similarity diagonal must be 1");
        s.set(i, j, v);
      }
    }
    return s;
  }

  std::size_t size() const { return n_; }
  SimilarityKind kind() const { return kind_; }
  const std::vector<std::string>& category_ids() const { return category_ids_; }
  double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  const std::vector<std::size_t>& flagged() const { return flagged_; }
  bool is_flagged(std::size_t i) const {
    return std::binary_search(flagged_.begin(), flagged_.end(), i);
  }

  void write_dense_csv(std::ostream& out) const {
    out << "category";
    for (const auto& id : category_ids_) out << "," << csv_escape(id);
    out << "\n";
    for (std::size_t i = 0; i < n_; ++i) {
      out << csv_escape(category_ids_[i]);
      for (std::size_t j = 0; j < n_; ++j) out << "," << format_double(at(i, j));
      out << "\n";
    }
  }

 private:
  friend SimilarityMatrix cosine_vector_similarity(const TransactionMatrix&);
  friend SimilarityMatrix ochiai_similarity(const TransactionMatrix&);
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }
  void set_flagged(std::vector<std::size_t> f) { flagged_ = std::move(f); }

  SimilarityKind kind_;
  std::size_t n_;
  std::vector<std::string> category_ids_;
  std::vector<double> data_;
  std::vector<std::size_t> flagged_;  // ascending
};

// Cosine over citing-row vectors, diagonal entries of the transaction matrix
// included. Identical nonzero rows come out at exactly 1.
inline SimilarityMatrix cosine_vector_similarity(const TransactionMatrix& tm) {
  const std::size_t n = tm.size();
  SimilarityMatrix s(tm.category_ids(), SimilarityKind::cosine_vector);
  std::vector<double> sq_norm(n, 0.0);
  std::vector<std::size_t> flagged;
  for (std::size_t i = 0; i < n; ++i) {
    NeumaierSum sq;
    for (const auto& [_, v] : tm.row(i)) sq.add(v * v);
    sq_norm[i] = sq.value();
    if (tm.row(i).empty()) flagged.push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sq_norm[i] == 0.0) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sq_norm[j] == 0.0) continue;
      const auto& a = tm.row(i).size() <= tm.row(j).size() ? tm.row(i) : tm.row(j);
      const auto& b = tm.row(i).size() <= tm.row(j).size() ? tm.row(j) : tm.row(i);
      NeumaierSum dot;
      for (const auto& [k, v] : a) {
        auto it = b.find(k);
        if (it != b.end()) dot.add(v * it->second);
      }
      // sqrt of the product: bitwise-equal rows make dot == sq_norm and
      // sqrt(s*s) == s, so the quotient is exactly 1. Falls back to two
      // square roots only if the product overflows.
      double denom = std::sqrt(sq_norm[i] * sq_norm[j]);
      if (!std::isfinite(denom)) denom = std::sqrt(sq_norm[i]) * std::sqrt(sq_norm[j]);
      const double v = dot.value() / denom;
      s.set(i, j, std::clamp(v, 0.0, 1.0));
    }
  }
  s.set_flagged(std::move(flagged));
  return s;
}

// Ochiai form on the raw flows: (c_ij + c_ji) over the geometric mean of the
// full in+out marginals (diagonal counted in both, i.e. twice per marginal).
inline SimilarityMatrix ochiai_similarity(const TransactionMatrix& tm) {
  const std::size_t n = tm.size();
  SimilarityMatrix s(tm.category_ids(), SimilarityKind::ochiai);
  std::vector<double> marginal(n, 0.0);
  std::vector<std::size_t> flagged;
  for (std::size_t i = 0; i < n; ++i) {
    marginal[i] = tm.row_sum(i) + tm.col_sum(i);
    if (marginal[i] == 0.0) flagged.push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (marginal[i] == 0.0) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (marginal[j] == 0.0) continue;
      const double num = tm.at(i, j) + tm.at(j, i);
      const double v = num / std::sqrt(marginal[i] * marginal[j]);
      s.set(i, j, std::clamp(v, 0.0, 1.0));
    }
  }
  s.set_flagged(std::move(flagged));
  return s;
}

enum class DissimTransform { one_minus, reciprocal };

inline const char* to_string(DissimTransform t) {
  return t == DissimTransform::one_minus ? "one_minus" : "reciprocal";
}
inline const char* short_tag(DissimTransform t) {
  return t == DissimTransform::one_minus ? "1m" : "inv";
}

// Dissimilarity derived from one similarity matrix. one_minus maps onto
// [0, 1] with zero diagonal; reciprocal yields entries >= 1 (diagonal
// exactly 1) and replaces divisions by zero with the largest finite
// reciprocal found in the same matrix, recorded as `cap`.
class DissimilarityMatrix {
 public:
  std::size_t size() const { return n_; }
  SimilarityKind source_kind() const { return kind_; }
  DissimTransform transform() const { return transform_; }
  const std::vector<std::string>& category_ids() const { return category_ids_; }
  double at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  // Cap substituted for 1/0 entries: the largest finite reciprocal in this
  // matrix. Unset when nothing needed capping.
  std::optional<double> cap() const { return cap_; }
  std::size_t capped_entries() const { return capped_entries_; }
  const std::vector<std::size_t>& flagged() const { return flagged_; }

  void write_dense_csv(std::ostream& out) const {
    out << "category";
    for (const auto& id : category_ids_) out << "," << csv_escape(id);
    out << "\n";
    for (std::size_t i = 0; i < n_; ++i) {
      out << csv_escape(category_ids_[i]);
      for (std::size_t j = 0; j < n_; ++j) out << "," << format_double(at(i, j));
      out << "\n";
    }
  }

 private:
  friend DissimilarityMatrix to_dissimilarity(const SimilarityMatrix&, DissimTransform);
  std::size_t n_ = 0;
  SimilarityKind kind_ = SimilarityKind::cosine_vector;
  DissimTransform transform_ = DissimTransform::one_minus;
  std::vector<std::string> category_ids_;
  std::vector<double> data_;
  std::optional<double> cap_;
  std::size_t capped_entries_ = 0;
  std::vector<std::size_t> flagged_;
};

inline DissimilarityMatrix to_dissimilarity(const SimilarityMatrix& s,
                                            DissimTransform transform) {
  DissimilarityMatrix d;
  d.n_ = s.size();
  d.kind_ = s.kind();
  d.transform_ = transform;
  d.category_ids_ = s.category_ids();
  d.flagged_ = s.flagged();
  d.data_.assign(d.n_ * d.n_, 0.0);

  if (transform == DissimTransform::one_minus) {
    for (std::size_t i = 0; i < d.n_; ++i)
      for (std::size_t j = 0; j < d.n_; ++j)
        d.data_[i * d.n_ + j] = i == j ? 0.0 : 1.0 - s.at(i, j);
    return d;
  }

  double max_finite = 0.0;
  bool any_positive = false;
  bool any_zero = false;
  for (std::size_t i = 0; i < d.n_; ++i)
    for (std::size_t j = i + 1; j < d.n_; ++j) {
      if (s.at(i, j) > 0.0) {
        any_positive = true;
        max_finite = std::max(max_finite, 1.0 / s.at(i, j));
      } else {
        any_zero = true;
      }
    }
  if (any_zero && !any_positive)
    throw ValidationError(
        "reciprocal transform undefined: every off-diagonal similarity is zero, "
        "so no finite cap exists");
  for (std::size_t i = 0; i < d.n_; ++i) {
    d.data_[i * d.n_ + i] = 1.0;  // 1 / s_ii
    for (std::size_t j = i + 1; j < d.n_; ++j) {
      double v;
      if (s.at(i, j) > 0.0) {
        v = 1.0 / s.at(i, j);
      } else {
        v = max_finite;
        ++d.capped_entries_;
      }
      d.data_[i * d.n_ + j] = v;
      d.data_[j * d.n_ + i] = v;
    }
  }
  if (d.capped_entries_ > 0) d.cap_ = max_finite;
  return d;
}

// Distribution of the off-diagonal unordered pairs.
inline Histogram dissimilarity_histogram(const DissimilarityMatrix& d, std::size_t bins) {
  std::vector<double> values;
  values.reserve(d.size() * (d.size() - 1) / 2);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) values.push_back(d.at(i, j));
  return make_histogram(values, bins);
}

}  // namespace idmx
