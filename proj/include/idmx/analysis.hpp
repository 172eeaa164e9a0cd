// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "idmx/csv.hpp"
#include "idmx/error.hpp"
#include "idmx/histogram.hpp"
#include "idmx/measure_value.hpp"
#include "idmx/numeric.hpp"
#include "idmx/report.hpp"
#include "idmx/similarity.hpp"

namespace idmx {

enum class CorrelationMethod { pearson, spearman };

inline const char* to_string(CorrelationMethod m) {
  return m == CorrelationMethod::pearson ? "pearson" : "spearman";
}

// One correlation with its effective sample size. Pairwise deletion can give
// every cell of a matrix a different n, so the n travels with the r.
struct CorrelationCell {
  std::optional<double> r;
  std::optional<Undefined> reason;
  std::size_t n = 0;
};

namespace detail {

inline CorrelationCell pearson_on(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  CorrelationCell cell;
  cell.n = x.size();
  if (x.size() < 3) {
    cell.reason = Undefined::degenerate_n;
    return cell;
  }
  const auto n = static_cast<double>(x.size());
  NeumaierSum mx, my;
  for (double v : x) mx.add(v);
  for (double v : y) my.add(v);
  const double xbar = mx.value() / n;
  const double ybar = my.value() / n;
  NeumaierSum sxx, syy, sxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - xbar;
    const double dy = y[i] - ybar;
    sxx.add(dx * dx);
    syy.add(dy * dy);
    sxy.add(dx * dy);
  }
  if (sxx.value() == 0.0 || syy.value() == 0.0) {
    cell.reason = Undefined::zero_variance;
    return cell;
  }
  // sqrt of the product, not the product of sqrts: with bitwise-equal inputs
  // sxy == sxx == syy and sqrt(s*s) == s, so identical columns come out at
  // exactly 1.0
  const double r = sxy.value() / std::sqrt(sxx.value() * syy.value());
  cell.r = std::clamp(r, -1.0, 1.0);
  return cell;
}

inline void paired_defined(const std::vector<MeasureValue>& x,
                           const std::vector<MeasureValue>& y, std::vector<double>& xs,
                           std::vector<double>& ys) {
  if (x.size() != y.size())
    throw ValidationError("correlation inputs must have equal length");
  xs.clear();
  ys.clear();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].defined() && y[i].defined()) {
      xs.push_back(*x[i].value);
      ys.push_back(*y[i].value);
    }
  }
}

}  // namespace detail

// Pearson r over the pairs where both inputs are defined. Fewer than three
// such pairs, or a constant input, yields no value.
inline CorrelationCell pearson(const std::vector<MeasureValue>& x,
                               const std::vector<MeasureValue>& y) {
  std::vector<double> xs, ys;
  detail::paired_defined(x, y, xs, ys);
  return detail::pearson_on(xs, ys);
}

// Spearman rho: Pearson on average ranks of the pairwise-defined values.
// A strictly monotone transform preserves ranks bit-for-bit, so such pairs
// correlate at exactly 1.0.
inline CorrelationCell spearman(const std::vector<MeasureValue>& x,
                                const std::vector<MeasureValue>& y) {
  std::vector<double> xs, ys;
  detail::paired_defined(x, y, xs, ys);
  if (xs.size() < 3) {
    CorrelationCell cell;
    cell.n = xs.size();
    cell.reason = Undefined::degenerate_n;
    return cell;
  }
  return detail::pearson_on(average_ranks(xs), average_ranks(ys));
}

inline CorrelationCell correlate(const std::vector<MeasureValue>& x,
                                 const std::vector<MeasureValue>& y,
                                 CorrelationMethod method) {
  return method == CorrelationMethod::pearson ? pearson(x, y) : spearman(x, y);
}

// Measures-by-measures correlation table. The diagonal is 1 by definition,
// with n = the column's defined count.
class CorrelationMatrix {
 public:
  CorrelationMatrix(std::vector<std::string> names, CorrelationMethod method)
      : method_(method), names_(std::move(names)), cells_(names_.size() * names_.size()) {}

  CorrelationMethod method() const { return method_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const CorrelationCell& at(std::size_t i, std::size_t j) const {
    return cells_.at(i * names_.size() + j);
  }
  void set(std::size_t i, std::size_t j, CorrelationCell c) {
    cells_.at(i * names_.size() + j) = c;
    cells_.at(j * names_.size() + i) = std::move(c);
  }

  void write_csv(std::ostream& out, std::string_view config_hash) const {
    out << "# config_hash=" << config_hash << "\n";
    out << "measure";
    for (const auto& nm : names_) out << "," << csv_escape(nm);
    out << "\n";
    for (std::size_t i = 0; i < names_.size(); ++i) {
      out << csv_escape(names_[i]);
      for (std::size_t j = 0; j < names_.size(); ++j) {
        out << ",";
        if (at(i, j).r) out << format_double(*at(i, j).r);
      }
      out << "\n";
    }
  }

  // Effective n per cell plus reasons for the cells that have no r.
  nlohmann::json details_json() const {
    nlohmann::json n_matrix = nlohmann::json::array();
    nlohmann::json undef = nlohmann::json::array();
    for (std::size_t i = 0; i < names_.size(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t j = 0; j < names_.size(); ++j) {
        row.push_back(at(i, j).n);
        if (!at(i, j).r && j >= i) {
          undef.push_back({{"row", names_[i]},
                           {"col", names_[j]},
                           {"reason", at(i, j).reason ? to_string(*at(i, j).reason)
                                                      : "unknown"}});
        }
      }
      n_matrix.push_back(std::move(row));
    }
    return {{"method", to_string(method_)},
            {"measures", names_},
            {"effective_n", std::move(n_matrix)},
            {"undefined_cells", std::move(undef)}};
  }

 private:
  CorrelationMethod method_;
  std::vector<std::string> names_;
  std::vector<CorrelationCell> cells_;
};

inline CorrelationMatrix correlation_matrix(const MeasureReport& report,
                                            CorrelationMethod method) {
  CorrelationMatrix cm(report.measures(), method);
  const std::size_t m = report.measures().size();
  for (std::size_t i = 0; i < m; ++i) {
    CorrelationCell diag;
    diag.r = 1.0;
    std::size_t defined = 0;
    for (const auto& v : report.column(i))
      if (v.defined()) ++defined;
    diag.n = defined;
    cm.set(i, i, diag);
    for (std::size_t j = i + 1; j < m; ++j)
      cm.set(i, j, correlate(report.column(i), report.column(j), method));
  }
  return cm;
}

// Pairwise correlations between dissimilarity matrices, computed on the
// vectorized off-diagonal upper triangles. All matrices must agree on the
// category set.
inline CorrelationMatrix dissimilarity_correlations(
    const std::vector<const DissimilarityMatrix*>& mats, CorrelationMethod method) {
  std::vector<std::string> names;
  for (const auto* d : mats) {
    if (d->size() != mats.front()->size() ||
        d->category_ids() != mats.front()->category_ids())
      throw ValidationError("dissimilarity matrices cover different category sets");
    names.push_back(std::string(short_tag(d->transform())) + "_" +
                    short_tag(d->source_kind()));
  }
  auto vectorize = [](const DissimilarityMatrix& d) {
    std::vector<MeasureValue> v;
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = i + 1; j < d.size(); ++j)
        v.push_back(MeasureValue::of(d.at(i, j)));
    return v;
  };
  CorrelationMatrix cm(std::move(names), method);
  std::vector<std::vector<MeasureValue>> cols;
  cols.reserve(mats.size());
  for (const auto* d : mats) cols.push_back(vectorize(*d));
  for (std::size_t i = 0; i < mats.size(); ++i) {
    CorrelationCell diag;
    diag.r = 1.0;
    diag.n = cols[i].size();
    cm.set(i, i, diag);
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      cm.set(i, j, correlate(cols[i], cols[j], method));
  }
  return cm;
}

enum class Linkage { average, single, complete };

inline const char* to_string(Linkage l) {
  switch (l) {
    case Linkage::average: return "average";
    case Linkage::single: return "single";
    case Linkage::complete: return "complete";
  }
  return "unknown";
}

// Agglomerative merge tree over measures. Node ids follow the usual linkage
// convention: 0..L-1 are leaves, L+t is the cluster made by merge t. Heights
// are the raw merge distances (1 - r scale); the Newick export halves them
// into ultrametric node heights so branch lengths stay nonnegative.
struct Dendrogram {
  struct Merge {
    std::size_t left, right;
    double height;
  };
  std::vector<std::string> leaves;
  std::vector<Merge> merges;
  std::vector<std::string> excluded;  // measures dropped for undefined correlations
  Linkage linkage = Linkage::average;
  CorrelationMethod method = CorrelationMethod::pearson;

  std::string newick() const {
    if (leaves.empty()) return ";";
    const std::size_t total = leaves.size() + merges.size();
    std::vector<std::string> label(total);
    std::vector<double> height(total, 0.0);
    std::vector<std::string> sub(total);
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      label[i] = leaves[i];
      sub[i] = leaves[i];
    }
    for (std::size_t t = 0; t < merges.size(); ++t) {
      const auto& m = merges[t];
      const std::size_t id = leaves.size() + t;
      height[id] = m.height / 2.0;
      std::size_t a = m.left, b = m.right;
      if (label[b] < label[a]) std::swap(a, b);
      label[id] = label[a];  // cluster label: lexicographically smallest leaf
      sub[id] = "(" + sub[a] + ":" + format_double(height[id] - height[a]) + "," +
                sub[b] + ":" + format_double(height[id] - height[b]) + ")";
    }
    return sub[total - 1] + ";";
  }

  nlohmann::json to_json() const {
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : merges)
      ms.push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}});
    return {{"leaves", leaves},
            {"merges", std::move(ms)},
            {"excluded", excluded},
            {"linkage", to_string(linkage)},
            {"method", to_string(method)}};
  }
};

// Agglomerates measures on distance 1 - r. Measures involved in undefined
// correlations are dropped first (most undefined cells first, lexicographic
// tail on ties) and reported in `excluded`; ties between candidate merges
// break on the pair's lexicographic cluster labels, so measure order never
// changes the tree.
inline Dendrogram cluster_measures(const CorrelationMatrix& cm,
                                   Linkage linkage = Linkage::average) {
  const std::size_t m = cm.size();
  std::vector<std::size_t> keep(m);
  std::iota(keep.begin(), keep.end(), std::size_t{0});
  std::vector<std::string> excluded;
  for (;;) {
    std::size_t worst = m, worst_count = 0;
    for (std::size_t i : keep) {
      std::size_t cnt = 0;
      for (std::size_t j : keep)
        if (i != j && !cm.at(i, j).r) ++cnt;
      if (cnt > worst_count ||
          (cnt > 0 && cnt == worst_count && worst < m &&
           cm.names()[i] > cm.names()[worst])) {
        worst = i;
        worst_count = cnt;
      }
    }
    if (worst == m || worst_count == 0) break;
    excluded.push_back(cm.names()[worst]);
    keep.erase(std::find(keep.begin(), keep.end(), worst));
  }
  std::sort(excluded.begin(), excluded.end());

  Dendrogram dg;
  dg.linkage = linkage;
  dg.method = cm.method();
  dg.excluded = std::move(excluded);
  for (std::size_t i : keep) dg.leaves.push_back(cm.names()[i]);
  const std::size_t L = dg.leaves.size();
  if (L < 2) return dg;

  // active cluster state
  struct Cluster {
    std::size_t node;   // dendrogram node id
    std::size_t size;   // leaf count
    std::string label;  // lexicographically smallest leaf
  };
  std::vector<Cluster> active;
  active.reserve(L);
  for (std::size_t i = 0; i < L; ++i) active.push_back({i, 1, dg.leaves[i]});
  // distance matrix over active positions
  std::vector<std::vector<double>> dist(L, std::vector<double>(L, 0.0));
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; j < L; ++j)
      if (i != j) dist[i][j] = 1.0 - *cm.at(keep[i], keep[j]).r;

  std::size_t next_node = L;
  while (active.size() > 1) {
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < active.size(); ++i)
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const double d = dist[i][j];
        const double best = dist[bi][bj];
        bool better = d < best;
        if (d == best && !(i == bi && j == bj)) {
          auto key = [&](std::size_t a, std::size_t b) {
            return std::pair<const std::string&, const std::string&>(
                std::min(active[a].label, active[b].label),
                std::max(active[a].label, active[b].label));
          };
          better = key(i, j) < key(bi, bj);
        }
        if (better) {
          bi = i;
          bj = j;
        }
      }
    const double h = dist[bi][bj];
    dg.merges.push_back({active[bi].node, active[bj].node, h});

    // Lance-Williams update into slot bi, then drop bj
    const double na = static_cast<double>(active[bi].size);
    const double nb = static_cast<double>(active[bj].size);
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (k == bi || k == bj) continue;
      double d;
      switch (linkage) {
        case Linkage::average:
          d = (na * dist[bi][k] + nb * dist[bj][k]) / (na + nb);
          break;
        case Linkage::single:
          d = std::min(dist[bi][k], dist[bj][k]);
          break;
        case Linkage::complete:
        default:
          d = std::max(dist[bi][k], dist[bj][k]);
          break;
      }
      dist[bi][k] = dist[k][bi] = d;
    }
    active[bi].node = next_node++;
    active[bi].size += active[bj].size;
    active[bi].label = std::min(active[bi].label, active[bj].label);
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
    for (auto& row : dist) row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
    dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return dg;
}

// Competition ("1224") ranking on decreasing value: ties share the smallest
// rank of their block. Categories without a value are listed in `unranked`.
struct RankColumn {
  std::vector<std::optional<std::size_t>> ranks;  // aligned with report categories
  std::vector<std::size_t> unranked;              // category indices
};

inline RankColumn rank_categories(const MeasureReport& report, std::size_t measure) {
  const auto& col = report.column(measure);
  RankColumn out;
  out.ranks.assign(col.size(), std::nullopt);
  std::vector<std::size_t> defined;
  for (std::size_t c = 0; c < col.size(); ++c) {
    if (col[c].defined())
      defined.push_back(c);
    else
      out.unranked.push_back(c);
  }
  std::stable_sort(defined.begin(), defined.end(), [&](std::size_t a, std::size_t b) {
    return *col[a].value > *col[b].value;
  });
  for (std::size_t pos = 0; pos < defined.size(); ++pos) {
    if (pos > 0 && *col[defined[pos]].value == *col[defined[pos - 1]].value)
      out.ranks[defined[pos]] = out.ranks[defined[pos - 1]];
    else
      out.ranks[defined[pos]] = pos + 1;
  }
  return out;
}

// Per-measure histograms over the defined cells; undefined cells are counted
// into Histogram::excluded rather than binned.
inline std::vector<Histogram> value_histograms(const MeasureReport& report,
                                               std::size_t bins) {
  std::vector<Histogram> out;
  out.reserve(report.measures().size());
  for (std::size_t m = 0; m < report.measures().size(); ++m) {
    std::vector<double> values;
    std::size_t undefined = 0;
    for (const auto& v : report.column(m)) {
      if (v.defined())
        values.push_back(*v.value);
      else
        ++undefined;
    }
    Histogram h = make_histogram(values, bins);
    h.excluded = undefined;
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace idmx
