// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "idmx/csv.hpp"
#include "idmx/matrix.hpp"
#include "idmx/measure_value.hpp"
#include "idmx/numeric.hpp"
#include "idmx/parallel.hpp"
#include "idmx/similarity.hpp"

namespace idmx {

// How transaction weights become edge weights. raw keeps c_ij as-is, and the
// shortest path is the one minimizing the summed citation counts; inverse
// uses 1/c_ij so heavier traffic reads as closer.
enum class WeightTransform { raw, inverse };

inline const char* to_string(WeightTransform w) {
  return w == WeightTransform::raw ? "raw" : "inverse";
}

// Two path lengths closer than this count as equally short, and both paths'
// multiplicities accumulate.
inline constexpr double kPathTieTolerance = 1e-12;

// Directed graph over categories: an edge i -> j exists iff c_ij > 0 and
// i != j. Edge lists are ordered by target, so traversals are deterministic.
struct CitationGraph {
  std::size_t n = 0;
  WeightTransform transform = WeightTransform::raw;
  std::vector<std::string> category_ids;
  std::vector<std::vector<std::pair<std::size_t, double>>> out;

  void write_edge_list_csv(std::ostream& os) const {
    os << "src,dst,weight\n";
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [j, w] : out[i])
        os << csv_escape(category_ids[i]) << "," << csv_escape(category_ids[j]) << ","
           << format_double(w) << "\n";
  }
};

inline CitationGraph build_citation_graph(const TransactionMatrix& tm,
                                          WeightTransform transform = WeightTransform::raw) {
  CitationGraph g;
  g.n = tm.size();
  g.transform = transform;
  g.category_ids = tm.category_ids();
  g.out.assign(g.n, {});
  for (std::size_t i = 0; i < g.n; ++i)
    for (const auto& [j, c] : tm.row(i)) {
      if (j == i) continue;
      g.out[i].push_back({j, transform == WeightTransform::raw ? c : 1.0 / c});
    }
  return g;
}

// Brandes' betweenness for weighted digraphs: for every ordered source/target
// pair, the fraction of minimum-weight paths running through each
// intermediate node, summed. No normalization is applied, so raw sums grow
// with graph size. Path-length ties use kPathTieTolerance.
inline std::vector<double> betweenness(const CitationGraph& g, unsigned threads = 1) {
  const std::size_t n = g.n;
  std::vector<std::vector<double>> contrib(n);

  parallel_for(n, threads, [&](std::size_t s) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<double> sigma(n, 0.0);
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<bool> settled(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);

    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[s] = 0.0;
    sigma[s] = 1.0;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (settled[u]) continue;
      settled[u] = true;
      order.push_back(u);
      for (const auto& [v, w] : g.out[u]) {
        const double nd = dist[u] + w;
        if (nd < dist[v] - kPathTieTolerance) {
          dist[v] = nd;
          sigma[v] = sigma[u];
          preds[v].assign(1, u);
          pq.push({nd, v});
        } else if (std::abs(nd - dist[v]) <= kPathTieTolerance) {
          sigma[v] += sigma[u];
          preds[v].push_back(u);
        }
      }
    }

    std::vector<double> delta(n, 0.0);
    std::vector<double> local(n, 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t w = *it;
      for (std::size_t v : preds[w])
        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) local[w] = delta[w];
    }
    contrib[s] = std::move(local);
  });

  // fixed source order keeps the reduction identical for any thread count
  std::vector<double> bc(n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t v = 0; v < n; ++v) bc[v] += contrib[s][v];
  return bc;
}

// Publication-share-weighted citation intensity toward the rest of the
// corpus: sum over j != i of P_j * c_ij / (a_i * a_j). Terms whose partner
// has no publications are dropped and counted via `skipped`. The symmetric
// flavor uses c_ij + c_ji in place of c_ij.
inline MeasureValue cluster_coefficient(const TransactionMatrix& tm, std::size_t cat,
                                        bool symmetric = false,
                                        std::size_t* skipped = nullptr) {
  if (skipped) *skipped = 0;
  const double ai = tm.pub_counts().at(cat);
  if (ai == 0.0) return MeasureValue::undefined(Undefined::no_publications);
  NeumaierSum s;
  for (std::size_t j = 0; j < tm.size(); ++j) {
    if (j == cat) continue;
    const double cij = symmetric ? tm.at(cat, j) + tm.at(j, cat) : tm.at(cat, j);
    if (cij == 0.0) continue;
    const double aj = tm.pub_counts()[j];
    if (aj == 0.0) {
      if (skipped) ++*skipped;
      continue;
    }
    s.add(tm.pub_shares()[j] * cij / (ai * aj));
  }
  return MeasureValue::of(s.value());
}

// Publication-share-weighted mean similarity to all other categories. Note
// this reads as a *similarity* aggregate: more interdisciplinary usually
// means a lower value, unlike every other column.
inline double average_similarity(const TransactionMatrix& tm, const SimilarityMatrix& s,
                                 std::size_t cat) {
  NeumaierSum acc;
  for (std::size_t j = 0; j < tm.size(); ++j) {
    if (j == cat) continue;
    acc.add(tm.pub_shares()[j] * s.at(cat, j));
  }
  return acc.value();
}

}  // namespace idmx
