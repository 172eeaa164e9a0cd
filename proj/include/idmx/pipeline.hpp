// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "idmx/config.hpp"
#include "idmx/corpus.hpp"
#include "idmx/matrix.hpp"
#include "idmx/measures_distance.hpp"
#include "idmx/measures_diversity.hpp"
#include "idmx/measures_network.hpp"
#include "idmx/measures_overlap.hpp"
#include "idmx/parallel.hpp"
#include "idmx/report.hpp"
#include "idmx/similarity.hpp"
#include "idmx/version.hpp"

namespace idmx {

// Canonical column order of the full report.
inline const std::vector<std::string>& all_measure_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = {"p_multi", "p_outside",  "pro",     "d_links",
                                  "pratt_comp", "spec_comp", "simpson", "shannon",
                                  "brillouin",  "gini_comp"};
    for (const auto& v : RSVariant::all()) n.push_back(v.name());
    n.insert(n.end(), {"hill", "coherence", "bc", "cc", "avg_sim"});
    return n;
  }();
  return names;
}

namespace detail {
inline nlohmann::json ids_of(const TransactionMatrix& tm,
                             const std::vector<std::size_t>& idx) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i : idx) out.push_back(tm.category_ids()[i]);
  return out;
}
}  // namespace detail

// Computes the requested measure columns (all of them by default) for every
// category, plus the metadata that explains the numbers: flags, caps,
// rounding, exclusions, and the per-cell undefined reasons.
inline MeasureReport compute_report(const Corpus& corpus, const Config& config) {
  std::vector<std::string> measures =
      config.measures.empty() ? all_measure_names() : config.measures;
  for (const auto& m : measures) {
    bool known = false;
    for (const auto& k : all_measure_names())
      if (k == m) known = true;
    if (!known) throw ValidationError("unknown measure '" + m + "'");
  }
  auto wants = [&](const std::string& name) {
    for (const auto& m : measures)
      if (m == name) return true;
    return false;
  };

  const TransactionMatrix tm = TransactionMatrix::build(corpus, config.counting);
  const std::size_t n = corpus.n_categories();

  // figure out which shared inputs the requested columns touch
  bool need_sc = wants("hill") || wants("coherence") ||
                 (wants("avg_sim") && config.as_similarity == SimilarityKind::cosine_vector);
  bool need_so =
      wants("avg_sim") && config.as_similarity == SimilarityKind::ochiai;
  struct VariantPlan {
    RSVariant variant;
    std::shared_ptr<const DissimilarityMatrix> d;
  };
  std::vector<VariantPlan> rs_plan;
  bool need_d_1m_sc = wants("coherence");
  for (const auto& v : RSVariant::all()) {
    if (!wants(v.name())) continue;
    need_sc = need_sc || v.similarity == SimilarityKind::cosine_vector;
    need_so = need_so || v.similarity == SimilarityKind::ochiai;
    rs_plan.push_back({v, nullptr});
  }

  std::optional<SimilarityMatrix> sc, so;
  if (need_sc) sc.emplace(cosine_vector_similarity(tm));
  if (need_so) so.emplace(ochiai_similarity(tm));

  std::map<std::string, std::shared_ptr<const DissimilarityMatrix>> dissims;
  auto dissim_for = [&](SimilarityKind kind, DissimTransform t) {
    const std::string key =
        std::string(short_tag(t)) + "_" + short_tag(kind);
    auto it = dissims.find(key);
    if (it != dissims.end()) return it->second;
    const SimilarityMatrix& src = kind == SimilarityKind::cosine_vector ? *sc : *so;
    auto d = std::make_shared<const DissimilarityMatrix>(to_dissimilarity(src, t));
    dissims.emplace(key, d);
    return d;
  };
  for (auto& plan : rs_plan) plan.d = dissim_for(plan.variant.similarity, plan.variant.transform);
  std::shared_ptr<const DissimilarityMatrix> d_coherence;
  if (need_d_1m_sc)
    d_coherence = dissim_for(SimilarityKind::cosine_vector, DissimTransform::one_minus);

  MeasureReport report(tm.category_ids(), measures);
  auto col = [&](const std::string& name) { return report.measure_index(name); };

  // per-category slots are independent, so the loop parallelizes untouched
  std::vector<std::size_t> rsp_excluded(n, 0);
  std::vector<unsigned char> brillouin_rounded(n, 0);
  parallel_for(n, config.threads, [&](std::size_t c) {
    if (auto m = col("p_multi")) report.set(c, *m, p_multi(corpus, c));
    if (auto m = col("p_outside")) report.set(c, *m, p_outside(corpus, c));
    if (auto m = col("pro")) report.set(c, *m, pro(tm, c));
    if (auto m = col("d_links")) report.set(c, *m, d_links(corpus, c));
    if (auto m = col("pratt_comp")) report.set(c, *m, pratt_complement(tm, c));
    if (auto m = col("spec_comp")) report.set(c, *m, spec_complement(tm, c));
    if (auto m = col("simpson")) report.set(c, *m, simpson(tm, c));
    if (auto m = col("shannon")) report.set(c, *m, shannon(tm, c));
    if (auto m = col("brillouin")) {
      bool rounded = false;
      report.set(c, *m, brillouin(tm, c, &rounded));
      brillouin_rounded[c] = rounded ? 1 : 0;
    }
    if (auto m = col("gini_comp"))
      report.set(c, *m, gini_complement(tm, c, config.gini_support));
    for (const auto& plan : rs_plan) {
      const auto m = col(plan.variant.name());
      if (plan.variant.level == RSVariant::Level::pooled) {
        report.set(c, *m, rs_pooled(tm, c, *plan.d));
      } else {
        std::size_t excluded = 0;
        report.set(c, *m,
                   rs_per_publication(corpus, c, *plan.d, config.counting, &excluded));
        rsp_excluded[c] = excluded;
      }
    }
    if (auto m = col("hill")) report.set(c, *m, hill_type(tm, c, *sc));
    if (auto m = col("coherence")) {
      const auto links = coherence_link_counts(corpus, c, config.counting);
      report.set(c, *m, MeasureValue::of(coherence(links, *d_coherence)));
    }
    if (auto m = col("cc"))
      report.set(c, *m, cluster_coefficient(tm, c, config.cc_symmetric));
    if (auto m = col("avg_sim")) {
      const SimilarityMatrix& s =
          config.as_similarity == SimilarityKind::cosine_vector ? *sc : *so;
      report.set(c, *m, MeasureValue::of(average_similarity(tm, s, c)));
    }
  });

  if (auto m = col("bc")) {
    const CitationGraph g = build_citation_graph(tm, config.bc_weight);
    const std::vector<double> bc = betweenness(g, config.threads);
    for (std::size_t c = 0; c < n; ++c) report.set(c, *m, MeasureValue::of(bc[c]));
  }

  // metadata: everything a reader needs to interpret the grid
  nlohmann::json meta;
  meta["version"] = kVersion;
  meta["config"] = config.to_json();
  meta["config_hash"] = config.hash();
  meta["counting"] = to_string(config.counting);
  meta["measures"] = measures;
  if (sc)
    meta["similarity"]["cosine_vector"]["flagged"] = detail::ids_of(tm, sc->flagged());
  if (so) meta["similarity"]["ochiai"]["flagged"] = detail::ids_of(tm, so->flagged());
  for (const auto& [key, d] : dissims) {
    nlohmann::json dj;
    dj["transform"] = to_string(d->transform());
    dj["similarity"] = to_string(d->source_kind());
    if (d->cap()) {
      dj["cap"] = *d->cap();
      dj["capped_entries"] = d->capped_entries();
    }
    meta["dissimilarity"][key] = std::move(dj);
  }
  if (col("brillouin")) {
    meta["brillouin"]["integerization"] = "round_to_nearest";
    nlohmann::json rounded = nlohmann::json::array();
    for (std::size_t c = 0; c < n; ++c)
      if (brillouin_rounded[c]) rounded.push_back(tm.category_ids()[c]);
    meta["brillouin"]["rounded_categories"] = std::move(rounded);
  }
  bool any_rsp = false;
  for (const auto& plan : rs_plan)
    any_rsp = any_rsp || plan.variant.level == RSVariant::Level::per_publication;
  if (any_rsp) {
    std::size_t total = 0;
    for (std::size_t c = 0; c < n; ++c) total += rsp_excluded[c];
    meta["rs_per_publication"]["excluded_publication_memberships"] = total;
  }
  if (col("bc")) {
    meta["betweenness"]["weight_transform"] = to_string(config.bc_weight);
    meta["betweenness"]["tie_tolerance"] = kPathTieTolerance;
    meta["betweenness"]["normalized"] = false;
    meta["betweenness"]["note"] = "raw path sums scale with category count";
  }
  if (col("coherence")) {
    meta["coherence"]["transform"] = "one_minus";
    meta["coherence"]["similarity"] = "cosine_vector";
    meta["coherence"]["normalized"] = false;
    meta["coherence"]["note"] = "raw link mass scales with category size";
  }
  if (col("cc")) meta["cluster_coefficient"]["symmetric"] = config.cc_symmetric;
  if (col("avg_sim")) {
    meta["average_similarity"]["similarity"] = to_string(config.as_similarity);
    meta["average_similarity"]["note"] =
        "similarity aggregate: lower usually means more interdisciplinary";
  }
  nlohmann::json undefined_cells = nlohmann::json::array();
  for (std::size_t mi = 0; mi < measures.size(); ++mi)
    for (std::size_t c = 0; c < n; ++c) {
      const auto& v = report.at(c, mi);
      if (!v.defined())
        undefined_cells.push_back(
            {{"category", tm.category_ids()[c]},
             {"measure", measures[mi]},
             {"reason", v.reason ? to_string(*v.reason) : "unknown"}});
    }
  meta["undefined"] = std::move(undefined_cells);
  report.metadata = std::move(meta);
  return report;
}

}  // namespace idmx
