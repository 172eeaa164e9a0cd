// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "idmx/corpus.hpp"
#include "idmx/error.hpp"

namespace idmx {

// std::mt19937_64 is bit-specified by the standard, so the same spec yields
// the same corpus on every platform. The name is recorded in generator
// metadata alongside the spec.
inline constexpr const char* kGeneratorRng = "mt19937_64";

// Parameters of a synthetic corpus. Cross-category citation preferences come
// either from an explicit affinity matrix (row = citing category, diagonal
// ignored) or, by default, from a ring decay: the weight of citing category k
// from category i is affinity_scalar^ring_distance(i, k). A scalar of 1 is
// uniform; smaller values concentrate citations on nearby categories.
struct GenSpec {
  std::uint64_t seed = 0;
  std::size_t n_categories = 1;
  std::size_t n_areas = 1;
  std::size_t journals_per_category = 1;
  double multi_assign_prob = 0.0;
  std::size_t pubs_per_journal = 1;
  std::size_t refs_min = 0;
  std::size_t refs_max = 0;
  double intra_category_citation_prob = 1.0;
  double internal_ref_prob = 0.5;
  std::vector<std::vector<double>> cross_affinity;  // empty: use the scalar
  double cross_affinity_scalar = 1.0;

  void validate() const {
    if (n_categories < 1 || n_areas < 1 || journals_per_category < 1 ||
        pubs_per_journal < 1)
      throw ValidationError("generator spec counts must be at least 1");
    if (refs_min > refs_max)
      throw ValidationError("refs_per_pub min exceeds max");
    auto prob = [](double p, const char* name) {
      if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError(std::string(name) + " must lie in [0, 1]");
    };
    prob(multi_assign_prob, "multi_assign_prob");
    prob(intra_category_citation_prob, "intra_category_citation_prob");
    prob(internal_ref_prob, "internal_ref_prob");
    if (cross_affinity.empty()) {
      if (!(cross_affinity_scalar > 0.0 && cross_affinity_scalar <= 1.0))
        throw ValidationError("cross_category_affinity scalar must lie in (0, 1]");
    } else {
      if (cross_affinity.size() != n_categories)
        throw ValidationError("cross_category_affinity matrix must be n_categories square");
      for (const auto& row : cross_affinity) {
        if (row.size() != n_categories)
          throw ValidationError(
              "cross_category_affinity matrix must be n_categories square");
        for (double v : row)
          if (!(v >= 0.0))
            throw ValidationError("cross_category_affinity entries must be nonnegative");
      }
      if (n_categories >= 2) {
        for (std::size_t i = 0; i < n_categories; ++i) {
          double off = 0.0;
          for (std::size_t k = 0; k < n_categories; ++k)
            if (k != i) off += cross_affinity[i][k];
          if (off <= 0.0)
            throw ValidationError(
                "cross_category_affinity row " + std::to_string(i) +
                " has no positive off-diagonal weight");
        }
      }
    }
  }

  nlohmann::json to_json() const {
    nlohmann::json j = {
        {"seed", seed},
        {"n_categories", n_categories},
        {"n_areas", n_areas},
        {"journals_per_category", journals_per_category},
        {"multi_assign_prob", multi_assign_prob},
        {"pubs_per_journal", pubs_per_journal},
        {"refs_per_pub", {{"min", refs_min}, {"max", refs_max}}},
        {"intra_category_citation_prob", intra_category_citation_prob},
        {"internal_ref_prob", internal_ref_prob}};
    if (cross_affinity.empty())
      j["cross_category_affinity"] = cross_affinity_scalar;
    else
      j["cross_category_affinity"] = cross_affinity;
    return j;
  }

  static GenSpec from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("generator spec must be a JSON object");
    GenSpec s;
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") s.seed = value.get<std::uint64_t>();
      else if (key == "n_categories") s.n_categories = value.get<std::size_t>();
      else if (key == "n_areas") s.n_areas = value.get<std::size_t>();
      else if (key == "journals_per_category")
        s.journals_per_category = value.get<std::size_t>();
      else if (key == "multi_assign_prob") s.multi_assign_prob = value.get<double>();
      else if (key == "pubs_per_journal") s.pubs_per_journal = value.get<std::size_t>();
      else if (key == "refs_per_pub") {
        if (!value.is_object() || !value.contains("min") || !value.contains("max"))
          throw ValidationError("refs_per_pub must be {\"min\": m, \"max\": M}");
        s.refs_min = value["min"].get<std::size_t>();
        s.refs_max = value["max"].get<std::size_t>();
      } else if (key == "intra_category_citation_prob")
        s.intra_category_citation_prob = value.get<double>();
      else if (key == "internal_ref_prob") s.internal_ref_prob = value.get<double>();
      else if (key == "cross_category_affinity") {
        if (value.is_number()) {
          s.cross_affinity_scalar = value.get<double>();
        } else if (value.is_array()) {
          s.cross_affinity.clear();
          for (const auto& row : value)
            s.cross_affinity.push_back(row.get<std::vector<double>>());
        } else {
          throw ValidationError("cross_category_affinity must be a number or a matrix");
        }
      } else {
        throw ValidationError("unknown generator spec key '" + key + "'");
      }
    }
    s.validate();
    return s;
  }
};

namespace gendetail {

// Draw helpers with pinned semantics. uniform_*_distribution is
// implementation-defined, so raw engine output is shaped by hand: unit() is
// the top 53 bits over 2^53, bounded(n) is plain modulo. The modulo bias is
// irrelevant here; identical output everywhere is not.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double unit() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  std::uint64_t bounded(std::uint64_t n) { return engine() % n; }
};

}  // namespace gendetail

// Deterministic corpus synthesis. The engine consumes a fixed number of draws
// per decision (two per journal, one per publication, five per reference)
// regardless of which branches fire, so changing one probability field
// perturbs only the decisions that field governs.
inline Corpus generate(const GenSpec& spec) {
  spec.validate();
  gendetail::Rng rng(spec.seed);
  const std::size_t n = spec.n_categories;

  Corpus::Builder builder;
  std::vector<std::string> cat_ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    cat_ids[i] = "C" + std::to_string(i);
    builder.add_category(cat_ids[i], "R" + std::to_string(i % spec.n_areas));
  }

  // journal creation is category-major, so journal t of category c has index
  // c * journals_per_category + t; the reference pass leans on that layout
  std::vector<std::string> journal_ids;
  std::vector<std::size_t> journal_primary;
  journal_ids.reserve(n * spec.journals_per_category);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t t = 0; t < spec.journals_per_category; ++t) {
      const double multi_u = rng.unit();
      const std::uint64_t extra_raw = rng.engine();
      std::string id = "J" + std::to_string(c) + "_" + std::to_string(t);
      std::vector<CategoryId> cats = {cat_ids[c]};
      if (n >= 2 && multi_u < spec.multi_assign_prob) {
        const std::size_t other = (c + 1 + extra_raw % (n - 1)) % n;
        cats.push_back(cat_ids[other]);
      }
      builder.add_journal(id, cats);
      journal_ids.push_back(std::move(id));
      journal_primary.push_back(c);
    }
  }

  const std::size_t n_journals = journal_ids.size();
  const std::size_t ppj = spec.pubs_per_journal;
  std::vector<std::string> pub_ids;
  pub_ids.reserve(n_journals * ppj);
  for (std::size_t j = 0; j < n_journals; ++j)
    for (std::size_t k = 0; k < ppj; ++k)
      pub_ids.push_back("P" + std::to_string(j) + "_" + std::to_string(k));

  // cumulative cross-affinity per citing category, target order ascending
  std::vector<std::vector<double>> cum(n);
  std::vector<std::vector<std::size_t>> cum_target(n);
  if (n >= 2) {
    for (std::size_t i = 0; i < n; ++i) {
      double total = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        double w;
        if (!spec.cross_affinity.empty()) {
          w = spec.cross_affinity[i][k];
        } else {
          const std::size_t d0 = i > k ? i - k : k - i;
          const auto d = static_cast<double>(std::min(d0, n - d0));
          w = std::pow(spec.cross_affinity_scalar, d);
        }
        total += w;
        cum[i].push_back(total);
        cum_target[i].push_back(k);
      }
    }
  }

  const std::size_t refs_range = spec.refs_max - spec.refs_min + 1;
  for (std::size_t p = 0; p < pub_ids.size(); ++p) {
    const std::size_t own_journal = p / ppj;
    const std::size_t primary = journal_primary[own_journal];
    const std::size_t nrefs =
        spec.refs_min + static_cast<std::size_t>(rng.bounded(refs_range));
    std::vector<Corpus::Builder::RawRef> refs;
    refs.reserve(nrefs);
    for (std::size_t r = 0; r < nrefs; ++r) {
      const double branch_u = rng.unit();
      const double cat_u = rng.unit();
      const std::uint64_t journal_raw = rng.engine();
      const double internal_u = rng.unit();
      const std::uint64_t pub_raw = rng.engine();

      std::size_t target_cat = primary;
      if (n >= 2 && branch_u >= spec.intra_category_citation_prob) {
        const double x = cat_u * cum[primary].back();
        const auto it = std::upper_bound(cum[primary].begin(), cum[primary].end(), x);
        const std::size_t pos = std::min(
            static_cast<std::size_t>(it - cum[primary].begin()), cum[primary].size() - 1);
        target_cat = cum_target[primary][pos];
      }
      const std::size_t cited_journal =
          target_cat * spec.journals_per_category +
          static_cast<std::size_t>(journal_raw % spec.journals_per_category);
      bool internal = internal_u < spec.internal_ref_prob;
      if (internal) {
        std::size_t pick = cited_journal * ppj +
                           static_cast<std::size_t>(pub_raw % ppj);
        if (pick == p) {
          if (ppj == 1) {
            internal = false;  // only candidate is the citing work itself
          } else {
            pick = cited_journal * ppj + (pick - cited_journal * ppj + 1) % ppj;
          }
        }
        if (internal) refs.push_back({true, pub_ids[pick]});
      }
      if (!internal) refs.push_back({false, journal_ids[cited_journal]});
    }
    builder.add_publication(pub_ids[p], journal_ids[own_journal], std::move(refs));
  }
  return builder.build();
}

}  // namespace idmx
