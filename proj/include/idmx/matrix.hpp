// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "idmx/corpus.hpp"
#include "idmx/csv.hpp"
#include "idmx/error.hpp"
#include "idmx/numeric.hpp"

namespace idmx {

// How a multi-category assignment splits weight. fractional gives each of the
// m categories 1/m of a publication (and of a cited reference); full gives
// each category the whole unit, so totals can exceed the raw counts.
enum class Counting { fractional, full };

inline const char* to_string(Counting c) {
  return c == Counting::fractional ? "fractional" : "full";
}

// Sparse probability vector over category indices; keys are the support.
using ProbMap = std::map<std::size_t, double>;

// Category-by-category reference flows: entry (i, k) is the weight of
// references issued by category i's publications landing in category k,
// under the chosen counting mode. Rows are sparse ordered maps; zero entries
// are never stored, so map keys are exactly the support.
class TransactionMatrix {
 public:
  static TransactionMatrix build(const Corpus& corpus, Counting counting) {
    TransactionMatrix tm;
    tm.counting_ = counting;
    const std::size_t n = corpus.n_categories();
    tm.category_ids_.reserve(n);
    for (std::size_t c = 0; c < n; ++c) tm.category_ids_.push_back(corpus.category(c).id);
    tm.rows_.assign(n, {});
    tm.pub_counts_.assign(n, 0.0);

    for (std::size_t p = 0; p < corpus.n_publications(); ++p) {
      const Publication& pub = corpus.publication(p);
      const auto& own_cats = corpus.journal(pub.journal).categories;
      const double wi = counting == Counting::fractional
                            ? 1.0 / static_cast<double>(own_cats.size())
                            : 1.0;
      for (std::size_t i : own_cats) tm.pub_counts_[i] += wi;
      for (const Reference& r : pub.refs) {
        const std::size_t cited_journal = r.kind == Reference::Kind::journal
                                              ? r.target
                                              : corpus.publication(r.target).journal;
        const auto& cited_cats = corpus.journal(cited_journal).categories;
        const double wk = counting == Counting::fractional
                              ? 1.0 / static_cast<double>(cited_cats.size())
                              : 1.0;
        for (std::size_t i : own_cats)
          for (std::size_t k : cited_cats) tm.rows_[i][k] += wi * wk;
      }
    }
    tm.finalize();
    return tm;
  }

  // Direct construction for fixtures and hand-checked tallies. Negative
  // entries are rejected; zeros are dropped so support stays canonical.
  static TransactionMatrix from_rows(std::vector<std::string> category_ids,
                                     std::vector<std::map<std::size_t, double>> rows,
                                     std::vector<double> pub_counts,
                                     Counting counting = Counting::fractional) {
    const std::size_t n = category_ids.size();
    if (rows.size() != n || pub_counts.size() != n)
      throw ValidationError("matrix rows and publication counts must match category count");
    TransactionMatrix tm;
    tm.counting_ = counting;
    tm.category_ids_ = std::move(category_ids);
    tm.rows_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [k, v] : rows[i]) {
        if (k >= n) throw ValidationError("matrix column index out of range");
        if (v < 0.0) throw ValidationError("matrix entries must be nonnegative");
        if (v > 0.0) tm.rows_[i][k] = v;
      }
    }
    for (double a : pub_counts)
      if (a < 0.0) throw ValidationError("publication counts must be nonnegative");
    tm.pub_counts_ = std::move(pub_counts);
    tm.finalize();
    return tm;
  }

  std::size_t size() const { return rows_.size(); }
  Counting counting() const { return counting_; }
  const std::vector<std::string>& category_ids() const { return category_ids_; }

  double at(std::size_t i, std::size_t k) const {
    const auto& row = rows_.at(i);
    auto it = row.find(k);
    return it == row.end() ? 0.0 : it->second;
  }
  const std::map<std::size_t, double>& row(std::size_t i) const { return rows_.at(i); }
  double row_sum(std::size_t i) const { return row_sums_.at(i); }
  double col_sum(std::size_t k) const { return col_sums_.at(k); }

  // a_i: publication counts per category, and their share of the whole.
  const std::vector<double>& pub_counts() const { return pub_counts_; }
  const std::vector<double>& pub_shares() const { return pub_shares_; }

  // Sparse triplet export: one line per stored entry, row-major, columns
  // ascending. Byte-stable across runs.
  void write_triplets_csv(std::ostream& out) const {
    out << "row_category,col_category,value\n";
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (const auto& [k, v] : rows_[i])
        out << csv_escape(category_ids_[i]) << "," << csv_escape(category_ids_[k]) << ","
            << format_double(v) << "\n";
  }

 private:
  void finalize() {
    const std::size_t n = rows_.size();
    row_sums_.assign(n, 0.0);
    col_sums_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      NeumaierSum s;
      for (const auto& [k, v] : rows_[i]) {
        s.add(v);
        col_sums_[k] += v;
      }
      row_sums_[i] = s.value();
    }
    NeumaierSum total;
    for (double a : pub_counts_) total.add(a);
    pub_shares_.assign(n, 0.0);
    if (total.value() > 0.0)
      for (std::size_t i = 0; i < n; ++i) pub_shares_[i] = pub_counts_[i] / total.value();
  }

  Counting counting_ = Counting::fractional;
  std::vector<std::string> category_ids_;
  std::vector<std::map<std::size_t, double>> rows_;
  std::vector<double> row_sums_;
  std::vector<double> col_sums_;
  std::vector<double> pub_counts_;
  std::vector<double> pub_shares_;
};

// Row i as proportions over its support. Empty (all-zero) rows have no
// distribution to report, hence nullopt rather than a vector of NaNs.
inline std::optional<ProbMap> row_proportions(const TransactionMatrix& tm, std::size_t i) {
  const auto& row = tm.row(i);
  if (row.empty()) return std::nullopt;
  const double s = tm.row_sum(i);
  ProbMap p;
  for (const auto& [k, v] : row) p[k] = v / s;
  return p;
}

// Proportions of one publication's references over cited categories, using
// the same per-reference category weights as the matrix build. Publications
// without references have no profile.
inline std::optional<ProbMap> publication_profile(const Corpus& corpus, std::size_t pub,
                                                  Counting counting) {
  const Publication& p = corpus.publication(pub);
  if (p.refs.empty()) return std::nullopt;
  ProbMap q;
  for (const Reference& r : p.refs) {
    const std::size_t cited_journal = r.kind == Reference::Kind::journal
                                          ? r.target
                                          : corpus.publication(r.target).journal;
    const auto& cats = corpus.journal(cited_journal).categories;
    const double wk = counting == Counting::fractional
                          ? 1.0 / static_cast<double>(cats.size())
                          : 1.0;
    for (std::size_t k : cats) q[k] += wk;
  }
  NeumaierSum total;
  for (const auto& [_, w] : q) total.add(w);
  for (auto& [_, w] : q) w /= total.value();
  return q;
}

// Symmetric pair weights between cited categories. at(j, k) == at(k, j);
// only j <= k keys are stored.
class CoherenceLinkCounts {
 public:
  void add(std::size_t j, std::size_t k, double w) {
    if (j > k) std::swap(j, k);
    pairs_[{j, k}] += w;
  }
  double at(std::size_t j, std::size_t k) const {
    if (j > k) std::swap(j, k);
    auto it = pairs_.find({j, k});
    return it == pairs_.end() ? 0.0 : it->second;
  }
  const std::map<std::pair<std::size_t, std::size_t>, double>& pairs() const {
    return pairs_;
  }

 private:
  std::map<std::pair<std::size_t, std::size_t>, double> pairs_;
};

// Citation links among the distinct internal references cited by category
// `cat`'s publications, attributed to the cited works' categories. Each
// unordered pair of works counts once, whichever direction the link runs
// (and once even if both directions exist).
inline CoherenceLinkCounts coherence_link_counts(const Corpus& corpus, std::size_t cat,
                                                 Counting counting) {
  if (cat >= corpus.n_categories()) throw ValidationError("category index out of range");

  std::unordered_set<std::size_t> in_r;
  for (std::size_t j : corpus.journals_of_category(cat))
    for (std::size_t p : corpus.publications_of_journal(j))
      for (const Reference& r : corpus.publication(p).refs)
        if (r.kind == Reference::Kind::publication) in_r.insert(r.target);

  std::set<std::pair<std::size_t, std::size_t>> links;
  for (std::size_t u : in_r)
    for (const Reference& r : corpus.publication(u).refs)
      if (r.kind == Reference::Kind::publication && r.target != u && in_r.count(r.target))
        links.insert({std::min(u, r.target), std::max(u, r.target)});

  CoherenceLinkCounts counts;
  for (const auto& [u, v] : links) {
    const auto& cu = corpus.journal(corpus.publication(u).journal).categories;
    const auto& cv = corpus.journal(corpus.publication(v).journal).categories;
    const double wu = counting == Counting::fractional
                          ? 1.0 / static_cast<double>(cu.size())
                          : 1.0;
    const double wv = counting == Counting::fractional
                          ? 1.0 / static_cast<double>(cv.size())
                          : 1.0;
    for (std::size_t a : cu)
      for (std::size_t b : cv) counts.add(a, b, wu * wv);
  }
  return counts;
}

}  // namespace idmx
