// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "idmx/corpus.hpp"
#include "idmx/matrix.hpp"
#include "idmx/measures_network.hpp"

namespace testutil {

// Two categories A (area X) and B (area Y); JM spans both. Ten references.
// Hand tallies, fractional counting (pub weight splits over its categories,
// cited weight over the cited journal's categories):
//   P1 in JA cites JA, JM, P4:  AA += 1 + 1/2,        AB += 1/2 + 1
//   P2 in JA cites JB, P3:      AA += 1/2,            AB += 1 + 1/2
//   P3 in JM cites JA, JB, P1:  AA += 1, BA += 1,     AB += 1/2, BB += 1/2
//   P4 in JB cites JB, JM:      BA += 1/2,            BB += 1 + 1/2
//   c = [[3, 3.5], [1.5, 2]]   a = (2.5, 1.5)
// Full counting repeats the sums with every weight 1:
//   c = [[5, 5], [3, 3]]       a = (3, 2)
inline idmx::Corpus two_cat_corpus() {
  idmx::Corpus::Builder b;
  b.add_category("A", "X");
  b.add_category("B", "Y");
  b.add_journal("JA", {"A"});
  b.add_journal("JB", {"B"});
  b.add_journal("JM", {"A", "B"});
  using R = idmx::Corpus::Builder::RawRef;
  b.add_publication("P1", "JA",
                    {R{false, "JA"}, R{false, "JM"}, R{true, "P4"}});
  b.add_publication("P2", "JA", {R{false, "JB"}, R{true, "P3"}});
  b.add_publication("P3", "JM",
                    {R{false, "JA"}, R{false, "JB"}, R{true, "P1"}});
  b.add_publication("P4", "JB", {R{false, "JB"}, R{false, "JM"}});
  return b.build();
}

// Deterministic draws for property tests; same shaping as the corpus
// generator but local to the tests.
struct TestRng {
  std::mt19937_64 engine;
  explicit TestRng(std::uint64_t seed) : engine(seed) {}
  double unit() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
  std::size_t bounded(std::size_t n) {
    return static_cast<std::size_t>(engine() % n);
  }
};

// Random valid corpus for invariance properties: a handful of categories and
// journals, reference targets drawn from the full id universe, no self-cites.
inline idmx::Corpus random_corpus(TestRng& rng) {
  const std::size_t n_cats = 2 + rng.bounded(5);
  const std::size_t n_areas = 1 + rng.bounded(3);
  idmx::Corpus::Builder b;
  for (std::size_t c = 0; c < n_cats; ++c)
    b.add_category("C" + std::to_string(c), "R" + std::to_string(rng.bounded(n_areas)));

  std::vector<std::string> journals;
  for (std::size_t c = 0; c < n_cats; ++c) {
    const std::size_t nj = 1 + rng.bounded(3);
    for (std::size_t t = 0; t < nj; ++t) {
      std::string id = "J" + std::to_string(c) + "_" + std::to_string(t);
      std::vector<std::string> cats = {"C" + std::to_string(c)};
      if (rng.unit() < 0.4) {
        const std::size_t other = (c + 1 + rng.bounded(n_cats - 1)) % n_cats;
        cats.push_back("C" + std::to_string(other));
      }
      b.add_journal(id, cats);
      journals.push_back(std::move(id));
    }
  }

  std::vector<std::string> pubs;
  std::vector<std::size_t> pub_journal;
  for (std::size_t j = 0; j < journals.size(); ++j) {
    const std::size_t np = rng.bounded(4);  // zero-publication journals allowed
    for (std::size_t k = 0; k < np; ++k) {
      pubs.push_back("P" + std::to_string(j) + "_" + std::to_string(k));
      pub_journal.push_back(j);
    }
  }
  for (std::size_t p = 0; p < pubs.size(); ++p) {
    const std::size_t nr = rng.bounded(6);  // reference-free publications allowed
    std::vector<idmx::Corpus::Builder::RawRef> refs;
    for (std::size_t r = 0; r < nr; ++r) {
      if (!pubs.empty() && rng.unit() < 0.5) {
        const std::size_t t = rng.bounded(pubs.size());
        if (t != p) {
          refs.push_back({true, pubs[t]});
          continue;
        }
      }
      refs.push_back({false, journals[rng.bounded(journals.size())]});
    }
    b.add_publication(pubs[p], journals[pub_journal[p]], std::move(refs));
  }
  return b.build();
}

// Reference betweenness by exhaustive simple-path enumeration. Shortest paths
// in a positively weighted digraph are simple, so for every ordered pair this
// counts the minimum-weight paths (ties within kPathTieTolerance) and credits
// the interior nodes. Exponential, so keep graphs small.
inline std::vector<double> brute_force_betweenness(const idmx::CitationGraph& g) {
  const std::size_t n = g.n;
  std::vector<double> bc(n, 0.0);
  std::vector<std::size_t> path;
  std::vector<bool> used(n, false);
  struct Found {
    double weight;
    std::vector<std::size_t> interior;
  };
  std::vector<Found> found;

  auto dfs = [&](auto&& self, std::size_t u, std::size_t t, double w) -> void {
    if (u == t) {
      found.push_back({w, std::vector<std::size_t>(path.begin() + 1, path.end() - 1)});
      return;
    }
    for (const auto& [v, ew] : g.out[u]) {
      if (used[v]) continue;
      used[v] = true;
      path.push_back(v);
      self(self, v, t, w + ew);
      path.pop_back();
      used[v] = false;
    }
  };

  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      found.clear();
      path.assign(1, s);
      used.assign(n, false);
      used[s] = true;
      dfs(dfs, s, t, 0.0);
      if (found.empty()) continue;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& f : found) best = std::min(best, f.weight);
      double sigma = 0.0;
      std::vector<double> through(n, 0.0);
      for (const auto& f : found) {
        if (f.weight > best + idmx::kPathTieTolerance) continue;
        sigma += 1.0;
        for (std::size_t v : f.interior) through[v] += 1.0;
      }
      for (std::size_t v = 0; v < n; ++v)
        if (through[v] > 0.0) bc[v] += through[v] / sigma;
    }
  }
  return bc;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh per-name scratch directory under the system temp root.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("idmx_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Runs the built CLI with the given argument string; returns the exit code.
// Output is captured into `out_file` when given, else discarded.
inline int run_cli(const std::string& args, const std::filesystem::path& out_file = {}) {
  std::string cmd = std::string(IDMX_CLI_PATH) + " " + args;
  if (out_file.empty())
    cmd += " >/dev/null 2>&1";
  else
    cmd += " >" + out_file.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

}  // namespace testutil
