// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "idmx/csv.hpp"
#include "idmx/error.hpp"

namespace idmx {

// Ids are opaque, case-sensitive strings owned by whoever produced the data.
using CategoryId = std::string;
using JournalId = std::string;
using PublicationId = std::string;
using AreaId = std::string;

struct Category {
  CategoryId id;
  AreaId area;
  bool operator==(const Category&) const = default;
};

// Journals hold category *indices*; ids resolve once at build time and the
// rest of the library never touches strings on hot paths.
struct Journal {
  JournalId id;
  std::vector<std::size_t> categories;
  bool operator==(const Journal&) const = default;
};

struct Reference {
  enum class Kind { publication, journal };
  Kind kind;
  std::size_t target;  // publication index or journal index, per kind
  bool operator==(const Reference&) const = default;
};

struct Publication {
  PublicationId id;
  std::size_t journal;
  std::vector<Reference> refs;
  bool operator==(const Publication&) const = default;
};

// Validated, immutable snapshot of one corpus: category table, journal table,
// publication list, plus derived lookup indexes. Construction goes through
// Builder (programmatic) or load() (the three input files); both run the same
// validation, and both preserve input order, so a reload is bit-identical.
class Corpus {
 public:
  class Builder;

  static Corpus load(const std::filesystem::path& categories_csv,
                     const std::filesystem::path& journals_csv,
                     const std::filesystem::path& publications_jsonl);

  // Writes the three input files back out in stored order. Reloading the
  // result reproduces this corpus exactly.
  void save(const std::filesystem::path& categories_csv,
            const std::filesystem::path& journals_csv,
            const std::filesystem::path& publications_jsonl) const;

  std::size_t n_categories() const { return categories_.size(); }
  std::size_t n_journals() const { return journals_.size(); }
  std::size_t n_publications() const { return publications_.size(); }

  const Category& category(std::size_t i) const { return categories_.at(i); }
  const Journal& journal(std::size_t i) const { return journals_.at(i); }
  const Publication& publication(std::size_t i) const { return publications_.at(i); }
  const std::vector<Category>& categories() const { return categories_; }
  const std::vector<Journal>& journals() const { return journals_; }
  const std::vector<Publication>& publications() const { return publications_; }

  std::optional<std::size_t> category_index(std::string_view id) const {
    auto it = category_by_id_.find(std::string(id));
    if (it == category_by_id_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> journal_index(std::string_view id) const {
    auto it = journal_by_id_.find(std::string(id));
    if (it == journal_by_id_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<std::size_t> publication_index(std::string_view id) const {
    auto it = publication_by_id_.find(std::string(id));
    if (it == publication_by_id_.end()) return std::nullopt;
    return it->second;
  }

  // Journals assigned to a category, in journal-table order.
  const std::vector<std::size_t>& journals_of_category(std::size_t cat) const {
    return journals_of_category_.at(cat);
  }
  const std::vector<std::size_t>& publications_of_journal(std::size_t j) const {
    return publications_of_journal_.at(j);
  }
  // Publications citing `pub` via internal references, one entry per
  // reference, so multiplicity survives.
  const std::vector<std::size_t>& citing(std::size_t pub) const {
    return citing_.at(pub);
  }

  std::size_t internal_reference_count() const { return internal_refs_; }
  std::size_t external_reference_count() const { return external_refs_; }

  bool operator==(const Corpus& other) const {
    // derived indexes are functions of the three tables
    return categories_ == other.categories_ && journals_ == other.journals_ &&
           publications_ == other.publications_;
  }

 private:
  friend class Builder;
  Corpus() = default;
  void build_indexes();

  std::vector<Category> categories_;
  std::vector<Journal> journals_;
  std::vector<Publication> publications_;

  std::unordered_map<std::string, std::size_t> category_by_id_;
  std::unordered_map<std::string, std::size_t> journal_by_id_;
  std::unordered_map<std::string, std::size_t> publication_by_id_;

  std::vector<std::vector<std::size_t>> journals_of_category_;
  std::vector<std::vector<std::size_t>> publications_of_journal_;
  std::vector<std::vector<std::size_t>> citing_;
  std::size_t internal_refs_ = 0;
  std::size_t external_refs_ = 0;
};

// Incremental construction with the same rules as load(): categories first,
// then journals, then publications. Publication references may point forward,
// so they stay as raw ids until build().
class Corpus::Builder {
 public:
  struct RawRef {
    bool is_publication;
    std::string id;
  };

  Builder& add_category(CategoryId id, AreaId area) {
    if (id.empty()) throw ValidationError("empty category id");
    if (area.empty()) throw ValidationError("category '" + id + "' has an empty area id");
    if (!corpus_.category_by_id_.emplace(id, corpus_.categories_.size()).second)
      throw ValidationError("duplicate category id '" + id + "'");
    corpus_.categories_.push_back({std::move(id), std::move(area)});
    return *this;
  }

  Builder& add_journal(JournalId id, const std::vector<CategoryId>& category_ids) {
    if (id.empty()) throw ValidationError("empty journal id");
    if (category_ids.empty())
      throw ValidationError("journal '" + id + "' has no categories");
    Journal j;
    j.id = id;
    for (const auto& cid : category_ids) {
      auto idx = corpus_.category_index(cid);
      if (!idx)
        throw ValidationError("journal '" + id + "' names unknown category '" + cid + "'");
      for (std::size_t seen : j.categories)
        if (seen == *idx)
          throw ValidationError("journal '" + id + "' lists category '" + cid + "' twice");
      j.categories.push_back(*idx);
    }
    if (!corpus_.journal_by_id_.emplace(id, corpus_.journals_.size()).second)
      throw ValidationError("duplicate journal id '" + id + "'");
    corpus_.journals_.push_back(std::move(j));
    return *this;
  }

  Builder& add_publication(PublicationId id, const JournalId& journal_id,
                           std::vector<RawRef> refs) {
    if (id.empty()) throw ValidationError("empty publication id");
    auto j = corpus_.journal_index(journal_id);
    if (!j)
      throw ValidationError("publication '" + id + "' names unknown journal '" +
                            journal_id + "'");
    if (!corpus_.publication_by_id_.emplace(id, corpus_.publications_.size()).second)
      throw ValidationError("duplicate publication id '" + id + "'");
    corpus_.publications_.push_back({std::move(id), *j, {}});
    raw_refs_.push_back(std::move(refs));
    return *this;
  }

  Corpus build() {
    for (std::size_t p = 0; p < corpus_.publications_.size(); ++p) {
      auto& pub = corpus_.publications_[p];
      pub.refs.reserve(raw_refs_[p].size());
      for (const auto& r : raw_refs_[p]) {
        if (r.is_publication) {
          auto t = corpus_.publication_index(r.id);
          if (!t)
            throw ValidationError("publication '" + pub.id +
                                  "' cites unknown publication '" + r.id + "'");
          pub.refs.push_back({Reference::Kind::publication, *t});
        } else {
          auto t = corpus_.journal_index(r.id);
          if (!t)
            throw ValidationError("publication '" + pub.id +
                                  "' cites unknown journal '" + r.id + "'");
          pub.refs.push_back({Reference::Kind::journal, *t});
        }
      }
    }
    raw_refs_.clear();
    corpus_.build_indexes();
    return std::move(corpus_);
  }

 private:
  Corpus corpus_;
  std::vector<std::vector<RawRef>> raw_refs_;
};

inline void Corpus::build_indexes() {
  journals_of_category_.assign(categories_.size(), {});
  for (std::size_t j = 0; j < journals_.size(); ++j)
    for (std::size_t c : journals_[j].categories)
      journals_of_category_[c].push_back(j);

  publications_of_journal_.assign(journals_.size(), {});
  citing_.assign(publications_.size(), {});
  internal_refs_ = external_refs_ = 0;
  for (std::size_t p = 0; p < publications_.size(); ++p) {
    publications_of_journal_[publications_[p].journal].push_back(p);
    for (const Reference& r : publications_[p].refs) {
      if (r.kind == Reference::Kind::publication) {
        citing_[r.target].push_back(p);
        ++internal_refs_;
      } else {
        ++external_refs_;
      }
    }
  }
}

inline Corpus Corpus::load(const std::filesystem::path& categories_csv,
                           const std::filesystem::path& journals_csv,
                           const std::filesystem::path& publications_jsonl) {
  Builder b;

  {
    std::ifstream in(categories_csv);
    if (!in) throw ParseError(categories_csv.string(), 0, "cannot open file");
    std::string line;
    std::size_t lineno = 0;
    if (!next_csv_line(in, line, lineno))
      throw ParseError(categories_csv.string(), lineno, "missing header");
    auto header = split_csv_line(line, categories_csv.string(), lineno);
    if (header != std::vector<std::string>{"category_id", "area_id"})
      throw ParseError(categories_csv.string(), lineno,
                       "expected header 'category_id,area_id'");
    while (next_csv_line(in, line, lineno)) {
      auto f = split_csv_line(line, categories_csv.string(), lineno);
      if (f.size() != 2)
        throw ParseError(categories_csv.string(), lineno, "expected 2 fields");
      try {
        b.add_category(f[0], f[1]);
      } catch (const ValidationError& e) {
        throw ParseError(categories_csv.string(), lineno, e.what());
      }
    }
  }

  {
    std::ifstream in(journals_csv);
    if (!in) throw ParseError(journals_csv.string(), 0, "cannot open file");
    std::string line;
    std::size_t lineno = 0;
    if (!next_csv_line(in, line, lineno))
      throw ParseError(journals_csv.string(), lineno, "missing header");
    auto header = split_csv_line(line, journals_csv.string(), lineno);
    if (header != std::vector<std::string>{"journal_id", "category_ids"})
      throw ParseError(journals_csv.string(), lineno,
                       "expected header 'journal_id,category_ids'");
    while (next_csv_line(in, line, lineno)) {
      auto f = split_csv_line(line, journals_csv.string(), lineno);
      if (f.size() != 2)
        throw ParseError(journals_csv.string(), lineno, "expected 2 fields");
      std::vector<std::string> cats;
      std::string cur;
      for (char c : f[1]) {
        if (c == ';') {
          cats.push_back(cur);
          cur.clear();
        } else {
          cur.push_back(c);
        }
      }
      cats.push_back(cur);
      try {
        b.add_journal(f[0], cats);
      } catch (const ValidationError& e) {
        throw ParseError(journals_csv.string(), lineno, e.what());
      }
    }
  }

  {
    std::ifstream in(publications_jsonl);
    if (!in) throw ParseError(publications_jsonl.string(), 0, "cannot open file");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t p = line.find_first_not_of(" \t\r");
      if (p == std::string::npos || line[p] == '#') continue;
      nlohmann::json obj;
      try {
        obj = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(publications_jsonl.string(), lineno, e.what());
      }
      if (!obj.is_object())
        throw ParseError(publications_jsonl.string(), lineno, "expected a JSON object");
      for (auto& [key, _] : obj.items())
        if (key != "id" && key != "journal" && key != "refs")
          throw ParseError(publications_jsonl.string(), lineno,
                           "unknown key '" + key + "'");
      if (!obj.contains("id") || !obj["id"].is_string())
        throw ParseError(publications_jsonl.string(), lineno, "missing string 'id'");
      if (!obj.contains("journal") || !obj["journal"].is_string())
        throw ParseError(publications_jsonl.string(), lineno, "missing string 'journal'");
      std::vector<Builder::RawRef> refs;
      if (obj.contains("refs")) {
        if (!obj["refs"].is_array())
          throw ParseError(publications_jsonl.string(), lineno, "'refs' must be an array");
        for (const auto& r : obj["refs"]) {
          const bool has_pub = r.is_object() && r.contains("pub");
          const bool has_journal = r.is_object() && r.contains("journal");
          if (!r.is_object() || r.size() != 1 || (has_pub == has_journal))
            throw ParseError(publications_jsonl.string(), lineno,
                             "each ref must be {\"pub\": id} or {\"journal\": id}");
          const auto& v = has_pub ? r["pub"] : r["journal"];
          if (!v.is_string())
            throw ParseError(publications_jsonl.string(), lineno, "ref id must be a string");
          refs.push_back({has_pub, v.get<std::string>()});
        }
      }
      try {
        b.add_publication(obj["id"].get<std::string>(), obj["journal"].get<std::string>(),
                          std::move(refs));
      } catch (const ValidationError& e) {
        throw ParseError(publications_jsonl.string(), lineno, e.what());
      }
    }
  }

  try {
    return b.build();
  } catch (const ValidationError& e) {
    // dangling internal refs surface here, after the whole file is read
    throw ParseError(publications_jsonl.string(), 0, e.what());
  }
}

inline void Corpus::save(const std::filesystem::path& categories_csv,
                         const std::filesystem::path& journals_csv,
                         const std::filesystem::path& publications_jsonl) const {
  {
    std::ofstream out(categories_csv);
    if (!out) throw Error("cannot write " + categories_csv.string());
    out << "category_id,area_id\n";
    for (const auto& c : categories_)
      out << csv_escape(c.id) << "," << csv_escape(c.area) << "\n";
  }
  {
    std::ofstream out(journals_csv);
    if (!out) throw Error("cannot write " + journals_csv.string());
    out << "journal_id,category_ids\n";
    for (const auto& j : journals_) {
      std::string cats;
      for (std::size_t k = 0; k < j.categories.size(); ++k) {
        if (k) cats += ";";
        cats += categories_[j.categories[k]].id;
      }
      out << csv_escape(j.id) << "," << csv_escape(cats) << "\n";
    }
  }
  {
    std::ofstream out(publications_jsonl);
    if (!out) throw Error("cannot write " + publications_jsonl.string());
    for (const auto& p : publications_) {
      nlohmann::json obj;
      obj["id"] = p.id;
      obj["journal"] = journals_[p.journal].id;
      nlohmann::json refs = nlohmann::json::array();
      for (const Reference& r : p.refs) {
        if (r.kind == Reference::Kind::publication)
          refs.push_back({{"pub", publications_[r.target].id}});
        else
          refs.push_back({{"journal", journals_[r.target].id}});
      }
      obj["refs"] = std::move(refs);
      out << obj.dump() << "\n";
    }
  }
}

// Journals carrying category `cat`, ascending journal index. The id overload
// rejects unknown ids so CLI typos fail loudly instead of returning nothing.
inline const std::vector<std::size_t>& category_journals(const Corpus& corpus,
                                                         std::size_t cat) {
  if (cat >= corpus.n_categories()) throw ValidationError("category index out of range");
  return corpus.journals_of_category(cat);
}

inline const std::vector<std::size_t>& category_journals(const Corpus& corpus,
                                                         const CategoryId& id) {
  auto idx = corpus.category_index(id);
  if (!idx) throw ValidationError("unknown category '" + id + "'");
  return corpus.journals_of_category(*idx);
}

}  // namespace idmx
