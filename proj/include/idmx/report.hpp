// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "idmx/csv.hpp"
#include "idmx/error.hpp"
#include "idmx/measure_value.hpp"
#include "idmx/numeric.hpp"

namespace idmx {

// Categories-by-measures table of MeasureValues plus free-form metadata
// (config echo, caps, flags, undefined-cell reasons). Stored column-major
// because the analysis side consumes whole measure columns.
class MeasureReport {
 public:
  MeasureReport(std::vector<std::string> categories, std::vector<std::string> measures)
      : categories_(std::move(categories)),
        measures_(std::move(measures)),
        columns_(measures_.size(),
                 std::vector<MeasureValue>(categories_.size(), MeasureValue{})) {}

  const std::vector<std::string>& categories() const { return categories_; }
  const std::vector<std::string>& measures() const { return measures_; }

  std::optional<std::size_t> measure_index(std::string_view name) const {
    for (std::size_t m = 0; m < measures_.size(); ++m)
      if (measures_[m] == name) return m;
    return std::nullopt;
  }
  std::optional<std::size_t> category_index(std::string_view id) const {
    for (std::size_t c = 0; c < categories_.size(); ++c)
      if (categories_[c] == id) return c;
    return std::nullopt;
  }

  void set(std::size_t cat, std::size_t measure, MeasureValue v) {
    columns_.at(measure).at(cat) = std::move(v);
  }
  const MeasureValue& at(std::size_t cat, std::size_t measure) const {
    return columns_.at(measure).at(cat);
  }
  const std::vector<MeasureValue>& column(std::size_t measure) const {
    return columns_.at(measure);
  }

  nlohmann::json metadata;

  // CSV cell values are shortest-round-trip doubles; undefined cells are
  // empty. Reasons live in the metadata sidecar, not the grid.
  void write_csv(std::ostream& out, std::string_view config_hash) const {
    out << "# config_hash=" << config_hash << "\n";
    out << "category";
    for (const auto& m : measures_) out << "," << csv_escape(m);
    out << "\n";
    for (std::size_t c = 0; c < categories_.size(); ++c) {
      out << csv_escape(categories_[c]);
      for (std::size_t m = 0; m < measures_.size(); ++m) {
        out << ",";
        const auto& v = columns_[m][c];
        if (v.defined()) out << format_double(*v.value);
      }
      out << "\n";
    }
  }

  static MeasureReport read_csv(std::istream& in, const std::string& filename) {
    std::string line;
    std::size_t lineno = 0;
    if (!next_csv_line(in, line, lineno))
      throw ParseError(filename, lineno, "missing header");
    auto header = split_csv_line(line, filename, lineno);
    if (header.size() < 2 || header[0] != "category")
      throw ParseError(filename, lineno, "expected 'category,<measure...>' header");
    std::vector<std::string> measures(header.begin() + 1, header.end());

    std::vector<std::string> categories;
    std::vector<std::vector<MeasureValue>> rows;
    while (next_csv_line(in, line, lineno)) {
      auto f = split_csv_line(line, filename, lineno);
      if (f.size() != header.size())
        throw ParseError(filename, lineno, "row width does not match header");
      categories.push_back(f[0]);
      std::vector<MeasureValue> row;
      row.reserve(measures.size());
      for (std::size_t m = 1; m < f.size(); ++m) {
        if (f[m].empty()) {
          row.push_back(MeasureValue{});
          continue;
        }
        bool ok = false;
        const double v = parse_double(f[m], ok);
        if (!ok) throw ParseError(filename, lineno, "bad numeric cell '" + f[m] + "'");
        row.push_back(MeasureValue::of(v));
      }
      rows.push_back(std::move(row));
    }

    MeasureReport r(std::move(categories), std::move(measures));
    for (std::size_t c = 0; c < rows.size(); ++c)
      for (std::size_t m = 0; m < rows[c].size(); ++m) r.set(c, m, rows[c][m]);
    return r;
  }

 private:
  std::vector<std::string> categories_;
  std::vector<std::string> measures_;
  std::vector<std::vector<MeasureValue>> columns_;  // one vector per measure
};

}  // namespace idmx
