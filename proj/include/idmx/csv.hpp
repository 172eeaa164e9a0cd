// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <istream>
#include <string>
#include <vector>

#include "idmx/error.hpp"

namespace idmx {

// Minimal RFC 4180 subset: comma-separated fields, optional double-quoting
// with "" escapes, no embedded newlines. Ids are opaque strings, so quoting
// has to work; multiline fields deliberately do not.
inline std::vector<std::string> split_csv_line(const std::string& line,
                                               const std::string& file,
                                               std::size_t lineno) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  std::size_t i = 0;
  const std::size_t n = line.size();
  // trailing \r from CRLF files is noise, not data
  const std::size_t end = (n > 0 && line[n - 1] == '\r') ? n - 1 : n;
  while (i < end) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < end && line[i + 1] == '"') {
          cur.push_back('"');
          i += 2;
          continue;
        }
        quoted = false;
        ++i;
        continue;
      }
      cur.push_back(c);
      ++i;
    } else if (c == '"') {
      if (!cur.empty()) throw ParseError(file, lineno, "quote inside unquoted field");
      quoted = true;
      ++i;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      ++i;
    } else {
      cur.push_back(c);
      ++i;
    }
  }
  if (quoted) throw ParseError(file, lineno, "unterminated quoted field");
  fields.push_back(std::move(cur));
  return fields;
}

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

// Reads the next content line, skipping blank lines and '#' comments (output
// files carry a '# config_hash=...' stamp that readers must tolerate).
inline bool next_csv_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos) continue;
    if (line[p] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace idmx
