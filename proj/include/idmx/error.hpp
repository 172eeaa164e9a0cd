// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idmx {

// Base class for everything this library throws deliberately.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: bad CSV row, unparseable JSON line. Carries the source
// location so CLI messages point at the offending line.
struct ParseError : Error {
  ParseError(std::string file_, std::size_t line_, const std::string& what_)
      : Error(file_ + ":" + std::to_string(line_) + ": " + what_),
        file(std::move(file_)),
        line(line_) {}
  std::string file;
  std::size_t line;
};

// Well-formed input that breaks a referential or structural rule: duplicate
// ids, dangling references, empty category lists, infeasible generator specs,
// or a computation whose preconditions the data cannot meet.
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace idmx
