// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "idmx/analysis.hpp"
#include "idmx/error.hpp"
#include "idmx/matrix.hpp"
#include "idmx/measures_diversity.hpp"
#include "idmx/measures_network.hpp"
#include "idmx/numeric.hpp"
#include "idmx/similarity.hpp"

namespace idmx {

// Every knob a run depends on, with one default each. The canonical JSON form
// of the effective config is hashed (FNV-1a) and stamped into every output
// file, so any result can be traced to the exact settings that produced it.
struct Config {
  Counting counting = Counting::fractional;
  GiniSupport gini_support = GiniSupport::observed;
  WeightTransform bc_weight = WeightTransform::raw;
  bool cc_symmetric = false;
  SimilarityKind as_similarity = SimilarityKind::cosine_vector;
  Linkage linkage = Linkage::average;
  CorrelationMethod cluster_method = CorrelationMethod::pearson;
  std::size_t bins = 10;
  std::vector<std::string> measures;  // empty means every known measure
  unsigned threads = 1;

  nlohmann::json to_json() const {
    return {{"counting", to_string(counting)},
            {"gini_support", to_string(gini_support)},
            {"bc_weight", to_string(bc_weight)},
            {"cc_symmetric", cc_symmetric},
            {"as_similarity", to_string(as_similarity)},
            {"linkage", to_string(linkage)},
            {"cluster_method", to_string(cluster_method)},
            {"bins", bins},
            {"measures", measures},
            {"threads", threads}};
  }

  // nlohmann sorts keys, so dump() is canonical and the hash is stable.
  std::string hash() const { return fnv1a64_hex(to_json().dump()); }

  static Config from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    Config cfg;
    for (const auto& [key, value] : j.items()) {
      if (key == "counting") {
        cfg.counting = parse_enum<Counting>(value, {{"fractional", Counting::fractional},
                                                    {"full", Counting::full}});
      } else if (key == "gini_support") {
        cfg.gini_support =
            parse_enum<GiniSupport>(value, {{"observed", GiniSupport::observed},
                                            {"all", GiniSupport::all}});
      } else if (key == "bc_weight") {
        cfg.bc_weight =
            parse_enum<WeightTransform>(value, {{"raw", WeightTransform::raw},
                                                {"inverse", WeightTransform::inverse}});
      } else if (key == "cc_symmetric") {
        if (!value.is_boolean()) throw ValidationError("cc_symmetric must be a boolean");
        cfg.cc_symmetric = value.get<bool>();
      } else if (key == "as_similarity") {
        cfg.as_similarity = parse_enum<SimilarityKind>(
            value, {{"cosine_vector", SimilarityKind::cosine_vector},
                    {"ochiai", SimilarityKind::ochiai}});
      } else if (key == "linkage") {
        cfg.linkage = parse_enum<Linkage>(value, {{"average", Linkage::average},
                                                  {"single", Linkage::single},
                                                  {"complete", Linkage::complete}});
      } else if (key == "cluster_method") {
        cfg.cluster_method = parse_enum<CorrelationMethod>(
            value, {{"pearson", CorrelationMethod::pearson},
                    {"spearman", CorrelationMethod::spearman}});
      } else if (key == "bins") {
        if (!value.is_number_unsigned() || value.get<std::size_t>() == 0)
          throw ValidationError("bins must be a positive integer");
        cfg.bins = value.get<std::size_t>();
      } else if (key == "measures") {
        if (!value.is_array()) throw ValidationError("measures must be an array of names");
        cfg.measures.clear();
        for (const auto& v : value) {
          if (!v.is_string()) throw ValidationError("measures must be an array of names");
          cfg.measures.push_back(v.get<std::string>());
        }
      } else if (key == "threads") {
        if (!value.is_number_unsigned() || value.get<unsigned>() == 0)
          throw ValidationError("threads must be a positive integer");
        cfg.threads = value.get<unsigned>();
      } else {
        throw ValidationError("unknown config key '" + key + "'");
      }
    }
    return cfg;
  }

 private:
  template <typename E>
  static E parse_enum(const nlohmann::json& value,
                      std::initializer_list<std::pair<const char*, E>> options) {
    if (value.is_string()) {
      const auto s = value.get<std::string>();
      for (const auto& [name, e] : options)
        if (s == name) return e;
    }
    std::string valid;
    for (const auto& [name, _] : options) {
      if (!valid.empty()) valid += "|";
      valid += name;
    }
    throw ValidationError("expected one of " + valid + ", got '" + value.dump() + "'");
  }
};

}  // namespace idmx
