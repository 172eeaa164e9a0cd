// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "idmx/measures_overlap.hpp"

using Catch::Matchers::WithinAbs;
using idmx::Counting;
using idmx::MeasureValue;
using idmx::TransactionMatrix;
using idmx::Undefined;

namespace {

// category A has journals but none with publications or references; category
// B has no journals at all
idmx::Corpus degenerate_corpus() {
  idmx::Corpus::Builder b;
  b.add_category("A", "X");
  b.add_category("B", "X");
  b.add_journal("JA", {"A"});
  return b.build();
}

}  // namespace

TEST_CASE("journal overlap shares on the two-category fixture") {
  const auto c = testutil::two_cat_corpus();

  // A's journals are JA (single) and JM (multi, spans areas X and Y)
  CHECK_THAT(*idmx::p_multi(c, 0).value, WithinAbs(0.5, 1e-15));
  CHECK_THAT(*idmx::p_outside(c, 0).value, WithinAbs(0.5, 1e-15));
  CHECK_THAT(*idmx::d_links(c, 0).value, WithinAbs(0.5, 1e-15));
  CHECK_THAT(*idmx::p_multi(c, 1).value, WithinAbs(0.5, 1e-15));
}

TEST_CASE("p_outside needs a second area, not just a second category") {
  idmx::Corpus::Builder b;
  b.add_category("A", "X");
  b.add_category("B", "X");  // same area
  b.add_journal("JM", {"A", "B"});
  const auto c = b.build();
  CHECK_THAT(*idmx::p_multi(c, 0).value, WithinAbs(1.0, 1e-15));
  CHECK_THAT(*idmx::p_outside(c, 0).value, WithinAbs(0.0, 1e-15));
}

TEST_CASE("d_links counts pairs not involving the focal category too") {
  idmx::Corpus::Builder b;
  b.add_category("A", "X");
  b.add_category("B", "X");
  b.add_category("C", "Y");
  b.add_journal("J1", {"A", "B", "C"});
  const auto c = b.build();
  // one journal inducing pairs AB, AC, BC
  CHECK_THAT(*idmx::d_links(c, 0).value, WithinAbs(3.0, 1e-15));
}

TEST_CASE("pro is the off-diagonal share of the citing row") {
  const auto tm = TransactionMatrix::build(testutil::two_cat_corpus(),
                                           Counting::fractional);
  CHECK_THAT(*idmx::pro(tm, 0).value, WithinAbs(3.5 / 6.5, 1e-15));
  CHECK_THAT(*idmx::pro(tm, 1).value, WithinAbs(1.5 / 3.5, 1e-15));
}

TEST_CASE("pratt complement on the fixture row") {
  const auto tm = TransactionMatrix::build(testutil::two_cat_corpus(),
                                           Counting::fractional);
  // row A proportions (6/13, 7/13): qbar = 2*(6/13) + 1*(7/13) = 19/13,
  // C = 2(3/2 - 19/13)/1 = 1/13
  CHECK_THAT(*idmx::pratt_complement(tm, 0).value, WithinAbs(12.0 / 13.0, 1e-12));
}

TEST_CASE("pratt complement averages tied ranks") {
  // proportions (0.25, 0.25, 0.5): tied pair ranks (2+3)/2 each
  const auto tm = TransactionMatrix::from_rows(
      {"A", "B", "C"}, {{{0, 1.0}, {1, 1.0}, {2, 2.0}}, {}, {}}, {1.0, 0.0, 0.0});
  CHECK_THAT(*idmx::pratt_complement(tm, 0).value, WithinAbs(0.75, 1e-12));
}

TEST_CASE("pratt complement is 0 for a single cited category") {
  const auto tm = TransactionMatrix::from_rows({"A", "B"}, {{{1, 4.0}}, {}},
                                               {1.0, 0.0});
  CHECK(*idmx::pratt_complement(tm, 0).value == 0.0);
}

TEST_CASE("specialization complement on the fixture row") {
  const auto tm = TransactionMatrix::build(testutil::two_cat_corpus(),
                                           Counting::fractional);
  CHECK_THAT(*idmx::spec_complement(tm, 0).value, WithinAbs(84.0 / 169.0, 1e-12));
}

TEST_CASE("overlap measures go undefined with reasons, never NaN") {
  const auto c = degenerate_corpus();
  const auto tm = TransactionMatrix::build(c, Counting::fractional);

  // B has no journals
  CHECK(idmx::p_multi(c, 1).reason == Undefined::no_journals);
  CHECK(idmx::p_outside(c, 1).reason == Undefined::no_journals);
  CHECK(idmx::d_links(c, 1).reason == Undefined::no_journals);
  // A has a journal but an empty citing row
  CHECK(idmx::pro(tm, 0).reason == Undefined::zero_row);
  CHECK(idmx::pratt_complement(tm, 0).reason == Undefined::zero_row);
  CHECK(idmx::spec_complement(tm, 0).reason == Undefined::zero_row);
  CHECK_FALSE(idmx::pro(tm, 0).value.has_value());
}
