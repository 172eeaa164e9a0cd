// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idmx Contributors
#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "idmx/matrix.hpp"

using Catch::Matchers::WithinAbs;
using idmx::Counting;
using idmx::TransactionMatrix;

TEST_CASE("fractional counting matches the hand tallies") {
  const auto c = testutil::two_cat_corpus();
  const auto tm = TransactionMatrix::build(c, Counting::fractional);

  REQUIRE(tm.size() == 2);
  CHECK_THAT(tm.at(0, 0), WithinAbs(3.0, 1e-12));
  CHECK_THAT(tm.at(0, 1), WithinAbs(3.5, 1e-12));
  CHECK_THAT(tm.at(1, 0), WithinAbs(1.5, 1e-12));
  CHECK_THAT(tm.at(1, 1), WithinAbs(2.0, 1e-12));

  // ten references in total, weight preserved under fractional counting
  CHECK_THAT(tm.row_sum(0) + tm.row_sum(1), WithinAbs(10.0, 1e-12));
  CHECK_THAT(tm.col_sum(0), WithinAbs(4.5, 1e-12));
  CHECK_THAT(tm.col_sum(1), WithinAbs(5.5, 1e-12));

  // P3 sits in JM, so half of it belongs to each category
  CHECK_THAT(tm.pub_counts()[0], WithinAbs(2.5, 1e-12));
  CHECK_THAT(tm.pub_counts()[1], WithinAbs(1.5, 1e-12));
  CHECK_THAT(tm.pub_shares()[0], WithinAbs(0.625, 1e-12));
  CHECK_THAT(tm.pub_shares()[1], WithinAbs(0.375, 1e-12));
}

TEST_CASE("full counting matches the hand tallies") {
  const auto c = testutil::two_cat_corpus();
  const auto tm = TransactionMatrix::build(c, Counting::full);

  CHECK_THAT(tm.at(0, 0), WithinAbs(5.0, 1e-12));
  CHECK_THAT(tm.at(0, 1), WithinAbs(5.0, 1e-12));
  CHECK_THAT(tm.at(1, 0), WithinAbs(3.0, 1e-12));
  CHECK_THAT(tm.at(1, 1), WithinAbs(3.0, 1e-12));
  CHECK_THAT(tm.pub_counts()[0], WithinAbs(3.0, 1e-12));
  CHECK_THAT(tm.pub_counts()[1], WithinAbs(2.0, 1e-12));
}

TEST_CASE("row proportions normalize the citing row") {
  const auto tm = TransactionMatrix::build(testutil::two_cat_corpus(),
                                           Counting::fractional);
  const auto p = idmx::row_proportions(tm, 0);
  REQUIRE(p.has_value());
  CHECK_THAT(p->at(0), WithinAbs(3.0 / 6.5, 1e-15));
  CHECK_THAT(p->at(1), WithinAbs(3.5 / 6.5, 1e-15));

  const auto empty = TransactionMatrix::from_rows({"A"}, {{}}, {1.0});
  CHECK_FALSE(idmx::row_proportions(empty, 0).has_value());
}

TEST_CASE("from_rows validates and canonicalizes") {
  CHECK_THROWS_AS(TransactionMatrix::from_rows({"A"}, {{{0, -1.0}}}, {1.0}),
                  idmx::ValidationError);
  CHECK_THROWS_AS(TransactionMatrix::from_rows({"A"}, {{{5, 1.0}}}, {1.0}),
                  idmx::ValidationError);
  CHECK_THROWS_AS(TransactionMatrix::from_rows({"A"}, {{}, {}}, {1.0}),
                  idmx::ValidationError);
  // explicit zeros are dropped from the stored support
  const auto tm = TransactionMatrix::from_rows({"A", "B"}, {{{0, 1.0}, {1, 0.0}}, {}},
                                               {1.0, 0.0});
  CHECK(tm.row(0).size() == 1);
  CHECK(tm.at(0, 1) == 0.0);
}

TEST_CASE("triplet export is ordered and byte-stable") {
  const auto tm = TransactionMatrix::build(testutil::two_cat_corpus(),
                                           Counting::fractional);
  std::ostringstream out;
  tm.write_triplets_csv(out);
  CHECK(out.str() ==
        "row_category,col_category,value\n"
        "A,A,3\nA,B,3.5\nB,A,1.5\nB,B,2\n");
}

TEST_CASE("publication profiles follow the cited journals' categories") {
  const auto c = testutil::two_cat_corpus();

  // P1 cites JA (A), JM (A/B half each), P4 in JB (B): A = 1.5, B = 1.5
  const auto q1 = idmx::publication_profile(c, *c.publication_index("P1"),
                                            Counting::fractional);
  REQUIRE(q1.has_value());
  CHECK_THAT(q1->at(0), WithinAbs(0.5, 1e-15));
  CHECK_THAT(q1->at(1), WithinAbs(0.5, 1e-15));

  // P3 cites JA, JB, and P1 in JA: A = 2, B = 1
  const auto q3 = idmx::publication_profile(c, *c.publication_index("P3"),
                                            Counting::fractional);
  REQUIRE(q3.has_value());
  CHECK_THAT(q3->at(0), WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(q3->at(1), WithinAbs(1.0 / 3.0, 1e-15));

  // full counting weights every cited category fully: P1 -> A: 2, B: 2
  const auto f1 = idmx::publication_profile(c, *c.publication_index("P1"),
                                            Counting::full);
  REQUIRE(f1.has_value());
  CHECK_THAT(f1->at(0), WithinAbs(0.5, 1e-15));

  // a publication without references has no profile
  idmx::Corpus::Builder b;
  b.add_category("A", "X");
  b.add_journal("J", {"A"});
  b.add_publication("P", "J", {});
  const auto tiny = b.build();
  CHECK_FALSE(idmx::publication_profile(tiny, 0, Counting::fractional).has_value());
}

TEST_CASE("coherence link counts cover cited-work pairs once") {
  const auto c = testutil::two_cat_corpus();

  // category A's publications cite {P4, P3, P1} internally; the linked pairs
  // are {P1,P4} (P1 cites P4) and {P1,P3} (P3 cites P1)
  const auto frac = idmx::coherence_link_counts(c, 0, Counting::fractional);
  CHECK_THAT(frac.at(0, 0), WithinAbs(0.5, 1e-12));  // P3 half in A
  CHECK_THAT(frac.at(0, 1), WithinAbs(1.5, 1e-12));
  CHECK(frac.at(1, 1) == 0.0);
  CHECK(frac.at(0, 1) == frac.at(1, 0));

  const auto full = idmx::coherence_link_counts(c, 0, Counting::full);
  CHECK_THAT(full.at(0, 0), WithinAbs(1.0, 1e-12));
  CHECK_THAT(full.at(0, 1), WithinAbs(2.0, 1e-12));

  // category B's pubs cite only one work internally: no pairs
  const auto b = idmx::coherence_link_counts(c, 1, Counting::fractional);
  CHECK(b.pairs().empty());

  CHECK_THROWS_AS(idmx::coherence_link_counts(c, 7, Counting::fractional),
                  idmx::ValidationError);
}
