// Copyright 2026 The fibcompile Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "fibcompile/errors.hpp"
#include "fibcompile/search.hpp"
#include "oracles.hpp"

using namespace fibcompile;

namespace {

oracle::End to_end(Position p) {
  switch (p) {
    case Position::Top: return oracle::End::Top;
    case Position::Bottom: return oracle::End::Bottom;
    default: return oracle::End::Middle;
  }
}

std::vector<SearchTarget> library() {
  return {ix_target(), injection_target(), f_target(), phase_target(kPi),
          effective_braiding_target(2)};
}

SearchOptions strategy(SearchStrategy s, int workers = 1) {
  SearchOptions o;
  o.strategy = s;
  o.workers = workers;
  return o;
}

}  // namespace

TEST(Weave, LengthWindingAndWord) {
  const Weave w{2, {2, -4, 2}, Position::Top, Position::Bottom};
  EXPECT_EQ(w.length(), 8);
  EXPECT_EQ(w.winding(), 2);
  EXPECT_EQ(w.boundary_letters(), 2);
  // Top start adds sigma2, which merges into the first sigma2 letter.
  const BraidWord word = to_braid_word(w);
  ASSERT_EQ(word.letters.size(), 4u);
  EXPECT_EQ(word.letters[0].gen, 2);
  EXPECT_EQ(word.letters[0].pow, 3);
  EXPECT_EQ(word.letters[3].gen, 1);
  EXPECT_EQ(word.letters[3].pow, 1);
}

TEST(Weave, ValidateRejectsOddExponents) {
  EXPECT_THROW(validate(Weave{1, {3}, Position::Middle, Position::Middle}), InvalidArgument);
  EXPECT_THROW(validate(Weave{1, {6}, Position::Middle, Position::Middle}), InvalidArgument);
  EXPECT_THROW(validate(Weave{3, {2}, Position::Middle, Position::Middle}), InvalidArgument);
}

TEST(Weave, ParsersRoundTrip) {
  for (Position p : {Position::Top, Position::Middle, Position::Bottom}) {
    EXPECT_EQ(parse_position(to_string(p)), p);
  }
  EXPECT_EQ(parse_distance_mode("projective"), DistanceMode::Projective);
  EXPECT_THROW(parse_position("left"), InvalidArgument);
}

TEST(Targets, LibraryWindingClasses) {
  EXPECT_EQ(ix_target().winding_classes.front().value(), 0);
  EXPECT_EQ(f_target().winding_classes.front().value(), 5);
  EXPECT_EQ(effective_braiding_target(4).winding_classes.front().value(), 4);
  EXPECT_EQ(f_target().start, Position::Top);
  EXPECT_EQ(f_target().end, Position::Middle);
  EXPECT_EQ(injection_target().end, Position::Bottom);
}

TEST(Search, IdentityIsTheEmptyWeave) {
  const SearchResult r = brute_force_search(identity_target(), 4).front();
  EXPECT_TRUE(r.weave.exponents.empty());
  EXPECT_EQ(r.length, 0);
  EXPECT_NEAR(r.distance, 0, 1e-15);
}

TEST(Search, OddEffectiveBraidingIsInfeasible) {
  EXPECT_THROW(effective_braiding_target(3), InfeasibleTarget);
}

TEST(Search, ParityMismatchIsInfeasible) {
  // sigma1 has W = 1, but a middle -> middle weave always has even winding.
  const SearchTarget t =
      custom_target(sigma1(), Position::Middle, Position::Middle, DistanceMode::Exact);
  EXPECT_THROW(brute_force_search(t, 10), InfeasibleTarget);
  const SearchTarget ok =
      custom_target(sigma1(), Position::Top, Position::Middle, DistanceMode::Exact);
  EXPECT_NO_THROW(brute_force_search(ok, 6));
}

TEST(Search, RejectsBadArguments) {
  EXPECT_THROW(brute_force_search(ix_target(), -2), InvalidArgument);
  SearchOptions o;
  o.keep = 0;
  EXPECT_THROW(brute_force_search(ix_target(), 4, o), InvalidArgument);
}

// Best distances found by the naive enumerator (tests/oracles.cpp), frozen.
TEST(Search, FrozenBestDistances) {
  struct Row {
    SearchTarget target;
    long long l_max;
    double distance;
    long long length;
  };
  const Row rows[] = {
      {ix_target(), 16, 0.191007794186624, 14},
      {ix_target(), 20, 0.0682175197695806, 18},
      {injection_target(), 16, 0.185585165755868, 14},
      {injection_target(), 20, 0.185585165755868, 14},
      {f_target(), 16, 0.145898033750317, -1},
      {phase_target(kPi), 16, 0.236067977499789, 6},
      {phase_target(kPi), 20, 0.162207382670611, 20},
      {effective_braiding_target(2), 16, 0.218168446951108, 16},
      {effective_braiding_target(2), 20, 0.0833329314625449, 20},
  };
  for (const Row& row : rows) {
    const SearchResult r = brute_force_search(row.target, row.l_max).front();
    EXPECT_NEAR(r.distance, row.distance, 1e-12) << row.target.name << " " << row.l_max;
    if (row.length >= 0) EXPECT_EQ(r.length, row.length) << row.target.name;
  }
}

TEST(Search, MatchesNaiveEnumerator) {
  for (const SearchTarget& t : library()) {
    for (int l_max : {8, 12, 14}) {
      const oracle::NaiveBest naive = oracle::naive_search(
          t.matrix.matrix(), to_end(t.start), to_end(t.end), l_max, false);
      const SearchResult r = brute_force_search(t, l_max).front();
      EXPECT_NEAR(r.distance, naive.distance, 1e-12) << t.name << " " << l_max;
      EXPECT_EQ(r.length, naive.length) << t.name << " " << l_max;
    }
  }
}

TEST(Search, ProjectiveMatchesNaiveEnumerator) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 3; ++i) {
    const Quaternion q = Quaternion{nd(rng), nd(rng), nd(rng), nd(rng)}.normalized();
    const UnitaryMatrix m(block_matrix(q.to_matrix(), 1.0), 1e-12);
    const SearchTarget t =
        custom_target(m, Position::Middle, Position::Middle, DistanceMode::Projective);
    const oracle::NaiveBest naive = oracle::naive_search(
        m.matrix(), oracle::End::Middle, oracle::End::Middle, 10, true);
    const SearchResult r = brute_force_search(t, 10).front();
    EXPECT_NEAR(r.distance, naive.distance, 1e-9);
  }
}

TEST(Search, RecordedDistanceIsRecomputable) {
  for (const SearchTarget& t : library()) {
    const SearchResult r = brute_force_search(t, 14).front();
    const Matrix u = evaluate_braid(to_braid_word(r.weave), mixed_basis(3)).matrix();
    EXPECT_NEAR(oracle::norm_distance(u, t.matrix.matrix()), r.distance, 1e-12);
    EXPECT_EQ(WindingClass::of(r.winding), t.winding_classes.front());
    EXPECT_EQ(r.weave.start, t.start);
    EXPECT_EQ(r.weave.end, t.end);
  }
}

TEST(Search, MeetInMiddleAgreesWithDepthFirst) {
  for (const SearchTarget& t : library()) {
    for (long long l_max : {12LL, 16LL, 20LL}) {
      const SearchResult a =
          brute_force_search(t, l_max, strategy(SearchStrategy::DepthFirst)).front();
      const SearchResult b =
          brute_force_search(t, l_max, strategy(SearchStrategy::MeetInMiddle)).front();
      EXPECT_NEAR(a.distance, b.distance, 1e-12) << t.name << " " << l_max;
      EXPECT_EQ(a.weave, b.weave) << t.name << " " << l_max;
    }
  }
}

TEST(Search, ResultsDoNotDependOnWorkerCount) {
  for (SearchStrategy s : {SearchStrategy::DepthFirst, SearchStrategy::MeetInMiddle}) {
    const SearchResult a = brute_force_search(phase_target(kPi), 20, strategy(s, 1)).front();
    const SearchResult b = brute_force_search(phase_target(kPi), 20, strategy(s, 3)).front();
    EXPECT_EQ(a.weave, b.weave);
    EXPECT_EQ(a.distance, b.distance);
  }
  SearchOptions k1, k4;
  k1.keep = k4.keep = 6;
  k4.workers = 4;
  const auto r1 = brute_force_search(ix_target(), 14, k1);
  const auto r4 = brute_force_search(ix_target(), 14, k4);
  ASSERT_EQ(r1.size(), r4.size());
  for (std::size_t i = 0; i < r1.size(); ++i) EXPECT_EQ(r1[i].weave, r4[i].weave);
}

TEST(Search, KeepReturnsSortedDistinctResults) {
  SearchOptions o;
  o.keep = 10;
  const auto rs = brute_force_search(ix_target(), 12, o);
  ASSERT_EQ(rs.size(), 10u);
  for (std::size_t i = 1; i < rs.size(); ++i) {
    EXPECT_LE(rs[i - 1].distance, rs[i].distance + 2e-12);
    for (std::size_t j = 0; j < i; ++j) EXPECT_FALSE(rs[i].weave == rs[j].weave);
  }
}

TEST(Search, MinLengthIsRespected) {
  SearchOptions o;
  o.min_length = 10;
  o.keep = 5;
  for (const SearchResult& r : brute_force_search(ix_target(), 14, o)) {
    EXPECT_GE(r.length, 10);
  }
}

TEST(Search, CountMatchesNaiveCount) {
  for (int l = 0; l <= 16; l += 2) EXPECT_EQ(count_weaves(l), oracle::naive_count(l)) << l;
}

TEST(Scaling, RowsImproveMonotonically) {
  const auto rows = scaling_table(ix_target(), 24);
  ASSERT_GE(rows.size(), 5u);
  EXPECT_EQ(rows.front().length, 0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(rows[i].length, rows[i - 1].length);
    EXPECT_LT(rows[i].epsilon, rows[i - 1].epsilon);
  }
  EXPECT_NEAR(rows.back().epsilon, brute_force_search(ix_target(), 24).front().distance,
              1e-15);
}
