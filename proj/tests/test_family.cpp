#include <gtest/gtest.h>

#include "test_support.hpp"
#include "tsirelson/errors.hpp"
#include "tsirelson/family.hpp"
#include "tsirelson/sampling.hpp"

using namespace tsirelson;
using tsirelson::testing::brute_witness;
using tsirelson::testing::interleaves;

TEST(FamilyContains, Examples) {
  EXPECT_TRUE(contains(FamilyExpr::finite_rank(3), {2, 5, 9}));
  EXPECT_FALSE(contains(FamilyExpr::schreier(), {2, 5, 9}));
  EXPECT_TRUE(contains(FamilyExpr::schreier(), {3, 5, 9}));
  EXPECT_TRUE(contains(FamilyExpr::schreier(), {}));
  EXPECT_FALSE(contains(FamilyExpr::finite_rank(2), {1, 2, 3}));
  const auto ex = FamilyExpr::explicit_family({{1}, {2, 3}});
  EXPECT_TRUE(contains(ex, {2, 3}));
  EXPECT_FALSE(contains(ex, {2}));
  const auto u = FamilyExpr::union_of(FamilyExpr::finite_rank(1), ex);
  EXPECT_TRUE(contains(u, {7}));
  EXPECT_TRUE(contains(u, {2, 3}));
  EXPECT_FALSE(contains(u, {1, 3}));
}

TEST(FamilyAdmissibility, Examples) {
  const auto w = is_admissible(FamilyExpr::schreier(), SuccessiveBlocks({{2}, {3}}));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, FiniteSet({2, 3}));
  EXPECT_FALSE(is_admissible(FamilyExpr::schreier(), SuccessiveBlocks({{1}, {2}})));
  EXPECT_TRUE(is_admissible(FamilyExpr::finite_rank(2), SuccessiveBlocks({{7}, {11, 13}})));
  EXPECT_FALSE(is_admissible(FamilyExpr::finite_rank(2), SuccessiveBlocks({{7}, {11}, {13}})));
}

TEST(FamilyAdmissibility, ExactSizeForExplicit) {
  // {1,2} is a member but {2} is not: a single block starting at 2 has no witness.
  const auto ex = FamilyExpr::explicit_family({{1, 2}});
  EXPECT_FALSE(is_admissible(ex, SuccessiveBlocks({{2, 3}})));
  const auto w = is_admissible(ex, SuccessiveBlocks({{1}, {2, 3}}));
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, FiniteSet({1, 2}));
  EXPECT_FALSE(is_admissible(ex, SuccessiveBlocks({{3}, {4}})));
}

TEST(FamilyAdmissibility, PositionWindow) {
  AdmissibilityOptions options;
  options.position_window = 10;
  EXPECT_THROW(is_admissible(FamilyExpr::finite_rank(2), SuccessiveBlocks({{3}, {12}}), options), LimitExceeded);
}

TEST(FamilyAdmissibility, ClosedFormsAgainstBruteForce) {
  SampleRng rng(7);
  const std::vector<FamilyExpr> families = {FamilyExpr::finite_rank(1), FamilyExpr::finite_rank(3),
                                            FamilyExpr::schreier()};
  for (int trial = 0; trial < 1500; ++trial) {
    const std::size_t d = rng.integer(1, 5);
    const auto blocks = random_successive_blocks(rng, d, 24, 3);
    const SuccessiveBlocks sb(blocks);
    const bool fr1 = is_admissible(families[0], sb).has_value();
    const bool fr3 = is_admissible(families[1], sb).has_value();
    const auto sch = is_admissible(families[2], sb);
    EXPECT_EQ(fr1, d <= 1);
    EXPECT_EQ(fr3, d <= 3);
    EXPECT_EQ(sch.has_value(), d <= blocks.front().min());
    const bool brute = brute_witness(blocks, [](const FiniteSet& a) { return a.size() <= a.min(); }).has_value();
    EXPECT_EQ(sch.has_value(), brute);
    if (sch) {
      EXPECT_TRUE(contains(families[2], *sch));
      EXPECT_TRUE(interleaves(*sch, blocks));
    }
  }
}

TEST(FamilyAdmissibility, ExplicitAndUnionAgainstBruteForce) {
  SampleRng rng(11);
  const auto ex = FamilyExpr::explicit_family({{1}, {2, 5}, {3, 4, 8}, {4, 6}, {2, 3, 6, 9}});
  const auto u = FamilyExpr::union_of(FamilyExpr::finite_rank(1), ex);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = rng.integer(1, 4);
    const auto blocks = random_successive_blocks(rng, d, 12, 2);
    for (const auto* fam : {&ex, &u}) {
      const auto w = is_admissible(*fam, SuccessiveBlocks(blocks));
      const auto b = brute_witness(blocks, [&](const FiniteSet& a) { return contains(*fam, a); });
      EXPECT_EQ(w.has_value(), b.has_value()) << format_family(*fam);
      if (w) {
        EXPECT_TRUE(contains(*fam, *w));
        EXPECT_TRUE(interleaves(*w, blocks));
      }
    }
  }
}

TEST(FamilyAdmissibility, SpreadingForBuiltins) {
  SampleRng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = rng.integer(1, 4);
    const auto blocks = random_successive_blocks(rng, d, 16, 3);
    // Shift every block right by a non-decreasing amount; successiveness is kept.
    std::vector<FiniteSet> shifted;
    Index shift = 0;
    for (const auto& b : blocks) {
      shift += static_cast<Index>(rng.integer(0, 3));
      std::vector<Index> moved;
      for (Index k : b) moved.push_back(k + shift);
      shifted.emplace_back(moved);
    }
    for (const auto& fam : {FamilyExpr::finite_rank(2), FamilyExpr::schreier()}) {
      if (is_admissible(fam, SuccessiveBlocks(blocks))) {
        EXPECT_TRUE(is_admissible(fam, SuccessiveBlocks(shifted)));
      }
    }
  }
}

TEST(FamilyAdmissibility, HereditaryBuiltins) {
  SampleRng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Index lo = static_cast<Index>(rng.integer(1, 8));
    std::vector<Index> elems;
    for (Index k = lo; k < lo + 12 && elems.size() < lo; ++k) {
      if (rng.coin()) elems.push_back(k);
    }
    const FiniteSet a(elems);
    ASSERT_TRUE(contains(FamilyExpr::schreier(), a));
    std::vector<Index> sub;
    for (Index k : a) {
      if (rng.coin()) sub.push_back(k);
    }
    EXPECT_TRUE(contains(FamilyExpr::schreier(), FiniteSet(sub)));
    if (a.size() <= 3) EXPECT_TRUE(contains(FamilyExpr::finite_rank(3), FiniteSet(sub)));
  }
}

TEST(FamilyRank, Values) {
  for (std::uint64_t n = 1; n <= 6; ++n) EXPECT_EQ(rank(FamilyExpr::finite_rank(n)), OrdinalRank::finite(n));
  EXPECT_EQ(rank(FamilyExpr::schreier()), OrdinalRank::omega());
  EXPECT_EQ(rank(FamilyExpr::explicit_family({{}})), OrdinalRank::finite(0));
  EXPECT_EQ(rank(FamilyExpr::explicit_family({{}, {1}, {1, 2}, {5}})), OrdinalRank::finite(2));
  EXPECT_EQ(rank(FamilyExpr::union_of(FamilyExpr::finite_rank(2), FamilyExpr::schreier())), OrdinalRank::omega());
  EXPECT_EQ(rank(FamilyExpr::union_of(FamilyExpr::finite_rank(4), FamilyExpr::finite_rank(2))),
            OrdinalRank::finite(4));
}

TEST(FamilyTruncate, Examples) {
  EXPECT_EQ(format_family(truncate(FamilyExpr::finite_rank(1), 2)), "explicit:[[],[1],[2]]");
  EXPECT_EQ(format_family(truncate(FamilyExpr::schreier(), 3)), "explicit:[[],[1],[2],[3],[2,3]]");
  const auto u = FamilyExpr::union_of(FamilyExpr::finite_rank(1), FamilyExpr::explicit_family({{1, 2}}));
  EXPECT_EQ(format_family(truncate(u, 2)), "explicit:[[],[1],[2],[1,2]]");
}

TEST(FamilyTruncate, RankMonotoneAndBounded) {
  OrdinalRank previous;
  for (Index n = 1; n <= 12; ++n) {
    const OrdinalRank r = rank(truncate(FamilyExpr::schreier(), n));
    EXPECT_TRUE(r.is_finite());
    EXPECT_GE(r, previous);
    EXPECT_LE(r, OrdinalRank::omega());
    previous = r;
    EXPECT_LE(rank(truncate(FamilyExpr::finite_rank(3), n)), OrdinalRank::finite(3));
  }
}

TEST(FamilyTruncate, MemberCap) {
  TruncateOptions options;
  options.max_members = 10;
  EXPECT_THROW(truncate(FamilyExpr::schreier(), 12, options), LimitExceeded);
}

TEST(FamilyLiteral, RoundTrip) {
  for (const char* literal : {"finite-rank:3", "schreier", "union(finite-rank:2,schreier)", "explicit:[[1],[2,3]]",
                              "union(explicit:[[]],union(schreier,finite-rank:1))"}) {
    EXPECT_EQ(format_family(parse_family(literal)), literal);
  }
  EXPECT_EQ(format_family(parse_family(" union( finite-rank:2 , schreier ) ")), "union(finite-rank:2,schreier)");
}

TEST(FamilyLiteral, Errors) {
  for (const char* literal : {"", "finite-rank", "finite-rank:x", "schreir", "explicit:[[2,1]]", "explicit:[[1],[1]]",
                              "union(schreier)", "explicit:[[0]]", "schreier trailing", "finite-rank:0"}) {
    EXPECT_THROW(parse_family(literal), ParseError) << literal;
  }
}

TEST(FiniteSetTest, Validation) {
  EXPECT_THROW(FiniteSet({3, 2}), InvalidArgument);
  EXPECT_THROW(FiniteSet({0, 2}), InvalidArgument);
  EXPECT_THROW(SuccessiveBlocks({{1, 3}, {2}}), InvalidArgument);
  EXPECT_THROW(SuccessiveBlocks({{1}, {}}), InvalidArgument);
  EXPECT_TRUE(FiniteSet({1, 2}).precedes(FiniteSet({3})));
  EXPECT_LT(FiniteSet({9}), FiniteSet({1, 2}));
  EXPECT_EQ(to_string(FiniteSet({2, 3})), "[2,3]");
}
