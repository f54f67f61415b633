#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <functional>

#include "test_support.hpp"
#include "tsirelson/dual_ball.hpp"
#include "tsirelson/errors.hpp"
#include "tsirelson/family.hpp"
#include "tsirelson/functional.hpp"
#include "tsirelson/norm.hpp"
#include "tsirelson/sampling.hpp"

using namespace tsirelson;
using tsirelson::testing::ones;

namespace {

const ThetaSpec kHalf = ThetaSpec::rational(1, 2);

SparseVector<Rational> rational_ones(Index first, Index last) { return SparseVector<Rational>::ones(first, last); }

std::vector<FamilyExpr> families() {
  return {FamilyExpr::finite_rank(2), FamilyExpr::finite_rank(3), FamilyExpr::schreier()};
}

std::vector<ThetaSpec> thetas() {
  return {ThetaSpec::rational(1, 4), ThetaSpec::rational(1, 2), ThetaSpec::rational(3, 4), ThetaSpec::root(2, 2),
          ThetaSpec::root(3, 2)};
}

// One sweep of the defining equation over interval tuples, using norm_exact on strictly smaller pieces.
double one_sweep(const FamilyExpr& family, const ThetaSpec& theta, const SparseVector<double>& x) {
  const auto& e = x.entries();
  const std::size_t n = e.size();
  double best = 0;
  std::vector<FiniteSet> blocks;
  std::function<void(std::size_t, double)> go = [&](std::size_t from, double sum) {
    if (!blocks.empty() && !(blocks.size() == 1 && blocks[0].size() == n)) {
      if (is_admissible(family, SuccessiveBlocks(blocks))) best = std::max(best, sum);
    }
    for (std::size_t a = from; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        std::vector<Index> positions;
        for (std::size_t i = a; i <= b; ++i) positions.push_back(e[i].first);
        blocks.emplace_back(positions);
        if (!(blocks.size() == 1 && blocks[0].size() == n)) {
          const double piece = norm_exact(family, theta, x.restrict_to_range(e[a].first, e[b].first)).value;
          go(b + 1, sum + piece);
        } else {
          go(b + 1, sum);
        }
        blocks.pop_back();
      }
    }
  };
  go(0, 0);
  return std::max(x.sup_norm(), theta.value() * best);
}

}  // namespace

TEST(NormExact, ExactRationalExamples) {
  const auto s = FamilyExpr::schreier();
  EXPECT_EQ(norm_exact(s, kHalf, rational_ones(2, 5)).value, Rational(3, 2));
  EXPECT_EQ(norm_exact(s, kHalf, rational_ones(1, 2)).value, Rational(1));
  EXPECT_EQ(norm_exact(s, kHalf, rational_ones(2, 3)).value, Rational(1));
  EXPECT_EQ(norm_exact(FamilyExpr::finite_rank(2), kHalf, rational_ones(1, 3)).value, Rational(1));
  EXPECT_EQ(norm_exact(s, kHalf, SparseVector<Rational>()).value, Rational(0));
  EXPECT_EQ(norm_exact(s, kHalf, SparseVector<Rational>::unit(7)).value, Rational(1));
}

TEST(NormExact, OptimalCertificateForSchreierExample) {
  const auto r = norm_exact(FamilyExpr::schreier(), kHalf, rational_ones(2, 5));
  const Functional expected =
      Functional::node({Functional::leaf(1, 3), Functional::leaf(1, 4), Functional::leaf(1, 5)});
  EXPECT_EQ(r.certificate, expected);
}

TEST(NormExact, ZeroVectorCertificate) {
  const auto r = norm_exact(FamilyExpr::schreier(), kHalf, SparseVector<double>());
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.certificate, Functional::leaf(1, 1));
}

TEST(NormExact, RootFormPowerPoint) {
  const auto r = norm_exact(FamilyExpr::finite_rank(2), ThetaSpec::root(2, 2), ones(1, 4));
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  EXPECT_THROW(norm_exact(FamilyExpr::finite_rank(2), ThetaSpec::root(2, 2), rational_ones(1, 4)), InvalidArgument);
}

TEST(NormExact, UnitVectorsAnyFamily) {
  for (const auto& f : families()) {
    for (const auto& t : thetas()) EXPECT_EQ(norm_exact(f, t, SparseVector<double>::unit(9)).value, 1.0);
  }
}

TEST(NormOracle, Examples) {
  const auto s = FamilyExpr::schreier();
  EXPECT_EQ(norm_oracle(s, kHalf, rational_ones(2, 3)), Rational(1));
  EXPECT_EQ(norm_oracle(FamilyExpr::finite_rank(2), kHalf, rational_ones(1, 3)), Rational(1));
  EXPECT_EQ(norm_oracle(s, kHalf, rational_ones(2, 5)), Rational(3, 2));
  EXPECT_EQ(norm_oracle(s, kHalf, SparseVector<Rational>()), Rational(0));
  EXPECT_THROW(norm_oracle(s, kHalf, ones(1, 10)), LimitExceeded);
}

TEST(NormOracle, MatchesExactOnRandomVectors) {
  VectorSampleSpec spec;
  spec.seed = 99;
  spec.samples = 60;
  spec.max_support = 7;
  const auto xs = random_vectors(spec);
  for (const auto& f : families()) {
    for (const auto& t : thetas()) {
      for (const auto& x : xs) {
        const double exact = norm_exact(f, t, x).value;
        const double oracle = norm_oracle(f, t, x);
        EXPECT_LE(std::fabs(exact - oracle), 1e-12 * oracle) << format_family(f) << " " << format_vector(x);
      }
    }
  }
}

TEST(NormOracle, MatchesExactInRationalArithmetic) {
  VectorSampleSpec spec;
  spec.seed = 5;
  spec.samples = 40;
  spec.max_support = 6;
  for (const auto& xd : random_vectors(spec)) {
    std::vector<SparseVector<Rational>::Entry> entries;
    for (const auto& [k, v] : xd.entries()) entries.emplace_back(k, Rational(std::lround(v * 8), 8));
    const SparseVector<Rational> x(entries);
    for (const auto& f : families()) {
      EXPECT_EQ(norm_exact(f, ThetaSpec::rational(2, 3), x).value, norm_oracle(f, ThetaSpec::rational(2, 3), x));
    }
  }
}

TEST(NormOracle, NonHereditaryExplicitFamily) {
  const auto ex = FamilyExpr::explicit_family({{1, 3}, {2, 3, 5}, {4}});
  const auto u = FamilyExpr::union_of(ex, FamilyExpr::finite_rank(1));
  VectorSampleSpec spec;
  spec.seed = 17;
  spec.samples = 80;
  spec.max_support = 6;
  spec.max_position = 8;
  for (const auto& x : random_vectors(spec)) {
    for (const auto* f : {&ex, &u}) {
      const double exact = norm_exact(*f, kHalf, x).value;
      EXPECT_NEAR(exact, norm_oracle(*f, kHalf, x), 1e-12 * std::max(1.0, exact)) << format_vector(x);
    }
  }
}

TEST(NormExact, DualBallSupremumAgrees) {
  VectorSampleSpec spec;
  spec.seed = 23;
  spec.samples = 25;
  spec.max_support = 4;
  spec.max_position = 4;
  for (const auto& f : {FamilyExpr::finite_rank(2), FamilyExpr::schreier()}) {
    const auto ball = dual_ball_enumerate(f, 4, 4);
    for (const auto& x : random_vectors(spec)) {
      double sup = 0;
      for (const auto& phi : ball) sup = std::max(sup, eval_functional(phi, ThetaSpec::rational(3, 4), x));
      EXPECT_NEAR(sup, norm_exact(f, ThetaSpec::rational(3, 4), x).value, 1e-12);
    }
  }
}

TEST(NormExact, CertificateSoundness) {
  VectorSampleSpec spec;
  spec.seed = 31;
  spec.samples = 80;
  spec.max_support = 14;
  for (const auto& f : families()) {
    for (const auto& t : thetas()) {
      for (const auto& x : random_vectors(spec)) {
        const auto r = norm_exact(f, t, x);
        EXPECT_NO_THROW(validate_functional(f, r.certificate));
        EXPECT_NEAR(eval_functional(r.certificate, t, x), r.value, 1e-12 * std::max(1.0, r.value));
      }
    }
  }
}

TEST(NormExact, FixedPointSweep) {
  VectorSampleSpec spec;
  spec.seed = 41;
  spec.samples = 30;
  spec.max_support = 6;
  for (const auto& f : families()) {
    for (const auto& x : random_vectors(spec)) {
      const double v = norm_exact(f, ThetaSpec::rational(3, 4), x).value;
      EXPECT_NEAR(one_sweep(f, ThetaSpec::rational(3, 4), x), v, 1e-12 * std::max(1.0, v));
    }
  }
}

TEST(NormExact, NormAxioms) {
  VectorSampleSpec spec;
  spec.seed = 43;
  spec.samples = 120;
  spec.max_support = 10;
  const auto xs = random_vectors(spec);
  SampleRng rng(43);
  for (const auto& f : families()) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const auto& x = xs[i];
      const auto& y = xs[i + 1];
      const double nx = norm_exact(f, kHalf, x).value;
      const double c = rng.uniform(-3, 3);
      EXPECT_NEAR(norm_exact(f, kHalf, x.scaled(c)).value, std::fabs(c) * nx, 1e-12 * std::max(1.0, nx));
      EXPECT_LE(norm_exact(f, kHalf, x + y).value, nx + norm_exact(f, kHalf, y).value + 1e-12);
      EXPECT_GE(nx, x.sup_norm());
    }
  }
}

TEST(NormExact, Unconditional) {
  VectorSampleSpec spec;
  spec.seed = 47;
  spec.samples = 100;
  spec.max_support = 10;
  SampleRng rng(47);
  for (const auto& f : families()) {
    for (const auto& x : random_vectors(spec)) {
      std::vector<SparseVector<double>::Entry> flipped;
      std::vector<SparseVector<double>::Entry> masked;
      for (const auto& [k, v] : x.entries()) {
        flipped.emplace_back(k, rng.coin() ? -v : v);
        if (rng.coin(0.7)) masked.emplace_back(k, v);
      }
      const double nx = norm_exact(f, kHalf, x).value;
      EXPECT_NEAR(norm_exact(f, kHalf, SparseVector<double>(flipped)).value, nx, 1e-12 * nx);
      EXPECT_LE(norm_exact(f, kHalf, SparseVector<double>(masked)).value, nx * (1 + 1e-12));
    }
  }
}

TEST(NormExact, MonotoneInTheta) {
  VectorSampleSpec spec;
  spec.seed = 53;
  spec.samples = 60;
  spec.max_support = 10;
  const std::vector<ThetaSpec> grid = {ThetaSpec::rational(1, 5), ThetaSpec::rational(2, 5), ThetaSpec::rational(3, 5),
                                       ThetaSpec::rational(4, 5), ThetaSpec::rational(19, 20)};
  for (const auto& f : families()) {
    for (const auto& x : random_vectors(spec)) {
      double previous = 0;
      for (const auto& t : grid) {
        const double v = norm_exact(f, t, x).value;
        EXPECT_GE(v, previous - 1e-12);
        previous = v;
      }
    }
  }
}

TEST(NormExact, SupportCaps) {
  EXPECT_THROW(norm_exact(FamilyExpr::schreier(), kHalf, ones(1, 41)), LimitExceeded);
  EXPECT_NO_THROW(norm_exact(FamilyExpr::finite_rank(2), kHalf, ones(1, 64)));
  EXPECT_THROW(norm_exact(FamilyExpr::finite_rank(2), kHalf, ones(1, 65)), LimitExceeded);
  NormOptions small;
  small.max_support = 3;
  EXPECT_THROW(norm_exact(FamilyExpr::finite_rank(2), kHalf, ones(1, 4), small), LimitExceeded);
  OracleOptions oracle;
  oracle.max_support = 12;
  EXPECT_NO_THROW(norm_oracle(FamilyExpr::finite_rank(2), kHalf, ones(1, 10), oracle));
}

TEST(NormExact, CapsFromEnvironment) {
  ::setenv("TSIRELSON_MAX_SUPPORT", "5", 1);
  EXPECT_THROW(norm_exact(FamilyExpr::schreier(), kHalf, ones(1, 6)), LimitExceeded);
  ::unsetenv("TSIRELSON_MAX_SUPPORT");
  EXPECT_NO_THROW(norm_exact(FamilyExpr::schreier(), kHalf, ones(1, 6)));
}

TEST(NormExact, StatsArePopulated) {
  const auto r = norm_exact(FamilyExpr::schreier(), kHalf, ones(2, 9));
  EXPECT_EQ(r.stats.support_size, 8U);
  EXPECT_GT(r.stats.automaton_states, 0U);
  EXPECT_EQ(r.stats.intervals, 36U);
  EXPECT_GT(r.stats.transitions, 0U);
}
