#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "tsirelson/finite_set.hpp"
#include "tsirelson/scalar.hpp"
#include "tsirelson/sparse_vector.hpp"

namespace tsirelson {

/// Seeded generator with platform-independent derived draws (std distributions
/// are not reproducible across standard libraries).
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi].
  double uniform(double lo, double hi);
  /// Uniform integer on [lo, hi].
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi);
  bool coin(double p_true = 0.5);

 private:
  std::mt19937_64 engine_;
};

struct VectorSampleSpec {
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::size_t min_support = 1;
  std::size_t max_support = 12;
  /// Positions are drawn from [1, max_position]; 0 means 2 * max_support + 4.
  Index max_position = 0;
  /// Draw both signs.
  bool mixed_signs = true;
};

/// Supports alternate between random subsets and unions of random intervals;
/// coefficients are uniform on [-1,1] with an occasional heavy-tailed entry.
std::vector<SparseVector<double>> random_vectors(const VectorSampleSpec& spec);

/// Random nonempty successive blocks with positions in [1, max_position].
std::vector<FiniteSet> random_successive_blocks(SampleRng& rng, std::size_t count, Index max_position,
                                                std::size_t max_block_size);

struct BlockCase {
  std::vector<SparseVector<double>> blocks;  // successive, nonzero
  std::vector<double> coefficients;          // a_k, one per block
};

struct BlockSampleSpec {
  std::uint64_t seed = 1;
  std::size_t samples = 200;
  std::size_t max_blocks = 6;
  std::size_t max_total_support = 14;
};

std::vector<BlockCase> random_block_cases(const BlockSampleSpec& spec);

struct RationalSampleSpec {
  std::uint64_t seed = 1;
  std::size_t samples = 100;
  std::size_t max_terms = 6;
  std::uint32_t max_denominator = 8;
  std::uint32_t max_numerator = 16;
};

/// Non-negative rational tuples r_j = k_j / d_j (not all zero).
std::vector<std::vector<Rational>> random_rational_tuples(const RationalSampleSpec& spec);

}  // namespace tsirelson
