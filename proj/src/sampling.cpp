#include "tsirelson/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace tsirelson {

double SampleRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SampleRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t SampleRng::integer(std::uint64_t lo, std::uint64_t hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = hi - lo + 1;
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = span == 0 ? 0 : (~std::uint64_t{0} / span) * span;
  std::uint64_t r = engine_();
  while (limit != 0 && r >= limit) r = engine_();
  return lo + (span == 0 ? r : r % span);
}

bool SampleRng::coin(double p_true) { return uniform() < p_true; }

namespace {

double random_coefficient(SampleRng& rng, bool mixed_signs) {
  double v = 0;
  if (rng.coin(0.1)) {
    v = std::exp(rng.uniform(0.0, 4.0));  // heavy tail, up to e^4
    if (rng.coin()) v = -v;
  } else {
    v = rng.uniform(-1.0, 1.0);
  }
  if (std::fabs(v) < 1e-3) v = v < 0 ? -0.5 : 0.5;
  return mixed_signs ? v : std::fabs(v);
}

std::vector<Index> random_subset(SampleRng& rng, std::size_t k, Index max_position) {
  std::vector<Index> all(max_position);
  for (Index i = 0; i < max_position; ++i) all[i] = i + 1;
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(rng.integer(i, all.size() - 1));
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<Index> random_interval_union(SampleRng& rng, std::size_t k, Index max_position) {
  const std::size_t runs = static_cast<std::size_t>(rng.integer(1, std::min<std::size_t>(3, k)));
  std::vector<std::size_t> lengths(runs, 1);
  for (std::size_t i = runs; i < k; ++i) ++lengths[rng.integer(0, runs - 1)];
  std::uint64_t slack = max_position - k;
  std::vector<Index> out;
  Index cursor = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    const std::uint64_t gap = rng.integer(0, slack / (runs - r + 1));
    slack -= gap;
    cursor += static_cast<Index>(gap);
    for (std::size_t j = 0; j < lengths[r]; ++j) out.push_back(++cursor);
  }
  return out;
}

}  // namespace

std::vector<SparseVector<double>> random_vectors(const VectorSampleSpec& spec) {
  SampleRng rng(spec.seed);
  std::vector<SparseVector<double>> out;
  out.reserve(spec.samples);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    const auto k = static_cast<std::size_t>(rng.integer(spec.min_support, spec.max_support));
    Index max_position = spec.max_position ? spec.max_position : static_cast<Index>(2 * spec.max_support + 4);
    max_position = std::max<Index>(max_position, static_cast<Index>(k));
    const auto positions = i % 2 == 0 ? random_subset(rng, k, max_position) : random_interval_union(rng, k, max_position);
    std::vector<std::pair<Index, double>> entries;
    for (Index p : positions) entries.emplace_back(p, random_coefficient(rng, spec.mixed_signs));
    out.emplace_back(std::move(entries));
  }
  return out;
}

std::vector<FiniteSet> random_successive_blocks(SampleRng& rng, std::size_t count, Index max_position,
                                                std::size_t max_block_size) {
  std::vector<FiniteSet> blocks;
  Index cursor = static_cast<Index>(rng.integer(0, std::max<Index>(max_position / 2, 1)));
  for (std::size_t i = 0; i < count; ++i) {
    const auto size = static_cast<std::size_t>(rng.integer(1, max_block_size));
    std::vector<Index> elements;
    cursor += static_cast<Index>(rng.integer(1, 3));
    elements.push_back(cursor);
    for (std::size_t j = 1; j < size; ++j) {
      cursor += static_cast<Index>(rng.integer(1, 2));
      elements.push_back(cursor);
    }
    blocks.emplace_back(std::move(elements));
  }
  return blocks;
}

std::vector<BlockCase> random_block_cases(const BlockSampleSpec& spec) {
  SampleRng rng(spec.seed);
  std::vector<BlockCase> out;
  out.reserve(spec.samples);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    const auto blocks = static_cast<std::size_t>(rng.integer(1, spec.max_blocks));
    const auto total = static_cast<std::size_t>(rng.integer(blocks, std::max(blocks, spec.max_total_support)));
    std::vector<std::size_t> sizes(blocks, 1);
    for (std::size_t j = blocks; j < total; ++j) ++sizes[rng.integer(0, blocks - 1)];
    BlockCase c;
    Index cursor = static_cast<Index>(rng.integer(0, 2));
    for (std::size_t k = 0; k < blocks; ++k) {
      std::vector<std::pair<Index, double>> entries;
      for (std::size_t j = 0; j < sizes[k]; ++j) {
        cursor += static_cast<Index>(rng.integer(1, 2));
        entries.emplace_back(cursor, random_coefficient(rng, true));
      }
      c.blocks.emplace_back(std::move(entries));
      double a = rng.uniform(-2.0, 2.0);
      if (std::fabs(a) < 1e-3) a = 1.0;
      c.coefficients.push_back(a);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::vector<Rational>> random_rational_tuples(const RationalSampleSpec& spec) {
  SampleRng rng(spec.seed);
  std::vector<std::vector<Rational>> out;
  out.reserve(spec.samples);
  for (std::size_t i = 0; i < spec.samples; ++i) {
    const auto terms = static_cast<std::size_t>(rng.integer(1, spec.max_terms));
    std::vector<Rational> tuple;
    bool nonzero = false;
    for (std::size_t j = 0; j < terms; ++j) {
      const auto num = static_cast<long>(rng.integer(0, spec.max_numerator));
      const auto den = static_cast<long>(rng.integer(1, spec.max_denominator));
      tuple.emplace_back(num, den);
      nonzero = nonzero || num != 0;
    }
    if (!nonzero) tuple.front() = Rational(1, static_cast<long>(rng.integer(1, spec.max_denominator)));
    out.push_back(std::move(tuple));
  }
  return out;
}

}  // namespace tsirelson
