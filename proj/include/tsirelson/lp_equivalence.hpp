#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsirelson/family.hpp"
#include "tsirelson/norm.hpp"
#include "tsirelson/sampling.hpp"
#include "tsirelson/sparse_vector.hpp"
#include "tsirelson/theta.hpp"

namespace tsirelson {

inline constexpr double kFloatTolerance = 1e-9;
inline constexpr double kStep3Tolerance = 1e-8;
inline constexpr double kStep4Tolerance = 1e-8;
inline constexpr double kOracleRelativeTolerance = 1e-12;
inline constexpr double kUnconditionalTolerance = 1e-12;

/// Conjugate exponents with 1/p + 1/q = 1.
struct ExponentPair {
  double p;
  double q;
};

/// p with 1/p + log_n(1/theta) = 1. RootForm(n, q) returns q unchanged.
/// Throws InvalidArgument unless 1/n < theta < 1.
ExponentPair p_exponent(std::size_t n, const ThetaSpec& theta);

/// A violated inequality, stored so it can be recomputed in isolation.
/// Every claim is phrased as lhs <= rhs.
struct Counterexample {
  std::string kind;  // "step1", "step2", "step2-power", "step3", "step3-star", "step4", "oracle", "unconditional"
  std::vector<SparseVector<double>> vectors;
  std::vector<double> coefficients;
  double lhs = 0;
  double rhs = 0;
  std::string detail;
};

struct InequalityReport {
  std::string claim;
  std::string family;  // literal
  std::string theta;   // literal
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  /// Largest lhs/rhs-style ratio seen; see each verifier for its definition.
  double worst_ratio = 0;
  bool passed = true;
  std::optional<Counterexample> counterexample;
  std::size_t certificates_checked = 0;
  std::size_t certificate_failures = 0;
  std::vector<std::string> notes;
};

struct VerifyOptions {
  /// Validate every certificate the verifier produces: validate_functional,
  /// re-evaluation, analyze and check_analysis.
  bool audit_certificates = true;
  NormOptions norm;
};

/// Certificate audit used by the verifiers. Returns an error description, or
/// nothing when the certificate is sound for x.
std::optional<std::string> audit_certificate(const FamilyExpr& family, const ThetaSpec& theta,
                                             const SparseVector<double>& x, const NormResult<double>& result);

/// ||x|| <= ||x||_p for each x. worst_ratio = max ||x|| / ||x||_p.
InequalityReport verify_step1(std::size_t n, const ThetaSpec& theta, std::span<const SparseVector<double>> samples,
                              std::uint64_t seed = 0, const VerifyOptions& options = {});

/// n^{-1/p} m^{1/p} <= ||e_1 + ... + e_m|| for m <= m_max, with equality
/// ||sum_{i<=n^s} e_i|| = n^{s/p} at powers of n.
/// worst_ratio = max n^{-1/p} m^{1/p} / ||sum e_i||.
InequalityReport verify_step2(std::size_t n, const ThetaSpec& theta, std::size_t m_max,
                              const VerifyOptions& options = {});

/// ||sum a_k x_k|| <= (2/theta) ||sum a_k e_k|| for normalized blocks x_k, plus
/// the inductive bound |f(sum_{k in J} a_k x'_k)| <= (1/theta) ||sum_{k in J} a_k e_k||
/// (and the same for final parts) for every member f of the analysis of the
/// norming certificate and `subsets_per_case` random index sets J.
/// worst_ratio = max ||sum a_k x_k|| / ((2/theta) ||sum a_k e_k||).
InequalityReport verify_step3(std::size_t n, const ThetaSpec& theta, std::span<const BlockCase> cases,
                              std::size_t subsets_per_case = 50, std::uint64_t seed = 0,
                              const VerifyOptions& options = {});

/// ||sum r_j^{1/p} e_j|| >= (1/(2n)) (sum r_j)^{1/p}. Also traces the
/// replication construction (unit blocks u_j of length k_j) when it fits the
/// support cap. worst_ratio = max (1/(2n))(sum r_j)^{1/p} / ||sum r_j^{1/p} e_j||.
InequalityReport verify_step4(std::size_t n, const ThetaSpec& theta, std::span<const std::vector<Rational>> tuples,
                              std::uint64_t seed = 0, const VerifyOptions& options = {});

/// norm_exact agrees with norm_oracle within kOracleRelativeTolerance.
/// worst_ratio = max |exact - oracle| / max(1, |oracle|).
InequalityReport verify_oracle(const FamilyExpr& family, const ThetaSpec& theta,
                               std::span<const SparseVector<double>> samples, std::uint64_t seed = 0,
                               const VerifyOptions& options = {});

/// Sign flips and coordinate zeroing never increase the norm.
/// worst_ratio = max ||modified|| / ||original||.
InequalityReport verify_unconditional(const FamilyExpr& family, const ThetaSpec& theta,
                                      std::span<const SparseVector<double>> samples, std::uint64_t seed = 0,
                                      const VerifyOptions& options = {});

/// Recomputes lhs and rhs of a stored counterexample from its vectors and
/// coefficients alone.
Counterexample recheck(const InequalityReport& report);

struct EquivalenceConstants {
  double c_low = 0;
  double c_high = 0;
  std::size_t samples = 0;
  std::size_t certificates_checked = 0;
  std::size_t certificate_failures = 0;
};

/// Empirical min and max of ||x|| / ||x||_p over the samples for FiniteRank(n).
EquivalenceConstants equivalence_constants(std::size_t n, const ThetaSpec& theta,
                                           std::span<const SparseVector<double>> samples,
                                           const VerifyOptions& options = {});

struct GrowthRow {
  std::size_t m;
  double value;  // ||e_1 + ... + e_m||
};

/// Norms of the initial sums e_1 + ... + e_m for m = 1..m_max.
std::vector<GrowthRow> growth_probe(const FamilyExpr& family, const ThetaSpec& theta, std::size_t m_max,
                                    const NormOptions& options = {});

}  // namespace tsirelson
