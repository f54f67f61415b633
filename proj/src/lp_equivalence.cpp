#include "tsirelson/lp_equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "tsirelson/analysis.hpp"
#include "tsirelson/errors.hpp"

namespace tsirelson {

namespace {

struct Context {
  FamilyExpr family;
  ThetaSpec theta;
  const VerifyOptions& options;
  InequalityReport& report;

  double norm(const SparseVector<double>& x) { return solve(x).value; }

  NormResult<double> solve(const SparseVector<double>& x) {
    auto r = norm_exact(family, theta, x, options.norm);
    if (options.audit_certificates) {
      ++report.certificates_checked;
      if (auto problem = audit_certificate(family, theta, x, r)) {
        ++report.certificate_failures;
        report.passed = false;
        if (report.notes.size() < 10) report.notes.push_back("certificate for " + format_vector(x) + ": " + *problem);
      }
    }
    return r;
  }

  // Records lhs <= rhs; the first violation becomes the counterexample.
  void expect_le(Counterexample&& c) {
    if (c.lhs <= c.rhs) return;
    report.passed = false;
    if (!report.counterexample) report.counterexample = std::move(c);
  }
};

InequalityReport make_report(std::string claim, const FamilyExpr& family, const ThetaSpec& theta, std::uint64_t seed,
                             std::size_t samples) {
  InequalityReport r;
  r.claim = std::move(claim);
  r.family = format_family(family);
  r.theta = format_theta(theta);
  r.seed = seed;
  r.samples = samples;
  return r;
}

SparseVector<double> basis_combination(std::span<const double> coefficients) {
  std::vector<std::pair<Index, double>> entries;
  for (std::size_t k = 0; k < coefficients.size(); ++k) entries.emplace_back(static_cast<Index>(k + 1), coefficients[k]);
  return SparseVector<double>(std::move(entries));
}

std::size_t finite_rank_of(const FamilyExpr& family) {
  if (const auto* f = std::get_if<family::FiniteRank>(&family.variant())) return f->n;
  throw InvalidArgument("this claim needs a finite-rank family");
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

ExponentPair p_exponent(std::size_t n, const ThetaSpec& theta) {
  if (n < 2) throw InvalidArgument("p_exponent needs n >= 2");
  if (const auto* root = std::get_if<ThetaSpec::RootForm>(&theta.form()); root && root->n == n) {
    return {root->q / (root->q - 1), root->q};
  }
  if (const auto* r = std::get_if<ThetaSpec::RationalForm>(&theta.form())) {
    // theta <= 1/n  <=>  n * num <= den
    if (static_cast<long double>(n) * r->numerator <= static_cast<long double>(r->denominator)) {
      throw InvalidArgument("theta = " + format_theta(theta) + " is not above 1/" + std::to_string(n));
    }
  }
  const double t = theta.value();
  const double log_ratio = std::log(1.0 / t) / std::log(static_cast<double>(n));  // log_n(1/theta)
  if (!(log_ratio < 1.0)) {
    throw InvalidArgument("theta = " + format_theta(theta) + " is not above 1/" + std::to_string(n));
  }
  return {1.0 / (1.0 - log_ratio), 1.0 / log_ratio};
}

std::optional<std::string> audit_certificate(const FamilyExpr& family, const ThetaSpec& theta,
                                             const SparseVector<double>& x, const NormResult<double>& result) {
  try {
    validate_functional(family, result.certificate);
  } catch (const CertificateError& e) {
    return std::string("invalid certificate: ") + e.what();
  }
  const double value = eval_functional(result.certificate, theta, x);
  if (std::fabs(value - result.value) > 1e-9 * std::max(1.0, std::fabs(result.value))) {
    return "certificate evaluates to " + format_scalar(value) + ", norm is " + format_scalar(result.value);
  }
  const Analysis analysis = analyze(family, result.certificate);
  const AnalysisCheck check = check_analysis(family, result.certificate, analysis);
  if (!check.ok) return "analysis: " + check.violations.front();
  return std::nullopt;
}

InequalityReport verify_step1(std::size_t n, const ThetaSpec& theta, std::span<const SparseVector<double>> samples,
                              std::uint64_t seed, const VerifyOptions& options) {
  const FamilyExpr family = FamilyExpr::finite_rank(n);
  const double p = p_exponent(n, theta).p;
  InequalityReport report = make_report("step1", family, theta, seed, samples.size());
  Context ctx{family, theta, options, report};
  for (const auto& x : samples) {
    const double value = ctx.norm(x);
    const double lp = x.lp_norm(p);
    if (lp > 0) report.worst_ratio = std::max(report.worst_ratio, value / lp);
    ctx.expect_le({"step1", {x}, {}, value, lp + kFloatTolerance, ""});
  }
  return report;
}

InequalityReport verify_step2(std::size_t n, const ThetaSpec& theta, std::size_t m_max, const VerifyOptions& options) {
  const FamilyExpr family = FamilyExpr::finite_rank(n);
  const double p = p_exponent(n, theta).p;
  InequalityReport report = make_report("step2", family, theta, 0, m_max);
  Context ctx{family, theta, options, report};
  std::size_t power = 1;
  std::size_t powers_checked = 0;
  for (std::size_t m = 1; m <= m_max; ++m) {
    const auto x = SparseVector<double>::ones(1, static_cast<Index>(m));
    const double value = ctx.norm(x);
    const double bound = std::pow(static_cast<double>(n), -1.0 / p) * std::pow(static_cast<double>(m), 1.0 / p);
    report.worst_ratio = std::max(report.worst_ratio, bound / value);
    ctx.expect_le({"step2", {x}, {}, bound - kFloatTolerance, value, "m=" + std::to_string(m)});
    if (m == power) {
      // ||e_1 + ... + e_{n^s}|| = n^{s/p} = m^{1/p}
      const double expected = std::pow(static_cast<double>(m), 1.0 / p);
      ctx.expect_le({"step2-power", {x}, {}, std::fabs(value - expected), kFloatTolerance, "m=" + std::to_string(m)});
      ++powers_checked;
      power *= n;
    }
  }
  report.notes.push_back("power points checked: " + std::to_string(powers_checked));
  return report;
}

InequalityReport verify_step3(std::size_t n, const ThetaSpec& theta, std::span<const BlockCase> cases,
                              std::size_t subsets_per_case, std::uint64_t seed, const VerifyOptions& options) {
  const FamilyExpr family = FamilyExpr::finite_rank(n);
  const double t = theta.value();
  InequalityReport report = make_report("step3", family, theta, seed, cases.size());
  Context ctx{family, theta, options, report};
  SampleRng rng(seed ^ 0x5eed5eedULL);
  std::size_t star_checks = 0;
  for (const auto& c : cases) {
    if (c.blocks.size() != c.coefficients.size()) throw InvalidArgument("step3: one coefficient per block");
    const std::size_t ell = c.blocks.size();
    std::vector<SparseVector<double>> normalized;
    SparseVector<double> combined;
    SparseVector<double> positive;
    for (std::size_t k = 0; k < ell; ++k) {
      normalized.push_back(c.blocks[k].scaled(1.0 / ctx.norm(c.blocks[k])));
      combined = combined + normalized[k].scaled(c.coefficients[k]);
      positive = positive + normalized[k].abs().scaled(std::fabs(c.coefficients[k]));
    }
    const double lhs = ctx.norm(combined);
    const double rhs = (2.0 / t) * ctx.norm(basis_combination(c.coefficients));
    report.worst_ratio = std::max(report.worst_ratio, lhs / rhs);
    ctx.expect_le({"step3", normalized, c.coefficients, lhs, rhs + kStep3Tolerance, ""});

    // Inductive bound on the analysis of a norming functional of the positive combination.
    const auto phi_result = ctx.solve(positive);
    const Functional& phi = phi_result.certificate;
    const FiniteSet phi_support = phi.support();
    std::vector<SparseVector<double>> restricted;
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < ell; ++k) {
      auto y = normalized[k].abs().restrict_to(phi_support);
      if (y.is_zero()) continue;
      restricted.push_back(std::move(y));
      kept.push_back(k);
    }
    const Analysis analysis = analyze(family, phi);
    const auto splits = split_initial_final(analysis, restricted);
    for (std::size_t trial = 0; trial < subsets_per_case; ++trial) {
      std::vector<double> coeffs(ell, 0.0);
      SparseVector<double> initial;
      SparseVector<double> final_part;
      bool any = false;
      for (std::size_t i = 0; i < kept.size(); ++i) {
        if (!rng.coin()) continue;
        any = true;
        const std::size_t k = kept[i];
        coeffs[k] = c.coefficients[k];
        initial = initial + splits[i].initial.scaled(std::fabs(c.coefficients[k]));
        final_part = final_part + splits[i].final.scaled(std::fabs(c.coefficients[k]));
      }
      if (!any) continue;
      const SparseVector<double> w = basis_combination(coeffs);
      const double bound = ctx.norm(w) / t + kStep3Tolerance;
      for (std::size_t s = 0; s < analysis.levels.size(); ++s) {
        for (const auto& f : analysis.levels[s]) {
          ++star_checks;
          const double vi = std::fabs(eval_functional(f, theta, initial));
          const double vf = std::fabs(eval_functional(f, theta, final_part));
          const std::string where = functional_to_json(f).dump();
          ctx.expect_le({"step3-star", {initial, w}, {}, vi, bound, where});
          ctx.expect_le({"step3-star", {final_part, w}, {}, vf, bound, where});
        }
      }
    }
  }
  report.notes.push_back("inductive-bound checks: " + std::to_string(star_checks));
  return report;
}

InequalityReport verify_step4(std::size_t n, const ThetaSpec& theta, std::span<const std::vector<Rational>> tuples,
                              std::uint64_t seed, const VerifyOptions& options) {
  const FamilyExpr family = FamilyExpr::finite_rank(n);
  const double p = p_exponent(n, theta).p;
  const double t = theta.value();
  InequalityReport report = make_report("step4", family, theta, seed, tuples.size());
  Context ctx{family, theta, options, report};
  const std::size_t cap = options.norm.max_support ? options.norm.max_support : default_support_cap(family);
  std::size_t traced = 0;
  for (const auto& r : tuples) {
    Rational total(0);
    std::vector<std::pair<Index, double>> entries;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] < 0) throw InvalidArgument("step4: rationals must be non-negative");
      total += r[j];
      entries.emplace_back(static_cast<Index>(j + 1), std::pow(rational_to_double(r[j]), 1.0 / p));
    }
    const SparseVector<double> x(std::move(entries));
    const double value = ctx.norm(x);
    const double sum = rational_to_double(total);
    const double bound = std::pow(sum, 1.0 / p) / (2.0 * static_cast<double>(n));
    if (value > 0) report.worst_ratio = std::max(report.worst_ratio, bound / value);
    ctx.expect_le({"step4", {x}, {sum}, bound - kStep4Tolerance, value, ""});

    // Replication: r_j = k_j / k, u_j = unit blocks of length k_j laid end to end.
    boost::multiprecision::mpz_int k = 1;
    for (const auto& q : r) k = boost::multiprecision::lcm(k, boost::multiprecision::denominator(q));
    const Rational scaled_total = total * Rational(k);
    boost::multiprecision::mpz_int length = boost::multiprecision::numerator(scaled_total);
    if (length == 0 || length > cap) continue;
    ++traced;
    const auto s_ell = length.convert_to<Index>();
    const double k_d = k.convert_to<double>();
    Index start = 1;
    for (const auto& q : r) {
      const Rational scaled = q * Rational(k);
      const auto kj = boost::multiprecision::numerator(scaled).convert_to<Index>();
      if (kj == 0) continue;
      const auto u = SparseVector<double>::ones(start, start + kj - 1);
      ctx.expect_le({"step1", {u}, {}, ctx.norm(u), std::pow(static_cast<double>(kj), 1.0 / p) + kFloatTolerance,
                     "replication block"});
      start += kj;
    }
    const auto ones = SparseVector<double>::ones(1, s_ell);
    const double factor = (t / 2.0) * std::pow(k_d, -1.0 / p);
    ctx.expect_le({"step4-trace", {x, ones}, {factor}, factor * ctx.norm(ones) - kStep4Tolerance, value, ""});
  }
  report.notes.push_back("replication traces: " + std::to_string(traced) + " of " + std::to_string(tuples.size()));
  return report;
}

InequalityReport verify_oracle(const FamilyExpr& family, const ThetaSpec& theta,
                               std::span<const SparseVector<double>> samples, std::uint64_t seed,
                               const VerifyOptions& options) {
  InequalityReport report = make_report("oracle", family, theta, seed, samples.size());
  Context ctx{family, theta, options, report};
  for (const auto& x : samples) {
    const double exact = ctx.norm(x);
    const double oracle = norm_oracle(family, theta, x);
    const double diff = std::fabs(exact - oracle);
    const double scale = std::max(std::fabs(oracle), 1e-300);
    report.worst_ratio = std::max(report.worst_ratio, diff / scale);
    ctx.expect_le({"oracle", {x}, {}, diff, kOracleRelativeTolerance * std::fabs(oracle), ""});
  }
  return report;
}

InequalityReport verify_unconditional(const FamilyExpr& family, const ThetaSpec& theta,
                                      std::span<const SparseVector<double>> samples, std::uint64_t seed,
                                      const VerifyOptions& options) {
  InequalityReport report = make_report("unconditional", family, theta, seed, samples.size());
  Context ctx{family, theta, options, report};
  SampleRng rng(seed ^ 0xa11c0de5ULL);
  for (const auto& x : samples) {
    std::vector<std::pair<Index, double>> flipped;
    std::vector<std::pair<Index, double>> masked;
    for (const auto& [k, v] : x.entries()) {
      flipped.emplace_back(k, rng.coin() ? -v : v);
      if (!rng.coin(0.3)) masked.emplace_back(k, v);
    }
    const double base = ctx.norm(x);
    const double slack = kUnconditionalTolerance * std::max(1.0, base);
    for (const auto* entries : {&flipped, &masked}) {
      const SparseVector<double> y(*entries);
      const double value = ctx.norm(y);
      if (base > 0) report.worst_ratio = std::max(report.worst_ratio, value / base);
      ctx.expect_le({"unconditional", {x, y}, {}, value, base + slack, ""});
    }
  }
  return report;
}

Counterexample recheck(const InequalityReport& report) {
  if (!report.counterexample) throw InvalidArgument("report has no counterexample");
  Counterexample c = *report.counterexample;
  const FamilyExpr family = parse_family(report.family);
  const ThetaSpec theta = parse_theta(report.theta);
  auto norm = [&](const SparseVector<double>& x) { return norm_exact(family, theta, x).value; };
  auto p = [&] { return p_exponent(finite_rank_of(family), theta).p; };
  const auto& v = c.vectors;
  if (c.kind == "step1") {
    c.lhs = norm(v.at(0));
    c.rhs = v.at(0).lp_norm(p()) + kFloatTolerance;
  } else if (c.kind == "step2") {
    const double n = static_cast<double>(finite_rank_of(family));
    const double m = static_cast<double>(v.at(0).support_size());
    c.lhs = std::pow(n, -1.0 / p()) * std::pow(m, 1.0 / p()) - kFloatTolerance;
    c.rhs = norm(v.at(0));
  } else if (c.kind == "step2-power") {
    c.lhs = std::fabs(norm(v.at(0)) - std::pow(static_cast<double>(v.at(0).support_size()), 1.0 / p()));
    c.rhs = kFloatTolerance;
  } else if (c.kind == "step3") {
    SparseVector<double> combined;
    for (std::size_t k = 0; k < v.size(); ++k) combined = combined + v[k].scaled(c.coefficients.at(k));
    c.lhs = norm(combined);
    c.rhs = (2.0 / theta.value()) * norm(basis_combination(c.coefficients)) + kStep3Tolerance;
  } else if (c.kind == "step3-star") {
    const Functional f = functional_from_json(nlohmann::json::parse(c.detail));
    c.lhs = std::fabs(eval_functional(f, theta, v.at(0)));
    c.rhs = norm(v.at(1)) / theta.value() + kStep3Tolerance;
  } else if (c.kind == "step4") {
    const double n = static_cast<double>(finite_rank_of(family));
    c.lhs = std::pow(c.coefficients.at(0), 1.0 / p()) / (2.0 * n) - kStep4Tolerance;
    c.rhs = norm(v.at(0));
  } else if (c.kind == "step4-trace") {
    c.lhs = c.coefficients.at(0) * norm(v.at(1)) - kStep4Tolerance;
    c.rhs = norm(v.at(0));
  } else if (c.kind == "oracle") {
    const double oracle = norm_oracle(family, theta, v.at(0));
    c.lhs = std::fabs(norm(v.at(0)) - oracle);
    c.rhs = kOracleRelativeTolerance * std::fabs(oracle);
  } else if (c.kind == "unconditional") {
    const double base = norm(v.at(0));
    c.lhs = norm(v.at(1));
    c.rhs = base + kUnconditionalTolerance * std::max(1.0, base);
  } else {
    throw InvalidArgument("unknown counterexample kind '" + c.kind + "'");
  }
  return c;
}

EquivalenceConstants equivalence_constants(std::size_t n, const ThetaSpec& theta,
                                           std::span<const SparseVector<double>> samples,
                                           const VerifyOptions& options) {
  const FamilyExpr family = FamilyExpr::finite_rank(n);
  const double p = p_exponent(n, theta).p;
  InequalityReport scratch;
  Context ctx{family, theta, options, scratch};
  EquivalenceConstants out;
  bool first = true;
  for (const auto& x : samples) {
    if (x.is_zero()) continue;
    const double ratio = ctx.norm(x) / x.lp_norm(p);
    out.c_low = first ? ratio : std::min(out.c_low, ratio);
    out.c_high = first ? ratio : std::max(out.c_high, ratio);
    first = false;
    ++out.samples;
  }
  out.certificates_checked = scratch.certificates_checked;
  out.certificate_failures = scratch.certificate_failures;
  return out;
}

std::vector<GrowthRow> growth_probe(const FamilyExpr& family, const ThetaSpec& theta, std::size_t m_max,
                                    const NormOptions& options) {
  std::vector<GrowthRow> rows;
  rows.reserve(m_max);
  for (std::size_t m = 1; m <= m_max; ++m) {
    rows.push_back({m, norm_exact(family, theta, SparseVector<double>::ones(1, static_cast<Index>(m)), options).value});
  }
  return rows;
}

}  // namespace tsirelson
