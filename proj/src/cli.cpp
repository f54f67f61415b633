#include "tsirelson/cli.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "tsirelson/errors.hpp"
#include "tsirelson/family.hpp"
#include "tsirelson/lp_equivalence.hpp"
#include "tsirelson/norm.hpp"
#include "tsirelson/report.hpp"
#include "tsirelson/sampling.hpp"
#include "tsirelson/theta.hpp"

namespace tsirelson::cli {

namespace {

const std::vector<std::string> kClaims = {"step1", "step2", "step3", "step4", "oracle", "unconditional"};
const std::vector<std::string> kSweeps = {"growth", "constants"};

// Plain holders bound to CLI11; copied into the optionals of RunConfig when given.
struct Raw {
  std::string family, theta, vector, format, theta_grid, claim, sweep;
  std::uint64_t seed = 0;
  std::size_t n = 0, samples = 0, m_max = 0, max_supp = 0, subsets = 0, max_support = 0;
  bool exact = false, check = false;
};

struct App {
  CLI::App app{"Exact norms, certificates and inequality checks for Tsirelson-type spaces", "tsirelson"};
  Raw raw;
  CLI::App* norm = nullptr;
  CLI::App* verify = nullptr;
  CLI::App* sweep = nullptr;

  App() {
    app.require_subcommand(1);
    norm = app.add_subcommand("norm", "Compute a norm and its certificate");
    verify = app.add_subcommand("verify", "Run an inequality or consistency suite");
    sweep = app.add_subcommand("sweep", "Tabulate growth probes or equivalence constants");

    for (CLI::App* sub : {norm, verify, sweep}) {
      sub->add_option("--family", raw.family, "family literal, e.g. schreier, finite-rank:2");
      sub->add_option("--theta", raw.theta, "theta literal, e.g. 1/2 or root:n=2,q=2");
      sub->add_option("--format", raw.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
      sub->add_option("--max-support", raw.max_support, "DP support cap");
    }
    norm->add_option("--vector", raw.vector, "\"1:1,2:0.5\" or JSON {\"1\":1}")->required();
    norm->add_flag("--exact", raw.exact, "rational arithmetic (rational theta only)");
    norm->add_flag("--check", raw.check, "re-validate and re-evaluate the certificate");

    verify->add_option("claim", raw.claim, "step1|step2|step3|step4|oracle|unconditional")
        ->required()
        ->check(CLI::IsMember(kClaims));
    for (CLI::App* sub : {verify, sweep}) {
      sub->add_option("--n", raw.n, "n of the finite-rank family");
      sub->add_option("--samples", raw.samples, "number of random samples");
      sub->add_option("--seed", raw.seed, "random seed");
      sub->add_option("--m-max", raw.m_max, "largest m for e_1+...+e_m");
      sub->add_option("--max-supp", raw.max_supp, "largest support of random vectors");
    }
    verify->add_option("--subsets", raw.subsets, "random index sets per block sequence (step3)");
    sweep->add_option("kind", raw.sweep, "growth|constants")->required()->check(CLI::IsMember(kSweeps));
    sweep->add_option("--theta-grid", raw.theta_grid, "lo:hi:step");
  }

  RunConfig config() const {
    RunConfig c;
    const CLI::App* sub = norm->parsed() ? norm : verify->parsed() ? verify : sweep;
    c.command = sub->get_name();
    if (sub == verify) c.subcommand = raw.claim;
    if (sub == sweep) c.subcommand = raw.sweep;
    auto given = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };
    if (given("--family")) c.family = raw.family;
    if (given("--theta")) c.theta = raw.theta;
    if (given("--vector")) c.vector = raw.vector;
    if (given("--format")) c.format = raw.format;
    if (given("--seed")) c.seed = raw.seed;
    if (given("--n")) c.n = raw.n;
    if (given("--samples")) c.samples = raw.samples;
    if (given("--m-max")) c.m_max = raw.m_max;
    if (given("--max-supp")) c.max_supp = raw.max_supp;
    if (given("--subsets")) c.subsets = raw.subsets;
    if (given("--max-support")) c.max_support = raw.max_support;
    if (given("--theta-grid")) c.theta_grid = raw.theta_grid;
    c.exact = raw.exact;
    c.check = raw.check;
    return c;
  }

  void parse(const std::vector<std::string>& args) {
    std::vector<std::string> argv_storage = {"tsirelson"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  }
};

std::string format_of(const RunConfig& c, const char* fallback) { return c.format.value_or(fallback); }

NormOptions norm_options(const RunConfig& c) {
  NormOptions o;
  if (c.max_support) o.max_support = *c.max_support;
  return o;
}

template <Scalar S>
int run_norm_typed(const RunConfig& c, const FamilyExpr& family, const ThetaSpec& theta, std::ostream& out,
                   std::ostream& err) {
  const std::string& literal = *c.vector;
  const SparseVector<S> x = !literal.empty() && literal.front() == '{' ? parse_vector_json<S>(literal)
                                                                       : parse_vector<S>(literal);
  const NormResult<S> result = norm_exact(family, theta, x, norm_options(c));
  nlohmann::json j = norm_result_to_json(result);
  j["family"] = format_family(family);
  j["theta"] = format_theta(theta);
  j["vector"] = format_vector(x);
  int code = kOk;
  if (c.check) {
    nlohmann::json check;
    try {
      check["depth"] = validate_functional(family, result.certificate);
      const S reevaluated = eval_functional(result.certificate, theta, x);
      check["reevaluated"] = to_double(reevaluated);
      bool same = false;
      if constexpr (std::same_as<S, Rational>) {
        same = reevaluated == result.value;
      } else {
        same = std::fabs(reevaluated - result.value) <= 1e-9 * std::max(1.0, std::fabs(result.value));
      }
      check["valid"] = same;
      if (!same) {
        err << "certificate re-evaluates to " << format_scalar(reevaluated) << "\n";
        code = kCounterexample;
      }
    } catch (const CertificateError& e) {
      check["valid"] = false;
      check["error"] = e.what();
      err << e.what() << "\n";
      code = kCounterexample;
    }
    j["check"] = check;
  }
  if (format_of(c, "json") == "text") {
    out << "norm = " << format_scalar(result.value) << "\n";
    out << "certificate = " << j["certificate"].dump() << "\n";
  } else {
    out << j.dump() << "\n";
  }
  return code;
}

int run_norm(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const FamilyExpr family = parse_family(c.family.value_or("schreier"));
  const ThetaSpec theta = parse_theta(c.theta.value_or("1/2"));
  if (c.exact) return run_norm_typed<Rational>(c, family, theta, out, err);
  return run_norm_typed<double>(c, family, theta, out, err);
}

std::string default_theta(std::size_t n) { return "root:n=" + std::to_string(n) + ",q=2"; }

void emit_report(const RunConfig& c, const InequalityReport& report, std::ostream& out) {
  const std::string format = format_of(c, "json");
  if (format == "csv") {
    out << report_csv_header() << "\n" << report_csv_row(report) << "\n";
  } else if (format == "text") {
    out << report.claim << " " << (report.passed ? "PASS" : "FAIL") << " family=" << report.family
        << " theta=" << report.theta << " samples=" << report.samples
        << " worst_ratio=" << format_double(report.worst_ratio) << "\n";
    if (report.counterexample) {
      out << "counterexample (" << report.counterexample->kind << "): lhs=" << format_double(report.counterexample->lhs)
          << " rhs=" << format_double(report.counterexample->rhs) << "\n";
    }
  } else {
    out << report_to_json(report).dump() << "\n";
  }
}

int run_verify(const RunConfig& c, std::ostream& out) {
  const std::size_t n = c.n.value_or(2);
  const std::uint64_t seed = c.seed.value_or(1);
  VerifyOptions options;
  options.norm = norm_options(c);
  const std::string& claim = c.subcommand;
  InequalityReport report;
  if (claim == "oracle" || claim == "unconditional") {
    const FamilyExpr family = parse_family(c.family.value_or("finite-rank:" + std::to_string(n)));
    const ThetaSpec theta = parse_theta(c.theta.value_or("1/2"));
    VectorSampleSpec spec;
    spec.seed = seed;
    spec.samples = c.samples.value_or(claim == "oracle" ? 500 : 1000);
    spec.max_support = c.max_supp.value_or(claim == "oracle" ? 7 : 12);
    const auto xs = random_vectors(spec);
    report = claim == "oracle" ? verify_oracle(family, theta, xs, seed, options)
                               : verify_unconditional(family, theta, xs, seed, options);
  } else {
    const ThetaSpec theta = parse_theta(c.theta.value_or(default_theta(n)));
    if (claim == "step1") {
      VectorSampleSpec spec;
      spec.seed = seed;
      spec.samples = c.samples.value_or(1000);
      spec.max_support = c.max_supp.value_or(12);
      report = verify_step1(n, theta, random_vectors(spec), seed, options);
    } else if (claim == "step2") {
      report = verify_step2(n, theta, c.m_max.value_or(32), options);
    } else if (claim == "step3") {
      BlockSampleSpec spec;
      spec.seed = seed;
      spec.samples = c.samples.value_or(200);
      spec.max_total_support = c.max_supp.value_or(14);
      report = verify_step3(n, theta, random_block_cases(spec), c.subsets.value_or(50), seed, options);
    } else {
      RationalSampleSpec spec;
      spec.seed = seed;
      spec.samples = c.samples.value_or(100);
      report = verify_step4(n, theta, random_rational_tuples(spec), seed, options);
    }
  }
  emit_report(c, report, out);
  return report.passed ? kOk : kCounterexample;
}

std::vector<Rational> parse_grid(const std::string& grid) {
  std::vector<std::string> parts;
  std::stringstream ss(grid);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw ParseError("theta grid must be lo:hi:step");
  const Rational lo = parse_scalar<Rational>(parts[0]);
  const Rational hi = parse_scalar<Rational>(parts[1]);
  const Rational step = parse_scalar<Rational>(parts[2]);
  if (step <= 0) throw ParseError("theta grid step must be positive");
  std::vector<Rational> out;
  for (Rational v = lo; v <= hi; v += step) {
    out.push_back(v);
    if (out.size() > 10'000) throw LimitExceeded("theta grid has more than 10000 points");
  }
  return out;
}

int run_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.subcommand == "growth") {
    const FamilyExpr family = parse_family(c.family.value_or("schreier"));
    const ThetaSpec theta = parse_theta(c.theta.value_or("1/2"));
    out << growth_csv(growth_probe(family, theta, c.m_max.value_or(16), norm_options(c)));
    return kOk;
  }
  const std::size_t n = c.n.value_or(2);
  const std::vector<Rational> grid = c.theta_grid ? parse_grid(*c.theta_grid) : std::vector<Rational>{};
  VectorSampleSpec spec;
  spec.seed = c.seed.value_or(1);
  spec.samples = c.samples.value_or(200);
  spec.max_support = c.max_supp.value_or(10);
  const auto xs = random_vectors(spec);
  VerifyOptions options;
  options.norm = norm_options(c);
  out << "schema_version,n,theta,p,samples,c_low,c_high,lower_bound,upper_bound,within_bounds\n";
  for (const Rational& v : grid) {
    const std::string literal = format_scalar(v);
    ThetaSpec theta = ThetaSpec::rational(1, 2);
    try {
      theta = parse_theta(literal);
      p_exponent(n, theta);
    } catch (const Error& e) {
      err << "skipping theta " << literal << ": " << e.what() << "\n";
      continue;
    }
    const double p = p_exponent(n, theta).p;
    const auto k = equivalence_constants(n, theta, xs, options);
    const double lower = 1.0 / (2.0 * static_cast<double>(n));
    const bool ok = k.c_low >= lower - kFloatTolerance && k.c_high <= 1.0 + kFloatTolerance;
    out << kSchemaVersion << "," << n << "," << format_theta(theta) << "," << format_double(p) << "," << k.samples
        << "," << format_double(k.c_low) << "," << format_double(k.c_high) << "," << format_double(lower) << ",1,"
        << (ok ? "true" : "false") << "\n";
  }
  return kOk;
}

}  // namespace

RunConfig parse_run_config(const std::vector<std::string>& args) {
  App app;
  try {
    app.parse(args);
  } catch (const CLI::Error& e) {
    throw ParseError(e.what());
  }
  return app.config();
}

std::vector<std::string> format_run_config(const RunConfig& c) {
  std::vector<std::string> args = {c.command};
  if (!c.subcommand.empty()) args.push_back(c.subcommand);
  auto add = [&](const char* flag, const auto& value) {
    if (!value) return;
    args.emplace_back(flag);
    if constexpr (std::is_same_v<std::decay_t<decltype(*value)>, std::string>) {
      args.push_back(*value);
    } else {
      args.push_back(std::to_string(*value));
    }
  };
  add("--family", c.family);
  add("--theta", c.theta);
  add("--vector", c.vector);
  add("--format", c.format);
  add("--seed", c.seed);
  add("--n", c.n);
  add("--samples", c.samples);
  add("--m-max", c.m_max);
  add("--max-supp", c.max_supp);
  add("--subsets", c.subsets);
  add("--max-support", c.max_support);
  add("--theta-grid", c.theta_grid);
  if (c.exact) args.emplace_back("--exact");
  if (c.check) args.emplace_back("--check");
  return args;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "norm") return run_norm(config, out, err);
    if (config.command == "verify") return run_verify(config, out);
    if (config.command == "sweep") return run_sweep(config, out, err);
    err << "unknown command '" << config.command << "'\n";
    return kParseError;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  App app;
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseError;
  }
  return run(app.config(), out, err);
}

}  // namespace tsirelson::cli
