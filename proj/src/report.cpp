#include "tsirelson/report.hpp"

#include <charconv>

namespace tsirelson {

std::string format_double(double v) { return format_scalar<double>(v); }

template <Scalar S>
nlohmann::json norm_result_to_json(const NormResult<S>& result) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["value"] = to_double(result.value);
  if constexpr (std::same_as<S, Rational>) j["value_exact"] = format_scalar(result.value);
  j["certificate"] = functional_to_json(result.certificate);
  j["stats"] = {
      {"support_size", result.stats.support_size},   {"automaton_states", result.stats.automaton_states},
      {"intervals", result.stats.intervals},         {"cells", result.stats.cells},
      {"transitions", result.stats.transitions},     {"certificate_depth", result.certificate.depth()},
      {"certificate_nodes", result.certificate.node_count()},
  };
  return j;
}

template nlohmann::json norm_result_to_json<double>(const NormResult<double>&);
template nlohmann::json norm_result_to_json<Rational>(const NormResult<Rational>&);

nlohmann::json report_to_json(const InequalityReport& report) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["claim"] = report.claim;
  j["family"] = report.family;
  j["theta"] = report.theta;
  j["seed"] = report.seed;
  j["samples"] = report.samples;
  j["worst_ratio"] = report.worst_ratio;
  j["passed"] = report.passed;
  j["certificates_checked"] = report.certificates_checked;
  j["certificate_failures"] = report.certificate_failures;
  j["notes"] = report.notes;
  if (report.counterexample) {
    const auto& c = *report.counterexample;
    nlohmann::json vectors = nlohmann::json::array();
    for (const auto& v : c.vectors) vectors.push_back(format_vector(v));
    j["counterexample"] = {{"kind", c.kind},           {"vectors", vectors}, {"coefficients", c.coefficients},
                           {"lhs", c.lhs},             {"rhs", c.rhs},       {"detail", c.detail}};
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

std::string report_csv_header() {
  return "schema_version,claim,family,theta,seed,samples,worst_ratio,passed,certificates_checked,"
         "certificate_failures,counterexample";
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_csv_row(const InequalityReport& report) {
  std::string counterexample;
  if (report.counterexample && !report.counterexample->vectors.empty()) {
    counterexample = format_vector(report.counterexample->vectors.front());
  }
  return std::to_string(kSchemaVersion) + "," + report.claim + "," + csv_quote(report.family) + "," +
         csv_quote(report.theta) + "," + std::to_string(report.seed) + "," + std::to_string(report.samples) + "," +
         format_double(report.worst_ratio) + "," + (report.passed ? "true" : "false") + "," +
         std::to_string(report.certificates_checked) + "," + std::to_string(report.certificate_failures) + "," +
         csv_quote(counterexample);
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::string out = "m,norm\n";
  for (const auto& r : rows) out += std::to_string(r.m) + "," + format_double(r.value) + "\n";
  return out;
}

}  // namespace tsirelson
