#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tsirelson/lp_equivalence.hpp"
#include "tsirelson/norm.hpp"

namespace tsirelson {

inline constexpr int kSchemaVersion = 1;

/// {"schema_version", "value", "certificate", "stats"}; Rational results also carry "value_exact".
template <Scalar S>
nlohmann::json norm_result_to_json(const NormResult<S>& result);

nlohmann::json report_to_json(const InequalityReport& report);

std::string report_csv_header();
std::string report_csv_row(const InequalityReport& report);

std::string growth_csv(const std::vector<GrowthRow>& rows);

/// Locale-independent shortest round-trip text.
std::string format_double(double v);

}  // namespace tsirelson
