#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fahp/extent.hpp"
#include "fahp/hierarchy.hpp"

namespace fahp {

// All numerics are rounded to four decimals; object keys come out sorted,
// so equal inputs always dump to identical text.
nlohmann::json to_json(const ConsistencyReport& report);
nlohmann::json to_json(const RankedResult& result);
nlohmann::json to_json(const ComparisonReport& report);
nlohmann::json to_json(const ProbeReport& report);
nlohmann::json to_json(const std::vector<RepairEntry>& repairs);
nlohmann::json to_json(const Tfn& t);

// Inverse of to_json(RankedResult); values come back at four decimals.
RankedResult result_from_json(const nlohmann::json& j);

// Same result with every real rounded to four decimals.
RankedResult rounded(const RankedResult& result);

std::string render_text(const RankedResult& result);
std::string render_text(const ComparisonReport& report);
std::string render_text(const ProbeReport& report);
std::string render_repairs(const std::vector<RepairEntry>& repairs);
std::string render_consistency(const std::string& matrix, const ConsistencyReport& report);
std::string render_extents(const ExtentWeights& analysis, const std::vector<std::string>& labels);

}  // namespace fahp
