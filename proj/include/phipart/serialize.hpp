#pragma once

#include "phipart/bounds.hpp"
#include "phipart/estimator.hpp"
#include "phipart/geometry.hpp"
#include "phipart/harness.hpp"
#include "phipart/synthdata.hpp"

#include <json.hpp>

#include <filesystem>

namespace phipart {

inline constexpr int kSchemaVersion = 1;

/// Extended reals use the strings "-inf" / "inf" for the infinities.
nlohmann::json to_json(const ExtReal& x);
ExtReal ext_real_from_json(const nlohmann::json& j);

/// {schema_version, d, m0, cells: [[[lo, hi], ...], ...], split_values}
nlohmann::json to_json(const Partition& partition);
/// Reads d, m0 and cells; split_values is ignored and rebuilt from the cells.
Partition partition_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DistributionSpec& spec);
DistributionSpec distribution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EstimateResult& result);
nlohmann::json to_json(const PlannerReport& report);
nlohmann::json to_json(const BoundSuiteReport& report);
nlohmann::json to_json(const std::vector<ConvergenceRow>& rows, const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig experiment_from_json(const nlohmann::json& j);

/// Pretty-printed JSON; a "schema_version" field is added to objects lacking one.
void write_report(const std::filesystem::path& path, nlohmann::json report);
std::string format_report(nlohmann::json report);
nlohmann::json read_json(const std::filesystem::path& path);

} // namespace phipart
