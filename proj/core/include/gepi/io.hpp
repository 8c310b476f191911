#pragma once

#include <string>

#include <json.hpp>

#include "gepi/applications.hpp"
#include "gepi/appendix.hpp"
#include "gepi/distribution.hpp"
#include "gepi/group.hpp"
#include "gepi/oracle.hpp"

namespace gepi {

/// Grammar: z<k> for cyclic groups, factors joined by x (e.g. "z2xz4").
FiniteAbelianGroup parse_group_descriptor(const std::string& text);
std::string group_descriptor(const FiniteAbelianGroup& group);

/// Distribution literal: {"cyclic_orders":[4], "probs":[0.25, "0.75", ...]}.
/// Probabilities may be JSON numbers or exact decimal strings.
GroupDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json distribution_to_json(const GroupDistribution& d);

/// Broadcast spec file: {"p_z1": <dist>, "p_z2_tilde": <dist>}.
BroadcastSpec broadcast_spec_from_json(const nlohmann::json& j);

/// Formats a double with 12 significant digits.
std::string format_number(double v);

/// A double rounded through the 12-digit representation, for JSON output.
double json_number(double v);

std::string region_to_csv(const RateRegionBoundary& boundary, double unit_scale = 1.0);
nlohmann::json region_to_json(const RateRegionBoundary& boundary, double unit_scale = 1.0);

nlohmann::json convexity_report_to_json(const ConvexityReport& report);
nlohmann::json mgl_report_to_json(const MglSuiteReport& report);
nlohmann::json claim_report_to_json(const ClaimReport& report);

}  // namespace gepi
