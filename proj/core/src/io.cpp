#include "gepi/io.hpp"

#include <cstdio>
#include <sstream>

#include "gepi/error.hpp"

namespace gepi {

namespace {

int parse_positive_int(const std::string& text) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(text, &pos);
  } catch (const std::exception&) {
    throw DomainError("group descriptor: bad integer '" + text + "'");
  }
  if (pos != text.size() || value < 2) {
    throw DomainError("group descriptor: bad cyclic order '" + text + "'");
  }
  return value;
}

double prob_from_json(const nlohmann::json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return std::stod(v.get<std::string>());
    } catch (const std::exception&) {
      throw DomainError("distribution: bad decimal string '" + v.get<std::string>() + "'");
    }
  }
  throw DomainError("distribution: probabilities must be numbers or decimal strings");
}

}  // namespace

FiniteAbelianGroup parse_group_descriptor(const std::string& text) {
  std::vector<int> orders;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('x', start);
    if (end == std::string::npos) end = text.size();
    const std::string part = text.substr(start, end - start);
    if (part.size() < 2 || (part[0] != 'z' && part[0] != 'Z')) {
      throw DomainError("group descriptor: expected z<k> factors, got '" + text + "'");
    }
    orders.push_back(parse_positive_int(part.substr(1)));
    start = end + 1;
  }
  if (orders.empty()) throw DomainError("group descriptor: empty");
  return FiniteAbelianGroup(std::move(orders));
}

std::string group_descriptor(const FiniteAbelianGroup& group) {
  std::string out;
  for (std::size_t i = 0; i < group.cyclic_orders().size(); ++i) {
    if (i > 0) out += "x";
    out += "z" + std::to_string(group.cyclic_orders()[i]);
  }
  return out;
}

GroupDistribution distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("cyclic_orders") || !j.contains("probs")) {
    throw DomainError("distribution: expected {\"cyclic_orders\":[...],\"probs\":[...]}");
  }
  std::vector<int> orders;
  for (const auto& v : j.at("cyclic_orders")) orders.push_back(v.get<int>());
  FiniteAbelianGroup group(std::move(orders));
  std::vector<double> probs;
  for (const auto& v : j.at("probs")) probs.push_back(prob_from_json(v));
  return GroupDistribution(std::move(group), std::move(probs));
}

nlohmann::json distribution_to_json(const GroupDistribution& d) {
  nlohmann::json j;
  j["cyclic_orders"] = d.group().cyclic_orders();
  nlohmann::json probs = nlohmann::json::array();
  for (double p : d.probs()) probs.push_back(json_number(p));
  j["probs"] = std::move(probs);
  return j;
}

BroadcastSpec broadcast_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("p_z1") || !j.contains("p_z2_tilde")) {
    throw DomainError("broadcast spec: expected {\"p_z1\":...,\"p_z2_tilde\":...}");
  }
  return BroadcastSpec(distribution_from_json(j.at("p_z1")),
                       distribution_from_json(j.at("p_z2_tilde")));
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double json_number(double v) { return std::stod(format_number(v)); }

std::string region_to_csv(const RateRegionBoundary& boundary, double unit_scale) {
  std::ostringstream out;
  out << "alpha,R1,R2\n";
  for (const auto& pt : boundary.points) {
    out << format_number(pt.alpha) << "," << format_number(pt.r1 * unit_scale) << ","
        << format_number(pt.r2 * unit_scale) << "\n";
  }
  return out.str();
}

nlohmann::json region_to_json(const RateRegionBoundary& boundary, double unit_scale) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& pt : boundary.points) {
    points.push_back({{"alpha", json_number(pt.alpha)},
                      {"R1", json_number(pt.r1 * unit_scale)},
                      {"R2", json_number(pt.r2 * unit_scale)},
                      {"clamped", pt.clamped}});
  }
  return nlohmann::json{{"points", std::move(points)}};
}

nlohmann::json convexity_report_to_json(const ConvexityReport& report) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"fixed_value", json_number(v.fixed_value)},
                          {"axis_point", json_number(v.axis_point)},
                          {"second_difference", json_number(v.second_difference)}});
  }
  return nlohmann::json{{"cyclic_orders", report.cyclic_orders},
                        {"tolerance", json_number(report.tolerance)},
                        {"min_second_difference", json_number(report.min_second_difference)},
                        {"violations", std::move(violations)},
                        {"pass", report.pass()},
                        {"note", report.note}};
}

nlohmann::json mgl_report_to_json(const MglSuiteReport& report) {
  return nlohmann::json{{"trials", report.trials},
                        {"min_slack", json_number(report.min_slack)},
                        {"mean_slack", json_number(report.mean_slack)},
                        {"violations", report.violations},
                        {"threshold", json_number(report.threshold)}};
}

nlohmann::json claim_report_to_json(const ClaimReport& report) {
  return nlohmann::json{{"claim", report.claim},
                        {"max_violation", json_number(report.max_violation)},
                        {"pass", report.pass},
                        {"details", report.details}};
}

}  // namespace gepi
