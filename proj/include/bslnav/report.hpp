#pragma once

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bslnav/scenario.hpp"

namespace bslnav
{

inline constexpr const char* kToolVersion = "1.0.0";

/// Per-method outcome together with everything needed to reproduce it.
struct RunReport
{
  std::string scenario;
  std::map<int, Metrics> metrics;  // keyed by method number
  RunConfig config;
};

nlohmann::json metrics_to_json(const Metrics& m);
nlohmann::json config_to_json(const RunConfig& cfg);
nlohmann::json report_to_json(const RunReport& report);

/// t,x,y,theta,v,omega,clearance with 6 decimals and LF endings.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows);

/// Fixed-width outcome table: method, goal mark, time.
std::string comparison_table(const RunReport& report);

/// Writes `text` to `path` in binary mode so line endings stay LF.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bslnav
