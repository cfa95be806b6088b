#include "bslnav/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace bslnav
{

using nlohmann::json;

json metrics_to_json(const Metrics& m)
{
  return {{"goal_reached", m.goal_reached},
          {"collided", m.collided},
          {"elapsed", m.elapsed},
          {"min_clearance", m.min_clearance},
          {"cycles", m.cycles}};
}

json config_to_json(const RunConfig& cfg)
{
  json out = json::object();
  for (const std::string& key : RunConfig::keys()) out[key] = cfg.get(key);
  return out;
}

json report_to_json(const RunReport& report)
{
  json methods = json::object();
  for (const auto& [number, m] : report.metrics) methods["method" + std::to_string(number)] = metrics_to_json(m);
  return {{"scenario", report.scenario},
          {"version", kToolVersion},
          {"methods", methods},
          {"parameters", config_to_json(report.config)}};
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows)
{
  out << "t,x,y,theta,v,omega,clearance\n";
  char buf[256];
  for (const TrajectoryRow& r : rows)
  {
    // %f is locale sensitive only through the decimal point; the tool never calls setlocale.
    std::snprintf(buf, sizeof buf, "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.t, r.x, r.y, r.theta, r.v, r.w,
                  r.clearance);
    out << buf;
  }
}

std::string comparison_table(const RunReport& report)
{
  std::ostringstream os;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%-10s %-7s %-10s\n", "Method", "Goal", "Time [sec]");
  os << buf;
  for (const auto& [number, m] : report.metrics)
  {
    const std::string name = "Method" + std::to_string(number);
    const bool ok = m.goal_reached && !m.collided;
    // The marks are multi-byte, so pad the goal column by hand.
    const std::string goal = std::string(ok ? "○" : "×") + "      ";
    if (ok) std::snprintf(buf, sizeof buf, "%-10s %s %-10.1f\n", name.c_str(), goal.c_str(), m.elapsed);
    else std::snprintf(buf, sizeof buf, "%-10s %s %-10s\n", name.c_str(), goal.c_str(), "-");
    os << buf;
  }
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace bslnav
