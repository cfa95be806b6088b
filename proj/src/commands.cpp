#include "bslnav/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "bslnav/map_io.hpp"
#include "bslnav/report.hpp"
#include "bslnav/scenario.hpp"

namespace bslnav::cli
{

namespace fs = std::filesystem;

std::pair<std::string, double> parse_param(const std::string& text)
{
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw InvalidParameter("expected KEY=VALUE, got '" + text + "'");
  const std::string key = text.substr(0, eq);
  const std::string value = text.substr(eq + 1);
  std::istringstream in(value);
  in.imbue(std::locale::classic());
  double v;
  if (!(in >> v) || !in.eof()) throw InvalidParameter("bad value for " + key + ": '" + value + "'");
  return {key, v};
}

namespace
{

struct Prepared
{
  Scenario scenario;
  RunConfig config;
};

Prepared prepare(const fs::path& scenario_path, const CommonOptions& opts)
{
  Prepared p{load_scenario(scenario_path), {}};
  auto params = opts.params;
  if (opts.timeout) params["timeout"] = *opts.timeout;
  p.config = resolve_config(p.scenario, params);
  return p;
}

// Maps the library's exceptions onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body body)
{
  try
  {
    return body();
  }
  catch (const ScenarioError& e)
  {
    err << "bslnav: scenario error: " << e.what() << '\n';
    return kBadScenario;
  }
  catch (const InvalidParameter& e)
  {
    err << "bslnav: invalid parameter: " << e.what() << '\n';
    return kBadParameter;
  }
  catch (const std::exception& e)
  {
    err << "bslnav: error: " << e.what() << '\n';
    return 1;
  }
}

std::string csv_text(const std::vector<TrajectoryRow>& rows)
{
  std::ostringstream os;
  write_trajectory_csv(os, rows);
  return os.str();
}

void write_run_outputs(const fs::path& dir, const Prepared& p, Method method, const RunResult& r)
{
  fs::create_directories(dir);
  write_text_file(dir / "trajectory.csv", csv_text(r.trajectory));
  nlohmann::json j = {{"scenario", p.scenario.name},
                      {"version", kToolVersion},
                      {"method", method_number(method)},
                      {"metrics", metrics_to_json(r.metrics)},
                      {"parameters", config_to_json(p.config)}};
  write_text_file(dir / "metrics.json", j.dump(2) + "\n");
}

}  // namespace

int cmd_run(const fs::path& scenario, const std::string& method_text, const fs::path& out_dir, bool dump_costmaps,
            const CommonOptions& opts, std::ostream& err)
{
  return guarded(err, [&] {
    const Method method = parse_method(method_text);
    const Prepared p = prepare(scenario, opts);
    CycleObserver observer;
    if (dump_costmaps)
    {
      fs::create_directories(out_dir / "costmaps");
      observer = [&](const CycleInfo& info) {
        char name[32];
        std::snprintf(name, sizeof name, "cycle_%05d.pgm", info.cycle);
        dump_costmap(out_dir / "costmaps" / name, info.master);
      };
    }
    const RunResult r = run_scenario(p.scenario, method, p.config, observer);
    write_run_outputs(out_dir, p, method, r);
    return static_cast<int>(kOk);
  });
}

int cmd_compare(const fs::path& scenario, const fs::path& out_dir, const CommonOptions& opts, std::ostream& out,
                std::ostream& err)
{
  return guarded(err, [&] {
    const Prepared p = prepare(scenario, opts);
    RunReport report{p.scenario.name, {}, p.config};
    for (Method m : {Method::Method1, Method::Method2, Method::Method3, Method::Method4})
    {
      const RunResult r = run_scenario(p.scenario, m, p.config);
      write_run_outputs(out_dir / ("method" + std::to_string(method_number(m))), p, m, r);
      report.metrics[method_number(m)] = r.metrics;
    }
    write_text_file(out_dir / "comparison.json", report_to_json(report).dump(2) + "\n");
    const std::string table = comparison_table(report);
    write_text_file(out_dir / "comparison.txt", table);
    out << table;
    return static_cast<int>(kOk);
  });
}

int cmd_dump_costmap(const fs::path& scenario, const std::string& method_text, double t, const fs::path& output,
                     const CommonOptions& opts, std::ostream& err)
{
  return guarded(err, [&] {
    const Method method = parse_method(method_text);
    if (!(t >= 0)) throw InvalidParameter("time must be non-negative");
    const Prepared p = prepare(scenario, opts);
    // The map at time t is the one the planner held once the cycle ending at t was done;
    // at t = 0 nothing has been sensed yet.
    const long target = std::lround(t / p.config.dt_ctrl);
    std::optional<Costmap> captured;
    if (target == 0) captured = pre_perception_master(p.scenario, p.config);
    const RunResult r = run_scenario(p.scenario, method, p.config, [&](const CycleInfo& info) {
      if (info.cycle == target - 1) captured = info.master;
    });
    if (t > r.metrics.elapsed + 1e-9 || !captured)
    {
      err << "bslnav: t=" << t << " exceeds the run duration " << r.metrics.elapsed << " s\n";
      return static_cast<int>(kTimeOutOfRange);
    }
    if (output.has_parent_path()) fs::create_directories(output.parent_path());
    dump_costmap(output, *captured);
    return static_cast<int>(kOk);
  });
}

}  // namespace bslnav::cli
