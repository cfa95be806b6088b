#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bslnav/blindspot.hpp"
#include "bslnav/cloud.hpp"
#include "bslnav/costmap.hpp"
#include "bslnav/planning.hpp"
#include "bslnav/sim.hpp"

namespace bslnav
{

/// Malformed or unusable scenario description.
struct ScenarioError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Every tunable of a closed-loop run. Keys follow the parameter table names where one exists.
struct RunConfig
{
  StoppingModel stopping;
  BslCostConfig bsl_cost;
  DwaConfig dwa;
  VelocityLimits limits;
  InflationConfig inflation;
  AStarConfig astar;
  CloudPipelineConfig cloud;
  double jump_threshold{1.0};
  double dt_ctrl{0.1};
  double resolution{0.05};
  double window_size{6.0};
  double timeout{120.0};
  double replan_period{1.0};
  double robot_radius{0.2};

  /// Sets one parameter by key. Throws InvalidParameter for unknown keys.
  void set(const std::string& key, double value);
  double get(const std::string& key) const;
  static const std::vector<std::string>& keys();

  /// Throws InvalidParameter when the combination cannot be run.
  void validate() const;
};

struct Scenario
{
  std::string name;
  World world;
  RobotSpec robot;
  LrfSpec lrf;
  DepthCamSpec camera;
  /// Parameter overrides carried by the scenario file, applied before command-line overrides.
  std::map<std::string, double> overrides;
  /// Optional static map; otherwise the boxes are rasterized.
  std::filesystem::path static_map_path;
};

Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

/// Resolves defaults, scenario overrides and the robot geometry into a config.
RunConfig resolve_config(const Scenario& scenario, const std::map<std::string, double>& cli_overrides = {});

/// Full-map static layer: the loaded map, or the box footprints rasterized at `resolution`.
Costmap build_static_map(const Scenario& scenario, double resolution);

/// Rolling-window master at the start pose before any sensing: static layer and its inflation.
Costmap pre_perception_master(const Scenario& scenario, const RunConfig& cfg);

struct Metrics
{
  bool goal_reached{false};
  bool collided{false};
  double elapsed{0};
  double min_clearance{0};
  int cycles{0};
};

struct TrajectoryRow
{
  double t, x, y, theta, v, w, clearance;
};

/// Snapshot handed to an observer once per control cycle, before the command is applied.
struct CycleInfo
{
  int cycle;
  const SimState& state;
  const LayerStack& layers;
  const Costmap& master;
  const GlobalPath& path;
  std::span<const DangerZone> zones;
  std::span<const TrajectoryCandidate> candidates;
  const VelocityCommand& command;
};

using CycleObserver = std::function<void(const CycleInfo&)>;

struct RunResult
{
  Metrics metrics;
  std::vector<TrajectoryRow> trajectory;
};

Method parse_method(const std::string& text);
int method_number(Method m);

/// Closed loop: sense, update layers, compose, (re)plan, select, step. Deterministic.
RunResult run_scenario(const Scenario& scenario, Method method, const RunConfig& cfg,
                       const CycleObserver& observer = {});

}  // namespace bslnav
