#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "bslnav/log.hpp"
#include "bslnav/map_io.hpp"
#include "bslnav/scenario.hpp"

namespace bslnav
{

namespace log
{
Level threshold()
{
  static const Level level = [] {
    const char* env = std::getenv("BSLNAV_LOG");
    if (!env) return Level::Error;
    if (std::strcmp(env, "debug") == 0) return Level::Debug;
    if (std::strcmp(env, "info") == 0) return Level::Info;
    return Level::Error;
  }();
  return level;
}
}  // namespace log

Method parse_method(const std::string& text)
{
  if (text == "1" || text == "Method1") return Method::Method1;
  if (text == "2" || text == "Method2") return Method::Method2;
  if (text == "3" || text == "Method3") return Method::Method3;
  if (text == "4" || text == "Method4") return Method::Method4;
  throw InvalidParameter("unknown method '" + text + "' (expected 1, 2, 3 or 4)");
}

int method_number(Method m) { return static_cast<int>(m); }

RunConfig resolve_config(const Scenario& scenario, const std::map<std::string, double>& cli_overrides)
{
  RunConfig cfg;
  cfg.set("robot_radius", scenario.robot.footprint_radius);
  cfg.set("v_max", scenario.robot.limits.v_max);
  for (const auto& [k, v] : scenario.overrides) cfg.set(k, v);
  for (const auto& [k, v] : cli_overrides) cfg.set(k, v);
  cfg.validate();
  return cfg;
}

Costmap build_static_map(const Scenario& scenario, double resolution)
{
  if (!scenario.static_map_path.empty())
  {
    try
    {
      return load_static_map(scenario.static_map_path);
    }
    catch (const MapIoError& e)
    {
      throw ScenarioError(e.what());
    }
  }
  const World& w = scenario.world;
  Point2 lo = w.start_pose.position().cwiseMin(w.goal);
  Point2 hi = w.start_pose.position().cwiseMax(w.goal);
  for (const Box& b : w.boxes)
  {
    lo = lo.cwiseMin(b.footprint.min);
    hi = hi.cwiseMax(b.footprint.max);
  }
  constexpr double kMargin = 1.0;
  lo -= Point2::Constant(kMargin);
  hi += Point2::Constant(kMargin);
  const Point2 origin(std::floor(lo.x() / resolution) * resolution, std::floor(lo.y() / resolution) * resolution);
  const int width = static_cast<int>(std::ceil((hi.x() - origin.x()) / resolution));
  const int height = static_cast<int>(std::ceil((hi.y() - origin.y()) / resolution));
  Costmap map(resolution, origin, width, height, cost::kFree);
  for (const Box& b : w.boxes)
  {
    // Every cell whose square overlaps the footprint interior.
    const CellIndex c0 = map.world_to_cell_unchecked(b.footprint.min);
    const CellIndex c1 = map.world_to_cell_unchecked(b.footprint.max);
    for (int y = std::max(c0.y, 0); y <= std::min(c1.y, height - 1); ++y)
      for (int x = std::max(c0.x, 0); x <= std::min(c1.x, width - 1); ++x)
      {
        const Point2 cmin = origin + resolution * Point2(x, y);
        const Point2 cmax = cmin + Point2::Constant(resolution);
        if (cmin.x() < b.footprint.max.x() && cmax.x() > b.footprint.min.x() && cmin.y() < b.footprint.max.y() &&
            cmax.y() > b.footprint.min.y())
          map.at(x, y) = cost::kLethal;
      }
  }
  return map;
}

namespace
{

std::vector<DangerZone> to_frame(std::vector<DangerZone> zones, const Pose2D& frame)
{
  for (DangerZone& z : zones) z.center = local_to_global(frame, z.center);
  return zones;
}

}  // namespace

Costmap pre_perception_master(const Scenario& scenario, const RunConfig& cfg)
{
  cfg.validate();
  const Costmap static_map = build_static_map(scenario, cfg.resolution);
  const int cells = static_cast<int>(std::lround(cfg.window_size / cfg.resolution));
  const Point2 origin = window_origin(static_map, scenario.world.start_pose.position(), cells);
  const Costmap window = crop(static_map, origin, cells, cells, cost::kUnknown);
  LayerStack layers = LayerStack::congruent_to(window);
  layers.static_layer = window;
  update_inflation_layer(layers.inflation_layer, layers.static_layer, cfg.inflation);
  return compose_master(layers);
}

RunResult run_scenario(const Scenario& scenario, Method method, const RunConfig& cfg, const CycleObserver& observer)
{
  cfg.validate();
  const World& world = scenario.world;
  RobotSpec robot = scenario.robot;
  robot.footprint_radius = cfg.robot_radius;
  robot.limits = cfg.limits;

  DwaConfig dwa = cfg.dwa;
  dwa.method = method;

  const Costmap static_map = build_static_map(scenario, cfg.resolution);
  LayerStack global = LayerStack::congruent_to(static_map);
  global.static_layer = static_map;
  update_inflation_layer(global.inflation_layer, static_map, cfg.inflation);
  global.bsl_enabled = false;
  const Costmap global_master = compose_master(global);

  for (const Point2& p : {world.start_pose.position(), world.goal})
  {
    const auto c = global_master.world_to_cell(p);
    if (!c || global_master.at(*c) >= cost::kLethal)
      throw ScenarioError("start and goal must lie in free space inside the map");
  }
  GlobalPath path;
  try
  {
    path = astar_plan(global_master, world.start_pose.position(), world.goal, cfg.astar);
  }
  catch (const PlanningError& e)
  {
    throw ScenarioError(std::string("no global path from start to goal: ") + e.what());
  }

  const int window_cells = static_cast<int>(std::lround(cfg.window_size / cfg.resolution));
  const int replan_every = std::max(1, static_cast<int>(std::lround(cfg.replan_period / cfg.dt_ctrl)));
  const long max_cycles = std::lround(std::ceil(cfg.timeout / cfg.dt_ctrl - 1e-9));
  std::uint32_t noise_state = scenario.lrf.noise_seed;

  RunResult result;
  SimState state = initial_state(world);
  CollisionCheck cc = check_collision(state, world, robot);
  result.metrics.min_clearance = cc.clearance;
  result.trajectory.push_back(
    {state.time, state.pose.x(), state.pose.y(), state.pose.theta(), state.v, state.w, cc.clearance});

  const bool use_bsl = method != Method::Method1;
  for (long cycle = 0; cycle < max_cycles; ++cycle)
  {
    // Sense and rebuild the rolling window.
    const Pose2D lrf_pose = compose(state.pose, robot.lrf_mount);
    const LaserScan scan = simulate_lrf(state, world, robot, scenario.lrf, &noise_state);
    const Point2 origin = window_origin(static_map, state.pose.position(), window_cells);
    LayerStack layers;
    layers.static_layer = crop(static_map, origin, window_cells, window_cells, cost::kUnknown);
    const Costmap& g = layers.static_layer;
    layers.obstacle_layer = Costmap(g.resolution(), g.origin(), g.width(), g.height(), cost::kFree);
    layers.inflation_layer = layers.obstacle_layer;
    layers.bsl_layer = layers.obstacle_layer;
    layers.bsl_enabled = use_bsl;
    update_obstacle_layer(layers.obstacle_layer, scan, lrf_pose);
    update_inflation_layer(layers.inflation_layer, max_merge(layers.static_layer, layers.obstacle_layer),
                           cfg.inflation);

    std::vector<DangerZone> zones;
    if (method == Method::Method2)
    {
      const auto bsbp = detect_bsbp_lrf(scan, cfg.jump_threshold);
      zones = to_frame(build_danger_zones(bsbp, state.v, cfg.stopping), lrf_pose);
    }
    else if (method == Method::Method3 || method == Method::Method4)
    {
      const PointCloud cloud = simulate_depth_cloud(state, world, robot, scenario.camera);
      const auto bsbp = detect_bsbp_cloud(cloud, cfg.cloud);
      zones = to_frame(build_danger_zones(bsbp, state.v, cfg.stopping), state.pose);
    }
    if (use_bsl) write_blind_spot_costs(layers.bsl_layer, zones, cfg.bsl_cost);
    const Costmap master = compose_master(layers);

    if (cycle > 0 && cycle % replan_every == 0)
    {
      try
      {
        path = astar_plan(global_master, state.pose.position(), world.goal, cfg.astar);
      }
      catch (const PlanningError& e)
      {
        log::debug("t=", state.time, " replanning failed, keeping previous path: ", e.what());
      }
    }

    std::vector<TrajectoryCandidate> candidates =
      generate_candidates(state.pose, state.v, state.w, cfg.limits, dwa, cfg.dt_ctrl);
    for (TrajectoryCandidate& c : candidates) c.costs = evaluate_candidate(c, path, world.goal, master, dwa);
    const VelocityCommand cmd = select_velocity(candidates, state.v, cfg.limits, cfg.dt_ctrl);

    if (observer)
      observer(CycleInfo{static_cast<int>(cycle), state, layers, master, path, zones, candidates, cmd});

    const Point2 previous = state.pose.position();
    state = step(state, cmd.v, cmd.w, cfg.dt_ctrl, world);
    state.time = static_cast<double>(cycle + 1) * cfg.dt_ctrl;
    state = check_trigger(state, previous, world);

    cc = check_collision(state, world, robot);
    result.metrics.min_clearance = std::min(result.metrics.min_clearance, cc.clearance);
    result.metrics.cycles = static_cast<int>(cycle + 1);
    result.trajectory.push_back(
      {state.time, state.pose.x(), state.pose.y(), state.pose.theta(), state.v, state.w, cc.clearance});
    log::debug("t=", state.time, " v=", cmd.v, " w=", cmd.w, " zones=", zones.size(), " clearance=", cc.clearance);

    if (cc.collided)
    {
      result.metrics.collided = true;
      break;
    }
    if ((state.pose.position() - world.goal).norm() <= world.goal_tolerance)
    {
      result.metrics.goal_reached = true;
      break;
    }
  }
  result.metrics.elapsed = state.time;
  log::info(scenario.name, " method ", method_number(method), ": goal=", result.metrics.goal_reached,
            " collided=", result.metrics.collided, " time=", result.metrics.elapsed);
  return result;
}

}  // namespace bslnav
