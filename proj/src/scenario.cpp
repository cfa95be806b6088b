#include "bslnav/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bslnav/log.hpp"
#include "bslnav/map_io.hpp"

namespace bslnav
{

using nlohmann::json;

// ---------------------------------------------------------------- parameters

namespace
{

struct ParamSlot
{
  std::function<double&(RunConfig&)> ref;
  bool integral{false};
};

const std::map<std::string, ParamSlot>& param_table()
{
  static const std::map<std::string, ParamSlot> table = {
    {"L_hum", {[](RunConfig& c) -> double& { return c.stopping.human_stride; }}},
    {"X_off", {[](RunConfig& c) -> double& { return c.stopping.offset; }}},
    {"H_w", {[](RunConfig& c) -> double& { return c.stopping.shoulder_width; }}},
    {"a_mov", {[](RunConfig& c) -> double& { return c.stopping.decel; }}},
    {"S_cst", {[](RunConfig& c) -> double& { return c.bsl_cost.cost_scaling_factor; }}},
    {"inflation_scaling", {[](RunConfig& c) -> double& { return c.inflation.cost_scaling_factor; }}},
    {"A_cst", {[](RunConfig& c) -> double& { return c.bsl_cost.max_cost; }}},
    {"W_pos", {[](RunConfig& c) -> double& { return c.dwa.weights.path; }}},
    {"W_gol", {[](RunConfig& c) -> double& { return c.dwa.weights.goal; }}},
    {"W_obs", {[](RunConfig& c) -> double& { return c.dwa.weights.obstacle; }}},
    {"W_dan", {[](RunConfig& c) -> double& { return c.dwa.weights.danger; }}},
    {"W_vel", {[](RunConfig& c) -> double& { return c.dwa.weights.velocity; }}},
    {"T_pre", {[](RunConfig& c) -> double& { return c.dwa.predict_time; }}},
    {"Z_thr", {[](RunConfig& c) -> double& { return c.jump_threshold; }}},
    {"dt_sim", {[](RunConfig& c) -> double& { return c.dwa.dt_sim; }}},
    {"eps_vel", {[](RunConfig& c) -> double& { return c.dwa.eps_vel; }}},
    {"v_max", {[](RunConfig& c) -> double& { return c.limits.v_max; }}},
    {"w_max", {[](RunConfig& c) -> double& { return c.limits.w_max; }}},
    {"acc_v", {[](RunConfig& c) -> double& { return c.limits.acc_v; }}},
    {"acc_w", {[](RunConfig& c) -> double& { return c.limits.acc_w; }}},
    {"dt_ctrl", {[](RunConfig& c) -> double& { return c.dt_ctrl; }}},
    {"resolution", {[](RunConfig& c) -> double& { return c.resolution; }}},
    {"window_size", {[](RunConfig& c) -> double& { return c.window_size; }}},
    {"timeout", {[](RunConfig& c) -> double& { return c.timeout; }}},
    {"replan_period", {[](RunConfig& c) -> double& { return c.replan_period; }}},
    {"robot_radius", {[](RunConfig& c) -> double& { return c.robot_radius; }}},
    {"inflation_radius", {[](RunConfig& c) -> double& { return c.inflation.inflation_radius; }}},
    {"cost_penalty", {[](RunConfig& c) -> double& { return c.astar.cost_penalty; }}},
    {"voxel_size", {[](RunConfig& c) -> double& { return c.cloud.voxel_size; }}},
    {"z_min", {[](RunConfig& c) -> double& { return c.cloud.z_min; }}},
    {"z_max", {[](RunConfig& c) -> double& { return c.cloud.z_max; }}},
    {"cluster_tolerance", {[](RunConfig& c) -> double& { return c.cloud.cluster_tolerance; }}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& RunConfig::keys()
{
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& [name, slot] : param_table()) out.push_back(name);
    out.insert(out.end(), {"v_samples", "w_samples", "min_cluster_size"});
    std::sort(out.begin(), out.end());
    return out;
  }();
  return k;
}

void RunConfig::set(const std::string& key, double value)
{
  if (!std::isfinite(value)) throw InvalidParameter("parameter " + key + " must be finite");
  auto as_count = [&] {
    if (value < 0 || value != std::floor(value)) throw InvalidParameter("parameter " + key + " must be a count");
    return static_cast<int>(value);
  };
  if (key == "v_samples") dwa.v_samples = as_count();
  else if (key == "w_samples") dwa.w_samples = as_count();
  else if (key == "min_cluster_size") cloud.min_cluster_size = static_cast<std::size_t>(as_count());
  else
  {
    auto it = param_table().find(key);
    if (it == param_table().end()) throw InvalidParameter("unknown parameter " + key);
    it->second.ref(*this) = value;
    // The blind-spot scaling factor also shapes the inflation decay.
    if (key == "S_cst") inflation.cost_scaling_factor = value;
    if (key == "robot_radius") inflation.inscribed_radius = value;
  }
}

double RunConfig::get(const std::string& key) const
{
  if (key == "v_samples") return dwa.v_samples;
  if (key == "w_samples") return dwa.w_samples;
  if (key == "min_cluster_size") return static_cast<double>(cloud.min_cluster_size);
  auto it = param_table().find(key);
  if (it == param_table().end()) throw InvalidParameter("unknown parameter " + key);
  RunConfig copy = *this;
  return it->second.ref(copy);
}

void RunConfig::validate() const
{
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidParameter(what);
  };
  require(dt_ctrl > 0 && dwa.dt_sim > 0 && dwa.predict_time > 0, "time steps must be positive");
  require(std::abs(std::round(dwa.predict_time / dwa.dt_sim) * dwa.dt_sim - dwa.predict_time) < 1e-9,
          "dt_sim must divide T_pre");
  require(std::abs(std::round(dt_ctrl / dwa.dt_sim) * dwa.dt_sim - dt_ctrl) < 1e-9, "dt_sim must divide dt_ctrl");
  require(dwa.v_samples >= 2 && dwa.w_samples >= 2, "need at least two velocity samples per axis");
  const DwaWeights& w = dwa.weights;
  require(w.path >= 0 && w.goal >= 0 && w.obstacle >= 0 && w.danger >= 0 && w.velocity >= 0,
          "weights must be non-negative");
  require(dwa.eps_vel > 0, "eps_vel must be positive");
  require(stopping.decel < 0, "a_mov must be negative");
  require(stopping.human_stride >= 0 && stopping.offset >= 0 && stopping.shoulder_width >= 0,
          "stopping distances must be non-negative");
  require(bsl_cost.max_cost >= 0 && bsl_cost.max_cost <= 254, "A_cst must lie in [0, 254]");
  require(bsl_cost.cost_scaling_factor >= 0 && inflation.cost_scaling_factor >= 0, "scaling must be non-negative");
  require(limits.v_max > 0 && limits.v_min >= 0 && limits.v_min <= limits.v_max, "bad translational limits");
  require(limits.w_max > 0 && limits.acc_v > 0 && limits.acc_w > 0, "limits must be positive");
  require(jump_threshold > 0, "Z_thr must be positive");
  require(resolution > 0 && window_size >= 4 * resolution, "bad grid geometry");
  require(robot_radius > 0 && inflation.inscribed_radius > 0 &&
            inflation.inscribed_radius <= inflation.inflation_radius,
          "need 0 < robot_radius <= inflation_radius");
  require(astar.cost_penalty >= 0, "cost_penalty must be non-negative");
  require(cloud.voxel_size > 0 && cloud.cluster_tolerance > 0 && cloud.z_min < cloud.z_max &&
            cloud.min_cluster_size >= 1,
          "bad point-cloud pipeline settings");
  require(timeout > 0 && replan_period > 0, "timeout and replan_period must be positive");
}

// ---------------------------------------------------------------- scenario files

namespace
{

double num(const json& j, const char* key)
{
  if (!j.contains(key)) throw ScenarioError(std::string("missing key '") + key + "'");
  if (!j.at(key).is_number()) throw ScenarioError(std::string("key '") + key + "' must be a number");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw ScenarioError(std::string("key '") + key + "' must be finite");
  return v;
}

double num_or(const json& j, const char* key, double fallback) { return j.contains(key) ? num(j, key) : fallback; }

constexpr double kDeg = kPi / 180.0;

}  // namespace

Scenario parse_scenario(const std::string& text, const std::filesystem::path& base_dir)
{
  json root;
  try
  {
    root = json::parse(text);
  }
  catch (const json::parse_error& e)
  {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ScenarioError("scenario root must be an object");

  Scenario sc;
  try
  {
    sc.name = root.value("name", std::string());
    const json& world = root.at("world");
    for (const json& b : world.value("boxes", json::array()))
    {
      const double x = num(b, "x"), y = num(b, "y"), w = num(b, "w"), h = num(b, "h");
      if (!(w > 0 && h > 0)) throw ScenarioError("box extents must be positive");
      const double height = num_or(b, "height", 1.0);
      if (!(height > 0)) throw ScenarioError("box height must be positive");
      sc.world.boxes.push_back({{Point2(x, y), Point2(x + w, y + h)}, height});
    }
    if (world.contains("dynamic"))
    {
      const json& d = world.at("dynamic");
      DynamicObstacle ob;
      ob.start = {num(d, "x"), num(d, "y")};
      const Point2 dir(num(d, "dir_x"), num(d, "dir_y"));
      if (!(dir.norm() > 0)) throw ScenarioError("pedestrian direction must be non-zero");
      ob.direction = dir.normalized();
      const double kmh = num(d, "speed_kmh");
      if (kmh < 0) throw ScenarioError("pedestrian speed must be non-negative");
      ob.speed = kmh / 3.6;
      ob.radius = num_or(d, "radius", 0.25);
      ob.height = num_or(d, "height", 1.7);
      if (!(ob.radius > 0)) throw ScenarioError("pedestrian radius must be positive");
      if (!world.contains("trigger")) throw ScenarioError("a dynamic obstacle needs a trigger line");
      const json& t = world.at("trigger");
      ob.trigger = {{num(t, "ax"), num(t, "ay")}, {num(t, "bx"), num(t, "by")}};
      if (ob.trigger.a == ob.trigger.b) throw ScenarioError("trigger line is degenerate");
      sc.world.dynamic = ob;
    }
    if (world.contains("static_map"))
      sc.static_map_path = base_dir / world.at("static_map").get<std::string>();

    const json& robot = root.at("robot");
    const json& start = robot.at("start");
    sc.world.start_pose = {num(start, "x"), num(start, "y"), num_or(start, "theta", 0.0)};
    const json& goal = robot.at("goal");
    sc.world.goal = {num(goal, "x"), num(goal, "y")};
    sc.world.goal_tolerance = num_or(robot, "tolerance", 0.3);
    if (!(sc.world.goal_tolerance > 0)) throw ScenarioError("goal tolerance must be positive");
    sc.robot.footprint_radius = num_or(robot, "radius", 0.2);
    if (!(sc.robot.footprint_radius > 0)) throw ScenarioError("robot radius must be positive");

    if (root.contains("sensors"))
    {
      const json& s = root.at("sensors");
      if (s.contains("lrf"))
      {
        const json& l = s.at("lrf");
        sc.lrf.fov = num_or(l, "fov_deg", sc.lrf.fov / kDeg) * kDeg;
        sc.lrf.ray_count = static_cast<int>(num_or(l, "rays", sc.lrf.ray_count));
        sc.lrf.max_range = num_or(l, "max_range", sc.lrf.max_range);
        sc.lrf.noise = num_or(l, "noise", 0.0);
        if (sc.lrf.ray_count < 2 || !(sc.lrf.max_range > 0) || !(sc.lrf.fov > 0) || sc.lrf.noise < 0)
          throw ScenarioError("bad LRF model");
      }
      if (s.contains("camera"))
      {
        const json& c = s.at("camera");
        DepthCamSpec& cam = sc.camera;
        cam.h_fov = num_or(c, "h_fov_deg", cam.h_fov / kDeg) * kDeg;
        cam.v_fov = num_or(c, "v_fov_deg", cam.v_fov / kDeg) * kDeg;
        cam.h_res = static_cast<int>(num_or(c, "h_res", cam.h_res));
        cam.v_res = static_cast<int>(num_or(c, "v_res", cam.v_res));
        cam.min_range = num_or(c, "min_range", cam.min_range);
        cam.max_range = num_or(c, "max_range", cam.max_range);
        cam.ground_plane = c.value("ground_plane", cam.ground_plane);
        if (cam.h_res < 2 || cam.v_res < 2 || !(cam.min_range > 0) || !(cam.min_range < cam.max_range))
          throw ScenarioError("bad depth camera model");
        if (c.contains("mounts"))
        {
          sc.robot.cameras.clear();
          for (const json& m : c.at("mounts"))
            sc.robot.cameras.push_back({num(m, "yaw_deg") * kDeg, num(m, "height")});
        }
      }
    }
    if (root.contains("planner"))
      for (const auto& [key, value] : root.at("planner").items())
      {
        if (!value.is_number()) throw ScenarioError("planner override '" + key + "' must be a number");
        sc.overrides[key] = value.get<double>();
      }
  }
  catch (const json::exception& e)
  {
    throw ScenarioError(std::string("scenario structure: ") + e.what());
  }

  for (const Box& b : sc.world.boxes)
  {
    if (b.footprint.contains(sc.world.start_pose.position())) throw ScenarioError("start lies inside an obstacle");
    if (b.footprint.contains(sc.world.goal)) throw ScenarioError("goal lies inside an obstacle");
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  Scenario sc = parse_scenario(buf.str(), path.parent_path());
  if (sc.name.empty()) sc.name = path.stem().string();
  return sc;
}

}  // namespace bslnav
