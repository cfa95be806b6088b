#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bslnav/costmap.hpp"
#include "bslnav/geometry.hpp"

namespace bslnav
{

// ---------------------------------------------------------------- global planner

struct GlobalPath
{
  std::vector<Point2> waypoints;
  double length{0};
  /// Accumulated edge weight of the grid path.
  double cost{0};

  bool empty() const { return waypoints.empty(); }
};

struct PlanningError : std::runtime_error
{
  enum class Kind
  {
    NoPath,
    InvalidEndpoint
  };
  PlanningError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

struct AStarConfig
{
  /// Edge weight = step * (1 + cost / 254 * cost_penalty).
  double cost_penalty{3.0};
};

/// Weight of entering `cell_cost` with a step of `step` meters.
double grid_edge_weight(double step, std::uint8_t cell_cost, const AStarConfig& cfg);

/// 8-connected A*; diagonal moves may not cut lethal corners. Throws PlanningError.
GlobalPath astar_plan(const Costmap& master, const Point2& start, const Point2& goal, const AStarConfig& cfg = {});

/// Distance from p to the nearest point of the waypoint polyline.
double distance_to_path(const Point2& p, const GlobalPath& path);

// ---------------------------------------------------------------- local planner

struct VelocityLimits
{
  double v_max{0.556};
  double v_min{0.0};
  double w_max{1.0};
  double acc_v{0.5};
  double acc_w{2.0};
};

/// Cost-function variant. Method1 has no blind-spot layer; Method4 adds the velocity term.
enum class Method
{
  Method1 = 1,
  Method2 = 2,
  Method3 = 3,
  Method4 = 4
};

struct DwaWeights
{
  double path{2.0};
  double goal{1.0};
  double obstacle{10.0};
  double danger{10.0};
  double velocity{0.5};
};

struct DwaConfig
{
  DwaWeights weights;
  double predict_time{4.0};
  double dt_sim{0.1};
  int v_samples{11};
  int w_samples{21};
  Method method{Method::Method4};
  double eps_vel{0.01};
};

inline constexpr double kInadmissible = std::numeric_limits<double>::infinity();

struct CostBreakdown
{
  double path{0};      // distance from the rollout end to the global path
  double goal{0};      // distance from the rollout end to the goal
  double map{0};       // max master cost along the rollout / 254
  double velocity{0};  // 1 / max(v, eps)
  double total{kInadmissible};
  bool admissible{false};
};

struct TrajectoryCandidate
{
  double v{0};
  double w{0};
  std::vector<Pose2D> poses;
  CostBreakdown costs;
};

struct VelocityWindow
{
  double v_lo, v_hi;
  double w_lo, w_hi;
};

VelocityWindow dynamic_window(double v, double w, const VelocityLimits& limits, double dt_ctrl);

/// Exact unicycle motion under constant (v, w) for `dt` seconds.
Pose2D integrate(const Pose2D& start, double v, double w, double dt);

/// Poses at k * dt_sim, k = 0 .. horizon / dt_sim.
std::vector<Pose2D> rollout(const Pose2D& start, double v, double w, double horizon, double dt_sim);

/// Weighted total for the configured method.
double weighted_total(const CostBreakdown& c, const DwaConfig& cfg);

CostBreakdown evaluate_candidate(const TrajectoryCandidate& t, const GlobalPath& path, const Point2& goal,
                                 const Costmap& master, const DwaConfig& cfg);

/// Samples the dynamic window and rolls every sample out. Costs are left unevaluated.
std::vector<TrajectoryCandidate> generate_candidates(const Pose2D& pose, double v, double w,
                                                     const VelocityLimits& limits, const DwaConfig& cfg,
                                                     double dt_ctrl);

struct VelocityCommand
{
  double v{0};
  double w{0};
  /// Index of the chosen candidate; empty for the braking fallback.
  std::optional<std::size_t> index;
};

/// True when candidate a should win over b at equal totals.
bool prefer_on_tie(const TrajectoryCandidate& a, const TrajectoryCandidate& b);

/// Argmin of the evaluated totals with the (higher v, smaller |w|) tie rule. Falls back to
/// braking straight ahead when nothing is admissible.
VelocityCommand select_velocity(std::span<const TrajectoryCandidate> candidates, double v_current,
                                const VelocityLimits& limits, double dt_ctrl);

/// Re-weights already evaluated candidates under cfg and selects.
VelocityCommand select_velocity(std::span<const TrajectoryCandidate> candidates, const DwaConfig& cfg,
                                double v_current, const VelocityLimits& limits, double dt_ctrl);

}  // namespace bslnav
