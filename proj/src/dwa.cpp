#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bslnav/planning.hpp"

namespace bslnav
{

VelocityWindow dynamic_window(double v, double w, const VelocityLimits& limits, double dt_ctrl)
{
  if (!(dt_ctrl > 0)) throw std::invalid_argument("control period must be positive");
  VelocityWindow win{};
  win.v_hi = std::clamp(v + limits.acc_v * dt_ctrl, limits.v_min, limits.v_max);
  win.v_lo = std::clamp(v - limits.acc_v * dt_ctrl, limits.v_min, win.v_hi);
  win.w_hi = std::clamp(w + limits.acc_w * dt_ctrl, -limits.w_max, limits.w_max);
  win.w_lo = std::clamp(w - limits.acc_w * dt_ctrl, -limits.w_max, win.w_hi);
  return win;
}

Pose2D integrate(const Pose2D& start, double v, double w, double dt)
{
  // Chord form of the arc: length v*dt*sinc(h) along the mid heading, h = w*dt/2.
  // Reduces to the straight line at w = 0 and stays well conditioned for tiny w.
  const double th = start.theta();
  const double h = 0.5 * w * dt;
  const double sinc = std::abs(h) < 1e-4 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
  const double chord = v * dt * sinc;
  const double mid = th + h;
  return {start.x() + chord * std::cos(mid), start.y() + chord * std::sin(mid), th + w * dt};
}

std::vector<Pose2D> rollout(const Pose2D& start, double v, double w, double horizon, double dt_sim)
{
  if (!(dt_sim > 0) || !(horizon > 0)) throw std::invalid_argument("rollout: horizon and step must be positive");
  const long steps = std::lround(horizon / dt_sim);
  if (std::abs(static_cast<double>(steps) * dt_sim - horizon) > 1e-9)
    throw std::invalid_argument("rollout: step does not divide the horizon");
  std::vector<Pose2D> poses;
  poses.reserve(static_cast<std::size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k) poses.push_back(integrate(start, v, w, static_cast<double>(k) * dt_sim));
  return poses;
}

double weighted_total(const CostBreakdown& c, const DwaConfig& cfg)
{
  if (!c.admissible) return kInadmissible;
  const DwaWeights& wt = cfg.weights;
  const double map_weight = cfg.method == Method::Method1 ? wt.obstacle : wt.danger;
  double j = wt.path * c.path + wt.goal * c.goal + map_weight * c.map;
  if (cfg.method == Method::Method4) j += wt.velocity * c.velocity;
  return j;
}

CostBreakdown evaluate_candidate(const TrajectoryCandidate& t, const GlobalPath& path, const Point2& goal,
                                 const Costmap& master, const DwaConfig& cfg)
{
  CostBreakdown c;
  if (t.poses.empty()) return c;
  int worst = 0;
  bool admissible = true;
  for (const Pose2D& p : t.poses)
  {
    const auto cell = master.world_to_cell(p.position());
    if (!cell)
    {
      admissible = false;
      break;
    }
    worst = std::max<int>(worst, master.at(*cell));
    if (worst >= cost::kLethal)
    {
      admissible = false;
      break;
    }
  }
  const Point2 end = t.poses.back().position();
  c.path = distance_to_path(end, path);
  c.goal = (end - goal).norm();
  c.map = static_cast<double>(worst) / cost::kLethal;
  c.velocity = 1.0 / std::max(t.v, cfg.eps_vel);
  c.admissible = admissible;
  c.total = weighted_total(c, cfg);
  return c;
}

std::vector<TrajectoryCandidate> generate_candidates(const Pose2D& pose, double v, double w,
                                                     const VelocityLimits& limits, const DwaConfig& cfg,
                                                     double dt_ctrl)
{
  if (cfg.v_samples < 2 || cfg.w_samples < 2) throw std::invalid_argument("need at least two samples per axis");
  const VelocityWindow win = dynamic_window(v, w, limits, dt_ctrl);
  std::vector<TrajectoryCandidate> out;
  out.reserve(static_cast<std::size_t>(cfg.v_samples) * cfg.w_samples);
  for (int i = 0; i < cfg.v_samples; ++i)
  {
    const double vs = win.v_lo + (win.v_hi - win.v_lo) * i / (cfg.v_samples - 1);
    for (int j = 0; j < cfg.w_samples; ++j)
    {
      double ws = win.w_lo + (win.w_hi - win.w_lo) * j / (cfg.w_samples - 1);
      if (std::abs(ws) < 1e-12) ws = 0.0;
      out.push_back({vs, ws, rollout(pose, vs, ws, cfg.predict_time, cfg.dt_sim), {}});
    }
  }
  return out;
}

bool prefer_on_tie(const TrajectoryCandidate& a, const TrajectoryCandidate& b)
{
  if (a.v != b.v) return a.v > b.v;
  return std::abs(a.w) < std::abs(b.w);
}

namespace
{

template <typename TotalFn>
VelocityCommand select_by(std::span<const TrajectoryCandidate> candidates, TotalFn total, double v_current,
                          const VelocityLimits& limits, double dt_ctrl)
{
  std::optional<std::size_t> best;
  double best_total = kInadmissible;
  for (std::size_t i = 0; i < candidates.size(); ++i)
  {
    const double j = total(candidates[i]);
    if (!(j < kInadmissible)) continue;
    if (!best || j < best_total || (j == best_total && prefer_on_tie(candidates[i], candidates[*best])))
    {
      best = i;
      best_total = j;
    }
  }
  if (!best) return {std::max(v_current - limits.acc_v * dt_ctrl, 0.0), 0.0, std::nullopt};
  return {candidates[*best].v, candidates[*best].w, best};
}

}  // namespace

VelocityCommand select_velocity(std::span<const TrajectoryCandidate> candidates, double v_current,
                                const VelocityLimits& limits, double dt_ctrl)
{
  return select_by(
    candidates, [](const TrajectoryCandidate& c) { return c.costs.total; }, v_current, limits, dt_ctrl);
}

VelocityCommand select_velocity(std::span<const TrajectoryCandidate> candidates, const DwaConfig& cfg,
                                double v_current, const VelocityLimits& limits, double dt_ctrl)
{
  return select_by(
    candidates, [&](const TrajectoryCandidate& c) { return weighted_total(c.costs, cfg); }, v_current, limits,
    dt_ctrl);
}

}  // namespace bslnav
