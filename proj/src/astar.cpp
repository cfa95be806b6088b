#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <tuple>

#include "bslnav/planning.hpp"

namespace bslnav
{

double grid_edge_weight(double step, std::uint8_t cell_cost, const AStarConfig& cfg)
{
  return step * (1.0 + static_cast<double>(cell_cost) / cost::kLethal * cfg.cost_penalty);
}

GlobalPath astar_plan(const Costmap& master, const Point2& start, const Point2& goal, const AStarConfig& cfg)
{
  using Kind = PlanningError::Kind;
  const auto s = master.world_to_cell(start);
  const auto g = master.world_to_cell(goal);
  if (!s || !g) throw PlanningError(Kind::InvalidEndpoint, "start or goal outside the map");
  if (master.at(*s) >= cost::kLethal || master.at(*g) >= cost::kLethal)
    throw PlanningError(Kind::InvalidEndpoint, "start or goal on a lethal cell");

  const int w = master.width();
  const double res = master.resolution();
  auto id = [w](int x, int y) { return static_cast<std::size_t>(y) * w + x; };
  auto blocked = [&](int x, int y) { return !master.in_bounds(x, y) || master.at(x, y) >= cost::kLethal; };
  auto heuristic = [&](int x, int y) { return res * std::hypot(x - g->x, y - g->y); };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> best(master.size(), kInf);
  std::vector<std::int64_t> parent(master.size(), -1);
  std::vector<bool> closed(master.size(), false);

  // (f, insertion order, cell id); the counter keeps pops deterministic on ties.
  using Entry = std::tuple<double, std::uint64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t counter = 0;
  best[id(s->x, s->y)] = 0.0;
  open.emplace(heuristic(s->x, s->y), counter++, id(s->x, s->y));

  static constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
  static constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
  const std::size_t goal_id = id(g->x, g->y);

  while (!open.empty())
  {
    const auto [f, order, cur] = open.top();
    open.pop();
    if (closed[cur]) continue;
    closed[cur] = true;
    if (cur == goal_id) break;
    const int cx = static_cast<int>(cur % w);
    const int cy = static_cast<int>(cur / w);
    for (int k = 0; k < 8; ++k)
    {
      const int nx = cx + kDx[k], ny = cy + kDy[k];
      if (blocked(nx, ny)) continue;
      const bool diagonal = kDx[k] != 0 && kDy[k] != 0;
      if (diagonal && (blocked(cx + kDx[k], cy) || blocked(cx, cy + kDy[k]))) continue;
      const std::size_t nid = id(nx, ny);
      if (closed[nid]) continue;
      const double step = diagonal ? res * std::sqrt(2.0) : res;
      const double cand = best[cur] + grid_edge_weight(step, master.at(nx, ny), cfg);
      if (cand < best[nid])
      {
        best[nid] = cand;
        parent[nid] = static_cast<std::int64_t>(cur);
        open.emplace(cand + heuristic(nx, ny), counter++, nid);
      }
    }
  }

  if (!closed[goal_id]) throw PlanningError(Kind::NoPath, "goal unreachable");

  GlobalPath path;
  path.cost = best[goal_id];
  for (std::int64_t c = static_cast<std::int64_t>(goal_id); c >= 0; c = parent[c])
  {
    const CellIndex cell{static_cast<int>(c % w), static_cast<int>(c / w)};
    path.waypoints.push_back(master.cell_center(cell));
  }
  std::reverse(path.waypoints.begin(), path.waypoints.end());
  for (std::size_t i = 1; i < path.waypoints.size(); ++i)
    path.length += (path.waypoints[i] - path.waypoints[i - 1]).norm();
  return path;
}

double distance_to_path(const Point2& p, const GlobalPath& path)
{
  if (path.waypoints.empty()) return 0.0;
  if (path.waypoints.size() == 1) return (p - path.waypoints.front()).norm();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < path.waypoints.size(); ++i)
    best = std::min(best, point_segment_distance(p, {path.waypoints[i - 1], path.waypoints[i]}));
  return best;
}

}  // namespace bslnav
