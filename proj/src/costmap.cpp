#include "bslnav/costmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bslnav
{

Costmap::Costmap(double resolution, const Point2& origin, int width, int height, std::uint8_t fill)
  : resolution_(resolution), origin_(origin), width_(width), height_(height)
{
  if (!(resolution > 0) || width < 0 || height < 0) throw std::invalid_argument("costmap: bad geometry");
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

std::optional<CellIndex> Costmap::world_to_cell(const Point2& p) const
{
  const CellIndex c = world_to_cell_unchecked(p);
  if (!in_bounds(c)) return std::nullopt;
  return c;
}

CellIndex Costmap::world_to_cell_unchecked(const Point2& p) const
{
  const double fx = std::floor((p.x() - origin_.x()) / resolution_);
  const double fy = std::floor((p.y() - origin_.y()) / resolution_);
  // Clamp before the cast so far-away points stay representable.
  constexpr double lim = 1e9;
  return {static_cast<int>(std::clamp(fx, -lim, lim)), static_cast<int>(std::clamp(fy, -lim, lim))};
}

Point2 Costmap::cell_center(const CellIndex& c) const
{
  return origin_ + resolution_ * Point2(c.x + 0.5, c.y + 0.5);
}

void Costmap::fill(std::uint8_t value) { std::fill(cells_.begin(), cells_.end(), value); }

bool Costmap::congruent(const Costmap& other) const
{
  return width_ == other.width_ && height_ == other.height_ && resolution_ == other.resolution_ &&
         origin_ == other.origin_;
}

Point2 window_origin(const Costmap& lattice, const Point2& center, int cells)
{
  const double res = lattice.resolution();
  const Point2 corner = center - Point2::Constant(0.5 * cells * res);
  const Point2 rel = (corner - lattice.origin()) / res;
  return lattice.origin() + res * Point2(std::floor(rel.x()), std::floor(rel.y()));
}

Costmap crop(const Costmap& source, const Point2& origin, int width, int height, std::uint8_t outside)
{
  const double res = source.resolution();
  const Point2 rel = (origin - source.origin()) / res;
  const int dx = static_cast<int>(std::lround(rel.x()));
  const int dy = static_cast<int>(std::lround(rel.y()));
  Costmap out(res, source.origin() + res * Point2(dx, dy), width, height, outside);
  for (int y = 0; y < height; ++y)
  {
    const int sy = y + dy;
    if (sy < 0 || sy >= source.height()) continue;
    for (int x = 0; x < width; ++x)
    {
      const int sx = x + dx;
      if (sx >= 0 && sx < source.width()) out.at(x, y) = source.at(sx, sy);
    }
  }
  return out;
}

namespace
{

// Liang-Barsky clip of p0 + t * d, t in [0, 1], against an axis-aligned box.
bool clip_segment(const Point2& p0, const Point2& d, const Point2& lo, const Point2& hi, double& t0, double& t1)
{
  t0 = 0.0;
  t1 = 1.0;
  for (int axis = 0; axis < 2; ++axis)
  {
    if (d[axis] == 0.0)
    {
      if (p0[axis] < lo[axis] || p0[axis] > hi[axis]) return false;
      continue;
    }
    double ta = (lo[axis] - p0[axis]) / d[axis];
    double tb = (hi[axis] - p0[axis]) / d[axis];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

}  // namespace

std::vector<CellIndex> trace_cells(const Costmap& map, const Point2& start, const Point2& end)
{
  std::vector<CellIndex> cells;
  const double res = map.resolution();
  const Point2 lo = map.origin();
  const Point2 hi = lo + res * Point2(map.width(), map.height());
  const Point2 d = end - start;
  double t0 = 0, t1 = 1;
  if (map.width() == 0 || map.height() == 0 || !clip_segment(start, d, lo, hi, t0, t1)) return cells;

  const std::optional<CellIndex> end_cell = map.world_to_cell(end);
  const Point2 entry = start + t0 * d;
  CellIndex c = map.world_to_cell_unchecked(entry);
  c.x = std::clamp(c.x, 0, map.width() - 1);
  c.y = std::clamp(c.y, 0, map.height() - 1);

  const int step_x = d.x() > 0 ? 1 : -1;
  const int step_y = d.y() > 0 ? 1 : -1;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto boundary_t = [&](int axis, int cell, int step) {
    if (d[axis] == 0.0) return kInf;
    const double edge = lo[axis] + res * (cell + (step > 0 ? 1 : 0));
    return (edge - start[axis]) / d[axis];
  };
  double t_max_x = boundary_t(0, c.x, step_x);
  double t_max_y = boundary_t(1, c.y, step_y);
  const double t_delta_x = d.x() != 0.0 ? res / std::abs(d.x()) : kInf;
  const double t_delta_y = d.y() != 0.0 ? res / std::abs(d.y()) : kInf;

  while (map.in_bounds(c))
  {
    if (end_cell && c == *end_cell) break;
    cells.push_back(c);
    if (std::min(t_max_x, t_max_y) > t1) break;
    if (t_max_x < t_max_y)
    {
      c.x += step_x;
      t_max_x += t_delta_x;
    }
    else
    {
      c.y += step_y;
      t_max_y += t_delta_y;
    }
  }
  return cells;
}

void update_obstacle_layer(Costmap& layer, const LaserScan& scan, const Pose2D& sensor_pose)
{
  const Point2 origin = sensor_pose.position();
  std::vector<CellIndex> hits;
  for (std::size_t i = 0; i < scan.size(); ++i)
  {
    const double r = std::clamp(scan.ranges[i], 0.0, scan.max_range);
    const Point2 end = origin + polar_to_cartesian(r, sensor_pose.theta() + scan.bearing(i));
    for (const CellIndex& c : trace_cells(layer, origin, end)) layer.at(c) = cost::kFree;
    if (r < scan.max_range)
      if (auto c = layer.world_to_cell(end)) hits.push_back(*c);
  }
  for (const CellIndex& c : hits) layer.at(c) = cost::kLethal;
}

std::uint8_t inflation_cost(double d, const InflationConfig& cfg)
{
  if (d < cfg.inscribed_radius) return cost::kLethal;
  if (d > cfg.inflation_radius) return cost::kFree;
  const double c = cost::kInscribed * std::exp(-cfg.cost_scaling_factor * (d - cfg.inscribed_radius));
  return static_cast<std::uint8_t>(std::floor(c));
}

void update_inflation_layer(Costmap& layer, const Costmap& source, const InflationConfig& cfg)
{
  if (!layer.congruent(source)) throw std::invalid_argument("inflation: layers are not congruent");
  layer.fill(cost::kFree);
  const double res = layer.resolution();
  const int reach = static_cast<int>(std::ceil(cfg.inflation_radius / res));

  struct Offset
  {
    int dx, dy;
    std::uint8_t value;
  };
  std::vector<Offset> kernel;
  for (int dy = -reach; dy <= reach; ++dy)
    for (int dx = -reach; dx <= reach; ++dx)
    {
      const std::uint8_t v = inflation_cost(res * std::hypot(dx, dy), cfg);
      if (v > 0) kernel.push_back({dx, dy, v});
    }

  for (int y = 0; y < source.height(); ++y)
    for (int x = 0; x < source.width(); ++x)
    {
      if (source.at(x, y) != cost::kLethal) continue;
      for (const Offset& k : kernel)
      {
        const int nx = x + k.dx, ny = y + k.dy;
        if (!layer.in_bounds(nx, ny)) continue;
        std::uint8_t& cell = layer.at(nx, ny);
        cell = std::max(cell, k.value);
      }
    }
}

std::uint8_t blind_spot_cost(double l, const BslCostConfig& cfg)
{
  const double c = cfg.max_cost * std::exp(-cfg.cost_scaling_factor * l);
  return static_cast<std::uint8_t>(std::clamp(std::floor(c), 0.0, 255.0));
}

void write_blind_spot_costs(Costmap& layer, std::span<const DangerZone> zones, const BslCostConfig& cfg)
{
  const double res = layer.resolution();
  for (const DangerZone& z : zones)
  {
    if (z.radius < 0) throw std::invalid_argument("blind spot zone with negative radius");
    // Distances run between cell centers, so the cell holding the zone center gets the peak cost.
    const Point2 center = layer.cell_center(layer.world_to_cell_unchecked(z.center));
    const CellIndex lo = layer.world_to_cell_unchecked(center - Point2::Constant(z.radius + res));
    const CellIndex hi = layer.world_to_cell_unchecked(center + Point2::Constant(z.radius + res));
    for (int y = std::max(lo.y, 0); y <= std::min(hi.y, layer.height() - 1); ++y)
      for (int x = std::max(lo.x, 0); x <= std::min(hi.x, layer.width() - 1); ++x)
      {
        const double l = (layer.cell_center({x, y}) - center).norm();
        if (l > z.radius) continue;
        std::uint8_t& cell = layer.at(x, y);
        cell = std::max(cell, blind_spot_cost(l, cfg));
      }
  }
}

LayerStack LayerStack::congruent_to(const Costmap& g)
{
  const Costmap blank(g.resolution(), g.origin(), g.width(), g.height(), cost::kFree);
  return {blank, blank, blank, blank, true};
}

Costmap max_merge(const Costmap& a, const Costmap& b)
{
  if (!a.congruent(b)) throw std::invalid_argument("max_merge: layers are not congruent");
  Costmap out = a;
  auto dst = out.data();
  auto src = b.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = std::max(dst[i], src[i]);
  return out;
}

Costmap compose_master(const LayerStack& stack)
{
  Costmap master = max_merge(max_merge(stack.static_layer, stack.obstacle_layer), stack.inflation_layer);
  if (stack.bsl_enabled) master = max_merge(master, stack.bsl_layer);
  for (auto& c : master.data())
    if (c == cost::kUnknown) c = cost::kLethal;
  return master;
}

}  // namespace bslnav
