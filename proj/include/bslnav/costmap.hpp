#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bslnav/geometry.hpp"
#include "bslnav/sensor_data.hpp"

namespace bslnav
{

namespace cost
{
inline constexpr std::uint8_t kFree = 0;
inline constexpr std::uint8_t kInscribed = 253;
inline constexpr std::uint8_t kLethal = 254;
inline constexpr std::uint8_t kUnknown = 255;
}  // namespace cost

struct CellIndex
{
  int x{0};
  int y{0};

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

/// Axis-aligned grid of 8-bit costs. Cell (0, 0) has its lower-left corner at origin;
/// cells are stored row-major with x fastest.
class Costmap
{
public:
  Costmap() = default;
  Costmap(double resolution, const Point2& origin, int width, int height, std::uint8_t fill = cost::kFree);

  double resolution() const { return resolution_; }
  const Point2& origin() const { return origin_; }
  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return cells_.size(); }

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  bool in_bounds(const CellIndex& c) const { return in_bounds(c.x, c.y); }

  std::uint8_t at(int x, int y) const { return cells_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return cells_[index(x, y)]; }
  std::uint8_t at(const CellIndex& c) const { return at(c.x, c.y); }
  std::uint8_t& at(const CellIndex& c) { return at(c.x, c.y); }

  /// Empty when the point is not covered by the grid.
  std::optional<CellIndex> world_to_cell(const Point2& p) const;
  /// Cell containing p without the bounds check.
  CellIndex world_to_cell_unchecked(const Point2& p) const;
  Point2 cell_center(const CellIndex& c) const;

  std::span<const std::uint8_t> data() const { return cells_; }
  std::span<std::uint8_t> data() { return cells_; }

  void fill(std::uint8_t value);
  bool congruent(const Costmap& other) const;

  friend bool operator==(const Costmap&, const Costmap&) = default;

private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  double resolution_{0.05};
  Point2 origin_{Point2::Zero()};
  int width_{0};
  int height_{0};
  std::vector<std::uint8_t> cells_;
};

/// Copies the region of `source` covered by a grid of the given geometry. The origin is snapped
/// onto the source lattice; cells outside `source` receive `outside`.
Costmap crop(const Costmap& source, const Point2& origin, int width, int height,
             std::uint8_t outside = cost::kUnknown);

/// Grid-aligned origin of a square window of `cells` cells roughly centered on `center`.
Point2 window_origin(const Costmap& lattice, const Point2& center, int cells);

/// Rasterizes a beam from `start` to `end`: every traversed cell except the one holding `end`.
/// The segment is clipped to the grid first.
std::vector<CellIndex> trace_cells(const Costmap& map, const Point2& start, const Point2& end);

/// Clears every beam path, then marks genuine hits lethal. Only writes 0 and 254.
void update_obstacle_layer(Costmap& layer, const LaserScan& scan, const Pose2D& sensor_pose);

struct InflationConfig
{
  double inscribed_radius{0.2};
  double inflation_radius{0.6};
  double cost_scaling_factor{1.0};
};

/// Inflation cost for a cell at distance d from the nearest lethal cell.
std::uint8_t inflation_cost(double d, const InflationConfig& cfg);

/// Overwrites `layer` with the inflation halo around every lethal cell of `source`.
void update_inflation_layer(Costmap& layer, const Costmap& source, const InflationConfig& cfg);

struct DangerZone
{
  Point2 center{Point2::Zero()};
  double radius{0};
};

struct BslCostConfig
{
  double max_cost{253};
  double cost_scaling_factor{1.0};
};

/// Blind-spot cost at distance l from a zone center, truncated to an integer.
std::uint8_t blind_spot_cost(double l, const BslCostConfig& cfg);

/// Max-merges each zone's decaying cost disc into `layer`; zone centers are in the map frame and
/// snapped to their cell, so distances are measured between cell centers.
void write_blind_spot_costs(Costmap& layer, std::span<const DangerZone> zones, const BslCostConfig& cfg);

struct LayerStack
{
  Costmap static_layer;
  Costmap obstacle_layer;
  Costmap inflation_layer;
  Costmap bsl_layer;
  bool bsl_enabled{true};

  static LayerStack congruent_to(const Costmap& geometry);
};

/// Per-cell maximum over the enabled layers; Unknown becomes lethal.
Costmap compose_master(const LayerStack& stack);

/// Per-cell maximum of two congruent grids.
Costmap max_merge(const Costmap& a, const Costmap& b);

}  // namespace bslnav
