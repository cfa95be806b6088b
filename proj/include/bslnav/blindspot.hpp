#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "bslnav/costmap.hpp"
#include "bslnav/geometry.hpp"
#include "bslnav/sensor_data.hpp"

namespace bslnav
{

/// Estimated corner where observed space turns into occluded space, in the sensing frame.
struct BlindSpotBoundary
{
  PolarPoint polar;
  Point2 cartesian{Point2::Zero()};
  /// +1 when the occluded region extends towards +y of the sensing frame, -1 towards -y.
  int occluded_side{1};

  static BlindSpotBoundary from_polar(double range, double bearing, int occluded_side);
  static BlindSpotBoundary from_cartesian(const Point2& p, int occluded_side);
  /// Side taken from the sign of the bearing; reproduces y + H * tan(theta) literally.
  static BlindSpotBoundary from_cartesian(const Point2& p);
};

/// Braking and pedestrian parameters that size a danger zone.
struct StoppingModel
{
  double decel{-0.5};          // m/s^2, negative
  double human_stride{0.8};    // m
  double offset{0.2};          // m
  double shoulder_width{0.5};  // m
};

struct InvalidParameter : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

/// One boundary per adjacent range jump larger than `threshold`, placed at the nearer sample.
/// Results are ordered by bearing; scans with fewer than two beams give nothing.
std::vector<BlindSpotBoundary> detect_bsbp_lrf(const LaserScan& scan, double threshold);

/// Center of the area a hidden pedestrian could occupy. Empty for boundaries at or behind
/// the lateral axis, where the tangent offset is singular.
std::optional<Point2> danger_center(const BlindSpotBoundary& b, double shoulder_width);

/// Distance covered while braking from `speed` at constant `decel` (< 0).
double stopping_distance(double speed, double decel);

double danger_radius(double stopping, const StoppingModel& model);

/// Danger zones in the sensing frame of the boundaries.
std::vector<DangerZone> build_danger_zones(std::span<const BlindSpotBoundary> boundaries, double current_speed,
                                           const StoppingModel& model);

}  // namespace bslnav
