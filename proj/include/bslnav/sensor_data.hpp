#pragma once

#include <cstddef>
#include <vector>

#include "bslnav/geometry.hpp"

namespace bslnav
{

/// Planar range scan; beam i points at angle_min + i * angle_increment in the sensor frame.
struct LaserScan
{
  double angle_min{0};
  double angle_increment{0};
  double max_range{0};
  std::vector<double> ranges;

  std::size_t size() const { return ranges.size(); }
  double bearing(std::size_t i) const { return angle_min + static_cast<double>(i) * angle_increment; }
};

/// Points in the robot-local frame: x forward, y left, z up.
struct PointCloud
{
  std::vector<Point3> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

}  // namespace bslnav
