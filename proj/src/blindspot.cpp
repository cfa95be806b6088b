#include "bslnav/blindspot.hpp"

#include <cmath>

namespace bslnav
{

BlindSpotBoundary BlindSpotBoundary::from_polar(double range, double bearing, int occluded_side)
{
  return {{range, bearing}, polar_to_cartesian(range, bearing), occluded_side};
}

BlindSpotBoundary BlindSpotBoundary::from_cartesian(const Point2& p, int occluded_side)
{
  return {{p.norm(), std::atan2(p.y(), p.x())}, p, occluded_side};
}

BlindSpotBoundary BlindSpotBoundary::from_cartesian(const Point2& p)
{
  return from_cartesian(p, p.y() >= 0 ? 1 : -1);
}

std::vector<BlindSpotBoundary> detect_bsbp_lrf(const LaserScan& scan, double threshold)
{
  if (!(threshold > 0)) throw InvalidParameter("jump threshold must be positive");
  std::vector<BlindSpotBoundary> out;
  if (scan.size() < 2) return out;
  for (std::size_t i = 0; i + 1 < scan.size(); ++i)
  {
    const double a = scan.ranges[i];
    const double b = scan.ranges[i + 1];
    if (std::abs(b - a) <= threshold) continue;
    // The nearer sample is the occluding corner. The shadow extends towards the far sample,
    // so its lateral offset from the corner decides which way the danger center shifts.
    const std::size_t near = a < b ? i : i + 1;
    const std::size_t far = a < b ? i + 1 : i;
    const Point2 pn = polar_to_cartesian(scan.ranges[near], scan.bearing(near));
    const Point2 pf = polar_to_cartesian(scan.ranges[far], scan.bearing(far));
    const double dy = pf.y() - pn.y();
    const int side = dy > 0 ? 1 : dy < 0 ? -1 : (pn.y() >= 0 ? 1 : -1);
    out.push_back(BlindSpotBoundary::from_polar(scan.ranges[near], scan.bearing(near), side));
  }
  return out;
}

std::optional<Point2> danger_center(const BlindSpotBoundary& b, double shoulder_width)
{
  const double theta = b.polar.bearing;
  if (!(std::abs(theta) < kPi / 2)) return std::nullopt;
  const double shift = shoulder_width * std::abs(std::tan(theta));
  return Point2(b.cartesian.x(), b.cartesian.y() + b.occluded_side * shift);
}

double stopping_distance(double speed, double decel)
{
  if (!(decel < 0)) throw InvalidParameter("deceleration must be negative");
  if (speed < 0) throw InvalidParameter("speed must be non-negative");
  return -(speed * speed) / (2.0 * decel);
}

double danger_radius(double stopping, const StoppingModel& model)
{
  return stopping + model.human_stride + model.offset;
}

std::vector<DangerZone> build_danger_zones(std::span<const BlindSpotBoundary> boundaries, double current_speed,
                                           const StoppingModel& model)
{
  std::vector<DangerZone> zones;
  if (boundaries.empty()) return zones;
  const double radius = danger_radius(stopping_distance(std::max(current_speed, 0.0), model.decel), model);
  for (const auto& b : boundaries)
    if (auto center = danger_center(b, model.shoulder_width)) zones.push_back({*center, radius});
  return zones;
}

}  // namespace bslnav
