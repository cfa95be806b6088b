#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace bslnav
{

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

using Point2 = Vec2<double>;
using Point3 = Vec3<double>;

inline constexpr double kPi = std::numbers::pi;

/// Wraps an angle into (-pi, pi].
template <typename Scalar>
Scalar normalize_angle(Scalar a)
{
  const Scalar two_pi = Scalar(2) * Scalar(kPi);
  a = std::fmod(a, two_pi);
  if (a <= -Scalar(kPi)) a += two_pi;
  else if (a > Scalar(kPi)) a -= two_pi;
  return a;
}

/// Planar pose. The heading is normalized on every construction.
template <typename Scalar>
class Pose2
{
public:
  Pose2() = default;
  Pose2(Scalar x, Scalar y, Scalar theta) : x_(x), y_(y), theta_(normalize_angle(theta)) {}
  Pose2(const Vec2<Scalar>& p, Scalar theta) : Pose2(p.x(), p.y(), theta) {}

  Scalar x() const { return x_; }
  Scalar y() const { return y_; }
  Scalar theta() const { return theta_; }
  Vec2<Scalar> position() const { return {x_, y_}; }

  friend bool operator==(const Pose2&, const Pose2&) = default;

private:
  Scalar x_{0};
  Scalar y_{0};
  Scalar theta_{0};
};

using Pose2D = Pose2<double>;

struct PolarPoint
{
  double range{0};
  double bearing{0};
};

struct Segment2
{
  Point2 a;
  Point2 b;
};

template <typename Scalar>
Vec2<Scalar> polar_to_cartesian(Scalar range, Scalar bearing)
{
  return {range * std::cos(bearing), range * std::sin(bearing)};
}

inline Point2 polar_to_cartesian(const PolarPoint& p) { return polar_to_cartesian(p.range, p.bearing); }

template <typename Scalar>
Vec2<Scalar> rotate(const Vec2<Scalar>& p, Scalar angle)
{
  const Scalar c = std::cos(angle), s = std::sin(angle);
  return {c * p.x() - s * p.y(), s * p.x() + c * p.y()};
}

/// Maps a point expressed in the robot frame into the frame the pose lives in.
template <typename Scalar>
Vec2<Scalar> local_to_global(const Pose2<Scalar>& robot, const Vec2<Scalar>& p)
{
  return rotate(p, robot.theta()) + robot.position();
}

template <typename Scalar>
Vec2<Scalar> global_to_local(const Pose2<Scalar>& robot, const Vec2<Scalar>& p)
{
  return rotate<Scalar>(p - robot.position(), -robot.theta());
}

/// Composition a * b: pose b (given in a's frame) expressed in a's parent frame.
template <typename Scalar>
Pose2<Scalar> compose(const Pose2<Scalar>& a, const Pose2<Scalar>& b)
{
  return {local_to_global(a, b.position()), a.theta() + b.theta()};
}

template <typename Scalar>
Scalar cross2(const Vec2<Scalar>& a, const Vec2<Scalar>& b)
{
  return a.x() * b.y() - a.y() * b.x();
}

inline constexpr double kParallelEps = 1e-12;

/// Distance along the ray (origin, unit direction) to the segment, or +inf when missed.
/// Touching an endpoint counts as a hit.
double ray_segment_distance(const Point2& origin, const Point2& dir, const Segment2& seg);

/// Distance along the ray to the first crossing of a circle boundary, or +inf.
/// An origin inside the circle yields 0.
double ray_circle_distance(const Point2& origin, const Point2& dir, const Point2& center, double radius);

/// Distance to the nearest segment hit, clamped to max_range.
double ray_cast(const Point2& origin, double bearing, std::span<const Segment2> obstacles, double max_range);

double point_segment_distance(const Point2& p, const Segment2& seg);

/// Proper or touching intersection of two closed segments.
bool segments_intersect(const Segment2& s, const Segment2& t);

/// Axis-aligned rectangle in the plane.
struct Rect
{
  Point2 min;
  Point2 max;

  bool contains(const Point2& p) const
  {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() && p.y() <= max.y();
  }
  std::vector<Segment2> edges() const;
};

}  // namespace bslnav
