#include "bslnav/geometry.hpp"

#include <algorithm>
#include <limits>

namespace bslnav
{

namespace
{
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double ray_segment_distance(const Point2& origin, const Point2& dir, const Segment2& seg)
{
  const Point2 e = seg.b - seg.a;
  const double denom = cross2(dir, e);
  const Point2 w = seg.a - origin;
  if (std::abs(denom) < kParallelEps)
  {
    // Collinear overlap: nearest endpoint in front of the origin.
    if (std::abs(cross2(w, dir)) > kParallelEps) return kInf;
    const double ta = w.dot(dir);
    const double tb = (seg.b - origin).dot(dir);
    if (ta < 0 && tb < 0) return kInf;
    if (ta <= 0 || tb <= 0) return 0.0;
    return std::min(ta, tb);
  }
  const double t = cross2(w, e) / denom;
  const double u = cross2(w, dir) / denom;
  if (t < 0 || u < 0 || u > 1) return kInf;
  return t;
}

double ray_circle_distance(const Point2& origin, const Point2& dir, const Point2& center, double radius)
{
  const Point2 oc = origin - center;
  const double c = oc.squaredNorm() - radius * radius;
  if (c <= 0) return 0.0;
  const double b = oc.dot(dir);
  const double disc = b * b - c;
  if (disc < 0) return kInf;
  const double t = -b - std::sqrt(disc);
  return t >= 0 ? t : kInf;
}

double ray_cast(const Point2& origin, double bearing, std::span<const Segment2> obstacles, double max_range)
{
  const Point2 dir(std::cos(bearing), std::sin(bearing));
  double best = max_range;
  for (const auto& s : obstacles) best = std::min(best, ray_segment_distance(origin, dir, s));
  return std::max(best, 0.0);
}

double point_segment_distance(const Point2& p, const Segment2& seg)
{
  const Point2 e = seg.b - seg.a;
  const double len2 = e.squaredNorm();
  double t = len2 > 0 ? (p - seg.a).dot(e) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (seg.a + t * e - p).norm();
}

bool segments_intersect(const Segment2& s, const Segment2& t)
{
  auto orient = [](const Point2& a, const Point2& b, const Point2& c) { return cross2<double>(b - a, c - a); };
  auto on_segment = [](const Point2& a, const Point2& b, const Point2& p) {
    return std::min(a.x(), b.x()) <= p.x() && p.x() <= std::max(a.x(), b.x()) && std::min(a.y(), b.y()) <= p.y() &&
           p.y() <= std::max(a.y(), b.y());
  };
  const double d1 = orient(t.a, t.b, s.a);
  const double d2 = orient(t.a, t.b, s.b);
  const double d3 = orient(s.a, s.b, t.a);
  const double d4 = orient(s.a, s.b, t.b);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  if (d1 == 0 && on_segment(t.a, t.b, s.a)) return true;
  if (d2 == 0 && on_segment(t.a, t.b, s.b)) return true;
  if (d3 == 0 && on_segment(s.a, s.b, t.a)) return true;
  if (d4 == 0 && on_segment(s.a, s.b, t.b)) return true;
  return false;
}

std::vector<Segment2> Rect::edges() const
{
  const Point2 a = min, b(max.x(), min.y()), c = max, d(min.x(), max.y());
  return {{a, b}, {b, c}, {c, d}, {d, a}};
}

}  // namespace bslnav
