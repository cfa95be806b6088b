#include "bslnav/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bslnav
{

namespace
{
constexpr double kInf = std::numeric_limits<double>::infinity();

// xorshift32; a fixed generator keeps noisy runs reproducible across standard libraries.
double next_uniform(std::uint32_t& s)
{
  s ^= s << 13;
  s ^= s >> 17;
  s ^= s << 5;
  return static_cast<double>(s) / 4294967296.0;
}
}  // namespace

std::vector<Segment2> World::walls() const
{
  std::vector<Segment2> out;
  out.reserve(boxes.size() * 4);
  for (const Box& b : boxes)
    for (const Segment2& e : b.footprint.edges()) out.push_back(e);
  return out;
}

SimState initial_state(const World& world)
{
  SimState s;
  s.pose = world.start_pose;
  if (world.dynamic) s.pedestrian = world.dynamic->start;
  return s;
}

SimState step(const SimState& state, double v, double w, double dt, const World& world)
{
  SimState next = state;
  next.time = state.time + dt;
  next.pose = integrate(state.pose, v, w, dt);
  next.v = v;
  next.w = w;
  if (state.pedestrian_active && world.dynamic)
    next.pedestrian = state.pedestrian + world.dynamic->speed * dt * world.dynamic->direction;
  return next;
}

SimState check_trigger(const SimState& state, const Point2& previous, const World& world)
{
  SimState out = state;
  if (!out.pedestrian_active && world.dynamic &&
      segments_intersect({previous, state.pose.position()}, world.dynamic->trigger))
    out.pedestrian_active = true;
  return out;
}

LaserScan simulate_lrf(const SimState& state, const World& world, const RobotSpec& robot, const LrfSpec& spec,
                       std::uint32_t* noise_state)
{
  const Pose2D sensor = compose(state.pose, robot.lrf_mount);
  const std::vector<Segment2> walls = world.walls();
  LaserScan scan;
  scan.angle_min = -0.5 * spec.fov;
  scan.angle_increment = spec.fov / (spec.ray_count - 1);
  scan.max_range = spec.max_range;
  scan.ranges.resize(static_cast<std::size_t>(spec.ray_count));
  for (int i = 0; i < spec.ray_count; ++i)
  {
    const double bearing = sensor.theta() + scan.bearing(static_cast<std::size_t>(i));
    double r = ray_cast(sensor.position(), bearing, walls, spec.max_range);
    if (world.dynamic)
    {
      const Point2 dir(std::cos(bearing), std::sin(bearing));
      r = std::min(r, ray_circle_distance(sensor.position(), dir, state.pedestrian, world.dynamic->radius));
    }
    if (spec.noise > 0 && noise_state && r < spec.max_range)
      r = std::clamp(r + spec.noise * (2.0 * next_uniform(*noise_state) - 1.0), 1e-3, spec.max_range);
    scan.ranges[static_cast<std::size_t>(i)] = r;
  }
  return scan;
}

namespace
{

// Slab test against an axis-aligned 3D box; returns the entry distance or +inf.
double ray_aabb(const Point3& o, const Point3& d, const Point3& lo, const Point3& hi)
{
  double t0 = 0.0, t1 = kInf;
  for (int a = 0; a < 3; ++a)
  {
    if (d[a] == 0.0)
    {
      if (o[a] < lo[a] || o[a] > hi[a]) return kInf;
      continue;
    }
    double ta = (lo[a] - o[a]) / d[a];
    double tb = (hi[a] - o[a]) / d[a];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return kInf;
  }
  return t0;
}

}  // namespace

double cast_ray_3d(const Point3& origin, const Point3& dir, const World& world, const SimState& state,
                   bool ground_plane)
{
  double best = kInf;
  for (const Box& b : world.boxes)
  {
    const Point3 lo(b.footprint.min.x(), b.footprint.min.y(), 0.0);
    const Point3 hi(b.footprint.max.x(), b.footprint.max.y(), b.height);
    best = std::min(best, ray_aabb(origin, dir, lo, hi));
  }
  if (world.dynamic)
  {
    // Vertical cylinder: planar circle test on the horizontal component, then the height band.
    const Point2 o2 = origin.head<2>();
    const Point2 d2 = dir.head<2>();
    const double horiz = d2.norm();
    if (horiz > 1e-12)
    {
      const double s = ray_circle_distance(o2, d2 / horiz, state.pedestrian, world.dynamic->radius);
      if (s < kInf)
      {
        const double t = s / horiz;
        const double z = origin.z() + t * dir.z();
        if (z >= 0.0 && z <= world.dynamic->height) best = std::min(best, t);
      }
    }
  }
  if (ground_plane && dir.z() < 0.0) best = std::min(best, -origin.z() / dir.z());
  return best;
}

PointCloud simulate_depth_cloud(const SimState& state, const World& world, const RobotSpec& robot,
                                const DepthCamSpec& spec)
{
  PointCloud cloud;
  const double th = state.pose.theta();
  for (const CameraMount& cam : robot.cameras)
  {
    const Point3 origin(state.pose.x(), state.pose.y(), cam.height);
    for (int row = 0; row < spec.v_res; ++row)
    {
      const double elev = spec.v_fov * (0.5 - (row + 0.5) / spec.v_res);
      for (int col = 0; col < spec.h_res; ++col)
      {
        const double az = cam.yaw + spec.h_fov * (0.5 - (col + 0.5) / spec.h_res);
        const Point3 local_dir(std::cos(elev) * std::cos(az), std::cos(elev) * std::sin(az), std::sin(elev));
        const Point2 world_xy = rotate<double>(local_dir.head<2>(), th);
        const Point3 dir(world_xy.x(), world_xy.y(), local_dir.z());
        const double t = cast_ray_3d(origin, dir, world, state, spec.ground_plane);
        if (!(t >= spec.min_range && t <= spec.max_range)) continue;
        // Robot-local coordinates of the hit: the ray starts above the axle center.
        const Point3 hit_local = Point3(0.0, 0.0, cam.height) + t * local_dir;
        cloud.points.push_back(hit_local);
      }
    }
  }
  return cloud;
}

CollisionCheck check_collision(const SimState& state, const World& world, const RobotSpec& robot)
{
  const Point2 p = state.pose.position();
  double clearance = kInf;
  for (const Box& b : world.boxes)
  {
    double d = kInf;
    for (const Segment2& e : b.footprint.edges()) d = std::min(d, point_segment_distance(p, e));
    if (b.footprint.contains(p)) d = -d;
    clearance = std::min(clearance, d - robot.footprint_radius);
  }
  if (world.dynamic)
    clearance =
      std::min(clearance, (p - state.pedestrian).norm() - robot.footprint_radius - world.dynamic->radius);
  return {clearance <= 0.0, clearance};
}

}  // namespace bslnav
