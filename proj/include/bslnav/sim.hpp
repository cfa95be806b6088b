#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bslnav/geometry.hpp"
#include "bslnav/planning.hpp"
#include "bslnav/sensor_data.hpp"

namespace bslnav
{

/// Axis-aligned box extruded from the floor.
struct Box
{
  Rect footprint;
  double height{1.0};
};

/// Scripted pedestrian released by a trigger line.
struct DynamicObstacle
{
  double radius{0.25};
  double height{1.7};
  Point2 start{Point2::Zero()};
  Point2 direction{Point2::UnitX()};  // unit vector
  double speed{0};                    // m/s
  Segment2 trigger{Point2::Zero(), Point2::UnitY()};
};

struct World
{
  std::vector<Box> boxes;
  std::optional<DynamicObstacle> dynamic;
  Pose2D start_pose;
  Point2 goal{Point2::Zero()};
  double goal_tolerance{0.3};

  /// Edges of every box footprint.
  std::vector<Segment2> walls() const;
};

struct CameraMount
{
  double yaw{0};
  double height{0.6};
};

struct RobotSpec
{
  double footprint_radius{0.2};
  VelocityLimits limits;
  Pose2D lrf_mount;
  std::vector<CameraMount> cameras{{0.4363323129985824, 0.6}, {-0.4363323129985824, 0.6}};
};

struct LrfSpec
{
  double fov{240.0 * kPi / 180.0};
  int ray_count{683};
  double max_range{4.0};
  /// Half-width of uniform range noise; 0 disables it.
  double noise{0.0};
  std::uint32_t noise_seed{1};
};

struct DepthCamSpec
{
  double h_fov{87.0 * kPi / 180.0};
  double v_fov{58.0 * kPi / 180.0};
  int h_res{64};
  int v_res{36};
  double min_range{0.3};
  double max_range{3.0};
  /// Also return hits on the floor plane z = 0.
  bool ground_plane{false};
};

struct SimState
{
  double time{0};
  Pose2D pose;
  double v{0};
  double w{0};
  Point2 pedestrian{Point2::Zero()};
  bool pedestrian_active{false};
};

SimState initial_state(const World& world);

/// Advances robot (same integrator as the planner rollout) and an active pedestrian.
SimState step(const SimState& state, double v, double w, double dt, const World& world);

/// Latches the pedestrian active once the robot's motion from `previous` to `state` crosses
/// the trigger line.
SimState check_trigger(const SimState& state, const Point2& previous, const World& world);

/// Scan from the mounted LRF against walls and the pedestrian disc. `noise_state` advances
/// when noise is enabled.
LaserScan simulate_lrf(const SimState& state, const World& world, const RobotSpec& robot, const LrfSpec& spec,
                       std::uint32_t* noise_state = nullptr);

/// Hit points of every camera's ray grid, in the robot-local frame.
PointCloud simulate_depth_cloud(const SimState& state, const World& world, const RobotSpec& robot,
                                const DepthCamSpec& spec);

/// Nearest hit of a 3D ray (unit direction, world frame) against boxes, the pedestrian and
/// optionally the floor; +inf when nothing is hit.
double cast_ray_3d(const Point3& origin, const Point3& dir, const World& world, const SimState& state,
                   bool ground_plane);

struct CollisionCheck
{
  bool collided{false};
  double clearance{0};
};

/// Disc footprint against box edges (and interiors) and the pedestrian disc. Contact counts.
CollisionCheck check_collision(const SimState& state, const World& world, const RobotSpec& robot);

}  // namespace bslnav
