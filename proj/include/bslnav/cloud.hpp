#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "bslnav/blindspot.hpp"
#include "bslnav/sensor_data.hpp"

namespace bslnav
{

struct CloudPipelineConfig
{
  double voxel_size{0.10};
  double z_min{0.05};
  double z_max{1.8};
  double cluster_tolerance{0.30};
  std::size_t min_cluster_size{5};
};

/// Non-empty group of points with cached extrema of its footprint.
class PointCluster
{
public:
  explicit PointCluster(std::vector<Point3> points);

  const std::vector<Point3>& points() const { return points_; }
  double max_x() const { return max_x_; }
  double max_y() const { return max_y_; }
  double min_y() const { return min_y_; }
  /// Smallest planar distance from the sensor origin to any member.
  double min_range() const { return min_range_; }
  Point3 centroid() const;

private:
  std::vector<Point3> points_;
  double max_x_, max_y_, min_y_, min_range_;
};

/// Replaces the points of every occupied voxel by their mean. Output is ordered by voxel key.
PointCloud voxel_filter(const PointCloud& cloud, double voxel_size);

/// Keeps points with z_min <= z <= z_max.
PointCloud passthrough_filter(const PointCloud& cloud, double z_min, double z_max);

/// Connected components under dist <= tolerance, as indices into `cloud`. Components below
/// `min_size` are dropped; the rest are ordered by minimum planar range, members by index.
std::vector<std::vector<std::size_t>> euclidean_cluster_indices(const PointCloud& cloud, double tolerance,
                                                                std::size_t min_size);

std::vector<PointCluster> euclidean_cluster(const PointCloud& cloud, double tolerance, std::size_t min_size);

/// Boundary of the nearest cluster on each side (left first), from its far x extent and
/// the middle of its y extent.
std::vector<BlindSpotBoundary> bsbp_from_clusters(std::span<const PointCluster> clusters);

/// Voxel -> pass-through -> clustering -> boundaries.
std::vector<BlindSpotBoundary> detect_bsbp_cloud(const PointCloud& cloud, const CloudPipelineConfig& cfg);

/// ASCII XYZ: one "x y z" row per point, 6 decimals.
void write_xyz(const std::filesystem::path& path, const PointCloud& cloud);

}  // namespace bslnav
