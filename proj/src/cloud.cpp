#include "bslnav/cloud.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <fstream>
#include <iomanip>
#include <limits>
#include <locale>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace bslnav
{

PointCluster::PointCluster(std::vector<Point3> points) : points_(std::move(points))
{
  if (points_.empty()) throw std::invalid_argument("empty point cluster");
  max_x_ = max_y_ = -std::numeric_limits<double>::infinity();
  min_y_ = min_range_ = std::numeric_limits<double>::infinity();
  for (const Point3& p : points_)
  {
    max_x_ = std::max(max_x_, p.x());
    max_y_ = std::max(max_y_, p.y());
    min_y_ = std::min(min_y_, p.y());
    min_range_ = std::min(min_range_, std::hypot(p.x(), p.y()));
  }
}

Point3 PointCluster::centroid() const
{
  Point3 sum = Point3::Zero();
  for (const Point3& p : points_) sum += p;
  return sum / static_cast<double>(points_.size());
}

namespace
{

using VoxelKey = std::array<std::int64_t, 3>;

VoxelKey voxel_of(const Point3& p, double size)
{
  return {static_cast<std::int64_t>(std::floor(p.x() / size)), static_cast<std::int64_t>(std::floor(p.y() / size)),
          static_cast<std::int64_t>(std::floor(p.z() / size))};
}

struct VoxelKeyHash
{
  std::size_t operator()(const VoxelKey& k) const noexcept
  {
    std::size_t h = 1469598103934665603ull;
    for (auto v : k) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

}  // namespace

PointCloud voxel_filter(const PointCloud& cloud, double voxel_size)
{
  if (!(voxel_size > 0)) throw std::invalid_argument("voxel size must be positive");
  struct Acc
  {
    Point3 sum{Point3::Zero()};
    std::size_t n{0};
  };
  std::map<VoxelKey, Acc> voxels;
  for (const Point3& p : cloud.points)
  {
    Acc& a = voxels[voxel_of(p, voxel_size)];
    a.sum += p;
    ++a.n;
  }
  PointCloud out;
  out.points.reserve(voxels.size());
  for (const auto& [key, acc] : voxels) out.points.push_back(acc.sum / static_cast<double>(acc.n));
  return out;
}

PointCloud passthrough_filter(const PointCloud& cloud, double z_min, double z_max)
{
  if (!(z_min < z_max)) throw std::invalid_argument("pass-through band is empty");
  PointCloud out;
  std::copy_if(cloud.points.begin(), cloud.points.end(), std::back_inserter(out.points),
               [&](const Point3& p) { return p.z() >= z_min && p.z() <= z_max; });
  return out;
}

std::vector<std::vector<std::size_t>> euclidean_cluster_indices(const PointCloud& cloud, double tolerance,
                                                                std::size_t min_size)
{
  if (!(tolerance > 0)) throw std::invalid_argument("cluster tolerance must be positive");
  if (min_size < 1) throw std::invalid_argument("minimum cluster size must be at least 1");

  std::unordered_map<VoxelKey, std::vector<std::size_t>, VoxelKeyHash> grid;
  for (std::size_t i = 0; i < cloud.size(); ++i) grid[voxel_of(cloud.points[i], tolerance)].push_back(i);

  std::vector<bool> visited(cloud.size(), false);
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t seed = 0; seed < cloud.size(); ++seed)
  {
    if (visited[seed]) continue;
    std::vector<std::size_t> members;
    std::deque<std::size_t> frontier{seed};
    visited[seed] = true;
    while (!frontier.empty())
    {
      const std::size_t i = frontier.front();
      frontier.pop_front();
      members.push_back(i);
      const Point3& p = cloud.points[i];
      const VoxelKey k = voxel_of(p, tolerance);
      for (std::int64_t dz = -1; dz <= 1; ++dz)
        for (std::int64_t dy = -1; dy <= 1; ++dy)
          for (std::int64_t dx = -1; dx <= 1; ++dx)
          {
            auto it = grid.find({k[0] + dx, k[1] + dy, k[2] + dz});
            if (it == grid.end()) continue;
            for (std::size_t j : it->second)
            {
              if (visited[j] || (cloud.points[j] - p).norm() > tolerance) continue;
              visited[j] = true;
              frontier.push_back(j);
            }
          }
    }
    if (members.size() < min_size) continue;
    std::sort(members.begin(), members.end());
    clusters.push_back(std::move(members));
  }

  auto min_range = [&](const std::vector<std::size_t>& c) {
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i : c) r = std::min(r, std::hypot(cloud.points[i].x(), cloud.points[i].y()));
    return r;
  };
  std::vector<double> ranges;
  ranges.reserve(clusters.size());
  for (const auto& c : clusters) ranges.push_back(min_range(c));
  std::vector<std::size_t> order(clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ranges[a] < ranges[b]; });
  std::vector<std::vector<std::size_t>> sorted;
  sorted.reserve(clusters.size());
  for (std::size_t i : order) sorted.push_back(std::move(clusters[i]));
  return sorted;
}

std::vector<PointCluster> euclidean_cluster(const PointCloud& cloud, double tolerance, std::size_t min_size)
{
  std::vector<PointCluster> out;
  for (const auto& idx : euclidean_cluster_indices(cloud, tolerance, min_size))
  {
    std::vector<Point3> pts;
    pts.reserve(idx.size());
    for (std::size_t i : idx) pts.push_back(cloud.points[i]);
    out.emplace_back(std::move(pts));
  }
  return out;
}

std::vector<BlindSpotBoundary> bsbp_from_clusters(std::span<const PointCluster> clusters)
{
  const PointCluster* left = nullptr;
  const PointCluster* right = nullptr;
  for (const PointCluster& c : clusters)
  {
    const double cy = c.centroid().y();
    if (cy > 0 && (!left || c.min_range() < left->min_range())) left = &c;
    if (cy < 0 && (!right || c.min_range() < right->min_range())) right = &c;
  }
  std::vector<BlindSpotBoundary> out;
  auto boundary = [](const PointCluster& c, int side) {
    return BlindSpotBoundary::from_cartesian(Point2(c.max_x(), 0.5 * (c.max_y() + c.min_y())), side);
  };
  if (left) out.push_back(boundary(*left, +1));
  if (right) out.push_back(boundary(*right, -1));
  return out;
}

std::vector<BlindSpotBoundary> detect_bsbp_cloud(const PointCloud& cloud, const CloudPipelineConfig& cfg)
{
  const PointCloud filtered = passthrough_filter(voxel_filter(cloud, cfg.voxel_size), cfg.z_min, cfg.z_max);
  const auto clusters = euclidean_cluster(filtered, cfg.cluster_tolerance, cfg.min_cluster_size);
  return bsbp_from_clusters(clusters);
}

void write_xyz(const std::filesystem::path& path, const PointCloud& cloud)
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.imbue(std::locale::classic());
  out << std::fixed << std::setprecision(6);
  for (const Point3& p : cloud.points) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
}

}  // namespace bslnav
