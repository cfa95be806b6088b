#include <random>

#include <doctest.h>

#include "bslnav/blindspot.hpp"
#include "bslnav/cloud.hpp"
#include "oracles.hpp"

using namespace bslnav;

namespace
{

LaserScan uniform_scan(int n, double fov, double range)
{
  return {-fov / 2, fov / (n - 1), 4.0, std::vector<double>(static_cast<std::size_t>(n), range)};
}

std::vector<Point3> sorted(std::vector<Point3> v)
{
  std::sort(v.begin(), v.end(), [](const Point3& a, const Point3& b) {
    return std::tie(a.x(), a.y(), a.z()) < std::tie(b.x(), b.y(), b.z());
  });
  return v;
}

}  // namespace

TEST_CASE("detect_bsbp_lrf")
{
  CHECK(detect_bsbp_lrf(uniform_scan(100, kPi, 2.0), 1.0).empty());
  CHECK(detect_bsbp_lrf(uniform_scan(1, kPi, 2.0), 1.0).empty());
  CHECK_THROWS_AS(detect_bsbp_lrf(uniform_scan(10, kPi, 2.0), 0.0), InvalidParameter);

  SUBCASE("T-intersection")
  {
    LaserScan s = uniform_scan(181, kPi, 1.0);
    const double theta_k = 0.3;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s.bearing(i) >= theta_k) s.ranges[i] = 3.5;
    const auto b = detect_bsbp_lrf(s, 1.0);
    REQUIRE(b.size() == 1);
    CHECK(b[0].polar.range == 1.0);
    CHECK(b[0].polar.bearing < theta_k);
    CHECK(theta_k - b[0].polar.bearing <= s.angle_increment);
    const Point2 corner = polar_to_cartesian(1.0, theta_k);
    CHECK((b[0].cartesian - corner).norm() <= 1.0 * s.angle_increment + 1e-12);
    CHECK(b[0].occluded_side == 1);
  }

  SUBCASE("two symmetric openings are mirror images")
  {
    LaserScan s = uniform_scan(241, 4 * kPi / 3, 1.0);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (std::abs(s.bearing(i)) > 0.4 && std::abs(s.bearing(i)) < 1.2) s.ranges[i] = 3.8;
    const auto b = detect_bsbp_lrf(s, 1.0);
    // Each opening is bounded by two jumps, one at either edge.
    REQUIRE(b.size() == 4);
    for (std::size_t k = 0; k < 2; ++k)
    {
      const auto& l = b[3 - k];
      const auto& r = b[k];
      CHECK(std::abs(l.cartesian.x() - r.cartesian.x()) < 1e-6);
      CHECK(std::abs(l.cartesian.y() + r.cartesian.y()) < 1e-6);
      CHECK(l.occluded_side == -r.occluded_side);
    }
  }

  SUBCASE("reversal mirrors the boundaries")
  {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> r(0.2, 4.0);
    for (int trial = 0; trial < 100; ++trial)
    {
      LaserScan s = uniform_scan(60, 3.0, 1.0);
      for (double& z : s.ranges) z = r(rng);
      LaserScan m = s;
      std::reverse(m.ranges.begin(), m.ranges.end());
      const auto a = detect_bsbp_lrf(s, 1.0);
      const auto b = detect_bsbp_lrf(m, 1.0);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i)
      {
        const auto& p = a[i];
        const auto& q = b[b.size() - 1 - i];
        CHECK(std::abs(p.cartesian.x() - q.cartesian.x()) < 1e-9);
        CHECK(std::abs(p.cartesian.y() + q.cartesian.y()) < 1e-9);
        CHECK(p.occluded_side == -q.occluded_side);
      }
    }
  }
}

TEST_CASE("danger zone geometry")
{
  const StoppingModel model;  // a = -0.5, L = 0.8, X_off = 0.2, H_w = 0.5
  CHECK(danger_center(BlindSpotBoundary::from_cartesian(Point2(1, 0)), 0.5)->isApprox(Point2(1, 0)));
  const Point2 c = *danger_center(BlindSpotBoundary::from_cartesian(Point2(2, 2)), 0.5);
  CHECK(c.x() == doctest::Approx(2.0));
  CHECK(c.y() == doctest::Approx(2.5));
  CHECK_FALSE(danger_center(BlindSpotBoundary::from_polar(1, kPi / 2, 1), 0.5).has_value());
  CHECK_FALSE(danger_center(BlindSpotBoundary::from_polar(1, -kPi / 2 - 0.1, 1), 0.5).has_value());
  // The shift always points into the occluded side.
  const Point2 down = *danger_center(BlindSpotBoundary::from_polar(2, 0.5, -1), 0.5);
  CHECK(down.y() < polar_to_cartesian(2.0, 0.5).y());

  CHECK(stopping_distance(0, -0.5) == 0);
  CHECK(stopping_distance(1.0, -1.0) == doctest::Approx(0.5));
  const double v_max = 2.0 / 3.6;
  CHECK(stopping_distance(v_max, -0.5) == doctest::Approx(0.3086).epsilon(5e-4));
  CHECK_THROWS_AS(stopping_distance(1.0, 0.0), InvalidParameter);
  CHECK(stopping_distance(2 * 0.37, -0.8) == doctest::Approx(4 * stopping_distance(0.37, -0.8)));

  CHECK(danger_radius(0.3086, model) == doctest::Approx(1.3086));
  CHECK(danger_radius(0, {-0.5, 0, 0, 0}) == 0);
  CHECK(danger_radius(0.5, model) > danger_radius(0.4, model));

  CHECK(build_danger_zones({}, 0.5, model).empty());
  const std::vector<BlindSpotBoundary> one{BlindSpotBoundary::from_cartesian(Point2(2, 2))};
  const auto zones = build_danger_zones(one, v_max, model);
  REQUIRE(zones.size() == 1);
  CHECK(zones[0].center.isApprox(Point2(2, 2.5)));
  CHECK(zones[0].radius == doctest::Approx(1.3086).epsilon(5e-4));
  CHECK(build_danger_zones(one, 0.0, model)[0].radius == doctest::Approx(1.0));
  const std::vector<BlindSpotBoundary> behind{BlindSpotBoundary::from_polar(1, 2.0, 1),
                                              BlindSpotBoundary::from_polar(1, 0.2, 1)};
  const auto kept = build_danger_zones(behind, 0.3, model);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].radius >= model.human_stride + model.offset);
}

TEST_CASE("voxel_filter")
{
  PointCloud three{{Point3(0.01, 0.02, 0.03), Point3(0.05, 0.05, 0.05), Point3(0.09, 0.02, 0.01)}};
  const PointCloud v = voxel_filter(three, 0.1);
  REQUIRE(v.size() == 1);
  CHECK(v.points[0].isApprox(Point3(0.05, 0.03, 0.03)));
  PointCloud apart{{Point3(0.01, 0.01, 0.01), Point3(5.01, 5.01, 1.01)}};
  CHECK(sorted(voxel_filter(apart, 0.1).points) == sorted(apart.points));

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int trial = 0; trial < 50; ++trial)
  {
    PointCloud c;
    const int n = 1 + static_cast<int>(rng() % 300);
    for (int i = 0; i < n; ++i) c.points.emplace_back(u(rng), u(rng), u(rng) / 4);
    const double size = 0.05 + 0.05 * (rng() % 6);
    const PointCloud f = voxel_filter(c, size);
    CHECK(f.size() <= c.size());
    const auto want = sorted(oracle::voxel_buckets(c.points, size));
    const auto got = sorted(f.points);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK((got[i] - want[i]).norm() <= 1e-9);
    // A second pass finds every centroid alone in its voxel.
    CHECK(voxel_filter(f, size).points == f.points);
  }
}

TEST_CASE("passthrough_filter")
{
  CHECK(passthrough_filter(PointCloud{{Point3(1, 0, 0.0)}}, 0.05, 2.0).empty());
  CHECK(passthrough_filter(PointCloud{{Point3(1, 0, 1.0)}}, 0.05, 2.0).size() == 1);
  CHECK(passthrough_filter(PointCloud{}, 0.05, 2.0).empty());
  const PointCloud edges{{Point3(0, 0, 0.05), Point3(0, 0, 2.0), Point3(0, 0, 2.0001)}};
  CHECK(passthrough_filter(edges, 0.05, 2.0).size() == 2);
}

TEST_CASE("euclidean_cluster")
{
  const double tol = 0.3;
  const PointCloud linked{{Point3(0, 0, 0), Point3(0.9 * tol, 0, 0)}};
  CHECK(euclidean_cluster(linked, tol, 1).size() == 1);
  const PointCloud split{{Point3(0, 0, 0), Point3(1.1 * tol, 0, 0)}};
  CHECK(euclidean_cluster(split, tol, 1).size() == 2);
  CHECK(euclidean_cluster(split, tol, 2).empty());

  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 50; ++trial)
  {
    PointCloud c;
    const int n = static_cast<int>(rng() % 201);
    for (int i = 0; i < n; ++i) c.points.emplace_back(u(rng), u(rng), u(rng) / 6);
    const double t = 0.2 + 0.1 * (rng() % 5);
    const std::size_t min_size = 1 + rng() % 4;
    const auto idx = euclidean_cluster_indices(c, t, min_size);
    const std::set<std::vector<std::size_t>> got(idx.begin(), idx.end());
    CHECK(got == oracle::union_find_clusters(c.points, t, min_size));
    // Ordered by minimum planar range.
    const auto clusters = euclidean_cluster(c, t, min_size);
    for (std::size_t i = 1; i < clusters.size(); ++i) CHECK(clusters[i - 1].min_range() <= clusters[i].min_range());
    // Partition when nothing is discarded.
    if (min_size == 1)
    {
      std::size_t total = 0;
      for (const auto& k : idx) total += k.size();
      CHECK(total == c.size());
    }
  }
}

TEST_CASE("bsbp_from_clusters")
{
  const std::vector<PointCluster> one{PointCluster({Point3(1.0, 0.3, 1), Point3(1.2, 0.7, 1), Point3(0.9, 0.5, 1)})};
  const auto b = bsbp_from_clusters(one);
  REQUIRE(b.size() == 1);
  CHECK(b[0].cartesian.isApprox(Point2(1.2, 0.5)));
  CHECK(b[0].polar.range == doctest::Approx(std::hypot(1.2, 0.5)));

  const std::vector<PointCluster> right{PointCluster({Point3(2, -1, 0.5)})};
  const auto r = bsbp_from_clusters(right);
  REQUIRE(r.size() == 1);
  CHECK(r[0].cartesian.isApprox(Point2(2, -1)));

  const std::vector<PointCluster> three{PointCluster({Point3(3.0, 0.2, 1), Point3(3.1, 0.4, 1)}),
                                        PointCluster({Point3(1.5, 0.1, 1), Point3(1.6, 0.5, 1)}),
                                        PointCluster({Point3(2.0, -0.6, 1), Point3(2.2, -0.9, 1)})};
  const auto both = bsbp_from_clusters(three);
  REQUIRE(both.size() == 2);
  CHECK(both[0].cartesian.isApprox(Point2(1.6, 0.3)));
  CHECK(both[1].cartesian.isApprox(Point2(2.2, -0.75)));
  CHECK(bsbp_from_clusters({}).empty());
}

TEST_CASE("detect_bsbp_cloud on a wall edge")
{
  // A wall face on the left ending at x = 2, seen from the robot.
  PointCloud c;
  for (double x = 0.5; x <= 2.0; x += 0.02)
    for (double z = 0.0; z <= 1.5; z += 0.05) c.points.emplace_back(x, 1.0, z);
  const auto b = detect_bsbp_cloud(c, CloudPipelineConfig{});
  REQUIRE(b.size() == 1);
  CHECK(b[0].cartesian.x() == doctest::Approx(2.0).epsilon(0.03));
  CHECK(b[0].cartesian.y() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(b[0].occluded_side == 1);
}
