#include <filesystem>
#include <random>

#include <doctest.h>

#include "bslnav/costmap.hpp"
#include "bslnav/map_io.hpp"
#include "oracles.hpp"

using namespace bslnav;

namespace
{

// Inflation value written independently of the library's helper.
std::uint8_t expected_inflation(double d, const InflationConfig& c)
{
  if (d < c.inscribed_radius) return 254;
  if (d > c.inflation_radius) return 0;
  return static_cast<std::uint8_t>(std::floor(253.0 * std::exp(-c.cost_scaling_factor * (d - c.inscribed_radius))));
}

Costmap random_map(std::mt19937& rng, int w, int h, double lethal_fraction)
{
  Costmap m(0.05, Point2(-0.3, 0.4), w, h);
  std::bernoulli_distribution lethal(lethal_fraction);
  for (auto& c : m.data()) c = lethal(rng) ? cost::kLethal : static_cast<std::uint8_t>(rng() % 200);
  return m;
}

}  // namespace

TEST_CASE("world_to_cell")
{
  const Costmap m(0.05, Point2::Zero(), 100, 100);
  CHECK(m.world_to_cell(Point2(0, 0)) == CellIndex{0, 0});
  CHECK(m.world_to_cell(Point2(0.12, 0.26)) == CellIndex{2, 5});
  CHECK_FALSE(m.world_to_cell(Point2(-0.01, 0)).has_value());
  CHECK_FALSE(m.world_to_cell(Point2(5.0, 1)).has_value());
  CHECK(m.cell_center({2, 5}).isApprox(Point2(0.125, 0.275)));
}

TEST_CASE("trace_cells matches per-cell clipping")
{
  std::mt19937 rng(21);
  const Costmap m(0.1, Point2(-1, -1), 20, 20);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 300; ++trial)
  {
    const Point2 a(u(rng), u(rng)), b(u(rng), u(rng));
    std::set<CellIndex> expected = oracle::cells_touched(m, a, b);
    if (auto end = m.world_to_cell(b)) expected.erase(*end);
    const auto traced = trace_cells(m, a, b);
    const std::set<CellIndex> got(traced.begin(), traced.end());
    CHECK(got.size() == traced.size());
    CHECK(got == expected);
  }
}

TEST_CASE("update_obstacle_layer")
{
  Costmap layer(0.05, Point2(-2, -2), 80, 80, 100);
  LaserScan scan{0.0, 0.01, 4.0, {1.0}};
  update_obstacle_layer(layer, scan, Pose2D(0.01, 0.01, 0));
  const CellIndex hit = *layer.world_to_cell(Point2(1.01, 0.01));
  CHECK(layer.at(hit) == 254);
  for (double x = 0.01; x < 0.99; x += 0.05) CHECK(layer.at(*layer.world_to_cell(Point2(x, 0.01))) == 0);
  CHECK(layer.at(*layer.world_to_cell(Point2(1.2, 0.01))) == 100);

  SUBCASE("max-range beam only clears")
  {
    Costmap l2(0.05, Point2(-2, -2), 80, 80, 100);
    update_obstacle_layer(l2, LaserScan{0.0, 0.01, 1.5, {1.5}}, Pose2D(0.01, 0.01, 0));
    for (auto c : l2.data()) CHECK(c != 254);
    CHECK(l2.at(*l2.world_to_cell(Point2(1.0, 0.01))) == 0);
  }

  SUBCASE("random scans against the traversal oracle")
  {
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> r(0.05, 3.0), a(-kPi, kPi), off(-0.4, 0.4);
    for (int trial = 0; trial < 20; ++trial)
    {
      Costmap l(0.1, Point2(-2, -2), 40, 40, 255);
      LaserScan s{a(rng), 0.37, 2.5, {}};
      for (int i = 0; i < 12; ++i) s.ranges.push_back(std::min(r(rng), 2.5));
      s.ranges[3] = 2.5;
      const Pose2D pose(off(rng), off(rng), a(rng));
      std::set<CellIndex> cleared, marked;
      for (std::size_t i = 0; i < s.size(); ++i)
      {
        const Point2 end = pose.position() + polar_to_cartesian(s.ranges[i], pose.theta() + s.bearing(i));
        auto touched = oracle::cells_touched(l, pose.position(), end);
        if (auto e = l.world_to_cell(end))
        {
          touched.erase(*e);
          if (s.ranges[i] < s.max_range) marked.insert(*e);
        }
        cleared.insert(touched.begin(), touched.end());
      }
      update_obstacle_layer(l, s, pose);
      for (int y = 0; y < l.height(); ++y)
        for (int x = 0; x < l.width(); ++x)
        {
          const CellIndex c{x, y};
          const int want = marked.count(c) ? 254 : cleared.count(c) ? 0 : 255;
          CHECK(l.at(c) == want);
        }
    }
  }
}

TEST_CASE("inflation")
{
  const InflationConfig cfg{0.2, 0.6, 1.0};
  CHECK(inflation_cost(0.0, cfg) == 254);
  CHECK(inflation_cost(0.2, cfg) == 253);
  CHECK(inflation_cost(0.61, cfg) == 0);
  for (double d = 0; d < 1.0; d += 0.001) CHECK(inflation_cost(d + 0.001, cfg) <= inflation_cost(d, cfg));

  Costmap src(0.05, Point2::Zero(), 40, 40);
  src.at(20, 20) = cost::kLethal;
  Costmap layer = src;
  update_inflation_layer(layer, src, cfg);
  CHECK(layer.at(20, 20) == 254);
  CHECK(layer.at(24, 20) == 253);  // exactly the inscribed radius away
  CHECK(layer.at(20, 33) == 0);

  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial)
  {
    const InflationConfig c{0.1 + 0.05 * (rng() % 4), 0.4 + 0.05 * (rng() % 6), 0.5 + (rng() % 4)};
    const Costmap s = random_map(rng, 25, 18, 0.03);
    Costmap l = s;
    update_inflation_layer(l, s, c);
    const auto dist = oracle::lethal_distance(s);
    for (std::size_t i = 0; i < dist.size(); ++i) CHECK(l.data()[i] == expected_inflation(dist[i], c));
  }
}

TEST_CASE("blind spot costs")
{
  const BslCostConfig cfg{253, 1.0};
  CHECK(blind_spot_cost(0.0, cfg) == 253);
  CHECK(blind_spot_cost(1.0, cfg) == 93);

  Costmap layer(0.05, Point2::Zero(), 100, 100);
  const DangerZone z{Point2(2.51, 2.52), 1.3086};
  write_blind_spot_costs(layer, std::span(&z, 1), cfg);
  const CellIndex c = *layer.world_to_cell(z.center);
  CHECK(layer.at(c) == 253);
  CHECK(layer.at(c.x + 20, c.y) == 93);  // 1.0 m away
  CHECK(layer.at(c.x + 27, c.y) == 0);   // beyond the radius
  // Radially non-increasing along each axis.
  for (int k = 0; k < 26; ++k)
  {
    CHECK(layer.at(c.x + k + 1, c.y) <= layer.at(c.x + k, c.y));
    CHECK(layer.at(c.x, c.y - k - 1) <= layer.at(c.x, c.y - k));
  }

  SUBCASE("overlap keeps the maximum and leaves other cells alone")
  {
    Costmap a(0.05, Point2::Zero(), 100, 100, 7), b = a, both = a;
    const DangerZone z1{Point2(2.0, 2.0), 1.0}, z2{Point2(2.6, 2.3), 0.8};
    write_blind_spot_costs(a, std::span(&z1, 1), cfg);
    write_blind_spot_costs(b, std::span(&z2, 1), cfg);
    const std::vector<DangerZone> zs{z1, z2};
    write_blind_spot_costs(both, zs, cfg);
    for (std::size_t i = 0; i < both.size(); ++i)
    {
      CHECK(both.data()[i] == std::max(a.data()[i], b.data()[i]));
      CHECK(both.data()[i] >= 7);
    }
    CHECK(both.at(99, 99) == 7);
  }
}

TEST_CASE("compose_master")
{
  LayerStack s = LayerStack::congruent_to(Costmap(0.05, Point2::Zero(), 10, 10));
  CHECK(std::ranges::all_of(compose_master(s).data(), [](auto c) { return c == 0; }));
  s.obstacle_layer.at(1, 1) = 254;
  s.inflation_layer.at(2, 2) = 10;
  s.bsl_layer.at(2, 2) = 93;
  s.static_layer.at(3, 3) = 255;
  Costmap m = compose_master(s);
  CHECK(m.at(1, 1) == 254);
  CHECK(m.at(2, 2) == 93);
  CHECK(m.at(3, 3) == 254);
  s.bsl_enabled = false;
  CHECK(compose_master(s).at(2, 2) == 10);

  std::mt19937 rng(12);
  for (int trial = 0; trial < 30; ++trial)
  {
    LayerStack r = LayerStack::congruent_to(Costmap(0.05, Point2::Zero(), 12, 9));
    for (Costmap* l : {&r.static_layer, &r.obstacle_layer, &r.inflation_layer, &r.bsl_layer})
      for (auto& c : l->data()) c = static_cast<std::uint8_t>(rng() % 256);
    const Costmap m1 = compose_master(r);
    LayerStack swapped{r.bsl_layer, r.inflation_layer, r.obstacle_layer, r.static_layer, true};
    CHECK(compose_master(swapped) == m1);
    LayerStack again{m1, m1, m1, m1, true};
    CHECK(compose_master(again) == m1);
    for (std::size_t i = 0; i < m1.size(); ++i)
    {
      const int mx = std::max({r.static_layer.data()[i], r.obstacle_layer.data()[i], r.inflation_layer.data()[i],
                               r.bsl_layer.data()[i]});
      CHECK(m1.data()[i] == std::min(mx, 254));
    }
  }
}

TEST_CASE("crop and window")
{
  Costmap src(0.05, Point2(1, 1), 20, 20);
  src.at(5, 6) = 42;
  const Costmap c = crop(src, Point2(1.1, 1.1), 10, 10, 255);
  CHECK(c.at(3, 4) == 42);
  const Costmap out = crop(src, Point2(0.5, 0.5), 5, 5, 255);
  CHECK(out.at(0, 0) == 255);
  const Point2 o = window_origin(src, Point2(1.5, 1.5), 10);
  for (int k = 0; k < 2; ++k)
  {
    CHECK(o[k] <= 1.25 + 1e-9);
    CHECK(o[k] > 1.2 - 1e-9);
    const double steps = (o[k] - 1.0) / 0.05;
    CHECK(std::abs(steps - std::round(steps)) < 1e-9);
  }
}

TEST_CASE("map files")
{
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bslnav_test_map";
  fs::create_directories(dir);

  GrayImage img{3, 2, {0, 128, 255, 255, 89, 204}};
  write_pgm(dir / "m.pgm", img);
  MapMetadata meta;
  meta.resolution = 0.1;
  meta.origin = Point2(-1, 2);
  write_metadata(metadata_path(dir / "m.pgm"), meta);
  const Costmap m = load_static_map(dir / "m.pgm");
  CHECK(m.width() == 3);
  CHECK(m.height() == 2);
  CHECK(m.resolution() == doctest::Approx(0.1));
  // Image row 0 is the top, i.e. the highest y.
  CHECK(m.at(0, 1) == 254);
  CHECK(m.at(1, 1) == 255);
  CHECK(m.at(2, 1) == 0);
  CHECK(m.at(1, 0) == 254);  // 89 <= 0.35 * 255
  CHECK(m.at(2, 0) == 0);    // 204 >= 0.8 * 255

  std::mt19937 rng(2);
  Costmap dump(0.05, Point2(0.35, -1.2), 17, 11);
  for (auto& c : dump.data()) c = static_cast<std::uint8_t>(rng() % 256);
  dump_costmap(dir / "d.pgm", dump);
  CHECK(load_costmap_dump(dir / "d.pgm") == dump);

  CHECK_THROWS_AS(read_pgm(dir / "missing.pgm"), MapIoError);
  fs::remove_all(dir);
}
