#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "bslnav/costmap.hpp"

namespace bslnav
{

struct MapIoError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Sidecar metadata stored next to every PGM. Thresholds are fractions of 255.
struct MapMetadata
{
  double resolution{0.05};
  Point2 origin{Point2::Zero()};
  double origin_theta{0};
  double occupied_thresh{0.35};
  double free_thresh{0.8};
};

struct GrayImage
{
  int width{0};
  int height{0};
  std::vector<std::uint8_t> pixels;  // row 0 is the top of the image
};

GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

MapMetadata read_metadata(const std::filesystem::path& path);
void write_metadata(const std::filesystem::path& path, const MapMetadata& meta);

/// Path of the sidecar that belongs to a PGM: "map.pgm" -> "map.meta".
std::filesystem::path metadata_path(const std::filesystem::path& pgm);

/// Threshold a grayscale map into Free / Lethal / Unknown costs.
Costmap costmap_from_image(const GrayImage& image, const MapMetadata& meta);

/// Loads `pgm` and its sidecar as a static layer.
Costmap load_static_map(const std::filesystem::path& pgm);

/// Writes raw cost bytes (top row = highest y) and the sidecar.
void dump_costmap(const std::filesystem::path& pgm, const Costmap& map);

/// Reads a dump written by dump_costmap back without thresholding.
Costmap load_costmap_dump(const std::filesystem::path& pgm);

}  // namespace bslnav
