#include "bslnav/map_io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <locale>
#include <map>
#include <sstream>

namespace bslnav
{

namespace
{

// Reads the next whitespace-delimited PGM header token, skipping '#' comments.
std::string next_token(std::istream& in)
{
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF)
  {
    if (ch == '#')
    {
      while ((ch = in.get()) != EOF && ch != '\n') {}
      continue;
    }
    if (std::isspace(ch))
    {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(ch));
  }
  return tok;
}

int parse_int(const std::string& s, const char* what)
{
  try
  {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw MapIoError(std::string("pgm: bad ") + what);
    return v;
  }
  catch (const std::logic_error&)
  {
    throw MapIoError(std::string("pgm: bad ") + what);
  }
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MapIoError("cannot open " + path.string());
  if (next_token(in) != "P5") throw MapIoError("pgm: expected P5 header in " + path.string());
  GrayImage img;
  img.width = parse_int(next_token(in), "width");
  img.height = parse_int(next_token(in), "height");
  const int maxval = parse_int(next_token(in), "maxval");
  if (img.width <= 0 || img.height <= 0 || maxval <= 0 || maxval > 255) throw MapIoError("pgm: unsupported geometry");
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(img.pixels.size())) throw MapIoError("pgm: truncated pixel data");
  return img;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MapIoError("cannot write " + path.string());
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

std::filesystem::path metadata_path(const std::filesystem::path& pgm)
{
  std::filesystem::path p = pgm;
  return p.replace_extension(".meta");
}

MapMetadata read_metadata(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) throw MapIoError("cannot open " + path.string());
  in.imbue(std::locale::classic());
  std::map<std::string, double> kv;
  std::string line;
  while (std::getline(in, line))
  {
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw MapIoError("metadata: malformed line '" + line + "'");
    std::string key = line.substr(0, colon);
    std::istringstream value(line.substr(colon + 1));
    value.imbue(std::locale::classic());
    double v;
    if (!(value >> v)) throw MapIoError("metadata: bad value for " + key);
    kv[key] = v;
  }
  auto get = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw MapIoError(std::string("metadata: missing ") + key);
    return it->second;
  };
  MapMetadata m;
  m.resolution = get("resolution");
  m.origin = {get("origin_x"), get("origin_y")};
  m.origin_theta = get("origin_theta");
  m.occupied_thresh = get("occupied_thresh");
  m.free_thresh = get("free_thresh");
  if (!(m.resolution > 0)) throw MapIoError("metadata: resolution must be positive");
  if (m.origin_theta != 0.0) throw MapIoError("metadata: rotated map origins are not supported");
  return m;
}

void write_metadata(const std::filesystem::path& path, const MapMetadata& m)
{
  std::ofstream out(path);
  if (!out) throw MapIoError("cannot write " + path.string());
  out.imbue(std::locale::classic());
  out << std::fixed << std::setprecision(6);
  out << "resolution: " << m.resolution << '\n'
      << "origin_x: " << m.origin.x() << '\n'
      << "origin_y: " << m.origin.y() << '\n'
      << "origin_theta: " << m.origin_theta << '\n'
      << "occupied_thresh: " << m.occupied_thresh << '\n'
      << "free_thresh: " << m.free_thresh << '\n';
}

Costmap costmap_from_image(const GrayImage& image, const MapMetadata& meta)
{
  Costmap map(meta.resolution, meta.origin, image.width, image.height);
  const double occ = meta.occupied_thresh * 255.0;
  const double fre = meta.free_thresh * 255.0;
  for (int row = 0; row < image.height; ++row)
    for (int x = 0; x < image.width; ++x)
    {
      const double px = image.pixels[static_cast<std::size_t>(row) * image.width + x];
      std::uint8_t c = cost::kUnknown;
      if (px <= occ) c = cost::kLethal;
      else if (px >= fre) c = cost::kFree;
      map.at(x, image.height - 1 - row) = c;
    }
  return map;
}

Costmap load_static_map(const std::filesystem::path& pgm)
{
  return costmap_from_image(read_pgm(pgm), read_metadata(metadata_path(pgm)));
}

void dump_costmap(const std::filesystem::path& pgm, const Costmap& map)
{
  GrayImage img{map.width(), map.height(), {}};
  img.pixels.resize(map.size());
  for (int row = 0; row < map.height(); ++row)
    for (int x = 0; x < map.width(); ++x)
      img.pixels[static_cast<std::size_t>(row) * map.width() + x] = map.at(x, map.height() - 1 - row);
  write_pgm(pgm, img);
  MapMetadata meta;
  meta.resolution = map.resolution();
  meta.origin = map.origin();
  write_metadata(metadata_path(pgm), meta);
}

Costmap load_costmap_dump(const std::filesystem::path& pgm)
{
  const GrayImage img = read_pgm(pgm);
  const MapMetadata meta = read_metadata(metadata_path(pgm));
  Costmap map(meta.resolution, meta.origin, img.width, img.height);
  for (int row = 0; row < img.height; ++row)
    for (int x = 0; x < img.width; ++x)
      map.at(x, img.height - 1 - row) = img.pixels[static_cast<std::size_t>(row) * img.width + x];
  return map;
}

}  // namespace bslnav
