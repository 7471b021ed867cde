#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "coherent/errors.hpp"
#include "coherent/io.hpp"

static_assert(std::endian::native == std::endian::little,
              "PFM code assumes a little-endian host");

namespace coherent {

void save_pfm(const DepthMap& map, const std::filesystem::path& path) {
  if (map.width <= 0 || map.height <= 0)
    throw ValidationError("cannot save an empty depth map");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write depth file " + path.string());
  out << "Pf\n" << map.width << ' ' << map.height << "\n-1.0\n";  // -1.0: little-endian
  std::vector<float> row(static_cast<size_t>(map.width));
  for (int y = map.height - 1; y >= 0; --y) {  // PFM rows run bottom-to-top
    for (int x = 0; x < map.width; ++x)
      row[static_cast<size_t>(x)] = map.is_covered(x, y)
          ? static_cast<float>(map.at(x, y))
          : std::numeric_limits<float>::infinity();
    out.write(reinterpret_cast<const char*>(row.data()),
              static_cast<std::streamsize>(row.size() * sizeof(float)));
  }
  if (!out) throw ValidationError("failed writing depth file " + path.string());
}

DepthMap load_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open depth file " + path.string());
  std::string magic;
  int width = 0, height = 0;
  double scale = 0.0;
  in >> magic >> width >> height >> scale;
  if (magic != "Pf" || width <= 0 || height <= 0 || scale == 0.0 || !in)
    throw ValidationError(path.string() + ": not a grayscale PFM file");
  in.get();  // single separator after the scale line
  const bool swap = scale > 0.0;  // positive scale means big-endian data
  DepthMap map = DepthMap::uncovered(width, height);
  std::vector<float> row(static_cast<size_t>(width));
  for (int y = height - 1; y >= 0; --y) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (in.gcount() != static_cast<std::streamsize>(row.size() * sizeof(float)))
      throw ValidationError(path.string() + ": truncated PFM pixel data");
    for (int x = 0; x < width; ++x) {
      float v = row[static_cast<size_t>(x)];
      if (swap) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        bits = __builtin_bswap32(bits);
        std::memcpy(&v, &bits, 4);
      }
      if (std::isfinite(v)) {
        map.depth[static_cast<size_t>(y) * width + x] = static_cast<double>(v);
        map.covered[static_cast<size_t>(y) * width + x] = 1;
      }
    }
  }
  return map;
}

}  // namespace coherent
