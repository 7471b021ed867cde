#include <cctype>
#include <fstream>
#include <set>
#include <string>

#include "coherent/errors.hpp"
#include "coherent/io.hpp"

namespace coherent {

namespace {

// Reads one whitespace-separated header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int parse_positive(const std::string& tok, const char* what,
                   const std::filesystem::path& path) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size() || v <= 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(path.string() + ": bad PGM " + std::string(what) + " '" + tok + "'");
  }
}

}  // namespace

InstanceMap load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open mask file " + path.string());
  if (pgm_token(in) != "P5")
    throw ValidationError(path.string() + ": not a binary PGM (P5) file");
  int width = parse_positive(pgm_token(in), "width", path);
  int height = parse_positive(pgm_token(in), "height", path);
  int maxval = parse_positive(pgm_token(in), "maxval", path);
  if (maxval != 65535)
    throw ValidationError(path.string() + ": expected 16-bit PGM (maxval 65535), got " +
                          std::to_string(maxval));
  // pgm_token consumed exactly one whitespace byte after the maxval.
  InstanceMap map = InstanceMap::zeros(width, height);
  std::vector<unsigned char> raw(map.data.size() * 2);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size()))
    throw ValidationError(path.string() + ": truncated PGM pixel data");
  for (size_t i = 0; i < map.data.size(); ++i)
    map.data[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]);  // big-endian
  return map;
}

void save_pgm(const InstanceMap& map, const std::filesystem::path& path) {
  if (map.width <= 0 || map.height <= 0)
    throw ValidationError("cannot save an empty instance map");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write mask file " + path.string());
  out << "P5\n" << map.width << ' ' << map.height << "\n65535\n";
  std::vector<unsigned char> raw(map.data.size() * 2);
  for (size_t i = 0; i < map.data.size(); ++i) {
    raw[2 * i] = static_cast<unsigned char>(map.data[i] >> 8);
    raw[2 * i + 1] = static_cast<unsigned char>(map.data[i] & 0xff);
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw ValidationError("failed writing mask file " + path.string());
}

InstanceMap load_instance_mask(const std::filesystem::path& path, const Scene& scene) {
  InstanceMap map = load_pgm(path);
  if (map.width != scene.camera.width || map.height != scene.camera.height)
    throw ValidationError(path.string() + ": mask is " + std::to_string(map.width) + "x" +
                          std::to_string(map.height) + " but the camera is " +
                          std::to_string(scene.camera.width) + "x" +
                          std::to_string(scene.camera.height));
  std::set<int> ids;
  for (const auto& b : scene.bodies) ids.insert(b.id);
  for (std::uint16_t v : map.data) {
    if (v != 0 && ids.count(v) == 0)
      throw ValidationError(path.string() + ": mask value " + std::to_string(v) +
                            " is not a body id of the scene");
  }
  return map;
}

}  // namespace coherent
