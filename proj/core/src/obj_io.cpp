#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "coherent/errors.hpp"
#include "coherent/io.hpp"

namespace coherent {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, int line, const std::string& msg) {
  throw ValidationError(path.string() + ":" + std::to_string(line) + ": " + msg);
}

// Parses the vertex index of an `f` entry; `1/2/3` forms take the part before
// the first slash. 1-based; zero and negative indices are rejected.
int parse_face_index(const std::string& token, int vertex_count,
                     const std::filesystem::path& path, int line) {
  size_t slash = token.find('/');
  std::string_view head(token.data(), slash == std::string::npos ? token.size() : slash);
  int value = 0;
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), value);
  if (ec != std::errc() || ptr != head.data() + head.size())
    fail(path, line, "malformed face index '" + token + "'");
  if (value <= 0)
    fail(path, line, "face index " + std::to_string(value) + " must be >= 1");
  if (value > vertex_count)
    fail(path, line, "face index " + std::to_string(value) + " exceeds vertex count " +
                         std::to_string(vertex_count));
  return value - 1;
}

}  // namespace

TriMesh load_mesh(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open mesh file " + path.string());

  TriMesh mesh;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      Vec3 v;
      if (!(ls >> v.x >> v.y >> v.z))
        fail(path, line_no, "vertex record needs three coordinates");
      if (!is_finite(v)) fail(path, line_no, "vertex has non-finite coordinates");
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string token;
      while (ls >> token)
        idx.push_back(parse_face_index(token, static_cast<int>(mesh.vertices.size()),
                                       path, line_no));
      if (idx.size() < 3) fail(path, line_no, "face record needs at least three indices");
      for (size_t k = 1; k + 1 < idx.size(); ++k)  // fan triangulation
        mesh.faces.push_back({idx[0], idx[k], idx[k + 1]});
    } else {
      if (warnings)
        warnings->push_back(path.string() + ":" + std::to_string(line_no) +
                            ": ignoring record '" + tag + "'");
    }
  }
  validate_mesh(mesh);
  return mesh;
}

void save_mesh(const TriMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write mesh file " + path.string());
  char buf[128];
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.z);
    out << buf;
  }
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  if (!out) throw ValidationError("failed writing mesh file " + path.string());
}

}  // namespace coherent
