#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include <coherent/errors.hpp>
#include <coherent/io.hpp>
#include <coherent/primitives.hpp>

#include "support/fixtures.hpp"

using namespace coherent;

namespace {

std::filesystem::path write_text(const fixtures::TempDir& dir, const std::string& name,
                                 const std::string& text) {
  auto p = dir.file(name);
  std::ofstream out(p);
  out << text;
  return p;
}

}  // namespace

TEST_CASE("obj round trip preserves geometry bit-exactly") {
  fixtures::TempDir dir;
  TriMesh mesh = make_icosphere(1, 0.37);
  auto path = dir.file("sphere.obj");
  save_mesh(mesh, path);
  TriMesh back = load_mesh(path);
  REQUIRE(back.vertices.size() == mesh.vertices.size());
  REQUIRE(back.faces.size() == mesh.faces.size());
  for (size_t i = 0; i < mesh.vertices.size(); ++i) CHECK(back.vertices[i] == mesh.vertices[i]);
  for (size_t i = 0; i < mesh.faces.size(); ++i) CHECK(back.faces[i] == mesh.faces[i]);
}

TEST_CASE("quads are fan-triangulated") {
  fixtures::TempDir dir;
  auto path = write_text(dir, "quad.obj",
                         "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\n"
                         "f 1 2 3 4\n");
  TriMesh m = load_mesh(path);
  REQUIRE(m.vertices.size() == 4);
  REQUIRE(m.faces.size() == 2);
  CHECK(m.faces[0] == std::array<int, 3>{0, 1, 2});
  CHECK(m.faces[1] == std::array<int, 3>{0, 2, 3});
}

TEST_CASE("slash-separated face indices keep the position part") {
  fixtures::TempDir dir;
  auto path = write_text(dir, "slashes.obj",
                         "v 0 0 0\nv 1 0 0\nv 0 1 0\n"
                         "f 1/1/1 2/2/2 3//3\n");
  TriMesh m = load_mesh(path);
  REQUIRE(m.faces.size() == 1);
  CHECK(m.faces[0] == std::array<int, 3>{0, 1, 2});
}

TEST_CASE("unknown record types are warnings, not errors") {
  fixtures::TempDir dir;
  auto path = write_text(dir, "extras.obj",
                         "# comment\nvn 0 0 1\nvt 0.5 0.5\no thing\n"
                         "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
  std::vector<std::string> warnings;
  TriMesh m = load_mesh(path, &warnings);
  CHECK(m.faces.size() == 1);
  // vn, vt, o — comments are silent
  CHECK(warnings.size() == 3);
}

TEST_CASE("parse errors carry file and line") {
  fixtures::TempDir dir;

  SUBCASE("bad vertex") {
    auto path = write_text(dir, "bad.obj", "v 0 0\nf 1 2 3\n");
    try {
      load_mesh(path);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      std::string msg = e.what();
      CHECK(msg.find("bad.obj:1") != std::string::npos);
    }
  }
  SUBCASE("face index out of range") {
    auto path = write_text(dir, "range.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 9\n");
    try {
      load_mesh(path);
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      std::string msg = e.what();
      CHECK(msg.find("range.obj:4") != std::string::npos);
    }
  }
  SUBCASE("zero index (obj is 1-based)") {
    auto path = write_text(dir, "zero.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n");
    CHECK_THROWS_AS(load_mesh(path), ValidationError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_mesh(dir.file("nope.obj")), ValidationError);
  }
}
