#pragma once

#include <filesystem>
#include <memory>
#include <random>
#include <string>

#include <coherent/mesh.hpp>
#include <coherent/scene.hpp>

namespace fixtures {

coherent::BodyInstance body(int id, coherent::TriMesh mesh, double scale = 1.0,
                            const coherent::Vec3& translation = {});

// Small centered camera; f chosen so a unit body at z ~ 5 m fills a good
// fraction of the frame.
coherent::Camera camera(int width = 64, int height = 64, double f = 100.0);

// Two unit icospheres (subdivision 1) straddling the z axis, centers
// `gap` apart along x, both at depth z. gap < 2 collides.
coherent::Scene two_spheres(double gap, double z = 5.0);

// Concentric spheres: body 2 (radius inner_r, subdivision 1) inside body 1
// (radius 1, subdivision 2), both centered at `center`.
coherent::Scene nested_spheres(double inner_r = 0.2,
                               const coherent::Vec3& center = {0.0, 0.0, 5.0});

// Two unit quads facing the camera, overlapping by half a width, body 1 at
// z1, body 2 at z2. Quads are open meshes: rendering-only fixtures.
coherent::Scene two_quads(double z1, double z2);

// Unique temp directory, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Uniform dyadic double in [-range, range] with 10 fractional bits: exact
// under the arithmetic used by translation invariance tests.
double dyadic(std::mt19937& rng, double range);
coherent::Vec3 dyadic_vec(std::mt19937& rng, double range);

}  // namespace fixtures
