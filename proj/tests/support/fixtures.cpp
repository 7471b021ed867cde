#include "fixtures.hpp"

#include <coherent/primitives.hpp>

namespace fixtures {

using coherent::Scene;
using coherent::TriMesh;
using coherent::Vec3;

coherent::BodyInstance body(int id, TriMesh mesh, double scale, const Vec3& translation) {
  coherent::BodyInstance b;
  b.id = id;
  b.mesh = std::make_shared<TriMesh>(std::move(mesh));
  b.mesh_path = "<fixture>";
  b.scale = scale;
  b.translation = translation;
  return b;
}

coherent::Camera camera(int width, int height, double f) {
  coherent::Camera c;
  c.f = f;
  c.cx = width / 2.0;
  c.cy = height / 2.0;
  c.width = width;
  c.height = height;
  return c;
}

Scene two_spheres(double gap, double z) {
  Scene s;
  s.camera = camera();
  s.bodies.push_back(body(1, coherent::make_icosphere(1), 1.0, {-gap / 2.0, 0.0, z}));
  s.bodies.push_back(body(2, coherent::make_icosphere(1), 1.0, {gap / 2.0, 0.0, z}));
  return s;
}

Scene nested_spheres(double inner_r, const Vec3& center) {
  Scene s;
  s.camera = camera();
  s.bodies.push_back(body(1, coherent::make_icosphere(2), 1.0, center));
  s.bodies.push_back(body(2, coherent::make_icosphere(1, inner_r), 1.0, center));
  return s;
}

Scene two_quads(double z1, double z2) {
  Scene s;
  s.camera = camera(64, 64, 100.0);
  s.bodies.push_back(body(1, coherent::make_quad(1.0, 1.0), 1.0, {-0.25, 0.0, z1}));
  s.bodies.push_back(body(2, coherent::make_quad(1.0, 1.0), 1.0, {0.25, 0.0, z2}));
  return s;
}

TempDir::TempDir() {
  auto base = std::filesystem::temp_directory_path();
  std::random_device rd;
  for (int attempt = 0; attempt < 64; ++attempt) {
    auto candidate = base / ("coherent-test-" + std::to_string(rd()));
    std::error_code ec;
    if (std::filesystem::create_directory(candidate, ec)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("TempDir: cannot create a unique directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

double dyadic(std::mt19937& rng, double range) {
  // 10 fractional bits; range is snapped to the same grid by construction
  long long steps = static_cast<long long>(range * 1024.0);
  std::uniform_int_distribution<long long> dist(-steps, steps);
  return static_cast<double>(dist(rng)) / 1024.0;
}

coherent::Vec3 dyadic_vec(std::mt19937& rng, double range) {
  double x = dyadic(rng, range);
  double y = dyadic(rng, range);
  double z = dyadic(rng, range);
  return {x, y, z};
}

}  // namespace fixtures
