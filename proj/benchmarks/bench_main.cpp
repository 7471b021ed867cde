// Wall-clock benchmarks for the hot paths: field construction, trilinear
// sampling, rasterization, and the two scene losses. Run with
// --benchmark_filter=... to pick a subset.

#include <cstdlib>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include <coherent/ordinal.hpp>
#include <coherent/penetration.hpp>
#include <coherent/primitives.hpp>
#include <coherent/raster.hpp>
#include <coherent/scene.hpp>
#include <coherent/voxelize.hpp>

using namespace coherent;

namespace {

Camera camera(int width, int height, double f) {
  Camera c;
  c.width = width;
  c.height = height;
  c.f = f;
  c.cx = width / 2.0;
  c.cy = height / 2.0;
  return c;
}

BodyInstance body(int id, TriMesh mesh, const Vec3& translation) {
  BodyInstance b;
  b.id = id;
  b.mesh = std::make_shared<TriMesh>(std::move(mesh));
  b.translation = translation;
  return b;
}

// 6890 vertices / 13776 faces: the budget mesh from the performance checks.
const TriMesh& budget_mesh() {
  static const TriMesh mesh = make_uv_sphere(82, 84);
  return mesh;
}

Scene budget_scene(int width, int bodies) {
  Scene s;
  s.camera = camera(width, 832, 400.0);
  for (int i = 0; i < bodies; ++i)
    s.bodies.push_back(body(i + 1, budget_mesh(), {(i - bodies / 2) * 0.8, 0.0, 6.0 + 0.3 * i}));
  return s;
}

void BM_VoxelizePhi(benchmark::State& state) {
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(voxelize_phi(budget_mesh(), Transform{}, resolution));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(resolution) * resolution *
                          resolution);
}
BENCHMARK(BM_VoxelizePhi)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_VoxelizeWorkers(benchmark::State& state) {
  setenv("COHERENT_THREADS", std::to_string(state.range(0)).c_str(), 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(voxelize_phi(budget_mesh(), Transform{}, 32));
  setenv("COHERENT_THREADS", "1", 1);
}
BENCHMARK(BM_VoxelizeWorkers)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_SamplePhi(benchmark::State& state) {
  DistanceField field = voxelize_phi(budget_mesh(), Transform{}, 32);
  // a fixed sweep through the box, mostly interior points
  std::vector<Vec3> points;
  for (int i = 0; i < 4096; ++i) {
    double t = i / 4096.0;
    points.push_back({field.origin.x + t * 31 * field.spacing.x,
                      field.origin.y + (1.0 - t) * 31 * field.spacing.y,
                      field.origin.z + 0.5 * 31 * field.spacing.z});
  }
  for (auto _ : state) {
    double acc = 0.0;
    for (const Vec3& p : points) acc += sample_phi(field, p);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(points.size()));
}
BENCHMARK(BM_SamplePhi);

void BM_Render(benchmark::State& state) {
  Scene s = budget_scene(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(render(s));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.camera.width) *
                          s.camera.height);
}
BENCHMARK(BM_Render)->Args({512, 1})->Args({512, 5})->Args({1024, 5})->Unit(benchmark::kMillisecond);

void BM_PenetrationColdFields(benchmark::State& state) {
  Scene s;
  s.camera = camera(512, 832, 400.0);
  s.bodies.push_back(body(1, budget_mesh(), {-0.7, 0.0, 6.0}));
  s.bodies.push_back(body(2, budget_mesh(), {0.7, 0.1, 6.0}));
  for (auto _ : state) benchmark::DoNotOptimize(scene_penetration(s, 32));
}
BENCHMARK(BM_PenetrationColdFields)->Unit(benchmark::kMillisecond);

void BM_PenetrationWarmFields(benchmark::State& state) {
  Scene s;
  s.camera = camera(512, 832, 400.0);
  s.bodies.push_back(body(1, budget_mesh(), {-0.7, 0.0, 6.0}));
  s.bodies.push_back(body(2, budget_mesh(), {0.7, 0.1, 6.0}));
  FieldCache cache;
  scene_penetration(s, 32, kDefaultPaddingFraction, {}, &cache);  // prebuild
  for (auto _ : state)
    benchmark::DoNotOptimize(scene_penetration(s, 32, kDefaultPaddingFraction, {}, &cache));
}
BENCHMARK(BM_PenetrationWarmFields)->Unit(benchmark::kMillisecond);

void BM_OrdinalLoss(benchmark::State& state) {
  Scene s = budget_scene(512, 5);
  RenderOutput rendered = render(s);
  // a mask that disagrees everywhere two silhouettes overlap
  Scene flipped = s;
  for (size_t i = 0; i < flipped.bodies.size(); ++i)
    flipped.bodies[i].translation.z = s.bodies[s.bodies.size() - 1 - i].translation.z;
  InstanceMap mask = render(flipped).instance;
  for (auto _ : state) benchmark::DoNotOptimize(ordinal_depth_loss(rendered, mask));
}
BENCHMARK(BM_OrdinalLoss)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
