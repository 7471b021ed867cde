#include "coherent/distance_field.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "coherent/errors.hpp"

namespace coherent {

void validate_field(const DistanceField& field) {
  if (field.resolution < 2)
    throw ValidationError("distance field resolution must be >= 2");
  if (!(field.spacing.x > 0.0) || !(field.spacing.y > 0.0) || !(field.spacing.z > 0.0) ||
      !is_finite(field.spacing) || !is_finite(field.origin))
    throw ValidationError("distance field origin/spacing must be finite, spacing positive");
  size_t n = static_cast<size_t>(field.resolution);
  if (field.values.size() != n * n * n)
    throw ValidationError("distance field value count does not match resolution^3");
  for (double v : field.values)
    if (!std::isfinite(v) || v < 0.0)
      throw ValidationError("distance field values must be finite and non-negative");
}

namespace {

// Per-axis lattice coordinate resolution. Finds the owning cell of p and its
// local coordinate t in [0,1). The subtlety: when p equals a node coordinate
// bit-for-bit, (p - origin)/spacing need not be an exact integer, so we snap
// against the recomputed node positions — that is what makes sampling at
// nodes reproduce stored values exactly.
struct AxisCoord {
  bool outside;   // beyond the lattice (or its far face, for gradients)
  int cell;       // owning cell index in [0, resolution-2]
  double t;       // local coordinate within the cell
  bool on_far_face;  // exactly at node resolution-1
};

AxisCoord resolve_axis(double p, double origin, double spacing, int resolution) {
  AxisCoord r{true, 0, 0.0, false};
  double u = (p - origin) / spacing;
  double last = static_cast<double>(resolution - 1);
  if (!(u >= 0.0) || u > last) return r;  // NaN-safe reject
  int k = static_cast<int>(std::floor(u));
  if (k > resolution - 2) k = resolution - 2;
  double node_k = origin + k * spacing;
  double node_k1 = origin + (k + 1) * spacing;
  if (p == node_k) {
    r.t = 0.0;
  } else if (p == node_k1) {
    if (k + 1 == resolution - 1) {
      r.on_far_face = true;
      r.t = 1.0;  // value path: far corner of the last cell, exact weight
    } else {
      ++k;
      r.t = 0.0;
    }
  } else {
    r.t = (p - node_k) / spacing;
    if (r.t < 0.0) r.t = 0.0;
    if (r.t > 1.0) r.t = 1.0;
    if (u == last) r.on_far_face = true;
  }
  r.outside = false;
  r.cell = k;
  return r;
}

}  // namespace

double sample_phi(const DistanceField& field, const Vec3& point) {
  if (!is_finite(point)) throw ValidationError("sample_phi: non-finite point");
  AxisCoord cx = resolve_axis(point.x, field.origin.x, field.spacing.x, field.resolution);
  if (cx.outside) return 0.0;
  AxisCoord cy = resolve_axis(point.y, field.origin.y, field.spacing.y, field.resolution);
  if (cy.outside) return 0.0;
  AxisCoord cz = resolve_axis(point.z, field.origin.z, field.spacing.z, field.resolution);
  if (cz.outside) return 0.0;

  const double tx = cx.t, ty = cy.t, tz = cz.t;
  const int i = cx.cell, j = cy.cell, k = cz.cell;
  auto v = [&](int di, int dj, int dk) { return field.value_at(i + di, j + dj, k + dk); };

  double c00 = v(0, 0, 0) * (1.0 - tx) + v(1, 0, 0) * tx;
  double c10 = v(0, 1, 0) * (1.0 - tx) + v(1, 1, 0) * tx;
  double c01 = v(0, 0, 1) * (1.0 - tx) + v(1, 0, 1) * tx;
  double c11 = v(0, 1, 1) * (1.0 - tx) + v(1, 1, 1) * tx;
  double c0 = c00 * (1.0 - ty) + c10 * ty;
  double c1 = c01 * (1.0 - ty) + c11 * ty;
  return c0 * (1.0 - tz) + c1 * tz;
}

Vec3 sample_phi_grad(const DistanceField& field, const Vec3& point) {
  if (!is_finite(point)) throw ValidationError("sample_phi_grad: non-finite point");
  AxisCoord cx = resolve_axis(point.x, field.origin.x, field.spacing.x, field.resolution);
  AxisCoord cy = resolve_axis(point.y, field.origin.y, field.spacing.y, field.resolution);
  AxisCoord cz = resolve_axis(point.z, field.origin.z, field.spacing.z, field.resolution);
  // Half-open cell ownership: the far lattice face belongs to no cell.
  if (cx.outside || cy.outside || cz.outside ||
      cx.on_far_face || cy.on_far_face || cz.on_far_face)
    return {};

  const double tx = cx.t, ty = cy.t, tz = cz.t;
  const int i = cx.cell, j = cy.cell, k = cz.cell;
  auto v = [&](int di, int dj, int dk) { return field.value_at(i + di, j + dj, k + dk); };

  // d/dx of the trilinear interpolant: finite difference of corner pairs,
  // blended over the remaining two axes; likewise for y and z.
  double dx00 = v(1, 0, 0) - v(0, 0, 0);
  double dx10 = v(1, 1, 0) - v(0, 1, 0);
  double dx01 = v(1, 0, 1) - v(0, 0, 1);
  double dx11 = v(1, 1, 1) - v(0, 1, 1);
  double gx = ((dx00 * (1.0 - ty) + dx10 * ty) * (1.0 - tz) +
               (dx01 * (1.0 - ty) + dx11 * ty) * tz) / field.spacing.x;

  double c00 = v(0, 0, 0) * (1.0 - tx) + v(1, 0, 0) * tx;
  double c10 = v(0, 1, 0) * (1.0 - tx) + v(1, 1, 0) * tx;
  double c01 = v(0, 0, 1) * (1.0 - tx) + v(1, 0, 1) * tx;
  double c11 = v(0, 1, 1) * (1.0 - tx) + v(1, 1, 1) * tx;
  double gy = ((c10 - c00) * (1.0 - tz) + (c11 - c01) * tz) / field.spacing.y;
  double gz = ((c01 - c00) * (1.0 - ty) + (c11 - c10) * ty) / field.spacing.z;
  return {gx, gy, gz};
}

namespace {

template <class T>
void write_raw(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T read_raw(std::istream& in, const std::filesystem::path& path) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (in.gcount() != sizeof(T))
    throw ValidationError(path.string() + ": truncated field file");
  return value;
}

constexpr char kMagic[4] = {'P', 'H', 'I', 'F'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void save_field(const DistanceField& field, const std::filesystem::path& path) {
  validate_field(field);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write field file " + path.string());
  out.write(kMagic, 4);
  write_raw(out, kVersion);
  write_raw(out, static_cast<std::uint32_t>(field.resolution));
  for (int a = 0; a < 3; ++a) write_raw(out, field.origin[a]);
  for (int a = 0; a < 3; ++a) write_raw(out, field.spacing[a]);
  for (double v : field.values) write_raw(out, static_cast<float>(v));
  if (!out) throw ValidationError("failed writing field file " + path.string());
}

DistanceField load_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open field file " + path.string());
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
    throw ValidationError(path.string() + ": not a PHIF field file");
  auto version = read_raw<std::uint32_t>(in, path);
  if (version != kVersion)
    throw ValidationError(path.string() + ": unsupported PHIF version " + std::to_string(version));
  auto resolution = read_raw<std::uint32_t>(in, path);
  if (resolution < 2 || resolution > 4096)
    throw ValidationError(path.string() + ": unreasonable PHIF resolution " +
                          std::to_string(resolution));
  DistanceField field;
  field.resolution = static_cast<int>(resolution);
  for (int a = 0; a < 3; ++a) field.origin[a] = read_raw<double>(in, path);
  for (int a = 0; a < 3; ++a) field.spacing[a] = read_raw<double>(in, path);
  size_t n = static_cast<size_t>(field.resolution);
  field.values.resize(n * n * n);
  for (double& v : field.values) v = static_cast<double>(read_raw<float>(in, path));
  validate_field(field);
  return field;
}

}  // namespace coherent
