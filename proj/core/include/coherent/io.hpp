#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "coherent/image.hpp"
#include "coherent/mesh.hpp"
#include "coherent/scene.hpp"

namespace coherent {

// --- Wavefront OBJ (restricted: v/f records, 1-based indices, # comments) ---
// Polygons are fan-triangulated; unknown record types are reported through
// `warnings` (if given) and skipped. Parse errors carry file:line context.
TriMesh load_mesh(const std::filesystem::path& path,
                  std::vector<std::string>* warnings = nullptr);
void save_mesh(const TriMesh& mesh, const std::filesystem::path& path);

// --- Scene JSON ---
// {"camera": {"f","cx","cy","width","height"},
//  "bodies": [{"id","mesh","translation":[x,y,z],"scale"}]}
// Mesh paths are resolved relative to the scene file. Numeric fields
// round-trip bit-exactly through save_scene/load_scene.
Scene load_scene(const std::filesystem::path& path);
void save_scene(const Scene& scene, const std::filesystem::path& path);

// --- 16-bit P5 PGM (big-endian samples, maxval 65535) ---
InstanceMap load_pgm(const std::filesystem::path& path);
void save_pgm(const InstanceMap& map, const std::filesystem::path& path);

// PGM read + validation against a scene: dimensions must match the camera,
// every nonzero value must be a scene body id.
InstanceMap load_instance_mask(const std::filesystem::path& path, const Scene& scene);

// --- PFM (grayscale "Pf", scale -1.0 => little-endian, rows bottom-to-top) ---
// Uncovered pixels are written as +inf.
void save_pfm(const DepthMap& map, const std::filesystem::path& path);
DepthMap load_pfm(const std::filesystem::path& path);

}  // namespace coherent
