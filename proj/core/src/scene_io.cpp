#include <fstream>
#include <map>

#include <json.hpp>

#include "coherent/errors.hpp"
#include "coherent/io.hpp"

namespace coherent {

namespace {

using json = nlohmann::ordered_json;

double require_number(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.contains(key) || !obj[key].is_number())
    throw ValidationError(ctx + ": missing or non-numeric field '" + key + "'");
  return obj[key].get<double>();
}

int require_int(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.contains(key) || !obj[key].is_number_integer())
    throw ValidationError(ctx + ": missing or non-integer field '" + key + "'");
  return obj[key].get<int>();
}

}  // namespace

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open scene file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  const std::string ctx = path.string();
  if (!doc.is_object() || !doc.contains("camera") || !doc.contains("bodies"))
    throw ValidationError(ctx + ": scene needs 'camera' and 'bodies'");

  Scene scene;
  const json& cam = doc["camera"];
  scene.camera.f = require_number(cam, "f", ctx + ": camera");
  scene.camera.cx = require_number(cam, "cx", ctx + ": camera");
  scene.camera.cy = require_number(cam, "cy", ctx + ": camera");
  scene.camera.width = require_int(cam, "width", ctx + ": camera");
  scene.camera.height = require_int(cam, "height", ctx + ": camera");

  if (!doc["bodies"].is_array())
    throw ValidationError(ctx + ": 'bodies' must be an array");

  const auto scene_dir = std::filesystem::absolute(path).parent_path();
  std::map<std::string, std::shared_ptr<const TriMesh>> mesh_cache;
  for (const json& jb : doc["bodies"]) {
    BodyInstance body;
    const std::string bctx = ctx + ": body";
    body.id = require_int(jb, "id", bctx);
    if (!jb.contains("mesh") || !jb["mesh"].is_string())
      throw ValidationError(bctx + ": missing mesh path");
    if (!jb.contains("translation") || !jb["translation"].is_array() ||
        jb["translation"].size() != 3)
      throw ValidationError(bctx + " " + std::to_string(body.id) +
                            ": translation must be a 3-array");
    for (int a = 0; a < 3; ++a) {
      if (!jb["translation"][static_cast<size_t>(a)].is_number())
        throw ValidationError(bctx + " " + std::to_string(body.id) +
                              ": translation entries must be numbers");
      body.translation[a] = jb["translation"][static_cast<size_t>(a)].get<double>();
    }
    body.scale = jb.contains("scale") ? require_number(jb, "scale", bctx) : 1.0;

    std::filesystem::path mesh_path = jb["mesh"].get<std::string>();
    if (mesh_path.is_relative()) mesh_path = scene_dir / mesh_path;
    mesh_path = mesh_path.lexically_normal();
    body.mesh_path = mesh_path.string();
    auto it = mesh_cache.find(body.mesh_path);
    if (it == mesh_cache.end()) {
      auto mesh = std::make_shared<TriMesh>(load_mesh(mesh_path));
      it = mesh_cache.emplace(body.mesh_path, std::move(mesh)).first;
    }
    body.mesh = it->second;
    scene.bodies.push_back(std::move(body));
  }
  validate_scene(scene);
  return scene;
}

void save_scene(const Scene& scene, const std::filesystem::path& path) {
  const auto out_dir = std::filesystem::absolute(path).parent_path();
  json doc;
  doc["camera"] = {{"f", scene.camera.f},
                   {"cx", scene.camera.cx},
                   {"cy", scene.camera.cy},
                   {"width", scene.camera.width},
                   {"height", scene.camera.height}};
  doc["bodies"] = json::array();
  for (const auto& b : scene.bodies) {
    // Keep saved scenes relocatable: mesh paths are emitted relative to the
    // output file when possible.
    std::filesystem::path mesh_path = b.mesh_path;
    std::error_code ec;
    auto rel = std::filesystem::relative(mesh_path, out_dir, ec);
    std::string stored = (!ec && !rel.empty()) ? rel.string() : mesh_path.string();
    doc["bodies"].push_back({{"id", b.id},
                             {"mesh", stored},
                             {"translation", {b.translation.x, b.translation.y, b.translation.z}},
                             {"scale", b.scale}});
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write scene file " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw ValidationError("failed writing scene file " + path.string());
}

}  // namespace coherent
