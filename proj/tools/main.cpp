// coherent: command-line front end for the scene coherency library.
// Every run prints exactly one JSON document to stdout; diagnostics go to
// stderr. Exit codes: 0 ok, 2 invalid input, 1 internal failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <coherent/errors.hpp>
#include <coherent/io.hpp>
#include <coherent/metrics.hpp>
#include <coherent/ordinal.hpp>
#include <coherent/penetration.hpp>
#include <coherent/raster.hpp>
#include <coherent/refine.hpp>
#include <coherent/voxelize.hpp>

using nlohmann::ordered_json;

namespace {

ordered_json vec_json(const coherent::Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

ordered_json penetration_json(const coherent::PenetrationReport& rep) {
  ordered_json j;
  j["loss"] = rep.loss;
  j["collision_count"] = rep.collision_count();
  ordered_json colliding = ordered_json::array();
  for (const auto& [a, b] : rep.colliding_pairs) colliding.push_back(ordered_json::array({a, b}));
  j["colliding_pairs"] = std::move(colliding);
  j["fields_built"] = rep.fields_built;
  ordered_json pairs = ordered_json::array();
  for (const auto& [key, value] : rep.pair_penalties)
    pairs.push_back({{"owner", key.first}, {"intruder", key.second}, {"penalty", value}});
  j["pairs"] = std::move(pairs);
  ordered_json grads = ordered_json::object();
  for (const auto& [id, g] : rep.gradients) grads[std::to_string(id)] = vec_json(g);
  j["translation_gradients"] = std::move(grads);
  return j;
}

ordered_json ordinal_json(const coherent::OrdinalDepthReport& rep) {
  ordered_json j;
  j["loss"] = rep.loss;
  j["disagreement_pixels"] = rep.disagreement_pixels;
  j["skipped_pixels"] = rep.skipped_pixels;
  ordered_json grads = ordered_json::object();
  for (const auto& [id, g] : rep.tz_gradients) grads[std::to_string(id)] = g;
  j["tz_gradients"] = std::move(grads);
  return j;
}

ordered_json record_json(const coherent::RefineRecord& r) {
  ordered_json j;
  j["iter"] = r.iter;
  j["penetration"] = r.penetration ? ordered_json(*r.penetration) : ordered_json(nullptr);
  j["ordinal"] = r.ordinal ? ordered_json(*r.ordinal) : ordered_json(nullptr);
  j["collisions"] = r.collisions ? ordered_json(*r.collisions) : ordered_json(nullptr);
  j["accuracy"] = r.accuracy ? ordered_json(*r.accuracy) : ordered_json(nullptr);
  j["anchor"] = r.anchor;
  j["total"] = r.total;
  j["step"] = r.step;
  return j;
}

ordered_json depth_order_json(const coherent::DepthOrderAccuracy& acc,
                              const std::vector<coherent::PairRelation>& relations) {
  ordered_json d;
  d["accuracy"] = acc.accuracy;
  d["comparable_pairs"] = acc.comparable_pairs;
  d["agreeing_pairs"] = acc.agreeing_pairs;
  ordered_json rel = ordered_json::array();
  for (const auto& r : relations) rel.push_back({{"front", r.front_id}, {"back", r.back_id}});
  d["relations"] = std::move(rel);
  return d;
}

coherent::Scene load_scene_reporting(const std::string& path) {
  return coherent::load_scene(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scene coherency tools: distance fields, rendering, losses, refinement"};
  app.require_subcommand(1);

  // voxelize
  auto* vox = app.add_subcommand("voxelize", "build a body's inside-distance field");
  std::string vox_mesh, vox_out;
  double vox_scale = 1.0, vox_padding = coherent::kDefaultPaddingFraction;
  std::vector<double> vox_translation;
  int vox_resolution = coherent::kDefaultResolution;
  vox->add_option("--mesh", vox_mesh, "OBJ mesh (must be watertight)")->required();
  vox->add_option("--scale", vox_scale, "uniform scale");
  vox->add_option("--translation", vox_translation, "body translation x y z")->expected(3);
  vox->add_option("--resolution", vox_resolution, "nodes per axis");
  vox->add_option("--padding", vox_padding, "AABB padding fraction");
  vox->add_option("--out", vox_out, "output field (.phif)")->required();

  // render
  auto* ren = app.add_subcommand("render", "rasterize a scene's instance and depth maps");
  std::string ren_scene, ren_outdir;
  ren->add_option("--scene", ren_scene, "scene JSON")->required();
  ren->add_option("--out-dir", ren_outdir,
                  "directory for instance.pgm, depth_scene.pfm, depth_body_<id>.pfm")
      ->required();

  // losses / metrics share options
  std::string loss_scene, loss_mask;
  int loss_resolution = coherent::kDefaultResolution;
  double loss_padding = coherent::kDefaultPaddingFraction;
  double loss_sigma = coherent::RobustifierConfig{}.sigma;
  auto add_loss_options = [&](CLI::App* cmd, bool mask_required) {
    cmd->add_option("--scene", loss_scene, "scene JSON")->required();
    auto* m = cmd->add_option("--mask", loss_mask, "instance mask (16-bit PGM)");
    if (mask_required) m->required();
    cmd->add_option("--resolution", loss_resolution, "field nodes per axis");
    cmd->add_option("--padding", loss_padding, "field padding fraction");
    cmd->add_option("--sigma", loss_sigma, "robustifier scale");
  };
  auto* losses = app.add_subcommand("losses", "interpenetration and ordinal depth losses");
  add_loss_options(losses, false);
  auto* metrics = app.add_subcommand("metrics", "losses plus depth-order accuracy");
  add_loss_options(metrics, true);

  // refine
  auto* ref = app.add_subcommand("refine", "gradient-descent scene refinement");
  std::string ref_scene, ref_mask, ref_out, ref_trace;
  coherent::RefineConfig config;
  bool z_only = false;
  ref->add_option("--scene", ref_scene, "scene JSON")->required();
  ref->add_option("--mask", ref_mask, "instance mask (16-bit PGM)");
  ref->add_option("--out", ref_out, "write the refined scene JSON here")->required();
  ref->add_option("--trace", ref_trace, "write per-iteration records here (JSON lines)");
  ref->add_option("--lambda-p", config.lambda_p, "interpenetration weight");
  auto* ld_opt = ref->add_option("--lambda-d", config.lambda_d, "ordinal depth weight");
  ref->add_option("--lambda-anchor", config.lambda_anchor, "anchor weight");
  ref->add_option("--step", config.step_size, "base gradient step");
  ref->add_option("--iters", config.max_iters, "iteration budget");
  ref->add_option("--tol", config.convergence_tol, "convergence tolerance");
  ref->add_option("--resolution", config.voxel_resolution, "field nodes per axis");
  ref->add_option("--padding", config.padding_fraction, "field padding fraction");
  ref->add_option("--sigma", config.robustifier.sigma, "robustifier scale");
  ref->add_option("--max-halvings", config.max_halvings, "line-search budget");
  ref->add_flag("--z-only", z_only, "only move bodies along the view axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto started = std::chrono::steady_clock::now();
  auto wall_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
        .count();
  };

  try {
    ordered_json out;

    if (*vox) {
      std::vector<std::string> warnings;
      coherent::TriMesh mesh = coherent::load_mesh(vox_mesh, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
      coherent::Vec3 t{};
      if (!vox_translation.empty())
        t = {vox_translation[0], vox_translation[1], vox_translation[2]};
      coherent::DistanceField field = coherent::voxelize_phi(
          mesh, coherent::Transform{vox_scale, t}, vox_resolution, vox_padding);
      std::int64_t inside = 0;
      double max_phi = 0.0;
      for (double v : field.values) {
        if (v > 0.0) ++inside;
        if (v > max_phi) max_phi = v;
      }
      out["command"] = "voxelize";
      out["resolution"] = field.resolution;
      out["origin"] = vec_json(field.origin);
      out["spacing"] = vec_json(field.spacing);
      out["inside_nodes"] = inside;
      out["max_phi"] = max_phi;
      coherent::save_field(field, vox_out);
      out["out"] = vox_out;
    } else if (*ren) {
      coherent::Scene scene = load_scene_reporting(ren_scene);
      coherent::RenderOutput rendered = coherent::render(scene);
      std::filesystem::path dir(ren_outdir);
      {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
          throw coherent::ValidationError("cannot create output directory '" + ren_outdir +
                                          "': " + ec.message());
      }
      coherent::save_pgm(rendered.instance, dir / "instance.pgm");
      coherent::save_pfm(rendered.scene_depth, dir / "depth_scene.pfm");
      ordered_json files = ordered_json::array({"instance.pgm", "depth_scene.pfm"});
      for (const auto& [id, dm] : rendered.body_depths) {
        std::string name = "depth_body_" + std::to_string(id) + ".pfm";
        coherent::save_pfm(dm, dir / name);
        files.push_back(name);
      }
      std::int64_t covered = 0;
      for (auto c : rendered.scene_depth.covered) covered += c;
      out["command"] = "render";
      out["out_dir"] = ren_outdir;
      out["files"] = std::move(files);
      out["width"] = scene.camera.width;
      out["height"] = scene.camera.height;
      out["covered_pixels"] = covered;
      ordered_json visible = ordered_json::object();
      {
        std::map<int, std::int64_t> counts;
        for (const auto& [id, dm] : rendered.body_depths) counts[id] = 0;
        for (auto v : rendered.instance.data)
          if (v != 0) ++counts[v];
        for (const auto& [id, n] : counts) visible[std::to_string(id)] = n;
      }
      out["visible_pixels"] = std::move(visible);
      ordered_json silhouette = ordered_json::object();
      for (const auto& [id, dm] : rendered.body_depths) {
        std::int64_t n = 0;
        for (auto c : dm.covered) n += c;
        silhouette[std::to_string(id)] = n;
      }
      out["silhouette_pixels"] = std::move(silhouette);
    } else if (*losses || *metrics) {
      coherent::Scene scene = load_scene_reporting(loss_scene);
      coherent::PenetrationReport pen = coherent::scene_penetration(
          scene, loss_resolution, loss_padding, coherent::RobustifierConfig{loss_sigma});
      out["command"] = *metrics ? "metrics" : "losses";
      out["penetration"] = penetration_json(pen);
      if (!loss_mask.empty()) {
        coherent::RenderOutput rendered = coherent::render(scene);
        coherent::InstanceMap mask = coherent::load_instance_mask(loss_mask, scene);
        out["ordinal"] = ordinal_json(coherent::ordinal_depth_loss(rendered, mask));
        std::vector<coherent::PairRelation> relations =
            coherent::mask_implied_ordering(rendered, mask);
        out["depth_order"] =
            depth_order_json(coherent::depth_order_accuracy(scene, relations), relations);
      }
    } else if (*ref) {
      coherent::Scene scene = load_scene_reporting(ref_scene);
      config.optimize_xy = !z_only;
      std::optional<coherent::InstanceMap> mask;
      if (!ref_mask.empty()) mask = coherent::load_instance_mask(ref_mask, scene);
      // Without a mask the ordinal term cannot run; unless the weight was set
      // explicitly (in which case refuse loudly), just drop the term.
      if (!mask && !*ld_opt) config.lambda_d = 0.0;
      coherent::RefineResult result =
          coherent::refine(scene, mask ? &*mask : nullptr, config);
      coherent::save_scene(result.scene, ref_out);
      if (!ref_trace.empty()) {
        std::ofstream trace_file(ref_trace, std::ios::binary);
        if (!trace_file)
          throw coherent::ValidationError("cannot open trace file '" + ref_trace +
                                          "' for writing");
        for (const auto& r : result.trace) trace_file << record_json(r).dump() << "\n";
        if (!trace_file.flush())
          throw coherent::ValidationError("failed writing trace file '" + ref_trace + "'");
      }
      out["command"] = "refine";
      out["iterations"] = result.iterations;
      out["converged"] = result.converged;
      out["initial"] = record_json(result.trace.front());
      out["final"] = record_json(result.trace.back());
      ordered_json bodies = ordered_json::array();
      for (const auto& b : result.scene.bodies)
        bodies.push_back({{"id", b.id}, {"translation", vec_json(b.translation)}});
      out["translations"] = std::move(bodies);
      out["out"] = ref_out;
      if (!ref_trace.empty()) out["trace"] = ref_trace;
    }

    out["wall_ms"] = wall_ms();
    std::cout << out.dump(2) << std::endl;
    return 0;
  } catch (const coherent::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
