#include "sealrestore/pipeline.hpp"

#include <sys/utsname.h>

#include <algorithm>
#include <chrono>
#include <cctype>
#include <cstdio>
#include <json.hpp>
#include <map>
#include <thread>

#include "sealrestore/error.hpp"
#include "sealrestore/inpaint.hpp"
#include "sealrestore/parallel.hpp"

namespace sealrestore {
namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

bool is_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

std::string crop_name(const std::string& image_id, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%04zu.png", index);
  return image_id + buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

PipelineImageResult process_image(const PipelineConfig& cfg, const fs::path& source,
                                  const std::vector<PredictionRecord>& predictions) {
  PipelineImageResult r;
  r.image_id = source.stem().string();
  r.source = source;
  try {
    const Image page = load_image(source);
    const fs::path dir = cfg.output_dir / r.image_id;
    fs::create_directories(dir);

    const auto start = std::chrono::steady_clock::now();
    const RestoreResult restored = restore_document(page, cfg.params);
    r.restore_seconds = seconds_since(start);
    r.mask_coverage = mask_coverage(restored.mask);

    save_image(restored.restored, dir / "restored.png");
    save_mask(restored.mask, dir / "mask.png");
    r.files.push_back(r.image_id + "/restored.png");
    r.files.push_back(r.image_id + "/mask.png");

    const auto all = detections_for(predictions, r.image_id);
    const auto kept = filter_by_confidence(all, cfg.confidence);
    r.detections_total = static_cast<int>(all.size());
    r.detections_kept = static_cast<int>(kept.size());

    const BBox canvas{0, 0, page.width(), page.height()};
    std::vector<OverlayItem> overlay_items;
    bool any_label = false;
    if (!kept.empty()) fs::create_directories(dir / "crops");
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const Detection& d = kept[i];
      if (!boxes_overlap(d.box, canvas)) continue;
      const std::string rel = r.image_id + "/crops/" + crop_name(r.image_id, i);
      save_image(crop(restored.restored, d.box), cfg.output_dir / rel);
      r.files.push_back(rel);
      r.crops.push_back({rel, d.box, d.confidence, d.label});
      if (d.label) {
        any_label = true;
        overlay_items.push_back({d.box, codepoint_to_char(*d.label)});
      }
    }

    if (any_label) {
      const std::string href =
          cfg.embed_image ? png_data_uri(dir / "restored.png") : std::string("restored.png");
      write_text_file(dir / "overlay.svg",
                      render_overlay(href, page.width(), page.height(), overlay_items, cfg.style));
      r.files.push_back(r.image_id + "/overlay.svg");
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

ojson params_json(const RestoreParams& p) {
  return ojson{{"tau_r", p.tau_r},   {"tau_rg", p.tau_rg},         {"tau_rb", p.tau_rb},
               {"kernel", p.kernel}, {"iterations", p.iterations}, {"radius", p.radius}};
}

ojson style_json(const OverlayStyle& s) {
  return ojson{{"box_color", s.box_color},   {"box_stroke_width", s.box_stroke_width},
               {"show_boxes", s.show_boxes}, {"text_color", s.text_color},
               {"font_size", s.font_size},   {"font_family", s.font_family}};
}

ojson optional_path(const std::optional<fs::path>& p) {
  return p ? ojson(p->string()) : ojson(nullptr);
}

}  // namespace

std::vector<fs::path> list_images(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::FileNotFound, dir.string());
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_image_extension(entry.path())) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

DirectoryPairing pair_directories(const fs::path& a, const fs::path& b) {
  std::map<std::string, fs::path> left;
  std::map<std::string, fs::path> right;
  for (const auto& p : list_images(a)) left.emplace(p.stem().string(), p);
  for (const auto& p : list_images(b)) right.emplace(p.stem().string(), p);
  DirectoryPairing out;
  for (const auto& [stem, path] : left) {
    if (auto it = right.find(stem); it != right.end()) {
      out.pairs.push_back({stem, path, it->second});
    } else {
      out.unpaired.push_back(stem);
    }
  }
  for (const auto& [stem, _] : right) {
    if (!left.contains(stem)) out.unpaired.push_back(stem);
  }
  return out;
}

void PipelineConfig::validate() const {
  params.validate();
  style.validate();
  if (output_dir.empty()) throw Error(ErrorCode::InvalidArgument, "output directory is required");
  std::error_code ec;
  const fs::path in = fs::weakly_canonical(input_dir, ec);
  const fs::path out = fs::weakly_canonical(output_dir, ec);
  if (in == out) {
    throw Error(ErrorCode::InvalidArgument, "output directory must differ from the input directory");
  }
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "confidence threshold must lie in [0, 1]");
  }
}

int PipelineRun::failed_count() const {
  return static_cast<int>(
      std::count_if(images.begin(), images.end(), [](const auto& r) { return r.error.has_value(); }));
}

PipelineRun run_pipeline(const PipelineConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  PipelineRun run;
  run.config = config;

  const auto sources = list_images(config.input_dir);
  std::vector<PredictionRecord> predictions;
  if (config.predictions) predictions = load_predictions(*config.predictions);
  fs::create_directories(config.output_dir);

  run.images.resize(sources.size());
  parallel_for(sources.size(), config.jobs, [&](std::size_t i) {
    run.images[i] = process_image(config, sources[i], predictions);
  });

  if (config.ground_truth) {
    run.match = match_annotations(load_ground_truth(*config.ground_truth), predictions,
                                  config.iou_threshold, config.confidence);
    write_text_file(config.output_dir / "match.json", match_report_to_json(*run.match));
  }

  run.total_seconds = seconds_since(start);
  write_text_file(config.output_dir / "manifest.json", manifest_to_json(run));
  return run;
}

std::string machine_description() {
  std::string desc;
  utsname info{};
  if (uname(&info) == 0) {
    desc = std::string(info.sysname) + " " + info.release + " " + info.machine;
  } else {
    desc = "unknown";
  }
  return desc + ", " + std::to_string(std::thread::hardware_concurrency()) + " logical cores";
}

std::string manifest_to_json(const PipelineRun& run) {
  const PipelineConfig& c = run.config;
  ojson doc;
  doc["tool"] = "sealrestore";
  doc["config"] = {{"input_dir", c.input_dir.string()},
                   {"ground_truth", optional_path(c.ground_truth)},
                   {"predictions", optional_path(c.predictions)},
                   {"output_dir", c.output_dir.string()},
                   {"params", params_json(c.params)},
                   {"confidence_threshold", c.confidence},
                   {"iou_threshold", c.iou_threshold},
                   {"style", style_json(c.style)},
                   {"embed_image", c.embed_image},
                   {"jobs", c.jobs}};
  doc["machine"] = machine_description();
  doc["total_seconds"] = run.total_seconds;
  doc["failed_count"] = run.failed_count();

  auto images = ojson::array();
  for (const auto& r : run.images) {
    ojson item;
    item["image_id"] = r.image_id;
    item["source"] = r.source.string();
    item["status"] = r.error ? "error" : "ok";
    item["error"] = r.error ? ojson(*r.error) : ojson(nullptr);
    item["restore_seconds"] = r.restore_seconds;
    item["mask_coverage"] = r.mask_coverage;
    item["detections_total"] = r.detections_total;
    item["detections_kept"] = r.detections_kept;
    item["files"] = r.files;
    auto crops = ojson::array();
    for (const auto& cr : r.crops) {
      crops.push_back({{"file", cr.file},
                       {"x", cr.box.x},
                       {"y", cr.box.y},
                       {"w", cr.box.w},
                       {"h", cr.box.h},
                       {"confidence", cr.confidence},
                       {"unicode", cr.label ? ojson(format_codepoint(*cr.label)) : ojson(nullptr)}});
    }
    item["crops"] = std::move(crops);
    images.push_back(std::move(item));
  }
  doc["images"] = std::move(images);
  if (run.match) {
    doc["match"] = {{"ground_truth_count", run.match->ground_truth_count},
                    {"predicted_count", run.match->predicted_count},
                    {"matched_pairs", run.match->matched_pairs}};
  }
  return doc.dump(2) + "\n";
}

PipelineConfig config_from_manifest(const std::string& manifest_json) {
  PipelineConfig c;
  try {
    const auto doc = nlohmann::json::parse(manifest_json);
    const auto& cfg = doc.at("config");
    c.input_dir = cfg.at("input_dir").get<std::string>();
    if (!cfg.at("ground_truth").is_null()) c.ground_truth = cfg.at("ground_truth").get<std::string>();
    if (!cfg.at("predictions").is_null()) c.predictions = cfg.at("predictions").get<std::string>();
    c.output_dir = cfg.at("output_dir").get<std::string>();
    const auto& p = cfg.at("params");
    c.params.tau_r = p.at("tau_r").get<double>();
    c.params.tau_rg = p.at("tau_rg").get<double>();
    c.params.tau_rb = p.at("tau_rb").get<double>();
    c.params.kernel = p.at("kernel").get<int>();
    c.params.iterations = p.at("iterations").get<int>();
    c.params.radius = p.at("radius").get<int>();
    c.confidence = cfg.at("confidence_threshold").get<double>();
    c.iou_threshold = cfg.at("iou_threshold").get<double>();
    const auto& s = cfg.at("style");
    c.style.box_color = s.at("box_color").get<std::string>();
    c.style.box_stroke_width = s.at("box_stroke_width").get<int>();
    c.style.show_boxes = s.at("show_boxes").get<bool>();
    c.style.text_color = s.at("text_color").get<std::string>();
    c.style.font_size = s.at("font_size").get<int>();
    c.style.font_family = s.at("font_family").get<std::string>();
    c.embed_image = cfg.at("embed_image").get<bool>();
    c.jobs = cfg.at("jobs").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("manifest: ") + e.what());
  }
  return c;
}

}  // namespace sealrestore
