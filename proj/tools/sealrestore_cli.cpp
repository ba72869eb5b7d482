#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sealrestore/annotations.hpp"
#include "sealrestore/error.hpp"
#include "sealrestore/inpaint.hpp"
#include "sealrestore/metrics.hpp"
#include "sealrestore/overlay.hpp"
#include "sealrestore/parallel.hpp"
#include "sealrestore/pipeline.hpp"
#include "sealrestore/procedural.hpp"
#include "sealrestore/sweep.hpp"
#include "sealrestore/synth.hpp"

namespace fs = std::filesystem;
using namespace sealrestore;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

// Raised for argument combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("sealrestore");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SEALRESTORE_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    if (output.find('/') != std::string::npos) fs::create_directories(fs::path(output).parent_path());
    write_text_file(output, text);
    spdlog::info("wrote {}", output);
  }
}

struct ParamFlags {
  RestoreParams params;
  void add(CLI::App* cmd) {
    cmd->add_option("--tau-r", params.tau_r, "Red intensity threshold")->capture_default_str();
    cmd->add_option("--tau-rg", params.tau_rg, "Minimum R/G ratio")->capture_default_str();
    cmd->add_option("--tau-rb", params.tau_rb, "Minimum R/B ratio")->capture_default_str();
    cmd->add_option("--kernel", params.kernel, "Dilation kernel size (odd)")->capture_default_str();
    cmd->add_option("--iters", params.iterations, "Dilation iterations, 0 disables")->capture_default_str();
    cmd->add_option("--radius", params.radius, "Inpainting radius")->capture_default_str();
  }
};

struct StyleFlags {
  OverlayStyle style;
  bool no_boxes = false;
  void add(CLI::App* cmd) {
    cmd->add_option("--font-size", style.font_size, "Overlay font size")->capture_default_str();
    cmd->add_option("--font-family", style.font_family)->capture_default_str();
    cmd->add_option("--box-color", style.box_color)->capture_default_str();
    cmd->add_option("--text-color", style.text_color)->capture_default_str();
    cmd->add_option("--stroke-width", style.box_stroke_width)->capture_default_str();
    cmd->add_flag("--no-boxes", no_boxes, "Draw text only");
  }
  OverlayStyle get() const {
    OverlayStyle s = style;
    s.show_boxes = !no_boxes;
    return s;
  }
};

std::vector<fs::path> inputs_of(const fs::path& p) {
  if (fs::is_directory(p)) return list_images(p);
  if (!fs::exists(p)) throw Error(ErrorCode::FileNotFound, p.string());
  return {p};
}

// ---------------------------------------------------------------------------

int cmd_synth(const fs::path& pages_dir, const fs::path& templates_dir, const fs::path& out,
              const SynthOptions& base, int jobs) {
  std::vector<SealTemplate> templates;
  for (const auto& p : list_images(templates_dir)) templates.push_back(load_template(p));
  if (templates.empty()) throw Error(ErrorCode::NoTemplates, templates_dir.string());
  const auto pages = list_images(pages_dir);
  fs::create_directories(out / "masks");
  fs::create_directories(out / "placements");

  std::vector<std::optional<std::string>> errors(pages.size());
  parallel_for(pages.size(), jobs, [&](std::size_t i) {
    const std::string stem = pages[i].stem().string();
    try {
      SynthOptions opt = base;
      opt.seed = derive_seed(base.seed, i);
      const SyntheticPage page = generate_synthetic(load_image(pages[i]), templates, opt);
      save_image(page.image, out / (stem + ".png"));
      save_mask(page.mask, out / "masks" / (stem + ".png"));
      write_text_file(out / "placements" / (stem + ".json"), placements_to_json(page.placements, opt));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  int failed = 0;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    if (errors[i]) {
      ++failed;
      spdlog::error("{}: {}", pages[i].string(), *errors[i]);
    }
  }
  spdlog::info("synthesized {} of {} pages", pages.size() - failed, pages.size());
  return failed ? kExitPartial : kExitOk;
}

int cmd_mask(const fs::path& input, const fs::path& out, const RestoreParams& params, bool dilated) {
  params.validate();
  const Image img = load_image(input);
  SealMask m = detect_seal_mask(img, params);
  if (dilated) m = dilate(m, params.kernel, params.iterations);
  save_mask(m, out);
  std::printf("%s coverage %.6f\n", input.filename().string().c_str(), mask_coverage(m));
  return kExitOk;
}

int cmd_restore(const fs::path& input, const fs::path& out, const RestoreParams& params, int jobs) {
  params.validate();
  const auto sources = inputs_of(input);
  fs::create_directories(out / "masks");
  std::vector<ojson> rows(sources.size());
  parallel_for(sources.size(), jobs, [&](std::size_t i) {
    const std::string stem = sources[i].stem().string();
    ojson row{{"image_id", stem}};
    try {
      const Image img = load_image(sources[i]);
      const auto start = std::chrono::steady_clock::now();
      const RestoreResult r = restore_document(img, params);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      save_image(r.restored, out / (stem + ".png"));
      save_mask(r.mask, out / "masks" / (stem + ".png"));
      row["restored"] = stem + ".png";
      row["mask"] = "masks/" + stem + ".png";
      row["mask_coverage"] = mask_coverage(r.mask);
      row["seconds"] = secs;
    } catch (const std::exception& e) {
      row["error"] = e.what();
    }
    rows[i] = std::move(row);
  });
  int failed = 0;
  for (const auto& r : rows) {
    if (r.contains("error")) {
      ++failed;
      spdlog::error("{}: {}", r["image_id"].get<std::string>(), r["error"].get<std::string>());
    }
  }
  ojson summary{{"params",
                 {{"tau_r", params.tau_r},
                  {"tau_rg", params.tau_rg},
                  {"tau_rb", params.tau_rb},
                  {"kernel", params.kernel},
                  {"iterations", params.iterations},
                  {"radius", params.radius}}},
                {"images", rows}};
  write_text_file(out / "summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return failed ? kExitPartial : kExitOk;
}

int cmd_eval(const fs::path& restored, const fs::path& reference, const std::string& format,
             const std::string& output, int jobs) {
  const DirectoryPairing pairing = pair_directories(restored, reference);
  for (const auto& id : pairing.unpaired) spdlog::warn("no counterpart for {}", id);
  std::vector<EvalPair> pairs;
  for (const auto& p : pairing.pairs) pairs.push_back({p.image_id, p.first, p.second});
  const MetricsReport report = evaluate_set(pairs, jobs);
  emit(format == "json" ? report_to_json(report) : report_to_csv(report), output);
  spdlog::info("mean PSNR {:.3f} dB, mean SSIM {:.4f} over {} images", report.mean_psnr_db, report.mean_ssim,
               report.scored_count);
  return report.failed_count ? kExitPartial : kExitOk;
}

int cmd_sweep(const fs::path& synthetic, const fs::path& clean, const SweepGrid& grid, const std::string& format,
              const std::string& output, int jobs) {
  grid.validate();
  const DirectoryPairing pairing = pair_directories(synthetic, clean);
  for (const auto& id : pairing.unpaired) spdlog::warn("no counterpart for {}", id);
  if (pairing.pairs.empty()) throw Error(ErrorCode::FileNotFound, "no synthetic/clean pairs found");
  const SweepResult r = run_sweep(grid, pairing.pairs, jobs);
  emit(format == "json" ? sweep_to_json(r) : sweep_to_csv(r), output);
  const SweepCell& best = r.cells[r.best];
  spdlog::info("best cell tau_r={} ratio={} PSNR {:.3f} dB", best.tau_r, best.ratio, best.mean_psnr_db);
  bool any_failed = r.baseline.failed_count > 0;
  for (const auto& c : r.cells) any_failed = any_failed || c.failed_count > 0;
  return any_failed ? kExitPartial : kExitOk;
}

int cmd_match(const fs::path& gt, const fs::path& pred, double iou_threshold, double conf, const std::string& format,
              const std::string& output) {
  const MatchReport report = match_annotations(load_ground_truth(gt), load_predictions(pred), iou_threshold, conf);
  emit(format == "json" ? match_report_to_json(report) : match_report_to_csv(report), output);
  return kExitOk;
}

int cmd_crop(const fs::path& image, const fs::path& pred, const fs::path& out, double conf,
             std::optional<std::string> image_id) {
  const Image img = load_image(image);
  const std::string id = image_id.value_or(image.stem().string());
  const auto kept = filter_by_confidence(detections_for(load_predictions(pred), id), conf);
  fs::create_directories(out);
  const BBox canvas{0, 0, img.width(), img.height()};
  int written = 0, skipped = 0;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (!boxes_overlap(kept[i].box, canvas)) {
      spdlog::warn("{}: detection {} lies outside the image", id, i);
      ++skipped;
      continue;
    }
    char name[32];
    std::snprintf(name, sizeof name, "_%04zu.png", i);
    save_image(crop(img, kept[i].box), out / (id + name));
    ++written;
  }
  std::printf("%s: %d crops written, %d skipped\n", id.c_str(), written, skipped);
  return skipped ? kExitPartial : kExitOk;
}

int cmd_overlay(const fs::path& image, const fs::path& pred, const fs::path& out, double conf, bool embed,
                const OverlayStyle& style, std::optional<std::string> image_id) {
  style.validate();
  const Image img = load_image(image);
  const std::string id = image_id.value_or(image.stem().string());
  const auto kept = filter_by_confidence(detections_for(load_predictions(pred), id), conf);
  const BBox canvas{0, 0, img.width(), img.height()};
  std::vector<OverlayItem> items;
  for (const auto& d : kept) {
    if (d.label && boxes_overlap(d.box, canvas)) items.push_back({d.box, codepoint_to_char(*d.label)});
  }
  const fs::path out_dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
  fs::create_directories(out_dir);
  std::string href;
  if (embed) {
    href = png_data_uri(image);
  } else {
    href = fs::relative(fs::absolute(image), fs::absolute(out_dir)).generic_string();
  }
  write_text_file(out, render_overlay(href, img.width(), img.height(), items, style));
  std::printf("%s: %zu labelled items\n", out.string().c_str(), items.size());
  return kExitOk;
}

int cmd_pipeline(PipelineConfig cfg, const std::optional<fs::path>& manifest, const std::optional<fs::path>& out_override) {
  if (manifest) {
    cfg = config_from_manifest(read_text_file(*manifest));
    if (out_override) cfg.output_dir = *out_override;
  }
  const PipelineRun run = run_pipeline(cfg);
  for (const auto& r : run.images) {
    if (r.error) {
      spdlog::error("{}: {}", r.image_id, *r.error);
    } else {
      spdlog::info("{}: coverage {:.4f}, {} crops, {:.3f}s", r.image_id, r.mask_coverage, r.crops.size(),
                   r.restore_seconds);
    }
  }
  std::printf("%zu images, %d failed, %.2fs, manifest %s\n", run.images.size(), run.failed_count(),
              run.total_seconds, (cfg.output_dir / "manifest.json").string().c_str());
  return run.exit_code();
}

// Stand-in corpus: clean pages and seal templates drawn procedurally.
int cmd_demo(const fs::path& out, std::uint64_t seed, int pages, int width, int height, int templates) {
  if (pages < 1 || templates < 1) throw UsageError("--pages and --templates must be positive");
  fs::create_directories(out / "clean");
  fs::create_directories(out / "templates");
  for (int i = 0; i < pages; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "page_%03d.png", i);
    save_image(render_text_page(width, height, derive_seed(seed, i)), out / "clean" / name);
  }
  Rng rng(derive_seed(seed, 1u << 20));
  for (int i = 0; i < templates; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "seal_%02d.png", i);
    const int size = rng.range(std::max(24, std::min(width, height) / 8), std::max(32, std::min(width, height) / 5));
    save_image(render_seal_template(size, derive_seed(seed, 1000 + i)), out / "templates" / name);
  }
  std::printf("%d pages in %s, %d templates in %s\n", pages, (out / "clean").string().c_str(), templates,
              (out / "templates").string().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Red-seal removal, evaluation and overlay toolkit for document images"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sealrestore 0.1.0");

  int jobs = default_jobs();
  std::string format = "csv";
  std::string output;
  auto add_jobs = [&](CLI::App* c) { c->add_option("--jobs,-j", jobs, "Worker threads")->capture_default_str(); };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    c->add_option("-o,--output", output, "Write the report here instead of stdout");
  };

  // synth
  auto* synth = app.add_subcommand("synth", "Overlay seal templates on clean pages");
  std::string pages_dir, templates_dir, synth_out;
  SynthOptions synth_opt;
  synth->add_option("pages", pages_dir, "Directory of clean pages")->required()->check(CLI::ExistingDirectory);
  synth->add_option("templates", templates_dir, "Directory of seal templates")->required()->check(CLI::ExistingDirectory);
  synth->add_option("-o,--out", synth_out, "Output directory")->required();
  synth->add_option("--seed", synth_opt.seed, "Base seed")->required();
  synth->add_option("--n", synth_opt.count, "Seals per page")->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--opacity", synth_opt.opacity, "Seal blend opacity")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  add_jobs(synth);

  // mask
  auto* mask = app.add_subcommand("mask", "Write the seal candidate mask of one image");
  std::string mask_in, mask_out;
  bool mask_raw = false;
  ParamFlags mask_params;
  mask->add_option("image", mask_in)->required()->check(CLI::ExistingFile);
  mask->add_option("-o,--out", mask_out, "Mask PNG")->required();
  mask->add_flag("--raw", mask_raw, "Skip dilation");
  mask_params.add(mask);

  // restore
  auto* restore = app.add_subcommand("restore", "Detect and inpaint seals");
  std::string restore_in, restore_out;
  ParamFlags restore_params;
  restore->add_option("input", restore_in, "Image or directory of images")->required();
  restore->add_option("-o,--out", restore_out, "Output directory")->required();
  restore_params.add(restore);
  add_jobs(restore);

  // eval
  auto* eval = app.add_subcommand("eval", "Score restored images against references");
  std::string eval_restored, eval_reference;
  eval->add_option("restored", eval_restored)->required()->check(CLI::ExistingDirectory);
  eval->add_option("reference", eval_reference)->required()->check(CLI::ExistingDirectory);
  add_format(eval);
  add_jobs(eval);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Grid over tau_r and the shared ratio threshold");
  std::string sweep_synth, sweep_clean;
  SweepGrid grid;
  sweep->add_option("synthetic", sweep_synth)->required()->check(CLI::ExistingDirectory);
  sweep->add_option("clean", sweep_clean)->required()->check(CLI::ExistingDirectory);
  sweep->add_option("--tau-r", grid.tau_r, "tau_r values")->delimiter(',')->capture_default_str();
  sweep->add_option("--ratios", grid.ratios, "tau_rg = tau_rb values")->delimiter(',')->capture_default_str();
  sweep->add_option("--kernel", grid.kernel)->capture_default_str();
  sweep->add_option("--iters", grid.iterations)->capture_default_str();
  sweep->add_option("--radius", grid.radius)->capture_default_str();
  add_format(sweep);
  add_jobs(sweep);

  // match
  auto* match = app.add_subcommand("match", "Match predicted boxes to ground truth");
  std::string match_gt, match_pred;
  double match_iou = kDefaultIouThreshold;
  double conf = kDefaultConfidenceThreshold;
  match->add_option("ground_truth", match_gt, "CSV file or directory of CSVs")->required()->check(CLI::ExistingPath);
  match->add_option("predictions", match_pred, "JSONL predictions")->required()->check(CLI::ExistingFile);
  match->add_option("--iou", match_iou)->capture_default_str();
  match->add_option("--conf", conf, "Keep detections with confidence above this")->capture_default_str();
  add_format(match);

  // crop
  auto* cropc = app.add_subcommand("crop", "Cut character patches out of an image");
  std::string crop_img, crop_pred, crop_out;
  std::optional<std::string> image_id;
  cropc->add_option("image", crop_img)->required()->check(CLI::ExistingFile);
  cropc->add_option("predictions", crop_pred)->required()->check(CLI::ExistingFile);
  cropc->add_option("-o,--out", crop_out)->required();
  cropc->add_option("--conf", conf)->capture_default_str();
  cropc->add_option("--image-id", image_id, "Id used in the predictions (default: file stem)");

  // overlay
  auto* overlay = app.add_subcommand("overlay", "Render labelled characters over a page as SVG");
  std::string ov_img, ov_pred, ov_out;
  bool embed = false;
  StyleFlags ov_style;
  overlay->add_option("image", ov_img)->required()->check(CLI::ExistingFile);
  overlay->add_option("predictions", ov_pred)->required()->check(CLI::ExistingFile);
  overlay->add_option("-o,--out", ov_out, "SVG path")->required();
  overlay->add_option("--conf", conf)->capture_default_str();
  overlay->add_option("--image-id", image_id);
  overlay->add_flag("--embed", embed, "Embed the page as base64");
  ov_style.add(overlay);

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Restore, crop and overlay a directory of pages");
  PipelineConfig cfg;
  std::string pl_in, pl_out, pl_gt, pl_pred, pl_manifest;
  ParamFlags pl_params;
  StyleFlags pl_style;
  pipeline->add_option("input", pl_in, "Directory of pages");
  pipeline->add_option("-o,--out", pl_out, "Output directory");
  pipeline->add_option("--gt", pl_gt, "Ground-truth CSV file or directory");
  pipeline->add_option("--pred", pl_pred, "Predictions JSONL");
  pipeline->add_option("--manifest", pl_manifest, "Re-run with the configuration recorded in a manifest")
      ->check(CLI::ExistingFile);
  pipeline->add_option("--conf", conf)->capture_default_str();
  pipeline->add_option("--iou", match_iou)->capture_default_str();
  pipeline->add_flag("--embed", embed, "Embed pages into the SVGs");
  pl_params.add(pipeline);
  pl_style.add(pipeline);
  add_jobs(pipeline);

  // demo
  auto* demo = app.add_subcommand("demo", "Write a procedural stand-in corpus (clean pages and seal templates)");
  std::string demo_out;
  std::uint64_t demo_seed = 0;
  int demo_pages = 5, demo_w = 480, demo_h = 640, demo_templates = 6;
  demo->add_option("out", demo_out)->required();
  demo->add_option("--seed", demo_seed)->required();
  demo->add_option("--pages", demo_pages)->capture_default_str();
  demo->add_option("--width", demo_w)->capture_default_str()->check(CLI::Range(64, 8000));
  demo->add_option("--height", demo_h)->capture_default_str()->check(CLI::Range(64, 8000));
  demo->add_option("--templates", demo_templates)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  if (jobs < 1) jobs = 1;

  try {
    if (*synth) return cmd_synth(pages_dir, templates_dir, synth_out, synth_opt, jobs);
    if (*mask) return cmd_mask(mask_in, mask_out, mask_params.params, !mask_raw);
    if (*restore) return cmd_restore(restore_in, restore_out, restore_params.params, jobs);
    if (*eval) return cmd_eval(eval_restored, eval_reference, format, output, jobs);
    if (*sweep) return cmd_sweep(sweep_synth, sweep_clean, grid, format, output, jobs);
    if (*match) return cmd_match(match_gt, match_pred, match_iou, conf, format, output);
    if (*cropc) return cmd_crop(crop_img, crop_pred, crop_out, conf, image_id);
    if (*overlay) return cmd_overlay(ov_img, ov_pred, ov_out, conf, embed, ov_style.get(), image_id);
    if (*pipeline) {
      std::optional<fs::path> out_override;
      if (!pl_out.empty()) out_override = pl_out;
      if (pl_manifest.empty()) {
        if (pl_in.empty() || pl_out.empty()) throw UsageError("pipeline needs an input directory and --out");
        cfg.input_dir = pl_in;
        cfg.output_dir = pl_out;
        if (!pl_gt.empty()) cfg.ground_truth = pl_gt;
        if (!pl_pred.empty()) cfg.predictions = pl_pred;
        cfg.params = pl_params.params;
        cfg.style = pl_style.get();
        cfg.confidence = conf;
        cfg.iou_threshold = match_iou;
        cfg.embed_image = embed;
        cfg.jobs = jobs;
        return cmd_pipeline(cfg, std::nullopt, std::nullopt);
      }
      return cmd_pipeline(cfg, fs::path(pl_manifest), out_override);
    }
    if (*demo) return cmd_demo(demo_out, demo_seed, demo_pages, demo_w, demo_h, demo_templates);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    switch (e.code()) {
      case ErrorCode::InvalidArgument:
      case ErrorCode::InvalidKernel:
        return kExitUsage;
      default:
        return kExitPartial;
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitPartial;
  }
  return kExitUsage;
}
