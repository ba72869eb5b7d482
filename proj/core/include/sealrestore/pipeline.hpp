#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sealrestore/annotations.hpp"
#include "sealrestore/overlay.hpp"
#include "sealrestore/seal_mask.hpp"

namespace sealrestore {

/// PNG/JPEG files directly inside `dir`, sorted by file name.
std::vector<std::filesystem::path> list_images(const std::filesystem::path& dir);

struct PathPair {
  std::string image_id;
  std::filesystem::path first;
  std::filesystem::path second;
};

/// Pairs images of two directories by file stem; stems missing on either side
/// are returned in `unpaired`.
struct DirectoryPairing {
  std::vector<PathPair> pairs;
  std::vector<std::string> unpaired;
};
DirectoryPairing pair_directories(const std::filesystem::path& a, const std::filesystem::path& b);

struct PipelineConfig {
  std::filesystem::path input_dir;
  std::optional<std::filesystem::path> ground_truth;
  std::optional<std::filesystem::path> predictions;
  RestoreParams params;
  double confidence = kDefaultConfidenceThreshold;
  double iou_threshold = kDefaultIouThreshold;
  OverlayStyle style;
  bool embed_image = false;
  std::filesystem::path output_dir;
  int jobs = 1;

  /// Output directory must differ from the input directory; params must be valid.
  void validate() const;
};

struct CropRecord {
  std::string file;  // relative to the output directory
  BBox box;
  double confidence = 0.0;
  std::optional<char32_t> label;
};

struct PipelineImageResult {
  std::string image_id;
  std::filesystem::path source;
  std::optional<std::string> error;
  double restore_seconds = 0.0;
  double mask_coverage = 0.0;
  int detections_total = 0;
  int detections_kept = 0;
  std::vector<std::string> files;  // relative to the output directory
  std::vector<CropRecord> crops;
};

struct PipelineRun {
  PipelineConfig config;
  std::vector<PipelineImageResult> images;
  std::optional<MatchReport> match;
  double total_seconds = 0.0;

  int failed_count() const;
  /// 0 when every image succeeded, 1 on partial failure.
  int exit_code() const { return failed_count() == 0 ? 0 : 1; }
};

/// Per image: restore, filter predictions (confidence > threshold), crop the kept
/// boxes from the restored page, and render an SVG overlay when labels exist.
/// Writes `manifest.json` into the output directory. Per-image failures are
/// recorded and the run continues.
PipelineRun run_pipeline(const PipelineConfig& config);

std::string manifest_to_json(const PipelineRun& run);

/// Rebuilds the configuration recorded in a manifest.
PipelineConfig config_from_manifest(const std::string& manifest_json);

std::string machine_description();

}  // namespace sealrestore
