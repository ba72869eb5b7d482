#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sealrestore/boxes.hpp"

namespace sealrestore {

/// Ground truth grouped by image id.
using GroundTruthSet = std::map<std::string, std::vector<GroundTruth>>;

/// One detector/classifier record from a predictions JSON-lines file.
struct PredictionRecord {
  std::string image_id;
  Detection detection;
};

/// Parses a `unicode,x,y,w,h` CSV. Column names are matched case-insensitively;
/// `width`/`height` are accepted for `w`/`h`, and an `image`/`image_id` column,
/// when present, overrides `default_image_id`.
GroundTruthSet parse_ground_truth_csv(const std::string& text, const std::string& default_image_id);

/// A single CSV (image id = file stem) or a directory of them.
GroundTruthSet load_ground_truth(const std::filesystem::path& path);

std::vector<PredictionRecord> parse_predictions_jsonl(const std::string& text);
std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path);

std::string prediction_to_jsonl(const PredictionRecord& record);

/// Predictions for one image, in file order.
std::vector<Detection> detections_for(const std::vector<PredictionRecord>& records,
                                      const std::string& image_id);

struct MatchReport {
  double iou_threshold = kDefaultIouThreshold;
  double confidence_threshold = kDefaultConfidenceThreshold;
  long long ground_truth_count = 0;
  long long predicted_count = 0;
  long long matched_pairs = 0;
  struct PerImage {
    std::string image_id;
    long long ground_truth = 0;
    long long predicted = 0;
    long long matched = 0;
  };
  std::vector<PerImage> per_image;
};

/// Confidence-filters predictions, then matches per image and sums the counts.
/// Images present on only one side contribute unmatched boxes.
MatchReport match_annotations(const GroundTruthSet& gt, const std::vector<PredictionRecord>& preds,
                              double iou_threshold = kDefaultIouThreshold,
                              double confidence_threshold = kDefaultConfidenceThreshold);

std::string match_report_to_json(const MatchReport& report);
std::string match_report_to_csv(const MatchReport& report);

/// Reads a whole file; throws FileNotFound / IoError.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace sealrestore
