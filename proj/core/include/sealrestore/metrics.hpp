#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sealrestore/image.hpp"

namespace sealrestore {

/// Mean squared difference over all H*W*3 samples.
double mse(const Image& a, const Image& b);

/// 10 log10(255^2 / mse). Identical images give +infinity.
double psnr(const Image& a, const Image& b);

inline bool is_infinite_psnr(double db) noexcept { return db == std::numeric_limits<double>::infinity(); }

struct SsimConfig {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

/// Normalized 2-D Gaussian window, row-major window x window.
std::vector<double> gaussian_window(int window, double sigma);

/// Mean SSIM over every window position fully inside the image (no padding).
double ssim(const GrayImage& a, const GrayImage& b, const SsimConfig& config = {});

struct ImageScore {
  std::string image_id;
  double psnr_db = 0.0;
  double ssim = 0.0;
  std::optional<std::string> error;
};

struct MetricsReport {
  std::vector<ImageScore> per_image;
  double mean_psnr_db = 0.0;
  double mean_ssim = 0.0;
  int infinite_psnr_count = 0;
  int scored_count = 0;
  int failed_count = 0;
};

struct EvalPair {
  std::string image_id;
  std::filesystem::path restored;
  std::filesystem::path reference;
};

/// PSNR on RGB, SSIM on BT.601 luma.
ImageScore score_pair(const std::string& image_id, const Image& restored, const Image& reference);

/// Aggregates per-image scores: PSNR mean over finite values only, infinities counted.
MetricsReport summarize(std::vector<ImageScore> scores);

/// Scores every pair, `jobs` at a time. Load failures are recorded per item.
MetricsReport evaluate_set(const std::vector<EvalPair>& pairs, int jobs = 1);

std::string report_to_csv(const MetricsReport& report);
std::string report_to_json(const MetricsReport& report);

}  // namespace sealrestore
