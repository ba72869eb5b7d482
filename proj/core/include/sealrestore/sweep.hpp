#pragma once

#include <string>
#include <vector>

#include "sealrestore/metrics.hpp"
#include "sealrestore/pipeline.hpp"

namespace sealrestore {

/// tau_r x ratio grid, with tau_rg = tau_rb = ratio in every cell.
struct SweepGrid {
  std::vector<double> tau_r{80.0, 90.0};
  std::vector<double> ratios{1.2, 1.3, 1.4, 1.5};
  int kernel = 3;
  int iterations = 1;
  int radius = 3;

  void validate() const;
  RestoreParams params_for(double tau_r, double ratio) const;
};

struct SweepCell {
  bool baseline = false;
  double tau_r = 0.0;
  double ratio = 0.0;
  double mean_psnr_db = 0.0;
  double mean_ssim = 0.0;
  int infinite_psnr_count = 0;
  int failed_count = 0;
};

struct SweepResult {
  SweepCell baseline;
  std::vector<SweepCell> cells;  // tau_r-major order
  std::size_t best = 0;          // argmax mean PSNR over `cells`, first wins ties
};

/// Each pair is (synthetic, clean). The baseline row scores synthetic against
/// clean with no restoration.
SweepResult run_sweep(const SweepGrid& grid, const std::vector<PathPair>& pairs, int jobs = 1);

std::string sweep_to_csv(const SweepResult& result);
std::string sweep_to_json(const SweepResult& result);

}  // namespace sealrestore
