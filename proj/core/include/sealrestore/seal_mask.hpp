#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "sealrestore/image.hpp"

namespace sealrestore {

/// Binary raster, true marks a seal pixel. Dimensions follow the source image.
class SealMask {
 public:
  SealMask(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  bool at(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool value = true) noexcept { bits_[index(x, y)] = value ? 1 : 0; }

  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::size_t count() const noexcept;
  bool empty() const noexcept { return count() == 0; }

  friend bool operator==(const SealMask&, const SealMask&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

/// All stage-two hyperparameters. Defaults are the tuned configuration
/// (tau_r = 90, tau_rg = tau_rb = 1.3, 3x3 kernel, one iteration, radius 3).
struct RestoreParams {
  double tau_r = 90.0;
  double tau_rg = 1.3;
  double tau_rb = 1.3;
  int kernel = 3;
  int iterations = 1;
  int radius = 3;

  /// Throws InvalidArgument / InvalidKernel on out-of-range fields.
  void validate() const;

  friend bool operator==(const RestoreParams&, const RestoreParams&) = default;
};

/// Red-dominance rule: R >= tau_r, R >= tau_rg * G, R >= tau_rb * B (all inclusive, real arithmetic).
bool is_seal_candidate(Rgb p, const RestoreParams& params) noexcept;

SealMask detect_seal_mask(const Image& img, const RestoreParams& params);

/// t-fold dilation with a k x k square; pixels outside the raster count as false.
SealMask dilate(const SealMask& mask, int kernel, int iterations);

double mask_coverage(const SealMask& mask) noexcept;

/// 8-bit grayscale PNG, 255 = seal, 0 = background.
void save_mask(const SealMask& mask, const std::filesystem::path& path);
SealMask load_mask(const std::filesystem::path& path);

}  // namespace sealrestore
