#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace sealrestore {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major interleaved 8-bit RGB raster. Origin top-left, x right, y down.
class Image {
 public:
  static constexpr int kChannels = 3;

  /// Throws ZeroDimension when either side is < 1.
  Image(int width, int height, Rgb fill = {});
  /// Takes ownership of interleaved RGB samples; size must be width*height*3.
  Image(int width, int height, std::vector<std::uint8_t> samples);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::size_t offset(int x, int y) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * kChannels;
  }

  Rgb pixel(int x, int y) const noexcept {
    const auto* p = data_.data() + offset(x, y);
    return {p[0], p[1], p[2]};
  }
  void set_pixel(int x, int y, Rgb value) noexcept {
    auto* p = data_.data() + offset(x, y);
    p[0] = value.r;
    p[1] = value.g;
    p[2] = value.b;
  }

  std::uint8_t sample(int x, int y, int c) const noexcept { return data_[offset(x, y) + c]; }
  std::uint8_t& sample(int x, int y, int c) noexcept { return data_[offset(x, y) + c]; }

  std::span<const std::uint8_t> samples() const noexcept { return data_; }
  std::span<std::uint8_t> samples() noexcept { return data_; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

/// Single-channel real-valued raster, used as the SSIM input.
class GrayImage {
 public:
  GrayImage(int width, int height, double fill = 0.0);
  GrayImage(int width, int height, std::vector<double> values);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  double at(int x, int y) const noexcept {
    return values_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                   static_cast<std::size_t>(x)];
  }
  double& at(int x, int y) noexcept {
    return values_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                   static_cast<std::size_t>(x)];
  }

  std::span<const double> values() const noexcept { return values_; }

 private:
  int width_;
  int height_;
  std::vector<double> values_;
};

/// BT.601 luma, Y = 0.299 R + 0.587 G + 0.114 B, not re-quantized.
double luma(Rgb p) noexcept;
GrayImage to_gray(const Image& img);

/// Decodes PNG or JPEG. Grayscale is replicated to RGB; alpha is composited over white.
Image load_image(const std::filesystem::path& path);

/// Writes a lossless 8-bit RGB PNG.
void save_image(const Image& img, const std::filesystem::path& path);

}  // namespace sealrestore
