#include "sealrestore/image.hpp"

#include <string>

#include "sealrestore/error.hpp"

namespace sealrestore {
namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::ZeroDimension,
                "image dimensions must be positive, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

}  // namespace

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  check_dims(width, height);
  data_.resize(pixel_count() * kChannels);
  for (std::size_t i = 0; i < data_.size(); i += kChannels) {
    data_[i] = fill.r;
    data_[i + 1] = fill.g;
    data_[i + 2] = fill.b;
  }
}

Image::Image(int width, int height, std::vector<std::uint8_t> samples)
    : width_(width), height_(height), data_(std::move(samples)) {
  check_dims(width, height);
  if (data_.size() != pixel_count() * kChannels) {
    throw Error(ErrorCode::DimensionMismatch,
                "sample buffer holds " + std::to_string(data_.size()) + " values, expected " +
                    std::to_string(pixel_count() * kChannels));
  }
}

GrayImage::GrayImage(int width, int height, double fill) : width_(width), height_(height) {
  check_dims(width, height);
  values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dims(width, height);
  if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::DimensionMismatch, "gray buffer size does not match dimensions");
  }
}

double luma(Rgb p) noexcept { return 0.299 * p.r + 0.587 * p.g + 0.114 * p.b; }

GrayImage to_gray(const Image& img) {
  GrayImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      out.at(x, y) = luma(img.pixel(x, y));
    }
  }
  return out;
}

}  // namespace sealrestore
