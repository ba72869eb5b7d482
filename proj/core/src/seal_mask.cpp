#include "sealrestore/seal_mask.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sealrestore/error.hpp"

namespace sealrestore {

SealMask::SealMask(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::ZeroDimension, "mask dimensions must be positive");
  }
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

std::size_t SealMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void RestoreParams::validate() const {
  if (!(tau_r >= 0.0 && tau_r <= 255.0)) {
    throw Error(ErrorCode::InvalidArgument, "tau_r must lie in [0, 255]");
  }
  if (!(tau_rg >= 1.0) || !(tau_rb >= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "channel ratios must be >= 1");
  }
  if (kernel < 1 || kernel % 2 == 0) {
    throw Error(ErrorCode::InvalidKernel, "kernel side must be odd and positive, got " +
                                              std::to_string(kernel));
  }
  if (iterations < 0) {
    throw Error(ErrorCode::InvalidArgument, "dilation iterations must be >= 0");
  }
  if (radius < 1) {
    throw Error(ErrorCode::InvalidArgument, "inpainting radius must be >= 1");
  }
}

bool is_seal_candidate(Rgb p, const RestoreParams& params) noexcept {
  const double r = p.r;
  return r >= params.tau_r && r >= params.tau_rg * p.g && r >= params.tau_rb * p.b;
}

SealMask detect_seal_mask(const Image& img, const RestoreParams& params) {
  SealMask mask(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (is_seal_candidate(img.pixel(x, y), params)) mask.set(x, y);
    }
  }
  return mask;
}

namespace {

// One k x k pass, split into a horizontal and a vertical box-any using prefix counts.
SealMask dilate_once(const SealMask& in, int half) {
  const int w = in.width();
  const int h = in.height();
  SealMask horiz(w, h);
  std::vector<int> prefix(static_cast<std::size_t>(std::max(w, h)) + 1);

  for (int y = 0; y < h; ++y) {
    prefix[0] = 0;
    for (int x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + (in.at(x, y) ? 1 : 0);
    for (int x = 0; x < w; ++x) {
      const int lo = std::max(0, x - half);
      const int hi = std::min(w - 1, x + half);
      if (prefix[hi + 1] - prefix[lo] > 0) horiz.set(x, y);
    }
  }

  SealMask out(w, h);
  for (int x = 0; x < w; ++x) {
    prefix[0] = 0;
    for (int y = 0; y < h; ++y) prefix[y + 1] = prefix[y] + (horiz.at(x, y) ? 1 : 0);
    for (int y = 0; y < h; ++y) {
      const int lo = std::max(0, y - half);
      const int hi = std::min(h - 1, y + half);
      if (prefix[hi + 1] - prefix[lo] > 0) out.set(x, y);
    }
  }
  return out;
}

}  // namespace

SealMask dilate(const SealMask& mask, int kernel, int iterations) {
  if (kernel < 1 || kernel % 2 == 0) {
    throw Error(ErrorCode::InvalidKernel,
                "kernel side must be odd and positive, got " + std::to_string(kernel));
  }
  if (iterations < 0) {
    throw Error(ErrorCode::InvalidArgument, "dilation iterations must be >= 0");
  }
  SealMask out = mask;
  if (kernel == 1) return out;
  for (int i = 0; i < iterations; ++i) out = dilate_once(out, kernel / 2);
  return out;
}

double mask_coverage(const SealMask& mask) noexcept {
  return static_cast<double>(mask.count()) / static_cast<double>(mask.size());
}

}  // namespace sealrestore
