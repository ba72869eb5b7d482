#pragma once

#include <vector>

#include "sealrestore/image.hpp"
#include "sealrestore/seal_mask.hpp"

namespace sealrestore {

/// Per-pixel arrival time of the marching front, row-major.
struct DistanceField {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int x, int y) const noexcept {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(x)];
  }
};

/// Fast-marching distance from the hole boundary. Known pixels are 0; masked
/// pixels get the first-order upwind estimate of the Euclidean distance to the
/// nearest known pixel's edge.
DistanceField solve_eikonal(const SealMask& mask);

/// Fast-marching inpainting. Masked pixels are filled in order of
/// increasing distance; each one is a weighted average of already known pixels
/// within Euclidean distance `radius`, extrapolated along their image gradient.
/// Pixels outside the mask are copied unchanged.
Image inpaint_fmm(const Image& img, const SealMask& mask, int radius);

struct RestoreResult {
  Image restored;
  SealMask mask;
};

/// detect -> dilate -> inpaint with one parameter record.
RestoreResult restore_document(const Image& img, const RestoreParams& params);

}  // namespace sealrestore
