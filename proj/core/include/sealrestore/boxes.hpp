#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sealrestore/image.hpp"

namespace sealrestore {

/// Half-open pixel rectangle [x, x+w) x [y, y+h).
struct BBox {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  long long area() const noexcept { return static_cast<long long>(w) * h; }
  bool valid() const noexcept { return w > 0 && h > 0; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

struct Detection {
  BBox box;
  double confidence = 1.0;
  std::optional<char32_t> label;
};

struct GroundTruth {
  BBox box;
  char32_t codepoint = 0;
};

struct MatchPair {
  std::size_t gt = 0;
  std::size_t pred = 0;
  double iou = 0.0;
};

struct MatchResult {
  std::vector<MatchPair> pairs;
  std::vector<std::size_t> unmatched_gt;
  std::vector<std::size_t> unmatched_pred;
};

inline constexpr double kDefaultIouThreshold = 0.5;
inline constexpr double kDefaultConfidenceThreshold = 0.5;

/// Positive-area overlap of two half-open rectangles.
bool boxes_overlap(const BBox& a, const BBox& b) noexcept;
long long intersection_area(const BBox& a, const BBox& b) noexcept;

double iou(const BBox& a, const BBox& b) noexcept;

/// Greedy one-to-one assignment in descending IoU order (ties: lower gt index,
/// then lower pred index). Only pairs with IoU >= threshold are eligible.
MatchResult match_boxes(const std::vector<GroundTruth>& gt, const std::vector<Detection>& pred,
                        double threshold = kDefaultIouThreshold);

/// Keeps detections with confidence strictly above theta, in input order.
std::vector<Detection> filter_by_confidence(const std::vector<Detection>& dets,
                                            double theta = kDefaultConfidenceThreshold);

/// Sub-image under `box` clamped to the image. Throws OutOfBounds if nothing remains.
Image crop(const Image& img, const BBox& box);

bool is_valid_codepoint(char32_t cp) noexcept;

/// UTF-8 encoding of a single scalar value. Throws InvalidCodepoint for surrogates
/// and values above U+10FFFF.
std::string codepoint_to_char(char32_t cp);

/// Parses "U+5C1A" (case-insensitive prefix, 4-6 hex digits).
char32_t parse_codepoint(std::string_view text);
std::string format_codepoint(char32_t cp);

}  // namespace sealrestore
