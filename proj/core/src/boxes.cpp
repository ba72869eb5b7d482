#include "sealrestore/boxes.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <tuple>

#include "sealrestore/error.hpp"

namespace sealrestore {

long long intersection_area(const BBox& a, const BBox& b) noexcept {
  const long long x0 = std::max<long long>(a.x, b.x);
  const long long y0 = std::max<long long>(a.y, b.y);
  const long long x1 = std::min<long long>(static_cast<long long>(a.x) + a.w,
                                           static_cast<long long>(b.x) + b.w);
  const long long y1 = std::min<long long>(static_cast<long long>(a.y) + a.h,
                                           static_cast<long long>(b.y) + b.h);
  if (x1 <= x0 || y1 <= y0) return 0;
  return (x1 - x0) * (y1 - y0);
}

bool boxes_overlap(const BBox& a, const BBox& b) noexcept { return intersection_area(a, b) > 0; }

double iou(const BBox& a, const BBox& b) noexcept {
  const long long inter = intersection_area(a, b);
  if (inter == 0) return 0.0;
  const long long uni = a.area() + b.area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

MatchResult match_boxes(const std::vector<GroundTruth>& gt, const std::vector<Detection>& pred,
                        double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "IoU threshold must lie in (0, 1]");
  }
  std::vector<MatchPair> candidates;
  for (std::size_t g = 0; g < gt.size(); ++g) {
    for (std::size_t p = 0; p < pred.size(); ++p) {
      const double v = iou(gt[g].box, pred[p].box);
      if (v >= threshold) candidates.push_back({g, p, v});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const MatchPair& a, const MatchPair& b) {
    return std::tie(b.iou, a.gt, a.pred) < std::tie(a.iou, b.gt, b.pred);
  });

  MatchResult result;
  std::vector<bool> gt_used(gt.size(), false);
  std::vector<bool> pred_used(pred.size(), false);
  for (const auto& c : candidates) {
    if (gt_used[c.gt] || pred_used[c.pred]) continue;
    gt_used[c.gt] = true;
    pred_used[c.pred] = true;
    result.pairs.push_back(c);
  }
  for (std::size_t g = 0; g < gt.size(); ++g) {
    if (!gt_used[g]) result.unmatched_gt.push_back(g);
  }
  for (std::size_t p = 0; p < pred.size(); ++p) {
    if (!pred_used[p]) result.unmatched_pred.push_back(p);
  }
  return result;
}

std::vector<Detection> filter_by_confidence(const std::vector<Detection>& dets, double theta) {
  std::vector<Detection> kept;
  std::copy_if(dets.begin(), dets.end(), std::back_inserter(kept),
               [theta](const Detection& d) { return d.confidence > theta; });
  return kept;
}

Image crop(const Image& img, const BBox& box) {
  const long long x0 = std::max<long long>(0, box.x);
  const long long y0 = std::max<long long>(0, box.y);
  const long long x1 = std::min<long long>(img.width(), static_cast<long long>(box.x) + box.w);
  const long long y1 = std::min<long long>(img.height(), static_cast<long long>(box.y) + box.h);
  if (!box.valid() || x1 <= x0 || y1 <= y0) {
    throw Error(ErrorCode::OutOfBounds, "box does not intersect the image");
  }
  const int w = static_cast<int>(x1 - x0);
  const int h = static_cast<int>(y1 - y0);
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.set_pixel(x, y, img.pixel(static_cast<int>(x0) + x, static_cast<int>(y0) + y));
    }
  }
  return out;
}

bool is_valid_codepoint(char32_t cp) noexcept {
  return cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
}

std::string codepoint_to_char(char32_t cp) {
  if (!is_valid_codepoint(cp)) {
    throw Error(ErrorCode::InvalidCodepoint, format_codepoint(cp));
  }
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

char32_t parse_codepoint(std::string_view text) {
  if (text.size() < 3 || (text[0] != 'U' && text[0] != 'u') || text[1] != '+') {
    throw Error(ErrorCode::ParseError, "expected U+XXXX, got '" + std::string(text) + "'");
  }
  const std::string_view hex = text.substr(2);
  if (hex.size() < 4 || hex.size() > 6) {
    throw Error(ErrorCode::ParseError, "expected 4-6 hex digits in '" + std::string(text) + "'");
  }
  std::uint32_t value = 0;
  const auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), value, 16);
  if (ec != std::errc{} || ptr != hex.data() + hex.size()) {
    throw Error(ErrorCode::ParseError, "bad hex in '" + std::string(text) + "'");
  }
  const auto cp = static_cast<char32_t>(value);
  if (!is_valid_codepoint(cp)) {
    throw Error(ErrorCode::InvalidCodepoint, std::string(text));
  }
  return cp;
}

std::string format_codepoint(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

}  // namespace sealrestore
