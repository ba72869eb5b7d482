#include "sealrestore/inpaint.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>

#include "sealrestore/error.hpp"

namespace sealrestore {
namespace {

enum class Flag : std::uint8_t { Known, Band, Inside };

constexpr double kUnreached = 1.0e6;
constexpr double kDirFloor = 1.0e-6;

struct HeapEntry {
  double t;
  std::size_t index;
  bool operator>(const HeapEntry& o) const noexcept {
    return t > o.t || (t == o.t && index > o.index);
  }
};

// Narrow-band fast marching on a 4-connected grid. Pixels flagged Known are the
// source region, Band pixels carry tentative arrival times, Inside pixels are
// unreached. Extraction is ordered by (T, row-major index).
class FastMarcher {
 public:
  FastMarcher(int width, int height) : width_(width), height_(height) {
    const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    flags_.assign(n, Flag::Known);
    times_.assign(n, 0.0);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }
  bool in_bounds(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  Flag flag(std::size_t i) const noexcept { return flags_[i]; }
  double time(std::size_t i) const noexcept { return times_[i]; }
  const std::vector<double>& times() const noexcept { return times_; }

  void set_inside(std::size_t i) noexcept {
    flags_[i] = Flag::Inside;
    times_[i] = kUnreached;
  }
  void seed(std::size_t i) {
    flags_[i] = Flag::Band;
    times_[i] = 0.0;
    heap_.push({0.0, i});
  }

  // Marches until the band empties or the next arrival exceeds `limit`.
  // `on_accept(x, y)` runs just before a pixel is finalized.
  template <typename OnAccept>
  void run(double limit, OnAccept&& on_accept) {
    static constexpr std::array<std::array<int, 2>, 4> kNeighbors{
        {{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};
    while (!heap_.empty()) {
      const HeapEntry top = heap_.top();
      heap_.pop();
      if (flags_[top.index] == Flag::Known || top.t != times_[top.index]) continue;
      if (top.t > limit) break;
      const int x = static_cast<int>(top.index % static_cast<std::size_t>(width_));
      const int y = static_cast<int>(top.index / static_cast<std::size_t>(width_));
      on_accept(x, y);
      flags_[top.index] = Flag::Known;
      for (const auto& d : kNeighbors) {
        const int nx = x + d[0];
        const int ny = y + d[1];
        if (!in_bounds(nx, ny)) continue;
        const std::size_t ni = index(nx, ny);
        if (flags_[ni] == Flag::Known) continue;
        const double t = solve(nx, ny);
        if (t < times_[ni]) {
          times_[ni] = t;
          flags_[ni] = Flag::Band;
          heap_.push({t, ni});
        }
      }
    }
  }

 private:
  bool known(int x, int y) const noexcept {
    return in_bounds(x, y) && flags_[index(x, y)] == Flag::Known;
  }

  // First-order upwind update from one vertical and one horizontal neighbor.
  double solve_pair(int x1, int y1, int x2, int y2) const noexcept {
    const bool k1 = known(x1, y1);
    const bool k2 = known(x2, y2);
    if (k1 && k2) {
      const double a = times_[index(x1, y1)];
      const double b = times_[index(x2, y2)];
      const double diff = a - b;
      if (std::abs(diff) >= 1.0) return 1.0 + std::min(a, b);
      return 0.5 * (a + b + std::sqrt(2.0 - diff * diff));
    }
    if (k1) return 1.0 + times_[index(x1, y1)];
    if (k2) return 1.0 + times_[index(x2, y2)];
    return kUnreached;
  }

  double solve(int x, int y) const noexcept {
    return std::min({solve_pair(x, y - 1, x - 1, y), solve_pair(x, y - 1, x + 1, y),
                     solve_pair(x, y + 1, x - 1, y), solve_pair(x, y + 1, x + 1, y)});
  }

  int width_;
  int height_;
  std::vector<Flag> flags_;
  std::vector<double> times_;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap_;
};

bool has_masked_neighbor(const SealMask& mask, int x, int y) noexcept {
  return (x > 0 && mask.at(x - 1, y)) || (x + 1 < mask.width() && mask.at(x + 1, y)) ||
         (y > 0 && mask.at(x, y - 1)) || (y + 1 < mask.height() && mask.at(x, y + 1));
}

// Known pixels 4-adjacent to the hole form the zero level set.
void seed_interior(FastMarcher& fm, const SealMask& mask) {
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const std::size_t i = mask.index(x, y);
      if (mask.at(x, y)) {
        fm.set_inside(i);
      } else if (has_masked_neighbor(mask, x, y)) {
        fm.seed(i);
      }
    }
  }
}

// Outward pass: distance of known pixels from the same boundary, up to `limit`.
std::vector<double> exterior_distance(const SealMask& mask, double limit) {
  FastMarcher fm(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const std::size_t i = mask.index(x, y);
      if (mask.at(x, y)) continue;
      if (has_masked_neighbor(mask, x, y)) {
        fm.seed(i);
      } else {
        fm.set_inside(i);
      }
    }
  }
  fm.run(limit, [](int, int) {});
  std::vector<double> out = fm.times();
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (fm.flag(i) != Flag::Known) out[i] = limit;
  }
  return out;
}

class MarchingFiller {
 public:
  MarchingFiller(const Image& img, const SealMask& mask, int radius)
      : img_(img), mask_(mask), marcher_(img.width(), img.height()) {
    work_.resize(img.samples().size());
    std::copy(img.samples().begin(), img.samples().end(), work_.begin());

    seed_interior(marcher_, mask);
    const double outer_limit = 1.5 * radius + 2.0;
    const std::vector<double> outside = exterior_distance(mask, outer_limit);
    signed_t_.assign(outside.size(), 0.0);
    for (std::size_t i = 0; i < outside.size(); ++i) {
      if (!mask.bits()[i]) signed_t_[i] = -outside[i];
    }

    for (int dy = -radius; dy <= radius; ++dy) {
      for (int dx = -radius; dx <= radius; ++dx) {
        if ((dx != 0 || dy != 0) && dx * dx + dy * dy <= radius * radius) {
          offsets_.push_back({dx, dy});
        }
      }
    }
  }

  Image run() {
    marcher_.run(std::numeric_limits<double>::infinity(), [this](int x, int y) {
      const std::size_t i = marcher_.index(x, y);
      if (mask_.bits()[i]) fill(x, y);
    });

    std::vector<std::uint8_t> out(work_.size());
    for (std::size_t i = 0; i < work_.size(); ++i) {
      out[i] = static_cast<std::uint8_t>(std::lround(std::clamp(work_[i], 0.0, 255.0)));
    }
    // Bit-exact copy outside the hole, whatever happened numerically inside.
    for (std::size_t p = 0; p < mask_.size(); ++p) {
      if (mask_.bits()[p]) continue;
      for (int c = 0; c < Image::kChannels; ++c) out[p * 3 + c] = img_.samples()[p * 3 + c];
    }
    return Image(img_.width(), img_.height(), std::move(out));
  }

 private:
  bool known(int x, int y) const noexcept {
    return marcher_.in_bounds(x, y) && marcher_.flag(marcher_.index(x, y)) == Flag::Known;
  }
  bool reached(int x, int y) const noexcept {
    return marcher_.in_bounds(x, y) && marcher_.flag(marcher_.index(x, y)) != Flag::Inside;
  }
  double t_at(int x, int y) const noexcept {
    const std::size_t i = marcher_.index(x, y);
    return mask_.bits()[i] ? marcher_.time(i) : signed_t_[i];
  }
  double sample(int x, int y, int c) const noexcept {
    return work_[marcher_.index(x, y) * 3 + static_cast<std::size_t>(c)];
  }

  double t_derivative(int x, int y, int dx, int dy) const noexcept {
    const bool fwd = reached(x + dx, y + dy);
    const bool back = reached(x - dx, y - dy);
    if (fwd && back) return 0.5 * (t_at(x + dx, y + dy) - t_at(x - dx, y - dy));
    if (fwd) return t_at(x + dx, y + dy) - t_at(x, y);
    if (back) return t_at(x, y) - t_at(x - dx, y - dy);
    return 0.0;
  }

  double image_derivative(int x, int y, int dx, int dy, int c) const noexcept {
    if (!known(x + dx, y + dy) || !known(x - dx, y - dy)) return 0.0;
    return 0.5 * (sample(x + dx, y + dy, c) - sample(x - dx, y - dy, c));
  }

  void fill(int x, int y) {
    double nx = t_derivative(x, y, 1, 0);
    double ny = t_derivative(x, y, 0, 1);
    const double norm = std::hypot(nx, ny);
    if (norm > 0.0) {
      nx /= norm;
      ny /= norm;
    }
    const double tp = t_at(x, y);

    std::array<double, 3> acc{0.0, 0.0, 0.0};
    double total = 0.0;
    for (const auto& off : offsets_) {
      const int qx = x + off[0];
      const int qy = y + off[1];
      if (!known(qx, qy)) continue;
      const double rx = -off[0];
      const double ry = -off[1];
      const double len2 = rx * rx + ry * ry;
      const double len = std::sqrt(len2);
      const double dir = std::max(kDirFloor, (nx * rx + ny * ry) / len);
      const double dst = 1.0 / len2;
      const double lev = 1.0 / (1.0 + std::abs(tp - t_at(qx, qy)));
      const double w = dir * dst * lev;
      for (int c = 0; c < 3; ++c) {
        const double gx = image_derivative(qx, qy, 1, 0, c);
        const double gy = image_derivative(qx, qy, 0, 1, c);
        acc[c] += w * (sample(qx, qy, c) + gx * rx + gy * ry);
      }
      total += w;
    }

    const std::size_t base = marcher_.index(x, y) * 3;
    if (total > 0.0) {
      for (int c = 0; c < 3; ++c) work_[base + c] = std::clamp(acc[c] / total, 0.0, 255.0);
      return;
    }
    fill_from_nearest(x, y);
  }

  // Only reachable when the radius ball holds no finalized pixel.
  void fill_from_nearest(int x, int y) {
    const int max_r = std::max(img_.width(), img_.height());
    for (int r = 1; r <= max_r; ++r) {
      int best_d2 = std::numeric_limits<int>::max();
      std::size_t best = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
          if (!known(x + dx, y + dy)) continue;
          const int d2 = dx * dx + dy * dy;
          const std::size_t qi = marcher_.index(x + dx, y + dy);
          if (d2 < best_d2 || (d2 == best_d2 && qi < best)) {
            best_d2 = d2;
            best = qi;
          }
        }
      }
      if (best_d2 != std::numeric_limits<int>::max()) {
        const std::size_t base = marcher_.index(x, y) * 3;
        for (int c = 0; c < 3; ++c) work_[base + c] = work_[best * 3 + c];
        return;
      }
    }
  }

  const Image& img_;
  const SealMask& mask_;
  FastMarcher marcher_;
  std::vector<double> work_;
  std::vector<double> signed_t_;
  std::vector<std::array<int, 2>> offsets_;
};

void check_same_dims(const Image& img, const SealMask& mask) {
  if (img.width() != mask.width() || img.height() != mask.height()) {
    throw Error(ErrorCode::DimensionMismatch, "image and mask dimensions differ");
  }
}

}  // namespace

DistanceField solve_eikonal(const SealMask& mask) {
  FastMarcher fm(mask.width(), mask.height());
  seed_interior(fm, mask);
  fm.run(std::numeric_limits<double>::infinity(), [](int, int) {});
  DistanceField field{mask.width(), mask.height(), fm.times()};
  // A hole that covers the whole raster has no boundary to march from.
  for (auto& v : field.values) {
    if (v >= kUnreached) v = std::numeric_limits<double>::infinity();
  }
  return field;
}

Image inpaint_fmm(const Image& img, const SealMask& mask, int radius) {
  check_same_dims(img, mask);
  if (img.pixel_count() == 0) throw Error(ErrorCode::EmptyImage, "nothing to inpaint");
  if (radius < 1) throw Error(ErrorCode::InvalidArgument, "inpainting radius must be >= 1");
  if (mask.empty()) return img;
  return MarchingFiller(img, mask, radius).run();
}

RestoreResult restore_document(const Image& img, const RestoreParams& params) {
  params.validate();
  SealMask mask = dilate(detect_seal_mask(img, params), params.kernel, params.iterations);
  Image restored = inpaint_fmm(img, mask, params.radius);
  return {std::move(restored), std::move(mask)};
}

}  // namespace sealrestore
