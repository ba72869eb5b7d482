#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sealrestore/boxes.hpp"
#include "sealrestore/image.hpp"
#include "sealrestore/seal_mask.hpp"

namespace sealrestore {

/// Seeded generator with a platform-independent bounded draw. Standard
/// distributions are implementation-defined, so they are avoided here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n), n > 0, by rejection.
  std::uint64_t below(std::uint64_t n);
  /// Uniform integer in [lo, hi].
  int range(int lo, int hi);
  /// Uniform in [0, 1) with 53 random bits.
  double unit();
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives independent per-item seeds (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

inline constexpr int kDefaultWhitenessThreshold = 240;
inline constexpr double kDefaultSealOpacity = 0.85;
inline constexpr int kDefaultSealsPerPage = 10;
inline constexpr int kDefaultRejectionBudget = 1000;

struct SealTemplate {
  std::string id;
  Image image;
  /// Pixels whose min(R,G,B) is below the whiteness threshold.
  SealMask ink_mask;
  /// Tight box around the ink, in template coordinates; empty template has none.
  std::optional<BBox> ink_box;
};

SealTemplate make_template(Image image, std::string id = {},
                           int whiteness_threshold = kDefaultWhitenessThreshold);
SealTemplate load_template(const std::filesystem::path& path,
                           int whiteness_threshold = kDefaultWhitenessThreshold);

struct SealPlacement {
  std::size_t template_index = 0;
  std::string template_id;
  int x = 0;
  int y = 0;
  /// Ink bounding box in page coordinates.
  std::optional<BBox> ink_box;
};

/// Alpha-blends the template's ink pixels onto the page at (x, y):
/// out = round((1 - opacity) * page + opacity * ink). Non-ink pixels are untouched.
Image composite_seal(const Image& page, const SealTemplate& tpl, int x, int y, double opacity);

struct SynthOptions {
  int count = kDefaultSealsPerPage;
  std::uint64_t seed = 0;
  double opacity = kDefaultSealOpacity;
  int rejection_budget = kDefaultRejectionBudget;
};

struct SyntheticPage {
  Image image;
  std::vector<SealPlacement> placements;
  /// Union of all placed ink pixels.
  SealMask mask;
};

/// Places `count` seals at uniformly drawn positions. A draw is rejected when its
/// ink box would overlap two placed seals, or one seal that already has an
/// overlap partner, so every seal overlaps at most one other. `rejection_budget`
/// consecutive rejections raise PlacementInfeasible.
SyntheticPage generate_synthetic(const Image& page, std::span<const SealTemplate> templates,
                                 const SynthOptions& options);

std::string placements_to_json(std::span<const SealPlacement> placements, const SynthOptions& options);

}  // namespace sealrestore
