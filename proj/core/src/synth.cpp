#include "sealrestore/synth.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>

#include "sealrestore/error.hpp"

namespace sealrestore {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Rng::below needs n > 0");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v = engine_();
  while (v >= limit) v = engine_();
  return v % n;
}

int Rng::range(int lo, int hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "Rng::range with hi < lo");
  const auto span = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  return static_cast<int>(static_cast<std::int64_t>(lo) + static_cast<std::int64_t>(below(span)));
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SealTemplate make_template(Image image, std::string id, int whiteness_threshold) {
  SealMask ink(image.width(), image.height());
  int x0 = image.width(), y0 = image.height(), x1 = -1, y1 = -1;
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      const Rgb p = image.pixel(x, y);
      if (std::min({p.r, p.g, p.b}) < whiteness_threshold) {
        ink.set(x, y);
        x0 = std::min(x0, x);
        y0 = std::min(y0, y);
        x1 = std::max(x1, x);
        y1 = std::max(y1, y);
      }
    }
  }
  std::optional<BBox> box;
  if (x1 >= 0) box = BBox{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
  return SealTemplate{std::move(id), std::move(image), std::move(ink), box};
}

SealTemplate load_template(const std::filesystem::path& path, int whiteness_threshold) {
  return make_template(load_image(path), path.stem().string(), whiteness_threshold);
}

namespace {

void check_fits(const Image& page, const SealTemplate& tpl, int x, int y) {
  if (x < 0 || y < 0 || x + tpl.image.width() > page.width() ||
      y + tpl.image.height() > page.height()) {
    throw Error(ErrorCode::OutOfBounds, "seal template does not fit at (" + std::to_string(x) +
                                            ", " + std::to_string(y) + ")");
  }
}

void blend_into(Image& page, const SealTemplate& tpl, int x, int y, double opacity, SealMask* union_mask) {
  for (int ty = 0; ty < tpl.image.height(); ++ty) {
    for (int tx = 0; tx < tpl.image.width(); ++tx) {
      if (!tpl.ink_mask.at(tx, ty)) continue;
      for (int c = 0; c < 3; ++c) {
        const double under = page.sample(x + tx, y + ty, c);
        const double ink = tpl.image.sample(tx, ty, c);
        page.sample(x + tx, y + ty, c) =
            static_cast<std::uint8_t>(std::lround((1.0 - opacity) * under + opacity * ink));
      }
      if (union_mask) union_mask->set(x + tx, y + ty);
    }
  }
}

void check_opacity(double opacity) {
  if (!(opacity > 0.0 && opacity <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "opacity must lie in (0, 1]");
  }
}

std::optional<BBox> shifted(const std::optional<BBox>& box, int x, int y) {
  if (!box) return std::nullopt;
  return BBox{box->x + x, box->y + y, box->w, box->h};
}

}  // namespace

Image composite_seal(const Image& page, const SealTemplate& tpl, int x, int y, double opacity) {
  check_opacity(opacity);
  check_fits(page, tpl, x, y);
  Image out = page;
  blend_into(out, tpl, x, y, opacity, nullptr);
  return out;
}

SyntheticPage generate_synthetic(const Image& page, std::span<const SealTemplate> templates,
                                 const SynthOptions& options) {
  if (options.count < 0) throw Error(ErrorCode::InvalidArgument, "seal count must be >= 0");
  check_opacity(options.opacity);
  SyntheticPage result{page, {}, SealMask(page.width(), page.height())};
  if (options.count == 0) return result;
  if (templates.empty()) throw Error(ErrorCode::NoTemplates, "no seal templates supplied");
  for (const auto& tpl : templates) {
    if (tpl.image.width() > page.width() || tpl.image.height() > page.height()) {
      throw Error(ErrorCode::PlacementInfeasible, "template '" + tpl.id + "' is larger than the page");
    }
  }

  Rng rng(options.seed);
  std::vector<int> partner;  // overlap partner per placed seal, -1 if none
  for (int n = 0; n < options.count; ++n) {
    int rejections = 0;
    while (true) {
      const auto ti = static_cast<std::size_t>(rng.below(templates.size()));
      const SealTemplate& tpl = templates[ti];
      const int x = rng.range(0, page.width() - tpl.image.width());
      const int y = rng.range(0, page.height() - tpl.image.height());
      const auto box = shifted(tpl.ink_box, x, y);

      std::vector<std::size_t> hits;
      if (box) {
        for (std::size_t j = 0; j < result.placements.size(); ++j) {
          const auto& other = result.placements[j].ink_box;
          if (other && boxes_overlap(*box, *other)) hits.push_back(j);
        }
      }
      const bool ok = hits.empty() || (hits.size() == 1 && partner[hits[0]] < 0);
      if (ok) {
        const int self = static_cast<int>(result.placements.size());
        partner.push_back(hits.empty() ? -1 : static_cast<int>(hits[0]));
        if (!hits.empty()) partner[hits[0]] = self;
        result.placements.push_back({ti, tpl.id, x, y, box});
        blend_into(result.image, tpl, x, y, options.opacity, &result.mask);
        break;
      }
      if (++rejections >= options.rejection_budget) {
        throw Error(ErrorCode::PlacementInfeasible,
                    "could not place seal " + std::to_string(n + 1) + " of " +
                        std::to_string(options.count) + " after " +
                        std::to_string(rejections) + " draws");
      }
    }
  }
  return result;
}

std::string placements_to_json(std::span<const SealPlacement> placements, const SynthOptions& options) {
  nlohmann::ordered_json doc;
  doc["seed"] = options.seed;
  doc["count"] = options.count;
  doc["opacity"] = options.opacity;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : placements) {
    nlohmann::ordered_json item;
    item["template_index"] = p.template_index;
    item["template_id"] = p.template_id;
    item["x"] = p.x;
    item["y"] = p.y;
    if (p.ink_box) {
      item["ink_box"] = {{"x", p.ink_box->x}, {"y", p.ink_box->y}, {"w", p.ink_box->w}, {"h", p.ink_box->h}};
    } else {
      item["ink_box"] = nullptr;
    }
    arr.push_back(std::move(item));
  }
  doc["placements"] = std::move(arr);
  return doc.dump(2) + "\n";
}

}  // namespace sealrestore
