#pragma once

#include <cstdint>

#include "sealrestore/image.hpp"

namespace sealrestore {

// Stand-in corpora for demos and tests when no scanned pages or seal scans are
// available. Pages carry vertical columns of brush-like glyphs on tinted paper
// with brownish stains; seals are hard-edged red frames with inner strokes on white.

struct PageStyle {
  int columns_min = 5;
  int columns_max = 8;
  int stains_max = 3;
  int noise = 2;
};

Image render_text_page(int width, int height, std::uint64_t seed, const PageStyle& style = {});

/// Square canvas of side `size`; ink satisfies R >= 190 and R >= 3 max(G, B).
Image render_seal_template(int size, std::uint64_t seed);

}  // namespace sealrestore
