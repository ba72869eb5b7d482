#include "sealrestore/procedural.hpp"

#include <algorithm>
#include <cmath>

#include "sealrestore/synth.hpp"

namespace sealrestore {
namespace {

struct Color {
  double r, g, b;
};

double segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double vx = bx - ax;
  const double vy = by - ay;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((px - ax) * vx + (py - ay) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (ax + t * vx), py - (ay + t * vy));
}

// Anti-aliased stroke over a float canvas.
void stroke(std::vector<Color>& canvas, int w, int h, double ax, double ay, double bx, double by,
            double thickness, Color ink) {
  const double r = thickness / 2.0 + 1.0;
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min(ax, bx) - r)));
  const int x1 = std::min(w - 1, static_cast<int>(std::ceil(std::max(ax, bx) + r)));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min(ay, by) - r)));
  const int y1 = std::min(h - 1, static_cast<int>(std::ceil(std::max(ay, by) + r)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double d = segment_distance(x + 0.5, y + 0.5, ax, ay, bx, by);
      const double cover = std::clamp(thickness / 2.0 + 0.5 - d, 0.0, 1.0);
      if (cover <= 0.0) continue;
      Color& c = canvas[static_cast<std::size_t>(y) * w + x];
      c.r += cover * (ink.r - c.r);
      c.g += cover * (ink.g - c.g);
      c.b += cover * (ink.b - c.b);
    }
  }
}

void draw_glyph(std::vector<Color>& canvas, int w, int h, Rng& rng, double cx, double cy,
                double cell, Color ink) {
  const int strokes = rng.range(3, 7);
  const double half = cell * 0.42;
  for (int s = 0; s < strokes; ++s) {
    const double ax = cx + rng.uniform(-half, half);
    const double ay = cy + rng.uniform(-half, half);
    double bx, by;
    switch (rng.range(0, 2)) {
      case 0:  // horizontal-ish
        bx = cx + rng.uniform(-half, half);
        by = ay + rng.uniform(-cell * 0.1, cell * 0.1);
        break;
      case 1:  // vertical-ish
        bx = ax + rng.uniform(-cell * 0.1, cell * 0.1);
        by = cy + rng.uniform(-half, half);
        break;
      default:
        bx = cx + rng.uniform(-half, half);
        by = cy + rng.uniform(-half, half);
        break;
    }
    stroke(canvas, w, h, ax, ay, bx, by, rng.uniform(2.0, 4.0), ink);
  }
}

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
}

}  // namespace

Image render_text_page(int width, int height, std::uint64_t seed, const PageStyle& style) {
  Rng rng(seed);
  const double base_r = rng.uniform(224.0, 238.0);
  const double base_ratio = rng.uniform(1.02, 1.10);
  const Color paper{base_r, base_r / base_ratio, base_r / base_ratio * 0.92};

  std::vector<Color> canvas(static_cast<std::size_t>(width) * height, paper);

  // Brownish stains: R/G about 1.24, visible to a 1.2 ratio rule but not to 1.3.
  const int stains = rng.range(0, style.stains_max);
  for (int s = 0; s < stains; ++s) {
    const double cx = rng.uniform(0.0, width);
    const double cy = rng.uniform(0.0, height);
    const double rx = rng.uniform(width * 0.08, width * 0.22);
    const double ry = rng.uniform(height * 0.06, height * 0.18);
    const double r = rng.uniform(200.0, 210.0);
    const Color tint{r, r / 1.24, r / 1.62};
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double dx = (x - cx) / rx;
        const double dy = (y - cy) / ry;
        if (dx * dx + dy * dy <= 1.0) canvas[static_cast<std::size_t>(y) * width + x] = tint;
      }
    }
  }

  // Near-neutral ink keeps every ink/paper mixture below the paper's own red ratio.
  const double ink_r = rng.uniform(35.0, 50.0);
  const double ink_g = ink_r * rng.uniform(0.96, 1.0);
  const Color ink{ink_r, ink_g, ink_g * 0.92};
  const int columns = rng.range(style.columns_min, style.columns_max);
  const double margin = width * 0.06;
  const double col_pitch = (width - 2.0 * margin) / columns;
  const double cell = std::min(col_pitch * 0.8, 40.0);
  for (int c = 0; c < columns; ++c) {
    // right-to-left, top-to-bottom
    const double cx = width - margin - (c + 0.5) * col_pitch;
    const int rows = static_cast<int>((height - 2.0 * margin) / (cell * 1.15));
    const int used = rng.range(std::max(1, rows / 2), std::max(1, rows));
    for (int r = 0; r < used; ++r) {
      const double cy = margin + (r + 0.5) * cell * 1.15;
      draw_glyph(canvas, width, height, rng, cx, cy, cell, ink);
    }
  }

  Image out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Color& c = canvas[static_cast<std::size_t>(y) * width + x];
      const int n = style.noise;
      out.set_pixel(x, y, {quantize(c.r + rng.range(-n, n)), quantize(c.g + rng.range(-n, n)),
                           quantize(c.b + rng.range(-n, n))});
    }
  }
  return out;
}

Image render_seal_template(int size, std::uint64_t seed) {
  Rng rng(seed);
  Image out(size, size, Rgb{255, 255, 255});
  const Rgb ink{static_cast<std::uint8_t>(rng.range(190, 225)),
                static_cast<std::uint8_t>(rng.range(25, 60)),
                static_cast<std::uint8_t>(rng.range(30, 62))};
  const double c = size / 2.0;
  const double border = rng.uniform(size * 0.05, size * 0.09);
  const bool round = rng.range(0, 2) == 0;

  auto paint = [&](int x, int y) { out.set_pixel(x, y, ink); };
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double px = x + 0.5;
      const double py = y + 0.5;
      if (round) {
        const double d = std::hypot(px - c, py - c);
        if (d <= c - 1.0 && d >= c - 1.0 - border) paint(x, y);
      } else {
        const double edge = std::min({px, py, size - px, size - py});
        if (edge >= 1.0 && edge <= 1.0 + border) paint(x, y);
      }
    }
  }

  // Inner glyph strokes, hard-edged.
  const int strokes = rng.range(4, 9);
  const double inner = size / 2.0 - border - 4.0;
  for (int s = 0; s < strokes; ++s) {
    const double ax = c + rng.uniform(-inner, inner) * 0.8;
    const double ay = c + rng.uniform(-inner, inner) * 0.8;
    const bool horizontal = rng.range(0, 1) == 0;
    const double len = rng.uniform(inner * 0.4, inner * 1.2);
    const double bx = horizontal ? std::clamp(ax + len, c - inner, c + inner) : ax;
    const double by = horizontal ? ay : std::clamp(ay + len, c - inner, c + inner);
    const double half = rng.uniform(1.5, 3.0);
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        if (segment_distance(x + 0.5, y + 0.5, ax, ay, bx, by) <= half) paint(x, y);
      }
    }
  }
  return out;
}

}  // namespace sealrestore
