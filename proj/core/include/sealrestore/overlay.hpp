#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "sealrestore/boxes.hpp"

namespace sealrestore {

struct OverlayStyle {
  std::string box_color = "green";
  int box_stroke_width = 2;
  bool show_boxes = true;
  std::string text_color = "green";
  int font_size = 64;
  std::string font_family = "serif";

  void validate() const;
};

struct OverlayItem {
  BBox box;
  std::string text;  // UTF-8
};

/// SVG 1.1 document: the page image as base layer (referenced by `image_href`),
/// then per item an optional rect and a text element anchored at the box's
/// top-left corner with the baseline pushed down by font_size (dy). Byte-stable.
std::string render_overlay(std::string_view image_href, int width, int height,
                           std::span<const OverlayItem> items, const OverlayStyle& style = {});

std::string xml_escape(std::string_view text);

std::string base64_encode(std::span<const unsigned char> bytes);

/// data:image/png;base64,... URI for embedding the page in the SVG.
std::string png_data_uri(const std::filesystem::path& png_path);

}  // namespace sealrestore
