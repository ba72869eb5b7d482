#include "sealrestore/overlay.hpp"

#include <sstream>

#include "sealrestore/annotations.hpp"
#include "sealrestore/error.hpp"

namespace sealrestore {

void OverlayStyle::validate() const {
  if (font_size <= 0) throw Error(ErrorCode::InvalidArgument, "font size must be positive");
  if (box_stroke_width < 0) throw Error(ErrorCode::InvalidArgument, "stroke width must be >= 0");
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_overlay(std::string_view image_href, int width, int height,
                           std::span<const OverlayItem> items, const OverlayStyle& style) {
  if (width <= 0 || height <= 0) {
    throw Error(ErrorCode::EmptyCanvas, "overlay canvas must have positive dimensions");
  }
  style.validate();
  const BBox canvas{0, 0, width, height};
  for (const auto& item : items) {
    if (!item.box.valid() || !boxes_overlap(item.box, canvas)) {
      throw Error(ErrorCode::OutOfBounds, "overlay box lies outside the canvas");
    }
  }

  const std::string box_color = xml_escape(style.box_color);
  const std::string text_color = xml_escape(style.text_color);
  const std::string family = xml_escape(style.font_family);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\""
      << " version=\"1.1\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
      << width << ' ' << height << "\">\n"
      << "  <image x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" xlink:href=\"" << xml_escape(image_href) << "\"/>\n";
  for (const auto& item : items) {
    const BBox& b = item.box;
    if (style.show_boxes) {
      svg << "  <rect x=\"" << b.x << "\" y=\"" << b.y << "\" width=\"" << b.w << "\" height=\""
          << b.h << "\" fill=\"none\" stroke=\"" << box_color << "\" stroke-width=\""
          << style.box_stroke_width << "\"/>\n";
    }
    svg << "  <text x=\"" << b.x << "\" y=\"" << b.y << "\" dy=\"" << style.font_size
        << "\" font-family=\"" << family << "\" font-size=\"" << style.font_size << "\" fill=\""
        << text_color << "\">" << xml_escape(item.text) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string base64_encode(std::span<const unsigned char> bytes) {
  static constexpr char kAlphabet[] =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 2 < bytes.size(); i += 3) {
    const unsigned v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += kAlphabet[v & 63];
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    const unsigned v = bytes[i] << 16;
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += "==";
  } else if (rest == 2) {
    const unsigned v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out += kAlphabet[(v >> 18) & 63];
    out += kAlphabet[(v >> 12) & 63];
    out += kAlphabet[(v >> 6) & 63];
    out += '=';
  }
  return out;
}

std::string png_data_uri(const std::filesystem::path& png_path) {
  const std::string raw = read_text_file(png_path);
  const auto* data = reinterpret_cast<const unsigned char*>(raw.data());
  return "data:image/png;base64," + base64_encode({data, raw.size()});
}

}  // namespace sealrestore
