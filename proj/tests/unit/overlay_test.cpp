#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <sstream>

#include "overlay_fixtures.hpp"
#include "sealrestore/annotations.hpp"
#include "sealrestore/error.hpp"
#include "sealrestore/overlay.hpp"

namespace sealrestore {
namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

bool well_formed(const std::string& svg) {
  std::istringstream in(svg);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_xml(in, tree);
  } catch (const std::exception&) {
    return false;
  }
  return tree.count("svg") == 1;
}

TEST(Overlay, EmptyItemsHaveOnlyImageLayer) {
  const std::string svg = render_overlay("restored.png", 100, 80, {});
  EXPECT_EQ(count_of(svg, "<image "), 1u);
  EXPECT_EQ(count_of(svg, "<rect "), 0u);
  EXPECT_EQ(count_of(svg, "<text "), 0u);
  EXPECT_NE(svg.find("width=\"100\" height=\"80\""), std::string::npos);
  EXPECT_TRUE(well_formed(svg));
}

TEST(Overlay, SingleItemDefaults) {
  const std::vector<OverlayItem> items{{{10, 20, 30, 40}, codepoint_to_char(0x5C1A)}};
  const std::string svg = render_overlay("restored.png", 200, 200, items);
  EXPECT_NE(svg.find(R"(<rect x="10" y="20" width="30" height="40" fill="none" stroke="green" stroke-width="2"/>)"),
            std::string::npos);
  EXPECT_NE(svg.find(R"(<text x="10" y="20" dy="64" font-family="serif" font-size="64" fill="green">尚</text>)"),
            std::string::npos);
  EXPECT_TRUE(well_formed(svg));
}

TEST(Overlay, ShowBoxesToggleRemovesOnlyRects) {
  const auto items = testing::overlay_items_b();
  OverlayStyle hidden;
  hidden.show_boxes = false;
  const std::string with = render_overlay("p.png", 400, 300, items);
  const std::string without = render_overlay("p.png", 400, 300, items, hidden);
  EXPECT_EQ(count_of(with, "<rect "), items.size());
  EXPECT_EQ(count_of(without, "<rect "), 0u);
  EXPECT_EQ(count_of(with, "<text "), items.size());
  EXPECT_EQ(count_of(without, "<text "), items.size());
  // Removing the rect lines from `with` yields `without` exactly.
  std::istringstream in(with);
  std::string line, stripped;
  while (std::getline(in, line))
    if (line.find("<rect ") == std::string::npos) stripped += line + "\n";
  EXPECT_EQ(stripped, without);
}

TEST(Overlay, EscapesMarkup) {
  OverlayStyle style;
  style.font_family = "A&B \"Mincho\"";
  const std::vector<OverlayItem> items{{{0, 0, 5, 5}, "<&>"}};
  const std::string svg = render_overlay("a&b.png", 10, 10, items, style);
  EXPECT_NE(svg.find("&lt;&amp;&gt;"), std::string::npos);
  EXPECT_NE(svg.find("a&amp;b.png"), std::string::npos);
  EXPECT_NE(svg.find("A&amp;B &quot;Mincho&quot;"), std::string::npos);
  EXPECT_TRUE(well_formed(svg));
}

TEST(Overlay, ErrorContract) {
  try {
    render_overlay("x.png", 0, 10, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyCanvas);
  }
  const std::vector<OverlayItem> outside{{{50, 50, 5, 5}, "x"}};
  EXPECT_THROW(render_overlay("x.png", 10, 10, outside), Error);
  OverlayStyle bad;
  bad.font_size = 0;
  EXPECT_THROW(render_overlay("x.png", 10, 10, {}, bad), Error);
}

TEST(Overlay, GoldenFiles) {
  for (const auto& c : testing::overlay_golden_cases()) {
    const std::string svg = render_overlay(c.href, c.width, c.height, c.items, c.style);
    EXPECT_EQ(svg, read_text_file(std::filesystem::path(SEALRESTORE_GOLDEN_DIR) / c.golden)) << c.golden;
    EXPECT_TRUE(well_formed(svg)) << c.golden;
  }
}

TEST(Base64, KnownVectors) {
  auto enc = [](const std::string& s) {
    return base64_encode({reinterpret_cast<const unsigned char*>(s.data()), s.size()});
  };
  EXPECT_EQ(enc(""), "");
  EXPECT_EQ(enc("f"), "Zg==");
  EXPECT_EQ(enc("fo"), "Zm8=");
  EXPECT_EQ(enc("foo"), "Zm9v");
  EXPECT_EQ(enc("foobar"), "Zm9vYmFy");
}

}  // namespace
}  // namespace sealrestore
