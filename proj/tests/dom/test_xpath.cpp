#include "muzeel/dom/xpath.hpp"
#include <functional>

#include <gtest/gtest.h>

#include <random>

#include "muzeel/dom/dom.hpp"

using muzeel::dom::build_xpath;
using muzeel::dom::Document;
using muzeel::dom::DomNode;
using muzeel::dom::ElementPath;
using muzeel::dom::enumerate_elements;
using muzeel::dom::parse_html;
using muzeel::dom::resolve_xpath;

namespace {

constexpr const char* kSamplePage = R"(<html>
  <body>
    <div id="div1">
      <button></button>
    </div>
    <div class="divClass2">
      <a style="color:blue;"></a>
    </div>
  </body>
</html>)";

DomNode* find_by_tag(const Document& doc, const std::string& tag, int nth = 1) {
  int seen = 0;
  for (auto* node : muzeel::dom::all_elements(doc)) {
    if (node->tag == tag && ++seen == nth) return node;
  }
  return nullptr;
}

}  // namespace

TEST(XPath, SamplePageExactStrings) {
  auto doc = parse_html(kSamplePage);
  EXPECT_EQ(build_xpath(*find_by_tag(doc, "button")).xpath, "//div[@id = \"div1\"]/button[1]");
  EXPECT_EQ(build_xpath(*find_by_tag(doc, "div", 1)).xpath, "//div[@id = \"div1\"]");
  EXPECT_EQ(build_xpath(*find_by_tag(doc, "div", 2)).xpath, "//div[@class = \"divClass2\"]");
  EXPECT_EQ(build_xpath(*find_by_tag(doc, "a")).xpath, "//div[@class = \"divClass2\"]/a[1]");
}

TEST(XPath, StyleIsNeverIdentifying) {
  auto doc = parse_html(kSamplePage);
  for (auto& [node, path] : enumerate_elements(doc)) {
    EXPECT_EQ(path.xpath.find("@style"), std::string::npos) << path.xpath;
  }
}

TEST(XPath, ResolveRoundTripOnSamplePage) {
  auto doc = parse_html(kSamplePage);
  for (auto& [node, path] : enumerate_elements(doc)) {
    auto matches = resolve_xpath(doc, path);
    ASSERT_EQ(matches.size(), 1u) << path.xpath;
    EXPECT_EQ(matches[0], node) << path.xpath;
  }
}

TEST(XPath, SamplePageEnumeration) {
  auto doc = parse_html(kSamplePage);
  EXPECT_EQ(enumerate_elements(doc).size(), 6u);  // html body div button div a
}

TEST(XPath, EmptyBodyEnumeration) {
  auto doc = parse_html("<html><body></body></html>");
  auto entries = enumerate_elements(doc);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].first->tag, "html");
  EXPECT_EQ(entries[1].first->tag, "body");
}

TEST(XPath, EmptyDocumentResolvesToNothing) {
  auto doc = parse_html("");
  EXPECT_TRUE(resolve_xpath(doc, {"//div[@id = \"x\"]"}).empty());
}

TEST(XPath, DuplicateClassSurfacesMultiplicity) {
  auto doc = parse_html("<html><body><div class=\"c\"></div><div class=\"c\"></div></body></html>");
  auto matches = resolve_xpath(doc, {"//div[@class = \"c\"]"});
  EXPECT_EQ(matches.size(), 2u);
}

TEST(XPath, DuplicateIdFallsBackToPosition) {
  auto doc = parse_html(
      "<html><body>"
      "<div id=\"dup\"><span></span></div>"
      "<div id=\"dup\"><span></span></div>"
      "</body></html>");
  auto* second_span = find_by_tag(doc, "span", 2);
  auto path = build_xpath(*second_span);
  EXPECT_EQ(path.xpath, "/html[1]/body[1]/div[2]/span[1]");
  auto matches = resolve_xpath(doc, path);
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0], second_span);
}

TEST(XPath, DetachedNodeRejected) {
  DomNode loose;
  loose.tag = "div";
  EXPECT_THROW(build_xpath(loose), muzeel::dom::DetachedNodeError);
}

TEST(XPath, GrammarErrorsOnUnsupportedPaths) {
  auto doc = parse_html(kSamplePage);
  EXPECT_THROW(resolve_xpath(doc, {"div"}), muzeel::dom::GrammarError);
  EXPECT_THROW(resolve_xpath(doc, {"//div[contains(@id, 'x')]"}), muzeel::dom::GrammarError);
  EXPECT_THROW(resolve_xpath(doc, {"//div[@id = \"a\"]//span[1]"}), muzeel::dom::GrammarError);
}

TEST(XPath, BuildIsDeterministicAcrossReparses) {
  auto doc1 = parse_html(kSamplePage);
  auto doc2 = parse_html(kSamplePage);
  auto e1 = enumerate_elements(doc1);
  auto e2 = enumerate_elements(doc2);
  ASSERT_EQ(e1.size(), e2.size());
  for (size_t i = 0; i < e1.size(); ++i) {
    EXPECT_EQ(e1[i].second.xpath, e2[i].second.xpath);
  }
}

// Random trees: resolve(build(node)) is a singleton whenever ids are unique
// and class anchor values are unique.
TEST(XPath, RandomTreeRoundTrip) {
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    std::string html = "<html><body>";
    std::vector<std::string> open;
    int nodes = 0;
    int id_counter = 0, class_counter = 0;
    std::function<void(int)> gen = [&](int depth) {
      int children = depth > 3 ? 0 : static_cast<int>(rng() % 4);
      for (int c = 0; c < children && nodes < 50; ++c) {
        const char* tags[] = {"div", "span", "p", "ul", "li"};
        std::string tag = tags[rng() % 5];
        html += "<" + tag;
        switch (rng() % 4) {
          case 0: html += " id=\"uid" + std::to_string(id_counter++) + "\""; break;
          case 1: html += " class=\"cls" + std::to_string(class_counter++) + "\""; break;
          default: break;
        }
        html += ">";
        ++nodes;
        gen(depth + 1);
        html += "</" + tag + ">";
      }
    };
    gen(0);
    html += "</body></html>";

    auto doc = parse_html(html);
    auto entries = enumerate_elements(doc);
    EXPECT_EQ(entries.size(), static_cast<size_t>(nodes + 2));
    for (auto& [node, path] : entries) {
      auto matches = resolve_xpath(doc, path);
      ASSERT_EQ(matches.size(), 1u) << path.xpath << " in " << html;
      EXPECT_EQ(matches[0], node);
    }
  }
}
