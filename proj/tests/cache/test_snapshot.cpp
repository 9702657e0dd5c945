#include "muzeel/cache/snapshot.hpp"

#include <gtest/gtest.h>

#include "muzeel/cache/units.hpp"
#include "muzeel/cache/url.hpp"
#include "support/paths.hpp"

using muzeel::cache::parse_url;
using muzeel::cache::resolve_href;
using muzeel::cache::sha256_hex;
using muzeel::cache::Snapshot;
using muzeel::cache::UrlParts;

namespace {

std::filesystem::path temp_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("muzeel_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Url, ParseAndOrigin) {
  UrlParts u;
  ASSERT_TRUE(parse_url("http://example.com/a/b.js?v=2", u));
  EXPECT_EQ(u.host, "example.com");
  EXPECT_EQ(u.path, "/a/b.js");
  EXPECT_EQ(u.query, "v=2");
  EXPECT_EQ(u.origin(), "http://example.com");
  EXPECT_EQ(u.path_query(), "/a/b.js?v=2");

  ASSERT_TRUE(parse_url("http://127.0.0.1:8080/", u));
  EXPECT_EQ(u.port, 8080);
  EXPECT_EQ(u.origin(), "http://127.0.0.1:8080");

  EXPECT_FALSE(parse_url("ftp://x/", u));
  EXPECT_FALSE(parse_url("not a url", u));
}

TEST(Url, ResolveHref) {
  UrlParts base;
  ASSERT_TRUE(parse_url("http://site.test/dir/page.html", base));
  EXPECT_EQ(resolve_href(base, "app.js"), "http://site.test/dir/app.js");
  EXPECT_EQ(resolve_href(base, "../lib/x.js"), "http://site.test/lib/x.js");
  EXPECT_EQ(resolve_href(base, "/abs.js"), "http://site.test/abs.js");
  EXPECT_EQ(resolve_href(base, "http://cdn.test/y.js"), "http://cdn.test/y.js");
  EXPECT_EQ(resolve_href(base, "//cdn.test/z.js"), "http://cdn.test/z.js");
  EXPECT_EQ(resolve_href(base, "javascript:void(0)"), "");
  EXPECT_EQ(resolve_href(base, "#anchor"), "");
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Snapshot, RoundTripManifestAndBlobs) {
  auto dir = temp_dir("snap");
  auto snapshot = Snapshot::create(dir, "http://site.test/", {"cdn.site.test"});
  muzeel::cache::ResourceEntry entry;
  entry.url = "http://site.test/app.js";
  entry.kind = "js";
  entry.first_party = true;
  entry.eligible = true;
  entry.local_path = "app.js";
  entry.content_type = "application/javascript";
  entry.headers = {{"cache-control", "max-age=60"}};
  entry.body_original = snapshot.put_blob("function f(){}");
  snapshot.entries().push_back(entry);
  snapshot.save();

  auto reopened = Snapshot::open(dir);
  ASSERT_EQ(reopened.entries().size(), 1u);
  const auto& e = reopened.entries()[0];
  EXPECT_EQ(e.url, "http://site.test/app.js");
  EXPECT_EQ(reopened.load_blob(e.body_original), "function f(){}");
  EXPECT_EQ(e.headers.size(), 1u);
  EXPECT_EQ(reopened.first_party_domains().size(), 1u);
  std::filesystem::remove_all(dir);
}

TEST(Snapshot, BlobsAreContentAddressed) {
  auto dir = temp_dir("blobs");
  auto snapshot = Snapshot::create(dir, "http://x.test/", {});
  auto h1 = snapshot.put_blob("same bytes");
  auto h2 = snapshot.put_blob("same bytes");
  EXPECT_EQ(h1, h2);
  EXPECT_EQ(snapshot.put_blob("other"), sha256_hex("other"));
  std::filesystem::remove_all(dir);
}

TEST(Snapshot, SpansAndUsedSidecars) {
  auto dir = temp_dir("sidecar");
  auto snapshot = Snapshot::create(dir, "http://x.test/", {});
  std::map<std::string, std::vector<muzeel::js::FunctionSpan>> spans;
  spans["app.js"].push_back({"app.js", 1, 3, muzeel::js::FunctionKind::kDeclaration});
  spans["app.js"].push_back({"app.js", 5, 5, muzeel::js::FunctionKind::kArrowExpression});
  snapshot.save_spans(spans);
  auto loaded = snapshot.load_spans();
  ASSERT_EQ(loaded["app.js"].size(), 2u);
  EXPECT_EQ(loaded["app.js"][1].kind, muzeel::js::FunctionKind::kArrowExpression);

  muzeel::js::UsedSet used;
  used.insert(muzeel::js::SpanKey("app.js", 1, 3));
  snapshot.save_used(used);
  EXPECT_TRUE(snapshot.load_used().contains(muzeel::js::SpanKey("app.js", 1, 3)));
  EXPECT_EQ(snapshot.load_used().size(), 1u);
  std::filesystem::remove_all(dir);
}

TEST(Promote, RejectsInvalidBodiesAtomically) {
  auto dir = temp_dir("promote");
  auto snapshot = Snapshot::create(dir, "http://x.test/", {});
  muzeel::cache::ResourceEntry a;
  a.url = "http://x.test/a.js";
  a.kind = "js";
  a.eligible = true;
  a.local_path = "a.js";
  a.body_original = snapshot.put_blob("function a(){return 1}");
  snapshot.entries().push_back(a);
  muzeel::cache::ResourceEntry b = a;
  b.url = "http://x.test/b.js";
  b.local_path = "b.js";
  snapshot.entries().push_back(b);
  snapshot.save();

  std::map<std::string, std::string> bad{
      {"http://x.test/a.js", "function a(){}"},
      {"http://x.test/b.js", "function b( {"},  // does not parse
  };
  EXPECT_THROW(muzeel::cache::promote(snapshot, bad), muzeel::cache::ValidationError);
  EXPECT_TRUE(Snapshot::open(dir).entries()[0].body_muzeeled.empty());

  std::map<std::string, std::string> good{
      {"http://x.test/a.js", "function a(){}"},
      {"http://x.test/b.js", "function a(){return 1}"},
  };
  muzeel::cache::promote(snapshot, good);
  auto reopened = Snapshot::open(dir);
  EXPECT_EQ(reopened.load_blob(reopened.entries()[0].body_muzeeled), "function a(){}");

  // Re-promotion with identical content is a no-op hash-wise.
  auto before = reopened.entries()[0].body_muzeeled;
  muzeel::cache::promote(reopened, good);
  EXPECT_EQ(Snapshot::open(dir).entries()[0].body_muzeeled, before);
  std::filesystem::remove_all(dir);
}

TEST(Units, JsFileIsOneUnit) {
  muzeel::cache::ResourceEntry entry;
  entry.kind = "js";
  entry.local_path = "app.js";
  auto units = muzeel::cache::extract_units(entry, "function f(){}");
  ASSERT_EQ(units.size(), 1u);
  EXPECT_EQ(units[0].file_name, "app.js");
}

TEST(Units, InlineScriptsBecomePseudoFiles) {
  muzeel::cache::ResourceEntry entry;
  entry.kind = "html";
  entry.local_path = "index.html";
  std::string html =
      "<html><body>"
      "<script>function a(){}</script>"
      "<script src=\"ext.js\"></script>"
      "<script type=\"application/json\">{\"not\":\"js\"}</script>"
      "<div></div>"
      "<script>function b(){}</script>"
      "</body></html>";
  auto units = muzeel::cache::extract_units(entry, html);
  ASSERT_EQ(units.size(), 2u);
  EXPECT_EQ(units[0].file_name, "index.html#inline:0");
  EXPECT_EQ(units[0].text, "function a(){}");
  EXPECT_EQ(units[1].file_name, "index.html#inline:1");

  auto spliced = muzeel::cache::splice_units(html, units, {"function a(){/*x*/}", "function b(){}"});
  EXPECT_NE(spliced.find("function a(){/*x*/}"), std::string::npos);
  EXPECT_EQ(muzeel::cache::splice_units(html, units, {units[0].text, units[1].text}), html);
}
