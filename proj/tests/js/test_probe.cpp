#include "muzeel/js/probe.hpp"

#include <gtest/gtest.h>

#include <random>

using muzeel::js::parse_probe_log;
using muzeel::js::probe_payload;
using muzeel::js::ProbeLogParser;
using muzeel::js::SpanKey;

TEST(Probe, RoundTrip) {
  SpanKey key("f.js", 1, 1);
  auto parsed = parse_probe_log(probe_payload(key, "TOK:"), "TOK:");
  ASSERT_TRUE(parsed.has_value());
  EXPECT_EQ(*parsed, key);
}

TEST(Probe, FileNamesWithSeparators) {
  // '|' in the file name: the numeric fields are taken from the right.
  SpanKey key("weird|name.js", 3, 9);
  auto parsed = parse_probe_log(probe_payload(key, "T"), "T");
  ASSERT_TRUE(parsed.has_value());
  EXPECT_EQ(parsed->file_name, "weird|name.js");
  EXPECT_EQ(parsed->start_line, 3);
  EXPECT_EQ(parsed->end_line, 9);
}

TEST(Probe, OrdinaryLinesIgnored) {
  EXPECT_FALSE(parse_probe_log("user message", "TOK:").has_value());
  EXPECT_FALSE(parse_probe_log("", "TOK:").has_value());
  EXPECT_FALSE(parse_probe_log("TOK", "TOK:").has_value());
}

TEST(Probe, MalformedPayloadCounted) {
  ProbeLogParser parser("TOK:");
  EXPECT_FALSE(parser.parse("TOK:f.js|9|x").has_value());
  EXPECT_FALSE(parser.parse("TOK:f.js|0|1").has_value());
  EXPECT_FALSE(parser.parse("TOK:|1|2").has_value());
  EXPECT_FALSE(parser.parse("TOK:f.js|5|2").has_value());
  EXPECT_FALSE(parser.parse("not a probe at all").has_value());
  EXPECT_EQ(parser.malformed_count(), 4u);  // the non-probe line is not counted
  EXPECT_TRUE(parser.parse("TOK:f.js|2|5").has_value());
  EXPECT_EQ(parser.malformed_count(), 4u);
}

// Fuzz: random garbage never parses as a probe and never crashes; payloads
// always round-trip.
TEST(Probe, FuzzNonProbeLines) {
  std::mt19937 rng(99);
  const std::string charset = "abc|0123:XYZ \t\\\"";
  for (int i = 0; i < 5000; ++i) {
    std::string line;
    size_t len = rng() % 40;
    for (size_t j = 0; j < len; ++j) line += charset[rng() % charset.size()];
    auto r = parse_probe_log(line, "TOK:");
    if (r.has_value()) {
      // Only acceptable if the line really was a well-formed payload.
      EXPECT_EQ(probe_payload(*r, "TOK:"), line);
    }
  }
}
