#include "muzeel/js/instrument.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "muzeel/js/lexer.hpp"
#include "muzeel/js/scanner.hpp"
#include "support/paths.hpp"

using muzeel::js::instrument;
using muzeel::js::kDefaultProbeToken;
using muzeel::js::scan_functions;
using muzeel::js::strip_probes;

namespace {

bool node_available() {
  return std::system("node --version >/dev/null 2>&1") == 0;
}

// Runs a snippet under node and returns stdout.
std::string run_node(const std::string& source) {
  auto dir = std::filesystem::temp_directory_path();
  auto js = dir / ("muzeel_test_" + std::to_string(::getpid()) + ".js");
  auto out = dir / ("muzeel_test_" + std::to_string(::getpid()) + ".out");
  muzeel::test::write_file(js, source);
  std::string cmd = "node " + js.string() + " > " + out.string() + " 2>/dev/null";
  if (std::system(cmd.c_str()) != 0) return "<node failed>";
  auto result = muzeel::test::read_file(out);
  std::filesystem::remove(js);
  std::filesystem::remove(out);
  return result;
}

}  // namespace

TEST(Instrument, ProbeAfterOpeningBraceSameLine) {
  std::string src = "function f(){return 1}";
  auto spans = scan_functions(src, "f.js");
  auto inst = instrument(src, spans, "f.js", "TOK:");
  EXPECT_EQ(inst.text, "function f(){console.log(\"TOK:f.js|1|1\");return 1}");
  EXPECT_EQ(inst.spans.size(), 1u);
}

TEST(Instrument, ArrowExpressionBecomesBlockOnOneLine) {
  std::string src = "x => x+1";
  auto spans = scan_functions(src, "a.js");
  auto inst = instrument(src, spans, "a.js", "TOK:");
  EXPECT_EQ(inst.text, "x => {void console.log(\"TOK:a.js|1|1\");return x+1;}");
  EXPECT_EQ(muzeel::js::count_lines(inst.text), 1);
}

TEST(Instrument, FileWithZeroFunctionsUnchanged) {
  std::string src = "var x = 1;\nvar y = 2;\n";
  auto inst = instrument(src, {}, "z.js");
  EXPECT_EQ(inst.text, src);
}

TEST(Instrument, MismatchedSpansRejected) {
  std::string src = "function f(){return 1}";
  auto spans = scan_functions(src, "f.js");
  spans[0].end_line = 2;
  EXPECT_THROW(instrument(src, spans, "f.js"), muzeel::js::ConsistencyError);
}

// Round-trip and line stability across the whole corpus.
TEST(Instrument, RoundTripAndLineStabilityOnCorpus) {
  for (const auto& [name, source] : muzeel::test::load_corpus()) {
    auto spans = scan_functions(source, name);
    auto inst = instrument(source, spans, name);
    EXPECT_EQ(muzeel::js::count_lines(inst.text), muzeel::js::count_lines(source)) << name;
    EXPECT_EQ(strip_probes(inst.text, kDefaultProbeToken), source) << name;
  }
}

// Behavior check: instrumented closures compute the same
// values as the originals.
TEST(Instrument, InstrumentedClosuresBehaveIdentically) {
  if (!node_available()) GTEST_SKIP() << "node not available";
  std::string decls =
      "var fns = [x => x+1, (a) => { return a*3; }, function(y){return y-2}, x => x > 0 ? x : -x];\n";
  auto spans = scan_functions(decls, "b.js");
  auto inst = instrument(decls, spans, "b.js", "QT:");
  std::string harness =
      "\nvar out = [];\nfor (var f of fns) for (var i of [0,1,2]) out.push(f(i));\n"
      "process.stdout.write(JSON.stringify(out));\n";
  // Silence probe output so stdout only carries the values.
  std::string quiet = "console.log = function(){};\n";
  auto original = run_node(quiet + decls + harness);
  auto instrumented = run_node(quiet + inst.text + harness);
  EXPECT_NE(original, "<node failed>");
  EXPECT_EQ(original, instrumented);
}

TEST(Instrument, EveryFunctionGetsAProbe) {
  for (const auto& [name, source] : muzeel::test::load_corpus()) {
    auto scanned = muzeel::js::scan(source, name);
    auto spans = scan_functions(source, name);
    auto inst = instrument(source, spans, name);
    size_t probes = 0;
    size_t pos = 0;
    std::string needle = "console.log(\"" + std::string(kDefaultProbeToken);
    while ((pos = inst.text.find(needle, pos)) != std::string::npos) {
      ++probes;
      pos += needle.size();
    }
    EXPECT_EQ(probes, scanned.functions.size()) << name;
  }
}
