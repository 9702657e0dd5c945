#include "muzeel/js/eliminate.hpp"

#include <algorithm>

#include "muzeel/js/scanner.hpp"

namespace muzeel::js {

namespace {

struct Replacement {
  size_t from;
  size_t to;
  std::string text;
};

std::pair<size_t, size_t> body_range(const ScannedFunction& f) {
  if (f.block_body) return {f.body_open + 1, f.body_close};  // interior of {}
  return {f.expr_begin, f.expr_end};
}

}  // namespace

EliminationResult eliminate(std::string_view original_source,
                            const std::vector<FunctionSpan>& spans, const UsedSet& used,
                            const std::string& file_name) {
  ScanResult scanned = scan(original_source, file_name);

  std::set<std::pair<int, int>> triples;
  for (const auto& f : scanned.functions) {
    triples.insert({f.span.start_line, f.span.end_line});
  }
  if (triples.size() != spans.size()) {
    throw ConsistencyError("span list does not match a scan of this source");
  }
  for (const auto& s : spans) {
    if (s.file_name != file_name || !triples.count({s.start_line, s.end_line})) {
      throw ConsistencyError("span list does not match a scan of this source");
    }
  }
  for (const auto& key : used.keys()) {
    if (key.file_name != file_name || !triples.count({key.start_line, key.end_line})) {
      throw ConsistencyError("used set names a span absent from this file");
    }
  }

  // Pre-order walk: a function inside an already-victim body is removed with
  // it.
  std::vector<Replacement> edits;
  std::vector<std::pair<size_t, size_t>> victim_ranges;  // body byte ranges
  std::vector<char> header_survives(scanned.functions.size(), 1);
  for (size_t i = 0; i < scanned.functions.size(); ++i) {
    const auto& f = scanned.functions[i];
    bool inside_victim = false;
    for (const auto& [from, to] : victim_ranges) {
      if (f.header_begin >= from && f.header_begin < to) {
        inside_victim = true;
        break;
      }
    }
    if (inside_victim) {
      header_survives[i] = 0;
      continue;
    }
    if (used.contains(f.span)) continue;
    auto [from, to] = body_range(f);
    victim_ranges.push_back({from, to});
    edits.push_back({from, to, f.block_body ? "" : "{}"});
  }

  // A used span must survive somewhere; losing every copy of it to an
  // enclosing elimination breaks the contract.
  for (const auto& key : used.keys()) {
    bool survives = false;
    for (size_t i = 0; i < scanned.functions.size(); ++i) {
      const auto& s = scanned.functions[i].span;
      if (header_survives[i] && s.start_line == key.start_line && s.end_line == key.end_line) {
        survives = true;
        break;
      }
    }
    if (!survives) {
      throw ConsistencyError("used span is nested inside an eliminated span");
    }
  }

  std::sort(edits.begin(), edits.end(),
            [](const Replacement& a, const Replacement& b) { return a.from > b.from; });
  std::string text(original_source);
  for (const auto& e : edits) {
    text.replace(e.from, e.to - e.from, e.text);
  }

  EliminationResult result;
  result.bytes_removed = original_source.size() - text.size();

  // Surviving headers correspond 1:1, in order, to the functions of the
  // rewritten text; pair them up and report one entry per original triple
  // (its first surviving copy carries the new position).
  ScanResult rescanned = scan(text, file_name);
  std::vector<size_t> survivors;
  for (size_t i = 0; i < scanned.functions.size(); ++i) {
    if (header_survives[i]) survivors.push_back(i);
  }
  if (survivors.size() != rescanned.functions.size()) {
    throw ConsistencyError("survivor count mismatch after rewrite");
  }
  std::set<std::pair<int, int>> seen_old;
  for (size_t k = 0; k < survivors.size(); ++k) {
    const auto& f = scanned.functions[survivors[k]];
    auto key = std::make_pair(f.span.start_line, f.span.end_line);
    if (!seen_old.insert(key).second) continue;
    result.entries.push_back(
        {f.span, rescanned.functions[k].span, !used.contains(f.span)});
  }
  // Triples with no surviving copy were wiped out with an enclosing body.
  for (size_t i = 0; i < scanned.functions.size(); ++i) {
    const auto& f = scanned.functions[i];
    auto key = std::make_pair(f.span.start_line, f.span.end_line);
    if (!seen_old.count(key) && seen_old.insert(key).second) {
      result.removed_nested.push_back(f.span);
    }
  }
  result.text = std::move(text);
  return result;
}

double diff_eliminated(const std::map<std::string, std::string>& run_a,
                       const std::map<std::string, std::string>& run_b) {
  if (run_a.empty() || run_b.empty()) {
    throw MismatchError("cannot diff empty elimination runs");
  }
  if (run_a.size() != run_b.size()) {
    throw MismatchError("elimination runs cover different file sets");
  }
  size_t identical = 0;
  auto it_b = run_b.begin();
  for (auto it_a = run_a.begin(); it_a != run_a.end(); ++it_a, ++it_b) {
    if (it_a->first != it_b->first) {
      throw MismatchError("elimination runs cover different file sets");
    }
    if (it_a->second == it_b->second) ++identical;
  }
  return static_cast<double>(identical) / static_cast<double>(run_a.size());
}

}  // namespace muzeel::js
