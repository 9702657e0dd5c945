#include "muzeel/cache/units.hpp"

#include <algorithm>

#include "muzeel/dom/dom.hpp"

namespace muzeel::cache {

std::vector<JsUnit> extract_units(const ResourceEntry& entry, const std::string& body) {
  std::vector<JsUnit> units;
  if (entry.kind == "js") {
    units.push_back({entry.local_path, body, 0, body.size()});
    return units;
  }
  if (entry.kind != "html") return units;

  auto doc = dom::parse_html(body);
  int index = 0;
  for (const auto* node : dom::all_elements(doc)) {
    if (node->tag != "script" || node->has_attr("src")) continue;
    if (const auto* type = node->attr("type")) {
      if (type->find("javascript") == std::string::npos && !type->empty()) continue;
    }
    if (node->raw_end <= node->raw_begin) continue;
    std::string text = body.substr(node->raw_begin, node->raw_end - node->raw_begin);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    units.push_back({entry.local_path + "#inline:" + std::to_string(index++), text,
                     node->raw_begin, node->raw_end});
  }
  std::sort(units.begin(), units.end(),
            [](const JsUnit& a, const JsUnit& b) { return a.begin < b.begin; });
  return units;
}

std::string splice_units(const std::string& body, const std::vector<JsUnit>& units,
                         const std::vector<std::string>& rewritten_texts) {
  std::string out;
  size_t cursor = 0;
  for (size_t i = 0; i < units.size(); ++i) {
    out += body.substr(cursor, units[i].begin - cursor);
    out += rewritten_texts[i];
    cursor = units[i].end;
  }
  out += body.substr(cursor);
  return out;
}

}  // namespace muzeel::cache
