#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace muzeel::dom {

// One element of the parsed document. Trees are immutable after parse and
// safe to share read-only across workers.
struct DomNode {
  std::string tag;  // lowercase
  std::vector<std::pair<std::string, std::string>> attrs;  // document order
  std::vector<std::unique_ptr<DomNode>> children;          // element children
  DomNode* parent = nullptr;
  bool is_document_root = false;

  std::string text;  // direct text content (concatenated)

  // For raw-text elements (script/style): byte range of the content in the
  // source the document was parsed from.
  size_t raw_begin = 0;
  size_t raw_end = 0;

  const std::string* attr(std::string_view name) const {
    for (const auto& [k, v] : attrs) {
      if (k == name) return &v;
    }
    return nullptr;
  }
  bool has_attr(std::string_view name) const { return attr(name) != nullptr; }
};

struct Document {
  std::unique_ptr<DomNode> root;

  DomNode* root_node() const { return root.get(); }
};

// Tolerant HTML parser: enough for captured pages and driver-serialized DOM.
// Handles doctype, comments, void and self-closing elements, quoted and bare
// attributes, and script/style raw text. Never throws; unexpected input is
// skipped.
Document parse_html(std::string_view html);

// All element nodes in DFS pre-order (document order).
std::vector<DomNode*> all_elements(const Document& doc);

std::string serialize(const Document& doc);

}  // namespace muzeel::dom
