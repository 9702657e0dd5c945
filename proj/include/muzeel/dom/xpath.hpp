#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "muzeel/dom/dom.hpp"

namespace muzeel::dom {

// An XPath string that uniquely locates one element across reloads of the
// same document.
struct ElementPath {
  std::string xpath;

  friend bool operator==(const ElementPath& a, const ElementPath& b) {
    return a.xpath == b.xpath;
  }
  friend auto operator<=>(const ElementPath& a, const ElementPath& b) {
    return a.xpath <=> b.xpath;
  }
};

class DetachedNodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The path falls outside the restricted grammar emitted by build_xpath.
class GrammarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Hybrid attribute/position strategy: an element with a unique id anchors as
// //tag[@id = "v"]; one with a class attribute as //tag[@class = "v"]; other
// elements take position steps tag[k] from the nearest anchored ancestor, or
// from the document root when there is none. style never identifies anything.
// Elements under a duplicated id fall back to pure position from the root.
ElementPath build_xpath(const DomNode& node);

// Evaluates the restricted grammar: a //tag[@attr = "v"] or /tag[k] head
// followed by child steps tag[k] / tag[@attr = "v"]. Returns every match in
// document order (multiplicity is the caller's signal that uniqueness broke).
std::vector<DomNode*> resolve_xpath(const Document& doc, const ElementPath& path);

// DFS pre-order (document order), one entry per element.
std::vector<std::pair<DomNode*, ElementPath>> enumerate_elements(const Document& doc);

}  // namespace muzeel::dom
