#include "muzeel/dom/xpath.hpp"

#include <cctype>
#include <map>

namespace muzeel::dom {

namespace {

const DomNode* document_root_of(const DomNode& node) {
  const DomNode* cur = &node;
  while (cur->parent) cur = cur->parent;
  if (!cur->is_document_root) {
    throw DetachedNodeError("node has no path to the document root");
  }
  return cur;
}

void count_attr_values(const DomNode& root, std::map<std::string, int>& ids) {
  if (const auto* id = root.attr("id")) ++ids[*id];
  for (const auto& child : root.children) count_attr_values(*child, ids);
}

// 1-based index among same-tag siblings.
int sibling_index(const DomNode& node) {
  if (!node.parent) return 1;
  int k = 0;
  for (const auto& sibling : node.parent->children) {
    if (sibling->tag == node.tag) {
      ++k;
      if (sibling.get() == &node) return k;
    }
  }
  return k;
}

bool quotable(const std::string& value) { return value.find('"') == std::string::npos; }

std::string attr_step(const DomNode& node, const std::string& attr_name,
                      const std::string& value) {
  return node.tag + "[@" + attr_name + " = \"" + value + "\"]";
}

std::string position_steps_from(const DomNode* stop_below, const DomNode& node) {
  // Path of tag[k] steps from (exclusive) stop_below down to node.
  std::vector<std::string> steps;
  const DomNode* cur = &node;
  while (cur && cur != stop_below) {
    steps.push_back(cur->tag + "[" + std::to_string(sibling_index(*cur)) + "]");
    cur = cur->parent;
  }
  std::string out;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    out += "/" + *it;
  }
  return out;
}

}  // namespace

ElementPath build_xpath(const DomNode& node) {
  const DomNode* root = document_root_of(node);
  std::map<std::string, int> id_counts;
  count_attr_values(*root, id_counts);

  auto anchor_for = [&](const DomNode& n) -> std::string {
    // Empty result means n cannot anchor.
    if (const auto* id = n.attr("id")) {
      if (id_counts[*id] == 1 && quotable(*id)) {
        return "//" + attr_step(n, "id", *id);
      }
      return "";  // duplicated id: caller falls back to pure position
    }
    if (const auto* cls = n.attr("class")) {
      if (quotable(*cls)) return "//" + attr_step(n, "class", *cls);
    }
    return "";
  };

  auto root_absolute = [&](const DomNode& n) {
    return "/" + root->tag + "[1]" + position_steps_from(root, n);
  };

  // The node itself.
  if (node.has_attr("id")) {
    std::string self = anchor_for(node);
    return {self.empty() ? root_absolute(node) : self};
  }
  if (node.has_attr("class")) {
    std::string self = anchor_for(node);
    if (!self.empty()) return {self};
  }

  // Nearest ancestor carrying an id or class attribute.
  for (const DomNode* cur = node.parent; cur; cur = cur->parent) {
    if (cur->has_attr("id") || cur->has_attr("class")) {
      std::string anchor = anchor_for(*cur);
      if (anchor.empty()) break;  // duplicated id above us
      return {anchor + position_steps_from(cur, node)};
    }
  }
  return {root_absolute(node)};
}

namespace {

struct Step {
  std::string tag;
  bool by_position = false;
  int position = 0;
  std::string attr_name;
  std::string attr_value;
};

struct PathParser {
  const std::string& s;
  size_t pos = 0;

  explicit PathParser(const std::string& str) : s(str) {}

  [[noreturn]] void fail(const std::string& why) {
    throw GrammarError("bad xpath '" + s + "': " + why);
  }

  bool eat(std::string_view prefix) {
    if (s.compare(pos, prefix.size(), prefix) == 0) {
      pos += prefix.size();
      return true;
    }
    return false;
  }

  std::string read_name() {
    size_t start = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) ||
                              s[pos] == '-' || s[pos] == '_')) {
      ++pos;
    }
    if (pos == start) fail("expected a name");
    return s.substr(start, pos - start);
  }

  Step read_step() {
    Step step;
    step.tag = read_name();
    if (!eat("[")) fail("expected '['");
    if (eat("@")) {
      step.attr_name = read_name();
      if (!eat(" = \"")) fail("expected ' = \"' in attribute predicate");
      size_t close = s.find('"', pos);
      if (close == std::string::npos) fail("unterminated attribute value");
      step.attr_value = s.substr(pos, close - pos);
      pos = close + 1;
    } else {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) fail("expected a position or attribute predicate");
      step.by_position = true;
      step.position = std::stoi(s.substr(start, pos - start));
      if (step.position < 1) fail("positions are 1-based");
    }
    if (!eat("]")) fail("expected ']'");
    return step;
  }
};

bool step_matches(const Step& step, const DomNode& node) {
  if (node.tag != step.tag) return false;
  if (step.by_position) return sibling_index(node) == step.position;
  const auto* v = node.attr(step.attr_name);
  return v && *v == step.attr_value;
}

void collect_descendants_or_self(DomNode* node, const Step& step, std::vector<DomNode*>& out) {
  if (step_matches(step, *node)) out.push_back(node);
  for (const auto& child : node->children) {
    collect_descendants_or_self(child.get(), step, out);
  }
}

}  // namespace

std::vector<DomNode*> resolve_xpath(const Document& doc, const ElementPath& path) {
  PathParser parser(path.xpath);
  bool descendant_head = parser.eat("//");
  if (!descendant_head && !parser.eat("/")) {
    parser.fail("path must start with '//' or '/'");
  }

  std::vector<Step> steps;
  steps.push_back(parser.read_step());
  while (parser.pos < parser.s.size()) {
    if (!parser.eat("/")) parser.fail("expected '/' between steps");
    steps.push_back(parser.read_step());
  }

  std::vector<DomNode*> current;
  if (descendant_head) {
    collect_descendants_or_self(doc.root_node(), steps[0], current);
  } else {
    if (step_matches(steps[0], *doc.root_node())) current.push_back(doc.root_node());
  }
  for (size_t i = 1; i < steps.size(); ++i) {
    std::vector<DomNode*> next;
    for (DomNode* node : current) {
      for (const auto& child : node->children) {
        if (step_matches(steps[i], *child)) next.push_back(child.get());
      }
    }
    current = std::move(next);
  }
  return current;
}

std::vector<std::pair<DomNode*, ElementPath>> enumerate_elements(const Document& doc) {
  std::vector<std::pair<DomNode*, ElementPath>> out;
  for (DomNode* node : all_elements(doc)) {
    out.emplace_back(node, build_xpath(*node));
  }
  return out;
}

}  // namespace muzeel::dom
