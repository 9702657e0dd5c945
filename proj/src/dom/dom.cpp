#include "muzeel/dom/dom.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace muzeel::dom {

namespace {

bool is_void_element(std::string_view tag) {
  static const std::array<std::string_view, 14> kVoid = {
      "area", "base", "br",    "col",   "embed",  "hr",    "img",
      "input", "link", "meta", "param", "source", "track", "wbr"};
  return std::find(kVoid.begin(), kVoid.end(), tag) != kVoid.end();
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct Parser {
  std::string_view html;
  size_t pos = 0;

  bool eof() const { return pos >= html.size(); }
  char peek(size_t ahead = 0) const {
    return pos + ahead < html.size() ? html[pos + ahead] : '\0';
  }
  bool starts_with(std::string_view s) const { return html.substr(pos, s.size()) == s; }

  void skip_until(std::string_view needle) {
    size_t found = html.find(needle, pos);
    pos = found == std::string_view::npos ? html.size() : found + needle.size();
  }

  std::string read_name() {
    size_t start = pos;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-' ||
                      peek() == '_' || peek() == ':')) {
      ++pos;
    }
    return lower(html.substr(start, pos - start));
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
  }

  void read_attributes(DomNode& node, bool& self_closing) {
    self_closing = false;
    while (!eof()) {
      skip_ws();
      if (peek() == '>') {
        ++pos;
        return;
      }
      if (peek() == '/' && peek(1) == '>') {
        pos += 2;
        self_closing = true;
        return;
      }
      if (peek() == '<') return;  // malformed; let the outer loop recover
      size_t name_start = pos;
      while (!eof() && peek() != '=' && peek() != '>' && peek() != '/' &&
             !std::isspace(static_cast<unsigned char>(peek()))) {
        ++pos;
      }
      std::string name = lower(html.substr(name_start, pos - name_start));
      if (name.empty()) {
        ++pos;
        continue;
      }
      skip_ws();
      std::string value;
      if (peek() == '=') {
        ++pos;
        skip_ws();
        if (peek() == '"' || peek() == '\'') {
          char quote = peek();
          ++pos;
          size_t vstart = pos;
          while (!eof() && peek() != quote) ++pos;
          value = std::string(html.substr(vstart, pos - vstart));
          if (!eof()) ++pos;
        } else {
          size_t vstart = pos;
          while (!eof() && peek() != '>' &&
                 !std::isspace(static_cast<unsigned char>(peek()))) {
            ++pos;
          }
          value = std::string(html.substr(vstart, pos - vstart));
        }
      }
      if (!node.attr(name)) node.attrs.emplace_back(name, value);
    }
  }

  Document run() {
    Document doc;
    doc.root = std::make_unique<DomNode>();
    doc.root->tag = "html";
    doc.root->is_document_root = true;
    std::vector<DomNode*> stack{doc.root.get()};
    bool saw_html_tag = false;

    while (!eof()) {
      if (peek() != '<') {
        size_t start = pos;
        size_t lt = html.find('<', pos);
        pos = lt == std::string_view::npos ? html.size() : lt;
        auto chunk = html.substr(start, pos - start);
        if (chunk.find_first_not_of(" \t\r\n") != std::string_view::npos) {
          stack.back()->text += std::string(chunk);
        }
        continue;
      }
      if (starts_with("<!--")) {
        skip_until("-->");
        continue;
      }
      if (starts_with("<!") || starts_with("<?")) {
        skip_until(">");
        continue;
      }
      if (peek(1) == '/') {
        pos += 2;
        std::string name = read_name();
        skip_until(">");
        for (size_t i = stack.size(); i-- > 1;) {
          if (stack[i]->tag == name) {
            stack.resize(i);
            break;
          }
        }
        continue;
      }
      // Opening tag.
      ++pos;
      std::string name = read_name();
      if (name.empty()) {
        continue;  // stray '<'
      }
      if (name == "html") {
        // Merge attributes onto the implicit root instead of nesting.
        bool self_closing = false;
        read_attributes(*doc.root, self_closing);
        saw_html_tag = true;
        continue;
      }
      auto node = std::make_unique<DomNode>();
      node->tag = name;
      bool self_closing = false;
      read_attributes(*node, self_closing);
      DomNode* raw = node.get();
      raw->parent = stack.back();
      stack.back()->children.push_back(std::move(node));
      if (self_closing || is_void_element(name)) {
        continue;
      }
      if (name == "script" || name == "style") {
        raw->raw_begin = pos;
        std::string close = "</" + name;
        size_t end = html.size();
        size_t search = pos;
        while (true) {
          size_t found = html.find(close, search);
          if (found == std::string_view::npos) break;
          size_t after = found + close.size();
          if (after >= html.size() || html[after] == '>' ||
              std::isspace(static_cast<unsigned char>(html[after]))) {
            end = found;
            break;
          }
          search = after;
        }
        raw->raw_end = end;
        raw->text = std::string(html.substr(raw->raw_begin, end - raw->raw_begin));
        pos = end;
        skip_until(">");
        continue;
      }
      stack.push_back(raw);
    }
    (void)saw_html_tag;
    return doc;
  }
};

void serialize_node(const DomNode& node, std::string& out) {
  out += '<';
  out += node.tag;
  for (const auto& [k, v] : node.attrs) {
    out += ' ';
    out += k;
    out += "=\"";
    out += v;
    out += '"';
  }
  out += '>';
  if (!node.text.empty()) out += node.text;
  for (const auto& child : node.children) serialize_node(*child, out);
  if (!is_void_element(node.tag)) {
    out += "</";
    out += node.tag;
    out += '>';
  }
}

}  // namespace

Document parse_html(std::string_view html) { return Parser{html}.run(); }

std::vector<DomNode*> all_elements(const Document& doc) {
  std::vector<DomNode*> out;
  std::vector<DomNode*> stack{doc.root_node()};
  while (!stack.empty()) {
    DomNode* node = stack.back();
    stack.pop_back();
    out.push_back(node);
    for (size_t i = node->children.size(); i-- > 0;) {
      stack.push_back(node->children[i].get());
    }
  }
  return out;
}

std::string serialize(const Document& doc) {
  std::string out;
  serialize_node(*doc.root_node(), out);
  return out;
}

}  // namespace muzeel::dom
