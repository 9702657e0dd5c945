#include "muzeel/events/event.hpp"

#include <array>
#include <set>

#include <nlohmann/json.hpp>

namespace muzeel::events {

bool is_triggerable_type(const std::string& type) {
  static const std::array<std::string, 9> kImplicit = {
      "load",       "domcontentloaded", "unload",   "beforeunload", "error",
      "readystatechange", "pageshow",   "pagehide", "visibilitychange"};
  for (const auto& t : kImplicit) {
    if (type == t) return false;
  }
  return true;
}

bool is_click_type(const std::string& type) { return type == "click" || type == "dblclick"; }

std::vector<Event> events_from_listeners(
    const std::vector<std::pair<std::string, std::string>>& listeners) {
  std::vector<Event> out;
  std::set<std::pair<std::string, std::string>> seen;
  int order = 0;
  for (const auto& [xpath, type] : listeners) {
    if (!seen.insert({xpath, type}).second) continue;
    out.push_back({type, xpath, order++});
  }
  return out;
}

int DependencyTree::add_child(int parent, const Event& event) {
  if (parent < 0 || parent >= static_cast<int>(nodes_.size())) {
    throw DetachedEventError("parent id out of range");
  }
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back({event.type, event.xpath, parent, {}});
  nodes_[parent].children.push_back(id);
  return id;
}

std::vector<int> DependencyTree::ancestor_chain(int id) const {
  if (id < 0 || id >= static_cast<int>(nodes_.size())) {
    throw DetachedEventError("event id out of range");
  }
  std::vector<int> chain;
  int cur = nodes_[id].parent;
  while (cur != -1) {
    chain.push_back(cur);
    if (chain.size() > nodes_.size()) {
      throw DetachedEventError("cycle in dependency tree");
    }
    cur = nodes_[cur].parent;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::vector<std::pair<std::pair<std::string, std::string>,
                      std::pair<std::string, std::string>>>
DependencyTree::edge_set() const {
  std::vector<std::pair<std::pair<std::string, std::string>,
                        std::pair<std::string, std::string>>>
      edges;
  for (size_t i = 1; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    const Node& p = nodes_[n.parent];
    edges.push_back({{p.type, p.xpath}, {n.type, n.xpath}});
  }
  return edges;
}

std::string serialize_tree(const DependencyTree& tree) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["nodes"] = nlohmann::json::array();
  for (size_t i = 0; i < tree.nodes().size(); ++i) {
    const auto& n = tree.nodes()[i];
    nlohmann::json node;
    node["id"] = i;
    node["type"] = n.type;
    node["xpath"] = n.xpath;
    if (n.parent >= 0) {
      node["parent"] = n.parent;
    } else {
      node["parent"] = nullptr;
    }
    node["children"] = n.children;
    j["nodes"].push_back(node);
  }
  j["orphans"] = nlohmann::json::array();
  for (const auto& o : tree.orphans()) {
    j["orphans"].push_back({{"type", o.type}, {"xpath", o.xpath}});
  }
  return j.dump(1);
}

DependencyTree parse_tree(const std::string& serialized) {
  nlohmann::json j = nlohmann::json::parse(serialized);
  DependencyTree tree;
  const auto& nodes = j.at("nodes");
  // Children ids always exceed parent ids (BFS construction), so a single
  // ordered pass rebuilds the arena.
  for (const auto& node : nodes) {
    int id = node.at("id").get<int>();
    if (id == 0) continue;
    Event e{node.at("type").get<std::string>(), node.at("xpath").get<std::string>(), 0};
    int parent = node.at("parent").get<int>();
    int got = tree.add_child(parent, e);
    if (got != id) {
      throw DetachedEventError("node ids are not in construction order");
    }
  }
  for (const auto& o : j.at("orphans")) {
    tree.add_orphan({o.at("type").get<std::string>(), o.at("xpath").get<std::string>(), 0});
  }
  return tree;
}

}  // namespace muzeel::events
