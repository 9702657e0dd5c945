#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace muzeel::events {

// One interactivity event candidate: a (element path, event type) pair from
// the listener dump. doc_order is the element's position in document order
// and fixes the deterministic trigger ordering.
struct Event {
  std::string type;
  std::string xpath;
  int doc_order = 0;

  bool key_equals(const Event& other) const {
    return type == other.type && xpath == other.xpath;
  }
};

// Events the browser fires on its own; they are recorded but never triggered
// by the bot.
bool is_triggerable_type(const std::string& type);

// Click-type events get the open/close/reopen triple fire.
bool is_click_type(const std::string& type);

// One Event per distinct (path, type) pair, duplicates collapsed, input order
// preserved; non-interactive types are kept (callers filter on
// is_triggerable_type).
std::vector<Event> events_from_listeners(
    const std::vector<std::pair<std::string, std::string>>& listeners);

class DetachedEventError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The dependency forest discovered by the bot. Node 0 is the base event: the
// synthetic ancestor of everything, whose trigger is a no-op.
class DependencyTree {
 public:
  static constexpr int kBase = 0;

  struct Node {
    std::string type;   // "base" for the root
    std::string xpath;  // empty for the root
    int parent = -1;
    std::vector<int> children;
  };

  DependencyTree() { nodes_.push_back({"base", "", -1, {}}); }

  int add_child(int parent, const Event& event);
  void add_orphan(const Event& event) { orphans_.push_back(event); }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Event>& orphans() const { return orphans_; }

  // Path root..parent(id), excluding id itself; [] for the base. Throws
  // DetachedEventError for an id outside the tree.
  std::vector<int> ancestor_chain(int id) const;

  // (parent, child) pairs as (type, xpath) identities, base included.
  std::vector<std::pair<std::pair<std::string, std::string>,
                        std::pair<std::string, std::string>>>
  edge_set() const;

  size_t size() const { return nodes_.size(); }

 private:
  std::vector<Node> nodes_;
  std::vector<Event> orphans_;
};

std::string serialize_tree(const DependencyTree& tree);
DependencyTree parse_tree(const std::string& serialized);

}  // namespace muzeel::events
