#pragma once

#include <optional>
#include <string>
#include <vector>

namespace muzeel::driver {

struct ListenerRecord {
  std::string xpath;
  std::string type;
};

enum class DispatchStatus {
  kDispatched,
  kUnresolved,  // the path matched zero or several nodes, or the page is gone
};

// Session contract between the bot and a page. One backend drives a real
// browser over the DevTools wire protocol; the other is a deterministic
// simulated page for tests. Serialized DOM plus XPath is the only identity
// that survives a reload, so no live node handles cross this boundary.
class PageSession {
 public:
  virtual ~PageSession() = default;

  virtual void load(const std::string& url) = 0;
  virtual void reload() = 0;

  virtual std::string current_url() = 0;
  virtual std::string current_dom() = 0;

  // Per-element listeners plus document/window-level ones attributed to the
  // root element path. Fresh after every reload.
  virtual std::vector<ListenerRecord> listener_dump() = 0;

  virtual DispatchStatus dispatch(const std::string& xpath, const std::string& type) = 0;

  // Console lines since the previous drain; each line is returned exactly
  // once.
  virtual std::vector<std::string> drain_console() = 0;

  // True when the path resolves to exactly one node that is rendered
  // (nonzero box, no display:none/visibility:hidden anywhere up the chain).
  virtual bool is_visible(const std::string& xpath) = 0;

  // XPath of the topmost node at the element's center; the element's own
  // path when that node is the element or one of its descendants; nothing
  // when the element is hidden or unresolvable.
  virtual std::optional<std::string> hit_test(const std::string& xpath) = 0;
};

}  // namespace muzeel::driver
