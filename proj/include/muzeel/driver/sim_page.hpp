#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "muzeel/dom/dom.hpp"
#include "muzeel/dom/xpath.hpp"
#include "muzeel/driver/session.hpp"

namespace muzeel::driver {

class ScriptValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Declarative description of a simulated page: elements with initial
// visibility, listeners bound to named handlers, and deterministic handler
// effects (reveal/hide, modal open/close, toggles, navigation, dynamically
// added listeners). Handlers "log" function-span payloads the way an
// instrumented page would.
struct SimPageScript {
  struct Element {
    std::string name;
    std::string tag = "div";
    std::string id;      // optional
    std::string klass;   // optional
    bool visible = true;
    std::string parent;  // element name; empty = body
  };

  struct Effect {
    std::string op;  // reveal hide open_modal close_modal toggle navigate add_listener
    std::vector<std::string> targets;        // reveal/hide
    std::string modal;                       // open_modal
    std::vector<std::string> covers;         // open_modal
    std::string key;                         // toggle
    std::vector<Effect> open_effects;        // toggle
    std::vector<std::string> open_logs;      // toggle
    std::vector<Effect> close_effects;       // toggle
    std::vector<std::string> close_logs;     // toggle
    std::string url;                         // navigate
    std::string element;                     // add_listener
    std::string type;                        // add_listener
    std::string handler;                     // add_listener
  };

  struct Handler {
    std::vector<std::string> logs;  // span payloads, logged on every fire
    std::vector<Effect> effects;
  };

  struct Listener {
    std::string element;
    std::string type;
    std::string handler;
  };

  std::string url = "http://page.local/";
  std::vector<Element> elements;
  std::map<std::string, Handler> handlers;
  std::vector<Listener> listeners;
  std::vector<std::string> load_handlers;

  static SimPageScript from_json(const std::string& text);
  std::string to_json() const;
};

// Deterministic in-memory PageSession over a SimPageScript. Validates the
// script on construction (ScriptValidationError). Console lines carry
// probe_token-prefixed payloads, mirroring an instrumented page.
class SimSession : public PageSession {
 public:
  SimSession(SimPageScript script, std::string probe_token);

  void load(const std::string& url) override;
  void reload() override;
  std::string current_url() override { return url_; }
  std::string current_dom() override;
  std::vector<ListenerRecord> listener_dump() override;
  DispatchStatus dispatch(const std::string& xpath, const std::string& type) override;
  std::vector<std::string> drain_console() override;
  bool is_visible(const std::string& xpath) override;
  std::optional<std::string> hit_test(const std::string& xpath) override;

  const std::string& origin_url() const { return script_.url; }
  const SimPageScript& script() const { return script_; }

 private:
  struct ModalLayer {
    std::string modal;
    std::set<std::string> covers;
  };

  void reset_state();
  void fire_handler(const std::string& name);
  void apply_effect(const SimPageScript::Effect& effect);
  void log_payloads(const std::vector<std::string>& payloads);
  const dom::DomNode* resolve_unique(const std::string& xpath) const;
  bool effectively_visible(const dom::DomNode* node) const;

  SimPageScript script_;
  std::string probe_token_;

  dom::Document doc_;
  std::map<std::string, dom::DomNode*> node_by_name_;
  std::map<const dom::DomNode*, std::string> name_by_node_;
  std::map<std::string, std::string> xpath_by_name_;

  std::map<std::string, bool> visible_;
  std::vector<ModalLayer> modal_stack_;
  std::map<std::string, bool> toggle_state_;
  std::vector<SimPageScript::Listener> dynamic_listeners_;
  std::vector<std::string> console_;
  std::string url_;
  bool away_ = false;  // navigated off the origin
};

std::unique_ptr<SimSession> sim_load(const SimPageScript& script,
                                     const std::string& probe_token);

}  // namespace muzeel::driver
