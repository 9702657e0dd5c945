#include "muzeel/driver/sim_page.hpp"

#include <nlohmann/json.hpp>

namespace muzeel::driver {

using nlohmann::json;

namespace {

SimPageScript::Effect effect_from_json(const json& j);

std::vector<SimPageScript::Effect> effects_from_json(const json& arr) {
  std::vector<SimPageScript::Effect> out;
  for (const auto& e : arr) out.push_back(effect_from_json(e));
  return out;
}

SimPageScript::Effect effect_from_json(const json& j) {
  SimPageScript::Effect e;
  e.op = j.at("op").get<std::string>();
  if (j.contains("targets")) e.targets = j["targets"].get<std::vector<std::string>>();
  if (j.contains("modal")) e.modal = j["modal"].get<std::string>();
  if (j.contains("covers")) e.covers = j["covers"].get<std::vector<std::string>>();
  if (j.contains("key")) e.key = j["key"].get<std::string>();
  if (j.contains("open")) {
    const auto& o = j["open"];
    if (o.contains("effects")) e.open_effects = effects_from_json(o["effects"]);
    if (o.contains("logs")) e.open_logs = o["logs"].get<std::vector<std::string>>();
  }
  if (j.contains("close")) {
    const auto& c = j["close"];
    if (c.contains("effects")) e.close_effects = effects_from_json(c["effects"]);
    if (c.contains("logs")) e.close_logs = c["logs"].get<std::vector<std::string>>();
  }
  if (j.contains("url")) e.url = j["url"].get<std::string>();
  if (j.contains("element")) e.element = j["element"].get<std::string>();
  if (j.contains("type")) e.type = j["type"].get<std::string>();
  if (j.contains("handler")) e.handler = j["handler"].get<std::string>();
  return e;
}

json effect_to_json(const SimPageScript::Effect& e);

json effects_to_json(const std::vector<SimPageScript::Effect>& effects) {
  json arr = json::array();
  for (const auto& e : effects) arr.push_back(effect_to_json(e));
  return arr;
}

json effect_to_json(const SimPageScript::Effect& e) {
  json j;
  j["op"] = e.op;
  if (!e.targets.empty()) j["targets"] = e.targets;
  if (!e.modal.empty()) j["modal"] = e.modal;
  if (!e.covers.empty()) j["covers"] = e.covers;
  if (!e.key.empty()) j["key"] = e.key;
  if (!e.open_effects.empty() || !e.open_logs.empty()) {
    json o;
    if (!e.open_effects.empty()) o["effects"] = effects_to_json(e.open_effects);
    if (!e.open_logs.empty()) o["logs"] = e.open_logs;
    j["open"] = o;
  }
  if (!e.close_effects.empty() || !e.close_logs.empty()) {
    json c;
    if (!e.close_effects.empty()) c["effects"] = effects_to_json(e.close_effects);
    if (!e.close_logs.empty()) c["logs"] = e.close_logs;
    j["close"] = c;
  }
  if (!e.url.empty()) j["url"] = e.url;
  if (!e.element.empty()) j["element"] = e.element;
  if (!e.type.empty()) j["type"] = e.type;
  if (!e.handler.empty()) j["handler"] = e.handler;
  return j;
}

}  // namespace

SimPageScript SimPageScript::from_json(const std::string& text) {
  json j = json::parse(text);
  SimPageScript s;
  if (j.contains("url")) s.url = j["url"].get<std::string>();
  for (const auto& e : j.value("elements", json::array())) {
    Element el;
    el.name = e.at("name").get<std::string>();
    el.tag = e.value("tag", "div");
    el.id = e.value("id", "");
    el.klass = e.value("class", "");
    el.visible = e.value("visible", true);
    el.parent = e.value("parent", "");
    s.elements.push_back(el);
  }
  const json handlers = j.value("handlers", json::object());
  for (auto it = handlers.begin(); it != handlers.end(); ++it) {
    Handler h;
    h.logs = it.value().value("logs", std::vector<std::string>{});
    if (it.value().contains("effects")) h.effects = effects_from_json(it.value()["effects"]);
    s.handlers[it.key()] = h;
  }
  for (const auto& l : j.value("listeners", json::array())) {
    s.listeners.push_back({l.at("element").get<std::string>(), l.at("type").get<std::string>(),
                           l.at("handler").get<std::string>()});
  }
  s.load_handlers = j.value("load", std::vector<std::string>{});
  return s;
}

std::string SimPageScript::to_json() const {
  json j;
  j["url"] = url;
  j["elements"] = json::array();
  for (const auto& e : elements) {
    json el;
    el["name"] = e.name;
    el["tag"] = e.tag;
    if (!e.id.empty()) el["id"] = e.id;
    if (!e.klass.empty()) el["class"] = e.klass;
    el["visible"] = e.visible;
    if (!e.parent.empty()) el["parent"] = e.parent;
    j["elements"].push_back(el);
  }
  j["handlers"] = json::object();
  for (const auto& [name, h] : handlers) {
    json hj;
    if (!h.logs.empty()) hj["logs"] = h.logs;
    if (!h.effects.empty()) hj["effects"] = effects_to_json(h.effects);
    j["handlers"][name] = hj;
  }
  j["listeners"] = json::array();
  for (const auto& l : listeners) {
    j["listeners"].push_back({{"element", l.element}, {"type", l.type}, {"handler", l.handler}});
  }
  if (!load_handlers.empty()) j["load"] = load_handlers;
  return j.dump(1);
}

namespace {

void validate_effect(const SimPageScript& script, const SimPageScript::Effect& e,
                     const std::set<std::string>& names) {
  auto need_elements = [&](const std::vector<std::string>& targets) {
    for (const auto& t : targets) {
      if (!names.count(t)) {
        throw ScriptValidationError("effect references unknown element '" + t + "'");
      }
    }
  };
  if (e.op == "reveal" || e.op == "hide") {
    need_elements(e.targets);
  } else if (e.op == "open_modal") {
    need_elements({e.modal});
    need_elements(e.covers);
  } else if (e.op == "close_modal") {
    // nothing to check
  } else if (e.op == "toggle") {
    if (e.key.empty()) throw ScriptValidationError("toggle effect needs a key");
    for (const auto& sub : e.open_effects) validate_effect(script, sub, names);
    for (const auto& sub : e.close_effects) validate_effect(script, sub, names);
  } else if (e.op == "navigate") {
    if (e.url.empty()) throw ScriptValidationError("navigate effect needs a url");
  } else if (e.op == "add_listener") {
    need_elements({e.element});
    if (!script.handlers.count(e.handler)) {
      throw ScriptValidationError("add_listener references unknown handler '" + e.handler + "'");
    }
  } else {
    throw ScriptValidationError("unknown effect op '" + e.op + "'");
  }
}

}  // namespace

SimSession::SimSession(SimPageScript script, std::string probe_token)
    : script_(std::move(script)), probe_token_(std::move(probe_token)) {
  std::set<std::string> names;
  for (const auto& e : script_.elements) {
    if (e.name.empty()) throw ScriptValidationError("element without a name");
    if (!names.insert(e.name).second) {
      throw ScriptValidationError("duplicate element name '" + e.name + "'");
    }
  }
  for (const auto& e : script_.elements) {
    if (!e.parent.empty() && !names.count(e.parent)) {
      throw ScriptValidationError("element '" + e.name + "' has unknown parent '" + e.parent +
                                  "'");
    }
  }
  for (const auto& l : script_.listeners) {
    if (!names.count(l.element)) {
      throw ScriptValidationError("listener on unknown element '" + l.element + "'");
    }
    if (!script_.handlers.count(l.handler)) {
      throw ScriptValidationError("listener references unknown handler '" + l.handler + "'");
    }
  }
  for (const auto& h : script_.load_handlers) {
    if (!script_.handlers.count(h)) {
      throw ScriptValidationError("load references unknown handler '" + h + "'");
    }
  }
  for (const auto& [name, h] : script_.handlers) {
    for (const auto& e : h.effects) validate_effect(script_, e, names);
  }

  // Build the document: html > body > declared elements. Construction order
  // follows the declaration list, so document order is deterministic.
  doc_.root = std::make_unique<dom::DomNode>();
  doc_.root->tag = "html";
  doc_.root->is_document_root = true;
  auto body = std::make_unique<dom::DomNode>();
  body->tag = "body";
  body->parent = doc_.root.get();
  dom::DomNode* body_ptr = body.get();
  doc_.root->children.push_back(std::move(body));

  for (const auto& e : script_.elements) {
    dom::DomNode* parent = e.parent.empty() ? body_ptr : node_by_name_.at(e.parent);
    auto node = std::make_unique<dom::DomNode>();
    node->tag = e.tag;
    if (!e.id.empty()) node->attrs.emplace_back("id", e.id);
    if (!e.klass.empty()) node->attrs.emplace_back("class", e.klass);
    node->parent = parent;
    node_by_name_[e.name] = node.get();
    name_by_node_[node.get()] = e.name;
    parent->children.push_back(std::move(node));
  }
  for (const auto& [name, node] : node_by_name_) {
    xpath_by_name_[name] = dom::build_xpath(*node).xpath;
  }

  reset_state();
}

void SimSession::reset_state() {
  visible_.clear();
  for (const auto& e : script_.elements) visible_[e.name] = e.visible;
  modal_stack_.clear();
  toggle_state_.clear();
  dynamic_listeners_.clear();
  url_ = script_.url;
  away_ = false;
  for (const auto& h : script_.load_handlers) fire_handler(h);
}

void SimSession::load(const std::string& url) {
  (void)url;
  reset_state();
}

void SimSession::reload() { reset_state(); }

std::string SimSession::current_dom() {
  if (away_) return "";
  return dom::serialize(doc_);
}

std::vector<ListenerRecord> SimSession::listener_dump() {
  std::vector<ListenerRecord> out;
  if (away_) return out;
  // Document order over elements, declaration order within an element.
  for (const auto& e : script_.elements) {
    for (const auto& l : script_.listeners) {
      if (l.element == e.name) out.push_back({xpath_by_name_[e.name], l.type});
    }
    for (const auto& l : dynamic_listeners_) {
      if (l.element == e.name) out.push_back({xpath_by_name_[e.name], l.type});
    }
  }
  return out;
}

void SimSession::log_payloads(const std::vector<std::string>& payloads) {
  for (const auto& p : payloads) console_.push_back(probe_token_ + p);
}

void SimSession::fire_handler(const std::string& name) {
  const auto& handler = script_.handlers.at(name);
  log_payloads(handler.logs);
  for (const auto& e : handler.effects) apply_effect(e);
}

void SimSession::apply_effect(const SimPageScript::Effect& effect) {
  if (effect.op == "reveal") {
    for (const auto& t : effect.targets) visible_[t] = true;
  } else if (effect.op == "hide") {
    for (const auto& t : effect.targets) visible_[t] = false;
  } else if (effect.op == "open_modal") {
    visible_[effect.modal] = true;
    modal_stack_.push_back({effect.modal, {effect.covers.begin(), effect.covers.end()}});
  } else if (effect.op == "close_modal") {
    if (!modal_stack_.empty()) {
      visible_[modal_stack_.back().modal] = false;
      modal_stack_.pop_back();
    }
  } else if (effect.op == "toggle") {
    bool& state = toggle_state_[effect.key];
    state = !state;
    if (state) {
      log_payloads(effect.open_logs);
      for (const auto& sub : effect.open_effects) apply_effect(sub);
    } else {
      log_payloads(effect.close_logs);
      for (const auto& sub : effect.close_effects) apply_effect(sub);
    }
  } else if (effect.op == "navigate") {
    url_ = effect.url;
    away_ = true;
  } else if (effect.op == "add_listener") {
    for (const auto& l : dynamic_listeners_) {
      if (l.element == effect.element && l.type == effect.type && l.handler == effect.handler) {
        return;  // already registered
      }
    }
    dynamic_listeners_.push_back({effect.element, effect.type, effect.handler});
  }
}

const dom::DomNode* SimSession::resolve_unique(const std::string& xpath) const {
  if (away_) return nullptr;
  auto matches = dom::resolve_xpath(doc_, dom::ElementPath{xpath});
  if (matches.size() != 1) return nullptr;
  return matches[0];
}

bool SimSession::effectively_visible(const dom::DomNode* node) const {
  for (const dom::DomNode* cur = node; cur; cur = cur->parent) {
    auto it = name_by_node_.find(cur);
    if (it != name_by_node_.end()) {
      auto vis = visible_.find(it->second);
      if (vis != visible_.end() && !vis->second) return false;
    }
  }
  return true;
}

DispatchStatus SimSession::dispatch(const std::string& xpath, const std::string& type) {
  const dom::DomNode* node = resolve_unique(xpath);
  if (!node) return DispatchStatus::kUnresolved;
  auto it = name_by_node_.find(node);
  if (it == name_by_node_.end()) return DispatchStatus::kDispatched;  // html/body: no listeners
  const std::string& name = it->second;
  // Snapshot the listener list: a handler may add listeners while firing.
  std::vector<std::string> to_fire;
  for (const auto& l : script_.listeners) {
    if (l.element == name && l.type == type) to_fire.push_back(l.handler);
  }
  for (const auto& l : dynamic_listeners_) {
    if (l.element == name && l.type == type) to_fire.push_back(l.handler);
  }
  for (const auto& h : to_fire) {
    fire_handler(h);
    if (away_) break;
  }
  return DispatchStatus::kDispatched;
}

std::vector<std::string> SimSession::drain_console() {
  std::vector<std::string> out;
  out.swap(console_);
  return out;
}

bool SimSession::is_visible(const std::string& xpath) {
  const dom::DomNode* node = resolve_unique(xpath);
  return node && effectively_visible(node);
}

std::optional<std::string> SimSession::hit_test(const std::string& xpath) {
  const dom::DomNode* node = resolve_unique(xpath);
  if (!node || !effectively_visible(node)) return std::nullopt;
  auto it = name_by_node_.find(node);
  if (it != name_by_node_.end()) {
    const std::string& name = it->second;
    // The most recently opened modal wins; a covered element's center hits
    // the modal unless the element sits inside that modal.
    for (auto layer = modal_stack_.rbegin(); layer != modal_stack_.rend(); ++layer) {
      if (!layer->covers.count(name)) continue;
      const dom::DomNode* modal_node = node_by_name_.at(layer->modal);
      for (const dom::DomNode* cur = node; cur; cur = cur->parent) {
        if (cur == modal_node) return xpath;  // inside the modal itself
      }
      return xpath_by_name_.at(layer->modal);
    }
  }
  return xpath;
}

std::unique_ptr<SimSession> sim_load(const SimPageScript& script,
                                     const std::string& probe_token) {
  return std::make_unique<SimSession>(script, probe_token);
}

}  // namespace muzeel::driver
