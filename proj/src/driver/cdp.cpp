#include "muzeel/driver/cdp.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <thread>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "muzeel/dom/dom.hpp"
#include "muzeel/dom/xpath.hpp"

namespace muzeel::driver {

namespace {

using nlohmann::json;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = boost::asio::ip::tcp;

struct WsUrl {
  std::string host;
  std::string port;
  std::string target;
};

WsUrl parse_ws_url(const std::string& url) {
  // ws://host:port/path
  size_t scheme = url.find("://");
  if (scheme == std::string::npos) throw ProtocolError("bad websocket url " + url);
  size_t host_start = scheme + 3;
  size_t path_start = url.find('/', host_start);
  std::string authority = url.substr(host_start, path_start - host_start);
  WsUrl out;
  size_t colon = authority.rfind(':');
  if (colon == std::string::npos) {
    out.host = authority;
    out.port = "80";
  } else {
    out.host = authority.substr(0, colon);
    out.port = authority.substr(colon + 1);
  }
  out.target = path_start == std::string::npos ? "/" : url.substr(path_start);
  return out;
}

// In-page helper injected once per evaluation: resolves our restricted XPath
// grammar and rebuilds the hybrid xpath for arbitrary nodes, mirroring the
// native builder so both backends name elements identically.
constexpr const char* kPageHelpers = R"JS(
(function () {
  if (window.__mzl) return;
  function resolve(xp) {
    var r = document.evaluate(xp, document, null, XPathResult.ORDERED_NODE_SNAPSHOT_TYPE, null);
    var out = [];
    for (var i = 0; i < r.snapshotLength; i++) out.push(r.snapshotItem(i));
    return out;
  }
  function idCount(v) {
    var n = 0, all = document.getElementsByTagName('*');
    for (var i = 0; i < all.length; i++) if (all[i].getAttribute && all[i].getAttribute('id') === v) n++;
    return n;
  }
  function posSteps(stop, node) {
    var steps = [];
    for (var cur = node; cur && cur !== stop; cur = cur.parentElement) {
      var k = 1;
      for (var sib = cur.previousElementSibling; sib; sib = sib.previousElementSibling)
        if (sib.tagName === cur.tagName) k++;
      steps.unshift(cur.tagName.toLowerCase() + '[' + k + ']');
    }
    return steps.length ? '/' + steps.join('/') : '';
  }
  function build(node) {
    if (!node || node.nodeType !== 1) return null;
    var root = document.documentElement;
    function anchor(n) {
      var id = n.getAttribute && n.getAttribute('id');
      if (id) {
        if (idCount(id) === 1 && id.indexOf('"') < 0)
          return '//' + n.tagName.toLowerCase() + '[@id = "' + id + '"]';
        return '';
      }
      var cls = n.getAttribute && n.getAttribute('class');
      if (cls && cls.indexOf('"') < 0)
        return '//' + n.tagName.toLowerCase() + '[@class = "' + cls + '"]';
      return '';
    }
    function rootAbs(n) { return '/' + root.tagName.toLowerCase() + '[1]' + posSteps(root, n); }
    if (node.hasAttribute && node.hasAttribute('id')) {
      var a = anchor(node);
      return a || rootAbs(node);
    }
    if (node.hasAttribute && node.hasAttribute('class')) {
      var a2 = anchor(node);
      if (a2) return a2;
    }
    for (var cur = node.parentElement; cur; cur = cur.parentElement) {
      if (cur.hasAttribute('id') || cur.hasAttribute('class')) {
        var a3 = anchor(cur);
        if (!a3) break;
        return a3 + posSteps(cur, node);
      }
    }
    return rootAbs(node);
  }
  function visible(node) {
    for (var cur = node; cur; cur = cur.parentElement) {
      var st = getComputedStyle(cur);
      if (st.display === 'none' || st.visibility === 'hidden') return false;
    }
    var r = node.getBoundingClientRect();
    return r.width > 0 && r.height > 0;
  }
  window.__mzl = { resolve: resolve, build: build, visible: visible };
})();
)JS";

class CdpSession : public PageSession {
 public:
  CdpSession(const std::string& url, const std::string& endpoint, const CdpOptions& options)
      : options_(options), ws_(ioc_) {
    connect(endpoint);
    command("Runtime.enable", json::object());
    command("Page.enable", json::object());
    command("DOM.enable", json::object());
    load(url);
  }

  ~CdpSession() override {
    stop_ = true;
    beast::error_code ec;
    ws_.close(websocket::close_code::normal, ec);
    if (reader_.joinable()) reader_.join();
  }

  void load(const std::string& url) override {
    home_url_ = url;
    navigate(url);
  }

  void reload() override { navigate(home_url_); }

  std::string current_url() override {
    auto value = eval("location.href");
    return value.is_string() ? value.get<std::string>() : "";
  }

  std::string current_dom() override {
    auto value = eval("document.documentElement.outerHTML");
    return value.is_string() ? value.get<std::string>() : "";
  }

  std::vector<ListenerRecord> listener_dump() override {
    std::vector<ListenerRecord> out;
    auto doc = dom::parse_html(current_dom());
    // Window/document-level listeners go to the root element's path.
    std::string root_path = dom::build_xpath(*doc.root_node()).xpath;
    for (const auto& expr : {"window", "document"}) {
      for (const auto& type : object_listener_types(expr)) {
        out.push_back({root_path, type});
      }
    }
    for (auto& [node, path] : dom::enumerate_elements(doc)) {
      std::string js = std::string("__mzl.resolve(") + json(path.xpath).dump() +
                       ").length === 1 ? __mzl.resolve(" + json(path.xpath).dump() +
                       ")[0] : null";
      for (const auto& type : expression_listener_types(js)) {
        out.push_back({path.xpath, type});
      }
    }
    return out;
  }

  DispatchStatus dispatch(const std::string& xpath, const std::string& type) override {
    auto center = element_center(xpath);
    if (!center) return DispatchStatus::kUnresolved;
    auto [x, y] = *center;
    if (type == "click" || type == "dblclick" || type == "mousedown" || type == "mouseup") {
      int clicks = type == "dblclick" ? 2 : 1;
      if (type != "mouseup") mouse_event("mousePressed", x, y, clicks);
      if (type != "mousedown") mouse_event("mouseReleased", x, y, clicks);
    } else if (type == "mouseover" || type == "mousemove") {
      mouse_event("mouseMoved", x, y, 0);
    } else if (type == "mouseout" || type == "hover") {
      // Move onto the element, then an offset away.
      mouse_event("mouseMoved", x, y, 0);
      mouse_event("mouseMoved", 0, 0, 0);
    } else if (type == "keydown" || type == "keyup" || type == "keypress") {
      focus(xpath);
      json down{{"type", "keyDown"}, {"text", key_payload_}, {"key", key_payload_}};
      json up{{"type", "keyUp"}, {"key", key_payload_}};
      command("Input.dispatchKeyEvent", down);
      command("Input.dispatchKeyEvent", up);
    } else {
      // Synthetic event for types the Input domain does not model.
      std::string js = "(function(){var n=__mzl.resolve(" + json(xpath).dump() +
                       ");if(n.length!==1)return false;n[0].dispatchEvent(new Event(" +
                       json(type).dump() + ",{bubbles:true,cancelable:true}));return true;})()";
      auto ok = eval(js);
      if (!ok.is_boolean() || !ok.get<bool>()) return DispatchStatus::kUnresolved;
    }
    return DispatchStatus::kDispatched;
  }

  std::vector<std::string> drain_console() override {
    std::lock_guard<std::mutex> lock(mutex_);
    std::vector<std::string> out;
    out.swap(console_);
    return out;
  }

  bool is_visible(const std::string& xpath) override {
    std::string js = "(function(){var n=__mzl.resolve(" + json(xpath).dump() +
                     ");return n.length===1 && __mzl.visible(n[0]);})()";
    auto value = eval(js);
    return value.is_boolean() && value.get<bool>();
  }

  std::optional<std::string> hit_test(const std::string& xpath) override {
    std::string js =
        "(function(){var n=__mzl.resolve(" + json(xpath).dump() +
        ");if(n.length!==1||!__mzl.visible(n[0]))return null;"
        "var r=n[0].getBoundingClientRect();"
        "var top=document.elementFromPoint(r.left+r.width/2,r.top+r.height/2);"
        "if(!top)return null;"
        "if(top===n[0]||n[0].contains(top))return " + json(xpath).dump() + ";"
        "return __mzl.build(top);})()";
    auto value = eval(js);
    if (value.is_string()) return value.get<std::string>();
    return std::nullopt;
  }

 private:
  void connect(const std::string& endpoint) {
    std::string err;
    for (int attempt = 0; attempt < options_.connect_retries; ++attempt) {
      try {
        httplib::Client http(endpoint);
        http.set_connection_timeout(0, 2000 * 1000);
        auto res = http.Get("/json/list");
        if (!res || res->status != 200) {
          err = res ? "status " + std::to_string(res->status) : httplib::to_string(res.error());
          continue;
        }
        json targets = json::parse(res->body);
        std::string ws_url;
        for (const auto& t : targets) {
          if (t.value("type", "") == "page" && t.contains("webSocketDebuggerUrl")) {
            ws_url = t["webSocketDebuggerUrl"].get<std::string>();
            break;
          }
        }
        if (ws_url.empty()) {
          err = "no page target";
          continue;
        }
        WsUrl parts = parse_ws_url(ws_url);
        tcp::resolver resolver(ioc_);
        auto const results = resolver.resolve(parts.host, parts.port);
        boost::asio::connect(ws_.next_layer(), results.begin(), results.end());
        ws_.set_option(websocket::stream_base::decorator([](websocket::request_type& req) {
          req.set(beast::http::field::user_agent, "muzeel");
        }));
        ws_.handshake(parts.host + ":" + parts.port, parts.target);
        ws_.read_message_max(64 * 1024 * 1024);
        reader_ = std::thread([this] { read_loop(); });
        return;
      } catch (const std::exception& e) {
        err = e.what();
      }
    }
    throw EndpointUnreachable("cannot reach DevTools endpoint " + endpoint + ": " + err);
  }

  void read_loop() {
    try {
      while (!stop_) {
        beast::flat_buffer buffer;
        ws_.read(buffer);
        auto text = beast::buffers_to_string(buffer.data());
        json message = json::parse(text, nullptr, false);
        if (message.is_discarded()) continue;
        std::lock_guard<std::mutex> lock(mutex_);
        if (message.contains("id")) {
          responses_[message["id"].get<int>()] = message;
          response_ready_.notify_all();
        } else if (message.value("method", "") == "Runtime.consoleAPICalled") {
          const auto& args = message["params"]["args"];
          if (!args.empty() && args[0].value("type", "") == "string") {
            console_.push_back(args[0].value("value", ""));
          }
        } else if (message.value("method", "") == "Page.loadEventFired") {
          ++loads_seen_;
          response_ready_.notify_all();
        }
      }
    } catch (const std::exception&) {
      std::lock_guard<std::mutex> lock(mutex_);
      dead_ = true;
      response_ready_.notify_all();
    }
  }

  json command(const std::string& method, json params) {
    int id = next_id_++;
    json message{{"id", id}, {"method", method}, {"params", std::move(params)}};
    {
      std::lock_guard<std::mutex> lock(write_mutex_);
      ws_.write(boost::asio::buffer(message.dump()));
    }
    std::unique_lock<std::mutex> lock(mutex_);
    bool got = response_ready_.wait_for(
        lock, std::chrono::milliseconds(options_.command_timeout_ms),
        [&] { return dead_ || responses_.count(id) > 0; });
    if (dead_) throw ProtocolError("DevTools connection lost");
    if (!got) throw ProtocolError("timeout waiting for " + method);
    json response = std::move(responses_[id]);
    responses_.erase(id);
    if (response.contains("error")) {
      throw ProtocolError(method + " failed: " + response["error"].dump());
    }
    return response.value("result", json::object());
  }

  void navigate(const std::string& url) {
    int loads_before;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      loads_before = loads_seen_;
    }
    command("Page.navigate", json{{"url", url}});
    std::unique_lock<std::mutex> lock(mutex_);
    bool loaded = response_ready_.wait_for(
        lock, std::chrono::milliseconds(options_.navigation_timeout_ms),
        [&] { return dead_ || loads_seen_ > loads_before; });
    if (dead_) throw ProtocolError("DevTools connection lost");
    if (!loaded) throw NavigationTimeout("no load event for " + url);
  }

  // Evaluates an expression with the helpers installed; returns the value.
  json eval(const std::string& expression) {
    ensure_helpers();
    json params{{"expression", expression}, {"returnByValue", true}};
    auto result = command("Runtime.evaluate", params);
    if (result.contains("exceptionDetails")) {
      return json();
    }
    return result.value("result", json::object()).value("value", json());
  }

  void ensure_helpers() {
    json params{{"expression", std::string(kPageHelpers)}, {"returnByValue", false}};
    command("Runtime.evaluate", params);
  }

  std::vector<std::string> object_listener_types(const std::string& expression) {
    return listener_types_for(json{{"expression", expression}, {"objectGroup", "mzl"}});
  }

  std::vector<std::string> expression_listener_types(const std::string& expression) {
    ensure_helpers();
    return listener_types_for(json{{"expression", expression}, {"objectGroup", "mzl"}});
  }

  std::vector<std::string> listener_types_for(json evaluate_params) {
    std::vector<std::string> types;
    auto result = command("Runtime.evaluate", std::move(evaluate_params));
    auto object = result.value("result", json::object());
    if (!object.contains("objectId")) return types;
    std::string object_id = object["objectId"].get<std::string>();
    auto listeners =
        command("DOMDebugger.getEventListeners", json{{"objectId", object_id}});
    for (const auto& l : listeners.value("listeners", json::array())) {
      types.push_back(l.value("type", ""));
    }
    command("Runtime.releaseObjectGroup", json{{"objectGroup", "mzl"}});
    return types;
  }

  std::optional<std::pair<double, double>> element_center(const std::string& xpath) {
    std::string js = "(function(){var n=__mzl.resolve(" + json(xpath).dump() +
                     ");if(n.length!==1)return null;var r=n[0].getBoundingClientRect();"
                     "return [r.left+r.width/2, r.top+r.height/2];})()";
    auto value = eval(js);
    if (!value.is_array() || value.size() != 2) return std::nullopt;
    return std::make_pair(value[0].get<double>(), value[1].get<double>());
  }

  void mouse_event(const std::string& type, double x, double y, int click_count) {
    json params{{"type", type}, {"x", x}, {"y", y}, {"button", "left"}};
    if (click_count > 0) params["clickCount"] = click_count;
    command("Input.dispatchMouseEvent", params);
  }

  void focus(const std::string& xpath) {
    eval("(function(){var n=__mzl.resolve(" + json(xpath).dump() +
         ");if(n.length===1)n[0].focus();})()");
  }

  CdpOptions options_;
  boost::asio::io_context ioc_;
  websocket::stream<tcp::socket> ws_;
  std::thread reader_;
  std::atomic<bool> stop_{false};

  std::mutex write_mutex_;
  std::mutex mutex_;
  std::condition_variable response_ready_;
  std::map<int, json> responses_;
  std::vector<std::string> console_;
  int loads_seen_ = 0;
  bool dead_ = false;
  int next_id_ = 1;

  std::string home_url_;
  std::string key_payload_ = "a";
};

}  // namespace

std::unique_ptr<PageSession> cdp_load(const std::string& url, const std::string& endpoint,
                                      const CdpOptions& options) {
  return std::make_unique<CdpSession>(url, endpoint, options);
}

}  // namespace muzeel::driver
