#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "muzeel/driver/session.hpp"

namespace muzeel::driver {

class EndpointUnreachable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NavigationTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CdpOptions {
  int connect_retries = 3;
  int command_timeout_ms = 15000;
  int navigation_timeout_ms = 30000;
};

// Opens a page session against a DevTools-capable browser. |endpoint| is the
// browser's HTTP listing address (http://host:port); the page target's
// WebSocket is taken from /json/list. Listener extraction follows the
// document.evaluate + DOMDebugger.getEventListeners route; dispatch uses the
// Input domain for mouse and key events and composes synthetic events for
// everything else.
std::unique_ptr<PageSession> cdp_load(const std::string& url, const std::string& endpoint,
                                      const CdpOptions& options = {});

}  // namespace muzeel::driver
