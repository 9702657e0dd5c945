#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "muzeel/driver/session.hpp"
#include "muzeel/events/event.hpp"
#include "muzeel/js/span.hpp"

namespace muzeel::test {

// Ground truth for discovery tests: a brute-force exploration of all
// (reachable state, event) pairs over the simulated page, written against the
// session primitives only and sharing no code with the production bot.
struct OracleResult {
  using Id = std::pair<std::string, std::string>;  // (type, xpath); ("base","") is the root
  std::set<std::pair<Id, Id>> edges;               // parent -> child
  std::set<js::SpanKey> used;
  std::set<Id> orphans;
};

OracleResult exhaustive_discover(driver::PageSession& session,
                                 const std::vector<events::Event>& events,
                                 const std::string& probe_token);

}  // namespace muzeel::test
