#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

#include "muzeel/driver/session.hpp"
#include "muzeel/events/event.hpp"
#include "muzeel/js/probe.hpp"
#include "muzeel/js/span.hpp"

namespace muzeel::bot {

struct BotConfig {
  std::string probe_token = std::string(js::kDefaultProbeToken);
  int trigger_budget = 10000;  // hard cap on trigger() calls per session
  int settle_ms = 0;           // post-trigger quiescence wait (0 on the sim backend)
  std::string key_payload = "a";
};

enum class TriggerOutcome { kTriggered, kBlocked, kNavigatedAway, kTimeout };

const char* to_string(TriggerOutcome outcome);

struct TriggerRecord {
  events::Event event;
  TriggerOutcome outcome;
  bool replay = false;  // ancestor replay rather than a discovery attempt
};

struct DiscoveryStats {
  int refresh_count = 0;
  int total_triggers = 0;
  std::int64_t duration_ms = 0;
};

struct DiscoveryResult {
  events::DependencyTree tree;
  js::UsedSet used;
  std::vector<TriggerRecord> trigger_log;
  DiscoveryStats stats;
  bool session_lost = false;
  size_t malformed_probe_lines = 0;
};

// The driver died mid-session. Backends throw driver-specific errors; the
// discovery loop converts them into a partial result with session_lost set.
class SessionLostError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(std::string message, DiscoveryResult partial)
      : std::runtime_error(std::move(message)), partial_result(std::move(partial)) {}
  DiscoveryResult partial_result;
};

// True iff the path resolves to exactly one node that is visible and whose
// center hit-tests to itself (not covered by a modal).
bool success_criterion(driver::PageSession& session, const events::Event& event);

// Dispatches the event sequence for the event's type: click types fire three
// times (open, close, reopen), hover becomes a mouseover/mouseout pair.
// Returns kBlocked without dispatching when the success criterion fails.
TriggerOutcome trigger(driver::PageSession& session, const events::Event& event,
                       const BotConfig& config);

// Breadth-first dependency discovery over a loaded instrumented page:
// pops a parent from the queue, replays its full ancestor chain after a
// refresh, attempts every remaining event, and re-replays after each success
// so every attempt sees a clean parent state. Probe output observed at any
// point accumulates into the used set with duplicates discarded.
DiscoveryResult discover(driver::PageSession& session, const std::vector<events::Event>& events,
                         const BotConfig& config = {});

}  // namespace muzeel::bot
