#include "muzeel/bot/discovery.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <thread>

namespace muzeel::bot {

namespace {

std::string origin_of(const std::string& url) {
  // scheme://host[:port]
  size_t scheme = url.find("://");
  if (scheme == std::string::npos) return url;
  size_t path = url.find('/', scheme + 3);
  return path == std::string::npos ? url : url.substr(0, path);
}

void settle(const BotConfig& config) {
  if (config.settle_ms > 0) {
    std::this_thread::sleep_for(std::chrono::milliseconds(config.settle_ms));
  }
}

}  // namespace

const char* to_string(TriggerOutcome outcome) {
  switch (outcome) {
    case TriggerOutcome::kTriggered: return "triggered";
    case TriggerOutcome::kBlocked: return "blocked";
    case TriggerOutcome::kNavigatedAway: return "navigated_away";
    case TriggerOutcome::kTimeout: return "timeout";
  }
  return "blocked";
}

bool success_criterion(driver::PageSession& session, const events::Event& event) {
  if (!session.is_visible(event.xpath)) return false;
  auto top = session.hit_test(event.xpath);
  return top.has_value() && *top == event.xpath;
}

TriggerOutcome trigger(driver::PageSession& session, const events::Event& event,
                       const BotConfig& config) {
  if (!success_criterion(session, event)) return TriggerOutcome::kBlocked;

  std::vector<std::string> sequence;
  if (event.type == "hover") {
    sequence = {"mouseover", "mouseout"};
  } else {
    sequence = {event.type};
  }
  int rounds = events::is_click_type(event.type) ? 3 : 1;

  std::string origin = origin_of(session.current_url());
  for (int round = 0; round < rounds; ++round) {
    for (const auto& type : sequence) {
      auto status = session.dispatch(event.xpath, type);
      settle(config);
      if (origin_of(session.current_url()) != origin) {
        return TriggerOutcome::kNavigatedAway;
      }
      if (status == driver::DispatchStatus::kUnresolved) {
        // The page changed under us mid-sequence.
        return round == 0 ? TriggerOutcome::kBlocked : TriggerOutcome::kTriggered;
      }
    }
  }
  return TriggerOutcome::kTriggered;
}

namespace {

struct Pending {
  events::Event event;
  int requires_node = -1;  // tree node whose trigger registered this listener
};

struct Session {
  driver::PageSession& page;
  const BotConfig& config;
  DiscoveryResult result;
  js::ProbeLogParser probes;
  int triggers_used = 0;

  Session(driver::PageSession& p, const BotConfig& c)
      : page(p), config(c), probes(c.probe_token) {}

  void drain() {
    for (const auto& line : page.drain_console()) {
      if (auto key = probes.parse(line)) result.used.insert(*key);
    }
  }

  void check_budget() {
    if (triggers_used >= config.trigger_budget) {
      result.malformed_probe_lines = probes.malformed_count();
      throw BudgetExceededError("trigger budget exhausted", std::move(result));
    }
  }

  TriggerOutcome fire(const events::Event& event, bool replay) {
    check_budget();
    ++triggers_used;
    ++result.stats.total_triggers;
    auto outcome = trigger(page, event, config);
    drain();
    result.trigger_log.push_back({event, outcome, replay});
    return outcome;
  }

  events::Event event_of_node(int id) const {
    const auto& node = result.tree.nodes()[id];
    return {node.type, node.xpath, 0};
  }

  // Fresh load, then the parent's full ancestor chain and the parent itself.
  // A parent deeper than one level is unreachable without its own ancestors.
  void refresh_and_replay(int parent_id) {
    page.reload();
    ++result.stats.refresh_count;
    drain();
    auto chain = result.tree.ancestor_chain(parent_id);
    chain.push_back(parent_id);
    for (int id : chain) {
      if (id == events::DependencyTree::kBase) continue;  // triggering base is a no-op
      fire(event_of_node(id), /*replay=*/true);
    }
  }
};

}  // namespace

DiscoveryResult discover(driver::PageSession& session, const std::vector<events::Event>& events,
                         const BotConfig& config) {
  auto started = std::chrono::steady_clock::now();
  Session s(session, config);

  // Probes fired during the initial page load count as used.
  s.drain();

  // Deterministic attempt order: element document order, then type name.
  std::map<std::string, int> element_rank;
  for (const auto& e : events) {
    element_rank.emplace(e.xpath, static_cast<int>(element_rank.size()));
  }
  std::vector<Pending> pending;
  std::vector<events::Event> non_triggerable;
  for (const auto& e : events) {
    if (events::is_triggerable_type(e.type)) {
      pending.push_back({e, -1});
    } else {
      non_triggerable.push_back(e);
    }
  }
  auto order = [&element_rank](const Pending& a, const Pending& b) {
    int ra = element_rank.at(a.event.xpath);
    int rb = element_rank.at(b.event.xpath);
    if (ra != rb) return ra < rb;
    return a.event.type < b.event.type;
  };
  std::stable_sort(pending.begin(), pending.end(), order);

  std::set<std::pair<std::string, std::string>> ever_seen;
  for (const auto& e : events) ever_seen.insert({e.xpath, e.type});

  std::deque<int> queue;
  queue.push_back(events::DependencyTree::kBase);

  try {
    while (!queue.empty()) {
      int parent_id = queue.front();
      queue.pop_front();
      s.refresh_and_replay(parent_id);

      auto in_chain = [&](int node) {
        if (node == -1) return true;
        if (node == parent_id) return true;
        for (int id : s.result.tree.ancestor_chain(parent_id)) {
          if (id == node) return true;
        }
        return false;
      };

      size_t i = 0;
      while (i < pending.size()) {
        // A dynamically added listener only exists once the event that
        // registered it has been replayed.
        if (!in_chain(pending[i].requires_node)) {
          ++i;
          continue;
        }
        auto outcome = s.fire(pending[i].event, /*replay=*/false);
        if (outcome == TriggerOutcome::kBlocked || outcome == TriggerOutcome::kTimeout) {
          ++i;
          continue;
        }

        // Parented where it first fired, navigation included.
        int id = s.result.tree.add_child(parent_id, pending[i].event);
        queue.push_back(id);
        pending.erase(pending.begin() + i);

        if (outcome == TriggerOutcome::kNavigatedAway) {
          session.reload();
          ++s.result.stats.refresh_count;
          s.drain();
        } else {
          // Interactive elements can appear dynamically; pick up listeners
          // the trigger just registered.
          for (const auto& rec : session.listener_dump()) {
            if (!ever_seen.insert({rec.xpath, rec.type}).second) continue;
            element_rank.emplace(rec.xpath, static_cast<int>(element_rank.size()));
            events::Event extra{rec.type, rec.xpath,
                                static_cast<int>(ever_seen.size())};
            if (events::is_triggerable_type(rec.type)) {
              pending.push_back({extra, id});
            } else {
              non_triggerable.push_back(extra);
            }
          }
        }
        s.refresh_and_replay(parent_id);
      }
    }
  } catch (const SessionLostError&) {
    s.result.session_lost = true;
  }

  for (const auto& p : pending) s.result.tree.add_orphan(p.event);
  for (const auto& e : non_triggerable) s.result.tree.add_orphan(e);

  s.result.malformed_probe_lines = s.probes.malformed_count();
  s.result.stats.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - started)
                                   .count();
  return s.result;
}

}  // namespace muzeel::bot
