#include "muzeel/driver/sim_page.hpp"

#include <gtest/gtest.h>

#include "support/fixture_corpus.hpp"

using muzeel::driver::DispatchStatus;
using muzeel::driver::ScriptValidationError;
using muzeel::driver::sim_load;
using muzeel::driver::SimPageScript;

namespace {
constexpr const char* kToken = "T:";
}

TEST(SimDriver, ValidationCatchesDanglingReferences) {
  SimPageScript s;
  s.elements.push_back({"a", "div", "", "", true, ""});
  s.listeners.push_back({"missing", "click", "h"});
  EXPECT_THROW(sim_load(s, kToken), ScriptValidationError);

  SimPageScript s2;
  s2.elements.push_back({"a", "div", "", "", true, ""});
  s2.listeners.push_back({"a", "click", "nope"});
  EXPECT_THROW(sim_load(s2, kToken), ScriptValidationError);

  SimPageScript s3;
  s3.elements.push_back({"a", "div", "", "", true, ""});
  s3.elements.push_back({"a", "div", "", "", true, ""});
  EXPECT_THROW(sim_load(s3, kToken), ScriptValidationError);
}

TEST(SimDriver, NoListenersMeansEmptyDump) {
  SimPageScript s;
  s.elements.push_back({"a", "div", "", "", true, ""});
  auto session = sim_load(s, kToken);
  EXPECT_TRUE(session->listener_dump().empty());
}

TEST(SimDriver, DropdownFixtureShape) {
  auto session = sim_load(muzeel::test::load_fixture("dropdown"), kToken);
  auto dump = session->listener_dump();
  EXPECT_EQ(dump.size(), 3u);
  // Load handler logged at construction.
  auto lines = session->drain_console();
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0], "T:app.js|1|3");
  // Hidden items are not visible until the menu is clicked.
  EXPECT_TRUE(session->is_visible(dump[0].xpath));
  EXPECT_FALSE(session->is_visible(dump[1].xpath));
  session->dispatch(dump[0].xpath, "click");
  EXPECT_TRUE(session->is_visible(dump[1].xpath));
}

TEST(SimDriver, DrainConsoleIsIdempotent) {
  auto session = sim_load(muzeel::test::load_fixture("dropdown"), kToken);
  EXPECT_FALSE(session->drain_console().empty());
  EXPECT_TRUE(session->drain_console().empty());
}

TEST(SimDriver, ReloadRestoresInitialState) {
  auto session = sim_load(muzeel::test::load_fixture("dropdown"), kToken);
  session->drain_console();
  auto dump = session->listener_dump();
  session->dispatch(dump[0].xpath, "click");
  EXPECT_TRUE(session->is_visible(dump[1].xpath));
  session->drain_console();
  session->reload();
  EXPECT_FALSE(session->is_visible(dump[1].xpath));
  // Load handler fires again on reload.
  auto lines = session->drain_console();
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0], "T:app.js|1|3");
}

TEST(SimDriver, ModalCoversBackgroundElements) {
  auto session = sim_load(muzeel::test::load_fixture("modal"), kToken);
  std::string open = "//button[@id = \"open\"]";
  std::string link = "//a[@id = \"bg-link\"]";
  std::string close = "//button[@id = \"close\"]";

  EXPECT_EQ(*session->hit_test(link), link);
  session->dispatch(open, "click");
  // Covered: the center of the link now hits the overlay.
  EXPECT_EQ(*session->hit_test(link), "//div[@id = \"overlay\"]");
  // The close button lives inside the modal and stays reachable.
  EXPECT_EQ(*session->hit_test(close), close);
  session->dispatch(close, "click");
  EXPECT_EQ(*session->hit_test(link), link);
}

TEST(SimDriver, HiddenElementHitTestsToNothing) {
  auto session = sim_load(muzeel::test::load_fixture("dropdown"), kToken);
  EXPECT_FALSE(session->hit_test("//a[@id = \"item1\"]").has_value());
  EXPECT_FALSE(session->hit_test("//a[@id = \"missing\"]").has_value());
}

TEST(SimDriver, NavigationLeavesThePage) {
  auto session = sim_load(muzeel::test::load_fixture("navigation"), kToken);
  session->drain_console();
  EXPECT_EQ(session->current_url(), "http://fixture.local/nav");
  session->dispatch("//a[@id = \"away\"]", "click");
  EXPECT_EQ(session->current_url(), "http://elsewhere.example/");
  EXPECT_TRUE(session->listener_dump().empty());
  EXPECT_EQ(session->dispatch("//button[@id = \"info\"]", "click"), DispatchStatus::kUnresolved);
  session->reload();
  EXPECT_EQ(session->current_url(), "http://fixture.local/nav");
  EXPECT_EQ(session->listener_dump().size(), 2u);
}

TEST(SimDriver, DynamicListenerAppearsInDump) {
  auto session = sim_load(muzeel::test::load_fixture("dynamic_listener"), kToken);
  EXPECT_EQ(session->listener_dump().size(), 1u);
  session->dispatch("//button[@id = \"loader\"]", "click");
  EXPECT_EQ(session->listener_dump().size(), 2u);
  session->reload();
  EXPECT_EQ(session->listener_dump().size(), 1u);
}

TEST(SimDriver, ScriptJsonRoundTrip) {
  for (const auto& name : muzeel::test::fixture_names()) {
    auto script = muzeel::test::load_fixture(name);
    auto back = SimPageScript::from_json(script.to_json());
    EXPECT_EQ(back.to_json(), script.to_json()) << name;
  }
}
