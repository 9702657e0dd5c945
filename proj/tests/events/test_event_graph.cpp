#include "muzeel/events/event.hpp"

#include <gtest/gtest.h>

#include <random>

using muzeel::events::DependencyTree;
using muzeel::events::Event;
using muzeel::events::events_from_listeners;
using muzeel::events::parse_tree;
using muzeel::events::serialize_tree;

TEST(EventGraph, EmptyListenerList) {
  EXPECT_TRUE(events_from_listeners({}).empty());
}

TEST(EventGraph, DuplicatesCollapse) {
  auto events = events_from_listeners({{"//p[1]", "click"}, {"//p[1]", "click"}});
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].type, "click");
}

TEST(EventGraph, DropdownListenerDump) {
  auto events = events_from_listeners({
      {"//div[@id = \"menu\"]", "click"},
      {"//div[@id = \"item1\"]", "click"},
      {"//div[@id = \"item2\"]", "click"},
  });
  EXPECT_EQ(events.size(), 3u);
  EXPECT_EQ(events[2].doc_order, 2);
}

TEST(EventGraph, NonInteractiveTypesFlagged) {
  EXPECT_FALSE(muzeel::events::is_triggerable_type("load"));
  EXPECT_FALSE(muzeel::events::is_triggerable_type("domcontentloaded"));
  EXPECT_TRUE(muzeel::events::is_triggerable_type("click"));
  EXPECT_TRUE(muzeel::events::is_triggerable_type("custom-made-up-event"));
  EXPECT_TRUE(muzeel::events::is_click_type("dblclick"));
  EXPECT_FALSE(muzeel::events::is_click_type("mouseover"));
}

TEST(EventGraph, AncestorChains) {
  DependencyTree tree;
  int menu = tree.add_child(DependencyTree::kBase, {"click", "//a[1]", 0});
  int item = tree.add_child(menu, {"click", "//b[1]", 1});
  EXPECT_TRUE(tree.ancestor_chain(DependencyTree::kBase).empty());
  EXPECT_EQ(tree.ancestor_chain(menu), std::vector<int>{DependencyTree::kBase});
  EXPECT_EQ(tree.ancestor_chain(item), (std::vector<int>{DependencyTree::kBase, menu}));
  EXPECT_THROW(tree.ancestor_chain(99), muzeel::events::DetachedEventError);
}

TEST(EventGraph, NodePlusOrphanCountsAddUp) {
  auto events = events_from_listeners({
      {"//a[1]", "click"}, {"//b[1]", "click"}, {"//c[1]", "mouseover"}});
  DependencyTree tree;
  tree.add_child(DependencyTree::kBase, events[0]);
  tree.add_child(DependencyTree::kBase, events[1]);
  tree.add_orphan(events[2]);
  EXPECT_EQ(tree.size() - 1 + tree.orphans().size(), events.size());
}

TEST(EventGraph, SerializeEmptyTree) {
  DependencyTree tree;
  auto text = serialize_tree(tree);
  auto back = parse_tree(text);
  EXPECT_EQ(back.size(), 1u);
  EXPECT_TRUE(back.orphans().empty());
}

TEST(EventGraph, SerializeRoundTripDropdown) {
  DependencyTree tree;
  int menu = tree.add_child(DependencyTree::kBase, {"click", "//div[@id = \"m\"]", 0});
  tree.add_child(menu, {"click", "//div[@id = \"i1\"]", 1});
  tree.add_child(menu, {"click", "//div[@id = \"i2\"]", 2});
  tree.add_orphan({"drag", "//div[@id = \"x\"]", 3});
  auto back = parse_tree(serialize_tree(tree));
  EXPECT_EQ(back.size(), 4u);
  EXPECT_EQ(back.edge_set(), tree.edge_set());
  ASSERT_EQ(back.orphans().size(), 1u);
  EXPECT_EQ(back.orphans()[0].type, "drag");
}

TEST(EventGraph, SerializeRoundTripRandomTrees) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    DependencyTree tree;
    int n = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      int parent = static_cast<int>(rng() % tree.size());
      tree.add_child(parent, {"click", "//p[" + std::to_string(i) + "]", i});
    }
    if (rng() % 2) tree.add_orphan({"keydown", "//q[1]", 99});
    auto back = parse_tree(serialize_tree(tree));
    EXPECT_EQ(serialize_tree(back), serialize_tree(tree));
  }
}
