#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "muzeel/driver/sim_page.hpp"

namespace muzeel::test {

// Hand-written discovery fixtures under tests/data/fixtures.
std::vector<std::string> fixture_names();
driver::SimPageScript load_fixture(const std::string& name);

// Seeded random page: a reveal forest (every hidden element has exactly one
// revealer, acyclic), shared handlers, unreachable elements, and a load
// handler. Exhaustive search and breadth-first discovery coincide on these
// by construction.
driver::SimPageScript random_sim_script(std::uint32_t seed);

}  // namespace muzeel::test
