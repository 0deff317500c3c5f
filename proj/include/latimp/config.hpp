#pragma once

#include <cstdint>

namespace latimp {

// Limits and tolerances shared by the enumeration-heavy operations.
struct Config {
  int enumeration_rank_limit = 12;
  int voronoi_rank_limit = 8;
  std::uint64_t node_budget = 10'000'000;
  double tolerance = 1e-9;
  double mvee_tolerance = 1e-8;
  int mvee_max_iterations = 100'000;
  int threads = 1;
};

}  // namespace latimp
