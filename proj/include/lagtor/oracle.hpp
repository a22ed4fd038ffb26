#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lagtor/pathengine.hpp"

namespace lagtor {

// Integer instance for the brute-force ground truth: exhaustive BFS over
// the move graph restricted to low states. The low state space is finite
// because components stay bounded by the largest endpoint entry.
struct IntInstance {
  std::vector<long long> d, e;
  size_t node_cap = 10000000;
};

struct OracleResult {
  bool found = false;
  std::vector<Move> moves;  // from d to e when found
  size_t nodes_expanded = 0;
};

// Shortest low admissible path if one exists; deterministic via
// lexicographic move enumeration. Throws StateSpaceCap past node_cap.
OracleResult bfs_low_path(const IntInstance& inst);

}  // namespace lagtor
