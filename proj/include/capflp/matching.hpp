#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace capflp {

struct AssignmentResult {
  double value = 0.0;
  std::vector<int> facility_of;  // -1 when the agent is left out
};

// Maximum-weight assignment of agents to facilities where facility j takes at most caps[j] agents
// and each agent at most one facility.  `weights` is row-major n x m and must be non-negative.
// Successive shortest paths on the residual network (Bellman-Ford, negated weights).
AssignmentResult max_weight_assignment(std::span<const double> weights, std::size_t n, std::span<const int> caps);

}  // namespace capflp
