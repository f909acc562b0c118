#include "capflp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "capflp/error.hpp"

namespace capflp {

Instance make_instance(std::span<const double> raw_positions) {
  if (raw_positions.empty()) throw Error(ErrorKind::EmptyInput, "instance needs at least one agent");
  std::vector<double> xs(raw_positions.begin(), raw_positions.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]))
      throw Error(ErrorKind::NonFinite, "position " + std::to_string(i) + " is not finite");
    if (xs[i] < 0.0 || xs[i] > 1.0)
      throw Error(ErrorKind::OutOfRange, "position " + std::to_string(i) + " = " + std::to_string(xs[i]) +
                                             " outside [0,1]");
  }
  std::sort(xs.begin(), xs.end());
  return Instance(std::move(xs));
}

CapacityVector::CapacityVector(std::vector<int> caps) : caps_(std::move(caps)) {
  if (caps_.empty()) throw Error(ErrorKind::InvalidParams, "capacity vector is empty");
  for (int k : caps_)
    if (k < 1) throw Error(ErrorKind::InvalidParams, "capacities must be >= 1");
}

long long CapacityVector::total() const noexcept {
  return std::accumulate(caps_.begin(), caps_.end(), 0LL);
}

bool CapacityVector::uniform() const noexcept {
  return std::adjacent_find(caps_.begin(), caps_.end(), std::not_equal_to<>()) == caps_.end();
}

void CapacityVector::require_scarce(std::size_t n) const {
  if (total() >= static_cast<long long>(n))
    throw Error(ErrorKind::CapacityInfeasible,
                "total capacity " + std::to_string(total()) + " must be < n = " + std::to_string(n));
}

}  // namespace capflp
