#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace capflp {

// Agent reports on [0,1], kept sorted ascending.  Duplicates are allowed.
class Instance {
 public:
  std::span<const double> positions() const noexcept { return positions_; }
  std::size_t size() const noexcept { return positions_.size(); }
  double operator[](std::size_t i) const { return positions_[i]; }

  // 1-based order statistic x_i.
  double at_rank(std::size_t i) const { return positions_.at(i - 1); }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  friend Instance make_instance(std::span<const double>);
  explicit Instance(std::vector<double> sorted) : positions_(std::move(sorted)) {}
  std::vector<double> positions_;
};

// Validates and sorts raw reports.
// Throws EmptyInput, NonFinite or OutOfRange.
Instance make_instance(std::span<const double> raw_positions);

inline Instance make_instance(std::initializer_list<double> raw) {
  return make_instance(std::span<const double>(raw.begin(), raw.size()));
}

class CapacityVector {
 public:
  CapacityVector() = default;
  // Throws InvalidParams if empty or any entry < 1.
  explicit CapacityVector(std::vector<int> caps);
  CapacityVector(std::initializer_list<int> caps) : CapacityVector(std::vector<int>(caps)) {}

  std::span<const int> values() const noexcept { return caps_; }
  std::size_t size() const noexcept { return caps_.size(); }
  int operator[](std::size_t j) const { return caps_[j]; }
  long long total() const noexcept;
  bool uniform() const noexcept;

  // Total capacity must be strictly below the number of agents.
  void require_scarce(std::size_t n) const;

  friend bool operator==(const CapacityVector&, const CapacityVector&) = default;

 private:
  std::vector<int> caps_;
};

}  // namespace capflp
