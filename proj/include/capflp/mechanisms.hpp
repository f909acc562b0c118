#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "capflp/fcfs.hpp"
#include "capflp/instance.hpp"

namespace capflp {

enum class MechanismKind { AIO, SBS, WG, AllAside, UniformGrid };

std::string_view to_string(MechanismKind kind);
// Throws InvalidParams for an unknown name.  Accepts the lower-case forms too.
MechanismKind parse_mechanism_kind(std::string_view name);

// Sorted percentiles v_1 <= ... <= v_m in [0,1] plus the slot -> capacity-index map.
class PercentileVector {
 public:
  // Empty `assignment` means identity (capacity j goes to slot j).
  explicit PercentileVector(std::vector<double> entries, std::vector<std::size_t> assignment = {});
  PercentileVector(std::initializer_list<double> entries) : PercentileVector(std::vector<double>(entries)) {}

  std::span<const double> entries() const noexcept { return entries_; }
  std::span<const std::size_t> assignment() const noexcept { return assignment_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t j) const { return entries_[j]; }

  // Capacity of each slot, in slot order.
  std::vector<int> slot_capacities(const CapacityVector& caps) const;

  friend bool operator==(const PercentileVector&, const PercentileVector&) = default;

 private:
  std::vector<double> entries_;
  std::vector<std::size_t> assignment_;
};

// Slot assignment putting the largest capacity on the leftmost slot (ties by index).
std::vector<std::size_t> larger_capacity_left(const CapacityVector& caps);
// Mirror of larger_capacity_left.
std::vector<std::size_t> larger_capacity_right(const CapacityVector& caps);

// 1-based agent index floor((n-1) v) + 1.
std::size_t percentile_index(double v, std::size_t n);
std::vector<std::size_t> percentile_indices(const PercentileVector& v, std::size_t n);

// Facility in slot j at x_{i_j} with the capacity the assignment gives it.
// Throws LengthMismatch or CapacityInfeasible.
Placement apply_percentile(const PercentileVector& v, const Instance& instance, const CapacityVector& caps);

MechanismKind classify_indices(std::size_t i1, std::size_t i2);
// Two-facility taxonomy.  Throws UnsupportedArity unless m = 2.
MechanismKind classify_percentile(const PercentileVector& v, std::size_t n);

// Gap rule on 1-based indices with per-slot capacities.  Slots sharing an index act as one
// facility with the summed capacity.  Throws UnsupportedCase for three or more distinct
// locations unless every location holds a single facility of a common capacity.
bool es_condition_indices(std::span<const std::size_t> indices, std::span<const int> slot_caps);
bool es_condition(const PercentileVector& v, std::size_t n, const CapacityVector& caps);

enum class BestVectorCase { WideGapHalfCapacity, WideGapBalanced, WideGapRightmost, UniformGrid, MedianAio, AllAside };

// Wire label ("thm5-i", ..., "all-aside").
std::string_view case_label(BestVectorCase c);

struct BestVectorReport {
  std::vector<std::size_t> indices;  // 1-based
  PercentileVector v{std::vector<double>{}};
  double predicted_ratio = 1.0;      // closed form attached to the selection rule
  double certified_ratio = 1.0;      // worst case of the chosen indices (analysis::ar_wg / ar_uniform_m)
  BestVectorCase which = BestVectorCase::WideGapHalfCapacity;
  long long delta = 0;               // n - (k1 + k2) for the two-facility rule
};

// Best ES wide-gap vector for capacities k1 >= k2.  Throws Infeasible if k1 + k2 >= n,
// InvalidParams if k2 > k1 or k2 < 1.
BestVectorReport best_wg_vector(std::size_t n, int k1, int k2);

// m facilities of capacity k at evenly spaced, ES-feasible percentiles.
// Throws Infeasible if n < (2k - 1) m.
BestVectorReport best_uniform_vector_m(std::size_t n, int k, std::size_t m);

// ceil(m/2) facilities at x_a and floor(m/2) at x_b, merged into a two-facility placement.
// Requires a + 2mk <= b <= n, or only b - a >= mk - 1 when `relaxed`.  Throws PreconditionViolated.
Placement all_aside_placement(std::size_t a, std::size_t b, const Instance& instance, std::size_t m, int k,
                              bool relaxed = false);

// Every facility at x_{ceil(n/2)}.  Throws CapacityInfeasible.
Placement median_aio_placement(const Instance& instance, const CapacityVector& caps);

}  // namespace capflp
