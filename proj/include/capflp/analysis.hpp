#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "capflp/fcfs.hpp"
#include "capflp/instance.hpp"
#include "capflp/mechanisms.hpp"

namespace capflp {

struct RatioFormulaResult {
  double ratio = 1.0;
  std::string active_case;
  double numerator_welfare = 0.0;    // optimal welfare of the extremal instance
  double denominator_welfare = 0.0;  // mechanism welfare of the extremal instance
  bool approximate = false;          // formula applied outside its stated hypotheses
};

// Two-facility wide-gap mechanism at indices i1 < i2, k1 >= k2.  The denominator is the minimum
// over four extremal families (see README).  Throws NotES when the gap is below k1 + k2 - 1.
RatioFormulaResult ar_wg(std::size_t n, int k1, int k2, std::size_t i1, std::size_t i2);
// Both facilities at the median agent.
RatioFormulaResult ar_median_aio(std::size_t n, int k1, int k2);
// m facilities of capacity k at ES indices i_1 < ... < i_m.  Throws NotES if k >= (n+m)/(2m).
RatioFormulaResult ar_uniform_m(std::size_t n, int k, std::size_t m, std::size_t i1, std::size_t im);
// m co-located facilities of capacity k at the median.
RatioFormulaResult ar_aio_m(std::size_t n, int k, std::size_t m);

struct WorstCaseInstance {
  Instance instance = make_instance({0.0});
  double lambda = 0.0;
  std::string form_label;
  double upper_bound = 0.0;
  double mechanism_welfare = 0.0;
  double ratio = 1.0;
};

// Placement a mechanism of `kind` makes at 1-based `indices` with per-slot capacities.
Placement indexed_placement(const Instance& instance, std::span<const std::size_t> indices, std::span<const int> caps);

// Scans the extremal families for `kind` at lambda in {0, 1/2, 1} and returns the instance with the
// largest SW_UB / SW_mechanism.  `indices` are the 1-based facility indices in slot order, caps per slot.
// Throws Infeasible when total capacity is not below n.
WorstCaseInstance worst_case_instance(MechanismKind kind, std::size_t n, const CapacityVector& caps,
                                      std::span<const std::size_t> indices);

struct UpperBoundSolution {
  double value = 0.0;
  std::vector<double> facility_positions;  // per capacity entry
  std::vector<int> facility_of;            // per agent, -1 unserved
};

// max over facility positions at agent positions of the best capacity-feasible assignment with
// weights 1 - |x_i - y_j|.  Exact via contiguous-block dynamic programming.  Throws Infeasible.
UpperBoundSolution sw_upper_bound_solution(const Instance& instance, const CapacityVector& caps);
double sw_upper_bound(const Instance& instance, const CapacityVector& caps);
// Same bound by enumerating position tuples and solving each assignment as a min-cost flow.
UpperBoundSolution sw_upper_bound_flow(const Instance& instance, const CapacityVector& caps);
// Facilities on the grid {0, step, 2 step, ..., 1} instead of agent positions.  m <= 2 only.
double sw_upper_bound_fine_grid(const Instance& instance, const CapacityVector& caps, double step = 1e-3);

// SW_UB / SW of the constructed NE.  Caller guarantees the placement is ES.
double placement_ratio(const Instance& instance, const Placement& placement, const PriorityRule& priority);
// Throws NotES unless es_condition holds.
double empirical_ratio(const Instance& instance, const PercentileVector& v, const CapacityVector& caps,
                       const PriorityRule& priority);

// Maps a report vector (any order) to a placement.
using PlacementRule = std::function<Placement(std::span<const double> reports)>;

PlacementRule percentile_rule(PercentileVector v, CapacityVector caps);
// Non-truthful control: every facility at the mean report.
PlacementRule mean_rule(CapacityVector caps);

struct TruthfulnessWitness {
  double misreport = 0.0;
  StrategyProfile opponents;  // full profile; the audited agent's own entry is irrelevant
  double truthful_utility = 0.0;
  double misreport_utility = 0.0;
};

struct AuditOptions {
  std::uint64_t seed = 0;
  std::size_t sampled_profiles = 500;
  std::uint64_t exhaustive_limit = std::uint64_t{1} << 15;
};

// For each grid misreport and each opponent profile, compares the agent's best-response utility
// (measured at its true position) before and after the misreport.  Returns the first witness in
// grid order.  `agent` indexes `true_reports` as given.
std::optional<TruthfulnessWitness> check_absolute_truthfulness(const PlacementRule& mechanism,
                                                               std::span<const double> true_reports,
                                                               std::size_t agent, std::span<const double> grid,
                                                               const PriorityRule& priority,
                                                               const AuditOptions& options = {});

// {0, step, ..., 1}, always containing 1.
std::vector<double> misreport_grid(double step);

}  // namespace capflp
