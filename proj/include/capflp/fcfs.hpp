#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "capflp/instance.hpp"

namespace capflp {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class Metric { Line, Plane };

// Largest possible distance in the domain; a served agent gets ceiling - distance.
double utility_ceiling(Metric metric);
double distance(Metric metric, Point a, Point b);

struct Facility {
  Point position;
  int capacity = 1;
  friend bool operator==(const Facility&, const Facility&) = default;
};

struct Placement {
  Metric metric = Metric::Line;
  std::vector<Facility> facilities;

  std::size_t size() const noexcept { return facilities.size(); }
  double ceiling() const { return utility_ceiling(metric); }
  CapacityVector capacities() const;
  friend bool operator==(const Placement&, const Placement&) = default;
};

// One-dimensional placement: facility j at positions[j] with capacity caps[j].
Placement line_placement(std::span<const double> positions, const CapacityVector& caps);

// 0-based facility index per agent.  Serialized 1-based.
using StrategyProfile = std::vector<int>;

// Agents in decreasing priority.  The default is ascending agent index.
class PriorityRule {
 public:
  static PriorityRule by_index(std::size_t n);
  // Throws InvalidParams unless `ordering` is a permutation of 0..n-1.
  explicit PriorityRule(std::vector<std::size_t> ordering);

  std::span<const std::size_t> ordering() const noexcept { return ordering_; }
  // Position of agent i in the ordering; smaller wins ties.
  std::size_t rank(std::size_t agent) const { return rank_[agent]; }
  std::size_t size() const noexcept { return ordering_.size(); }

 private:
  std::vector<std::size_t> ordering_;
  std::vector<std::size_t> rank_;
};

struct ServiceOutcome {
  std::vector<std::vector<std::size_t>> served;  // T_j, agents in service order
  std::vector<double> utilities;
};

double social_welfare(const ServiceOutcome& outcome);

struct StabilityReport {
  bool stable = true;
  std::vector<double> welfare_values;  // ascending, deduplicated at kWelfareTolerance
};

inline constexpr double kDeviationTolerance = 1e-12;
inline constexpr double kWelfareTolerance = 1e-9;
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 20;

// The FCFS game induced by a placement.  Distances are compared after rounding to 1e-12, so
// distances that agree to that resolution count as ties and fall back to the priority rule.
class FcfsGame {
 public:
  FcfsGame(std::span<const Point> agents, const Placement& placement, const PriorityRule& priority);
  FcfsGame(const Instance& instance, const Placement& placement, const PriorityRule& priority);

  std::size_t agents() const noexcept { return n_; }
  std::size_t facilities() const noexcept { return m_; }
  double ceiling() const noexcept { return ceiling_; }
  double distance(std::size_t agent, std::size_t facility) const { return dist_[agent * m_ + facility]; }
  int capacity(std::size_t facility) const { return caps_[facility]; }

  // Throws LengthMismatch or InvalidParams for a malformed profile.
  ServiceOutcome resolve(const StrategyProfile& profile) const;
  bool is_nash_equilibrium(const StrategyProfile& profile) const;
  StrategyProfile construct_ne() const;
  // All pure NE in lexicographic order.  Throws TooLarge when m^n exceeds `cap`.
  std::vector<StrategyProfile> enumerate_ne(std::uint64_t cap = kDefaultEnumerationCap) const;
  StabilityReport check_equilibrium_stability(std::uint64_t cap = kDefaultEnumerationCap) const;

 private:
  void validate(const StrategyProfile& profile) const;
  // Agent a takes precedence over agent b at facility j.
  bool beats(std::size_t a, std::size_t b, std::size_t j) const {
    const auto ka = key_[a * m_ + j];
    const auto kb = key_[b * m_ + j];
    return ka < kb || (ka == kb && rank_[a] < rank_[b]);
  }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  double ceiling_ = 1.0;
  std::vector<double> dist_;
  std::vector<std::int64_t> key_;
  std::vector<int> caps_;
  std::vector<std::size_t> rank_;
};

std::vector<Point> to_points(const Instance& instance);

// Free-function forms of the game operations.
ServiceOutcome resolve_outcome(const Instance& instance, const Placement& placement,
                               const StrategyProfile& profile, const PriorityRule& priority);
bool is_nash_equilibrium(const Instance& instance, const Placement& placement, const StrategyProfile& profile,
                         const PriorityRule& priority);
StrategyProfile construct_ne(const Instance& instance, const Placement& placement, const PriorityRule& priority);
std::vector<StrategyProfile> enumerate_ne(const Instance& instance, const Placement& placement,
                                          const PriorityRule& priority, std::uint64_t cap = kDefaultEnumerationCap);
StabilityReport check_equilibrium_stability(const Instance& instance, const Placement& placement,
                                            const PriorityRule& priority,
                                            std::uint64_t cap = kDefaultEnumerationCap);

// Welfare of the NE built by construct_ne; the mechanism welfare whenever the placement is ES.
double equilibrium_welfare(const FcfsGame& game);

}  // namespace capflp
