#include "capflp/fcfs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "capflp/error.hpp"

namespace capflp {

double utility_ceiling(Metric metric) { return metric == Metric::Line ? 1.0 : std::sqrt(2.0); }

double distance(Metric metric, Point a, Point b) {
  if (metric == Metric::Line) return std::abs(a.x - b.x);
  return std::hypot(a.x - b.x, a.y - b.y);
}

CapacityVector Placement::capacities() const {
  std::vector<int> caps;
  caps.reserve(facilities.size());
  for (const auto& f : facilities) caps.push_back(f.capacity);
  return CapacityVector(std::move(caps));
}

Placement line_placement(std::span<const double> positions, const CapacityVector& caps) {
  if (positions.size() != caps.size())
    throw Error(ErrorKind::LengthMismatch, "positions and capacities differ in length");
  Placement p;
  p.metric = Metric::Line;
  for (std::size_t j = 0; j < positions.size(); ++j) p.facilities.push_back({{positions[j], 0.0}, caps[j]});
  return p;
}

PriorityRule PriorityRule::by_index(std::size_t n) {
  std::vector<std::size_t> ordering(n);
  std::iota(ordering.begin(), ordering.end(), std::size_t{0});
  return PriorityRule(std::move(ordering));
}

PriorityRule::PriorityRule(std::vector<std::size_t> ordering) : ordering_(std::move(ordering)) {
  const std::size_t n = ordering_.size();
  rank_.assign(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t a = ordering_[r];
    if (a >= n || rank_[a] != n) throw Error(ErrorKind::InvalidParams, "priority ordering is not a permutation");
    rank_[a] = r;
  }
}

double social_welfare(const ServiceOutcome& outcome) {
  double total = 0.0;
  for (double u : outcome.utilities) total += u;
  return total;
}

std::vector<Point> to_points(const Instance& instance) {
  std::vector<Point> pts;
  pts.reserve(instance.size());
  for (double x : instance.positions()) pts.push_back({x, 0.0});
  return pts;
}

FcfsGame::FcfsGame(std::span<const Point> agents, const Placement& placement, const PriorityRule& priority)
    : n_(agents.size()), m_(placement.size()), ceiling_(placement.ceiling()) {
  if (m_ == 0) throw Error(ErrorKind::InvalidParams, "placement has no facilities");
  if (priority.size() != n_) throw Error(ErrorKind::LengthMismatch, "priority rule does not cover every agent");
  dist_.resize(n_ * m_);
  key_.resize(n_ * m_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) {
      const double d = capflp::distance(placement.metric, agents[i], placement.facilities[j].position);
      dist_[i * m_ + j] = d;
      key_[i * m_ + j] = std::llround(d * 1e12);
    }
  }
  for (const auto& f : placement.facilities) {
    if (f.capacity < 1) throw Error(ErrorKind::InvalidParams, "facility capacity must be >= 1");
    caps_.push_back(f.capacity);
  }
  rank_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) rank_[i] = priority.rank(i);
}

FcfsGame::FcfsGame(const Instance& instance, const Placement& placement, const PriorityRule& priority)
    : FcfsGame(to_points(instance), placement, priority) {}

void FcfsGame::validate(const StrategyProfile& profile) const {
  if (profile.size() != n_)
    throw Error(ErrorKind::LengthMismatch,
                "profile has " + std::to_string(profile.size()) + " entries for " + std::to_string(n_) + " agents");
  for (int s : profile)
    if (s < 0 || static_cast<std::size_t>(s) >= m_)
      throw Error(ErrorKind::InvalidParams, "strategy " + std::to_string(s + 1) + " outside [1, m]");
}

ServiceOutcome FcfsGame::resolve(const StrategyProfile& profile) const {
  validate(profile);
  ServiceOutcome out;
  out.served.resize(m_);
  out.utilities.assign(n_, 0.0);
  std::vector<std::vector<std::size_t>> choosers(m_);
  for (std::size_t i = 0; i < n_; ++i) choosers[static_cast<std::size_t>(profile[i])].push_back(i);
  for (std::size_t j = 0; j < m_; ++j) {
    auto& c = choosers[j];
    const std::size_t take = std::min(c.size(), static_cast<std::size_t>(caps_[j]));
    std::partial_sort(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(take), c.end(),
                      [&](std::size_t a, std::size_t b) { return beats(a, b, j); });
    out.served[j].assign(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(take));
    for (std::size_t i : out.served[j]) out.utilities[i] = ceiling_ - distance(i, j);
  }
  return out;
}

bool FcfsGame::is_nash_equilibrium(const StrategyProfile& profile) const {
  const ServiceOutcome outcome = resolve(profile);
  std::vector<std::vector<std::size_t>> choosers(m_);
  for (std::size_t i = 0; i < n_; ++i) choosers[static_cast<std::size_t>(profile[i])].push_back(i);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) {
      if (static_cast<int>(j) == profile[i]) continue;
      const double gain = ceiling_ - distance(i, j);
      if (gain <= outcome.utilities[i] + kDeviationTolerance) continue;
      // After switching, i is served at j iff fewer than k_j current choosers of j beat it.
      int ahead = 0;
      for (std::size_t l : choosers[j])
        if (beats(l, i, j) && ++ahead >= caps_[j]) break;
      if (ahead < caps_[j]) return false;
    }
  }
  return true;
}

StrategyProfile FcfsGame::construct_ne() const {
  // Greedy over the agent-facility distance set: the closest remaining pair is matched, a full
  // facility leaves the pool.  Equal distances: higher-priority agent first, then lower facility index.
  std::vector<std::tuple<std::int64_t, std::size_t, std::size_t>> pairs;
  pairs.reserve(n_ * m_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < m_; ++j) pairs.emplace_back(key_[i * m_ + j], rank_[i], j);
  std::sort(pairs.begin(), pairs.end());

  std::vector<std::size_t> agent_of_rank(n_);
  for (std::size_t i = 0; i < n_; ++i) agent_of_rank[rank_[i]] = i;

  StrategyProfile profile(n_, -1);
  std::vector<int> load(m_, 0);
  for (const auto& [key, r, j] : pairs) {
    const std::size_t i = agent_of_rank[r];
    if (profile[i] >= 0 || load[j] >= caps_[j]) continue;
    profile[i] = static_cast<int>(j);
    ++load[j];
  }
  for (int& s : profile)
    if (s < 0) s = 0;
  return profile;
}

std::vector<StrategyProfile> FcfsGame::enumerate_ne(std::uint64_t cap) const {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    if (total > cap / m_) throw Error(ErrorKind::TooLarge, "m^n exceeds enumeration cap " + std::to_string(cap));
    total *= m_;
  }
  if (total > cap) throw Error(ErrorKind::TooLarge, "m^n exceeds enumeration cap " + std::to_string(cap));

  std::vector<StrategyProfile> result;
  StrategyProfile profile(n_, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    if (is_nash_equilibrium(profile)) result.push_back(profile);
    for (std::size_t pos = n_; pos-- > 0;) {
      if (static_cast<std::size_t>(++profile[pos]) < m_) break;
      profile[pos] = 0;
    }
  }
  return result;
}

StabilityReport FcfsGame::check_equilibrium_stability(std::uint64_t cap) const {
  std::vector<double> welfare;
  for (const auto& p : enumerate_ne(cap)) welfare.push_back(social_welfare(resolve(p)));
  std::sort(welfare.begin(), welfare.end());
  StabilityReport report;
  for (double w : welfare)
    if (report.welfare_values.empty() || w - report.welfare_values.back() > kWelfareTolerance)
      report.welfare_values.push_back(w);
  report.stable = report.welfare_values.size() <= 1;
  return report;
}

ServiceOutcome resolve_outcome(const Instance& instance, const Placement& placement,
                               const StrategyProfile& profile, const PriorityRule& priority) {
  return FcfsGame(instance, placement, priority).resolve(profile);
}

bool is_nash_equilibrium(const Instance& instance, const Placement& placement, const StrategyProfile& profile,
                         const PriorityRule& priority) {
  return FcfsGame(instance, placement, priority).is_nash_equilibrium(profile);
}

StrategyProfile construct_ne(const Instance& instance, const Placement& placement, const PriorityRule& priority) {
  return FcfsGame(instance, placement, priority).construct_ne();
}

std::vector<StrategyProfile> enumerate_ne(const Instance& instance, const Placement& placement,
                                          const PriorityRule& priority, std::uint64_t cap) {
  return FcfsGame(instance, placement, priority).enumerate_ne(cap);
}

StabilityReport check_equilibrium_stability(const Instance& instance, const Placement& placement,
                                            const PriorityRule& priority, std::uint64_t cap) {
  return FcfsGame(instance, placement, priority).check_equilibrium_stability(cap);
}

double equilibrium_welfare(const FcfsGame& game) { return social_welfare(game.resolve(game.construct_ne())); }

}  // namespace capflp
