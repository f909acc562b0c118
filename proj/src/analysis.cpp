#include "capflp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "capflp/error.hpp"
#include "capflp/matching.hpp"
#include "capflp/parallel.hpp"
#include "capflp/rng.hpp"

namespace capflp {
namespace {

RatioFormulaResult make_result(double num, double den, std::string label, bool approximate = false) {
  RatioFormulaResult r;
  r.numerator_welfare = num;
  r.denominator_welfare = den;
  r.ratio = num / den;
  r.active_case = std::move(label);
  r.approximate = approximate;
  return r;
}

void require_two_caps(int k1, int k2) {
  if (k2 < 1 || k1 < k2) throw Error(ErrorKind::InvalidParams, "need k1 >= k2 >= 1");
}

}  // namespace

RatioFormulaResult ar_wg(std::size_t n, int k1, int k2, std::size_t i1, std::size_t i2) {
  require_two_caps(k1, k2);
  const long long K = static_cast<long long>(k1) + k2;
  if (K >= static_cast<long long>(n)) throw Error(ErrorKind::CapacityInfeasible, "k1 + k2 must be below n");
  if (i1 < 1 || i2 > n || i1 + 1 >= i2) throw Error(ErrorKind::InvalidParams, "wide-gap indices need 1 <= i1 < i1+1 < i2 <= n");
  if (static_cast<long long>(i2 - i1) < K - 1)
    throw Error(ErrorKind::NotES, "gap " + std::to_string(i2 - i1) + " below k1 + k2 - 1 = " + std::to_string(K - 1));

  const struct {
    double den;
    const char* label;
  } families[] = {
      {static_cast<double>(k1) + static_cast<double>(n - i2) + 1.0, "wg-far-split"},
      {(k1 + 1) / 2.0 + k2, "wg-left-midpoint"},
      {static_cast<double>(i1) + k2, "wg-left-split"},
      {k1 + (k2 + 1) / 2.0, "wg-right-midpoint"},
  };
  std::size_t best = 0;
  for (std::size_t f = 1; f < std::size(families); ++f)
    if (families[f].den < families[best].den) best = f;
  const double den = std::min(families[best].den, static_cast<double>(K));
  return make_result(static_cast<double>(K), den, families[best].label);
}

RatioFormulaResult ar_median_aio(std::size_t n, int k1, int k2) {
  require_two_caps(k1, k2);
  const long long K = static_cast<long long>(k1) + k2;
  if (K >= static_cast<long long>(n)) throw Error(ErrorKind::CapacityInfeasible, "k1 + k2 must be below n");
  const double den = (static_cast<double>(K) + 1.0) / 2.0;
  if (static_cast<long long>(k1) >= static_cast<long long>((n + 1) / 2)) {
    const double ratio = (2.0 * k2 + 2.0 * static_cast<double>(n / 2) + 1.0) / (static_cast<double>(K) + 1.0);
    return make_result(ratio * den, den, "median-large-capacity");
  }
  return make_result(static_cast<double>(K), den, "median-split");
}

RatioFormulaResult ar_uniform_m(std::size_t n, int k, std::size_t m, std::size_t i1, std::size_t im) {
  if (k < 1 || m < 1) throw Error(ErrorKind::InvalidParams, "need k >= 1 and m >= 1");
  const long long mk = static_cast<long long>(m) * k;
  if (mk >= static_cast<long long>(n)) throw Error(ErrorKind::CapacityInfeasible, "mk must be below n");
  if (i1 < 1 || im > n || im < i1) throw Error(ErrorKind::InvalidParams, "indices need 1 <= i1 <= im <= n");
  if (static_cast<long long>(im - i1) < (2LL * k - 1) * static_cast<long long>(m - 1))
    throw Error(ErrorKind::NotES, "outer indices too close for m facilities with gaps >= 2k-1");
  // The closed form is stated for k < (n+m)/(2m).
  const bool approximate = 2 * mk >= static_cast<long long>(n + m);
  const long long reach = (k + 1) / 2;
  const long long left = static_cast<long long>(i1);
  const long long right = static_cast<long long>(n - im);
  if (left >= reach && right >= reach)
    return make_result(static_cast<double>(mk), (static_cast<double>(m) - 0.5) * k + 0.5, "grid", approximate);
  const double den = static_cast<double>(static_cast<long long>(m - 1) * k + std::min(left, right));
  return make_result(static_cast<double>(mk), den, "outer-split", approximate);
}

RatioFormulaResult ar_aio_m(std::size_t n, int k, std::size_t m) {
  if (k < 1 || m < 1) throw Error(ErrorKind::InvalidParams, "need k >= 1 and m >= 1");
  const long long mk = static_cast<long long>(m) * k;
  if (mk >= static_cast<long long>(n)) throw Error(ErrorKind::CapacityInfeasible, "mk must be below n");
  const double den = (static_cast<double>(mk) + 1.0) / 2.0;
  const bool approximate = k <= 1;
  if (static_cast<long long>(n) <= static_cast<long long>(m + 1) * k) {
    const long long rest = static_cast<long long>(n) - static_cast<long long>(m - 1) * k;
    const double ratio = (2.0 * static_cast<double>(m - 1) * k + static_cast<double>(rest) + 1.0) / (static_cast<double>(mk) + 1.0);
    return make_result(ratio * den, den, "aio-few-agents", approximate);
  }
  return make_result(static_cast<double>(mk), den, "aio-many-agents", approximate);
}

// ---------------------------------------------------------------------------------------------
// Upper bound

namespace {

// Prefix sums over sorted positions for block costs.
class BlockCost {
 public:
  explicit BlockCost(std::span<const double> xs) : xs_(xs), prefix_(xs.size() + 1, 0.0) {
    for (std::size_t i = 0; i < xs.size(); ++i) prefix_[i + 1] = prefix_[i] + xs[i];
  }

  // Sum of |x_i - y| for i in [s, s+c).
  double cost(std::size_t s, std::size_t c, double y) const {
    const auto first = xs_.begin() + static_cast<std::ptrdiff_t>(s);
    const auto last = first + static_cast<std::ptrdiff_t>(c);
    const auto mid = std::lower_bound(first, last, y);
    const auto split = static_cast<std::size_t>(mid - xs_.begin());
    const double below = y * static_cast<double>(split - s) - (prefix_[split] - prefix_[s]);
    const double above = (prefix_[s + c] - prefix_[split]) - y * static_cast<double>(s + c - split);
    return below + above;
  }

  double median(std::size_t s, std::size_t c) const { return xs_[s + (c - 1) / 2]; }

 private:
  std::span<const double> xs_;
  std::vector<double> prefix_;
};

struct BlockPlan {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> starts;  // per slot in the permutation order
};

// Best placement of consecutive blocks with sizes `sizes` (left to right); `value_of(slot, start)`
// gives the block value.
template <class ValueOf>
BlockPlan best_blocks(std::size_t n, std::span<const int> sizes, ValueOf&& value_of) {
  const std::size_t m = sizes.size();
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  // g[j][s]: best value for slots j.. with block j starting at or after s.
  std::vector<std::vector<double>> g(m + 1, std::vector<double>(n + 2, ninf));
  std::vector<std::vector<char>> take(m, std::vector<char>(n + 2, 0));
  std::fill(g[m].begin(), g[m].end(), 0.0);
  for (std::size_t j = m; j-- > 0;) {
    const auto c = static_cast<std::size_t>(sizes[j]);
    for (std::size_t s = n + 1; s-- > 0;) {
      double best = g[j][s + 1];
      if (s + c <= n && g[j + 1][s + c] > ninf) {
        const double here = value_of(j, s) + g[j + 1][s + c];
        if (here > best) {
          best = here;
          take[j][s] = 1;
        }
      }
      g[j][s] = best;
    }
  }
  BlockPlan plan;
  plan.value = g[0][0];
  if (plan.value == ninf) return plan;
  std::size_t s = 0;
  for (std::size_t j = 0; j < m; ++j) {
    while (!take[j][s]) ++s;
    plan.starts.push_back(s);
    s += static_cast<std::size_t>(sizes[j]);
  }
  return plan;
}

// Ordered slots for each distinct permutation of the capacity multiset.
template <class Visit>
void for_each_capacity_order(const CapacityVector& caps, Visit&& visit) {
  std::vector<std::size_t> order(caps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto less = [&](std::size_t a, std::size_t b) { return caps[a] < caps[b] || (caps[a] == caps[b] && a < b); };
  std::sort(order.begin(), order.end(), less);
  // Permute capacity values, then map each value back to a concrete capacity index.
  std::vector<int> values;
  for (std::size_t j : order) values.push_back(caps[j]);
  do {
    std::vector<std::size_t> slot_to_cap(values.size());
    std::vector<char> used(caps.size(), 0);
    for (std::size_t s = 0; s < values.size(); ++s)
      for (std::size_t j : order)
        if (!used[j] && caps[j] == values[s]) {
          used[j] = 1;
          slot_to_cap[s] = j;
          break;
        }
    visit(std::span<const int>(values), std::span<const std::size_t>(slot_to_cap));
  } while (std::next_permutation(values.begin(), values.end()));
}

}  // namespace

UpperBoundSolution sw_upper_bound_solution(const Instance& instance, const CapacityVector& caps) {
  const std::size_t n = instance.size();
  if (caps.total() >= static_cast<long long>(n)) throw Error(ErrorKind::Infeasible, "total capacity must be below n");
  const auto xs = instance.positions();
  const BlockCost bc(xs);

  UpperBoundSolution best;
  best.value = -1.0;
  for_each_capacity_order(caps, [&](std::span<const int> sizes, std::span<const std::size_t> slot_to_cap) {
    auto value_of = [&](std::size_t j, std::size_t s) {
      const auto c = static_cast<std::size_t>(sizes[j]);
      return static_cast<double>(c) - bc.cost(s, c, bc.median(s, c));
    };
    const BlockPlan plan = best_blocks(n, sizes, value_of);
    if (plan.value > best.value) {
      best.value = plan.value;
      best.facility_positions.assign(caps.size(), 0.0);
      best.facility_of.assign(n, -1);
      for (std::size_t j = 0; j < sizes.size(); ++j) {
        const auto c = static_cast<std::size_t>(sizes[j]);
        best.facility_positions[slot_to_cap[j]] = bc.median(plan.starts[j], c);
        for (std::size_t i = plan.starts[j]; i < plan.starts[j] + c; ++i)
          best.facility_of[i] = static_cast<int>(slot_to_cap[j]);
      }
    }
  });
  return best;
}

double sw_upper_bound(const Instance& instance, const CapacityVector& caps) {
  return sw_upper_bound_solution(instance, caps).value;
}

UpperBoundSolution sw_upper_bound_flow(const Instance& instance, const CapacityVector& caps) {
  const std::size_t n = instance.size();
  const std::size_t m = caps.size();
  if (caps.total() >= static_cast<long long>(n)) throw Error(ErrorKind::Infeasible, "total capacity must be below n");
  std::vector<double> sites(instance.positions().begin(), instance.positions().end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  const std::size_t u = sites.size();

  UpperBoundSolution best;
  best.value = -1.0;
  std::vector<std::size_t> pick(m, 0);
  std::vector<double> w(n * m);
  for (;;) {
    // Facilities of equal capacity are interchangeable: keep their sites non-decreasing.
    bool canonical = true;
    for (std::size_t a = 0; a < m && canonical; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        if (caps[a] == caps[b] && pick[a] > pick[b]) {
          canonical = false;
          break;
        }
    if (canonical) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) w[i * m + j] = 1.0 - std::abs(instance[i] - sites[pick[j]]);
      AssignmentResult r = max_weight_assignment(w, n, caps.values());
      if (r.value > best.value) {
        best.value = r.value;
        best.facility_of = std::move(r.facility_of);
        best.facility_positions.clear();
        for (std::size_t j = 0; j < m; ++j) best.facility_positions.push_back(sites[pick[j]]);
      }
    }
    std::size_t pos = m;
    while (pos-- > 0) {
      if (++pick[pos] < u) break;
      pick[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
  return best;
}

double sw_upper_bound_fine_grid(const Instance& instance, const CapacityVector& caps, double step) {
  const std::size_t n = instance.size();
  const std::size_t m = caps.size();
  if (m > 2) throw Error(ErrorKind::UnsupportedArity, "fine-grid bound supports at most two facilities");
  if (!(step > 0.0) || step > 1.0) throw Error(ErrorKind::InvalidParams, "grid step must lie in (0, 1]");
  if (caps.total() >= static_cast<long long>(n)) throw Error(ErrorKind::Infeasible, "total capacity must be below n");
  const auto grid = misreport_grid(step);
  const BlockCost bc(instance.positions());
  double best = -1.0;
  if (m == 1) {
    const auto c = static_cast<std::size_t>(caps[0]);
    for (double y : grid)
      for (std::size_t s = 0; s + c <= n; ++s) best = std::max(best, static_cast<double>(c) - bc.cost(s, c, y));
    return best;
  }
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = a; b < grid.size(); ++b) {
      // Facility at grid[a] takes the left block; try both capacity orders.
      for (int flip = 0; flip < 2; ++flip) {
        const int sizes[2] = {flip ? caps[1] : caps[0], flip ? caps[0] : caps[1]};
        const double ys[2] = {grid[a], grid[b]};
        const BlockPlan plan = best_blocks(n, sizes, [&](std::size_t j, std::size_t s) {
          const auto c = static_cast<std::size_t>(sizes[j]);
          return static_cast<double>(c) - bc.cost(s, c, ys[j]);
        });
        best = std::max(best, plan.value);
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------------------------
// Ratios and extremal instances

double placement_ratio(const Instance& instance, const Placement& placement, const PriorityRule& priority) {
  const FcfsGame game(instance, placement, priority);
  const double mech = equilibrium_welfare(game);
  return sw_upper_bound(instance, placement.capacities()) / mech;
}

double empirical_ratio(const Instance& instance, const PercentileVector& v, const CapacityVector& caps,
                       const PriorityRule& priority) {
  if (!es_condition(v, instance.size(), caps))
    throw Error(ErrorKind::NotES, "percentile vector is not ES for n=" + std::to_string(instance.size()));
  return placement_ratio(instance, apply_percentile(v, instance, caps), priority);
}

Placement indexed_placement(const Instance& instance, std::span<const std::size_t> indices, std::span<const int> caps) {
  if (indices.size() != caps.size()) throw Error(ErrorKind::LengthMismatch, "indices and capacities differ in length");
  Placement p;
  p.metric = Metric::Line;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 1 || indices[j] > instance.size())
      throw Error(ErrorKind::InvalidParams, "facility index outside 1..n");
    p.facilities.push_back({{instance.at_rank(indices[j]), 0.0}, caps[j]});
  }
  return p;
}

namespace {

struct Family {
  std::string label;
  bool uses_lambda;
  // 1-based agent index -> position
  std::function<double(std::size_t, double)> position;
};

std::vector<Family> families_for(MechanismKind kind, std::span<const std::size_t> idx) {
  std::vector<Family> out;
  const std::size_t first = idx.front();
  const std::size_t last = idx.back();
  switch (kind) {
    case MechanismKind::AIO:
    case MechanismKind::SBS:
      out.push_back({"median-split", true, [=](std::size_t i, double l) { return i < first ? 0.0 : (i <= last ? l : 1.0); }});
      break;
    case MechanismKind::WG:
    case MechanismKind::AllAside: {
      if (first == last) {
        out.push_back({"median-split", true, [=](std::size_t i, double l) { return i < first ? 0.0 : (i == first ? l : 1.0); }});
        break;
      }
      out.push_back({"wg-left-midpoint", true, [=](std::size_t i, double l) { return i < first ? 0.0 : (i == first ? l : 1.0); }});
      out.push_back({"wg-far-split", false, [=](std::size_t i, double) { return i < last ? 0.0 : 1.0; }});
      out.push_back({"wg-left-split", true, [=](std::size_t i, double l) { return i <= first ? 0.0 : (i < last ? l : 1.0); }});
      out.push_back({"wg-right-midpoint", true, [=](std::size_t i, double l) { return i < last ? 0.0 : (i == last ? l : 1.0); }});
      out.push_back({"wg-gap-midpoint", true, [=](std::size_t i, double l) {
                       return i <= first ? 0.0 : (i < last ? l : (i == last ? (l + 1.0) / 2.0 : 1.0));
                     }});
      break;
    }
    case MechanismKind::UniformGrid: {
      const std::vector<std::size_t> slots(idx.begin(), idx.end());
      const auto m = static_cast<double>(slots.size());
      out.push_back({"grid", false, [=](std::size_t i, double) {
                       std::size_t before = 0;  // slots strictly left of i
                       for (std::size_t j = 0; j < slots.size(); ++j) {
                         if (slots[j] == i) return (2.0 * static_cast<double>(j) + 1.0) / (2.0 * m);
                         if (slots[j] < i) ++before;
                       }
                       return static_cast<double>(before) / m;
                     }});
      out.push_back({"outer-left-midpoint", true, [=](std::size_t i, double l) { return i < first ? 0.0 : (i == first ? l : 1.0); }});
      out.push_back({"outer-left-split", false, [=](std::size_t i, double) { return i <= first ? 0.0 : 1.0; }});
      out.push_back({"outer-right-midpoint", true, [=](std::size_t i, double l) { return i < last ? 0.0 : (i == last ? l : 1.0); }});
      out.push_back({"outer-right-split", false, [=](std::size_t i, double) { return i < last ? 0.0 : 1.0; }});
      break;
    }
  }
  return out;
}

}  // namespace

WorstCaseInstance worst_case_instance(MechanismKind kind, std::size_t n, const CapacityVector& caps,
                                      std::span<const std::size_t> indices) {
  if (caps.total() >= static_cast<long long>(n)) throw Error(ErrorKind::Infeasible, "total capacity must be below n");
  if (indices.size() != caps.size()) throw Error(ErrorKind::LengthMismatch, "one index per capacity entry required");
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 1 || indices[j] > n) throw Error(ErrorKind::InvalidParams, "facility index outside 1..n");
    if (j > 0 && indices[j] < indices[j - 1]) throw Error(ErrorKind::InvalidParams, "indices must be non-decreasing");
  }
  const PriorityRule priority = PriorityRule::by_index(n);
  WorstCaseInstance best;
  best.ratio = -1.0;
  std::vector<double> xs(n);
  for (const Family& f : families_for(kind, indices)) {
    const double lambdas[] = {0.0, 0.5, 1.0};
    for (double lambda : lambdas) {
      if (!f.uses_lambda && lambda != 0.0) continue;
      for (std::size_t i = 1; i <= n; ++i) xs[i - 1] = f.position(i, lambda);
      Instance inst = make_instance(xs);
      const Placement placement = indexed_placement(inst, indices, caps.values());
      const double mech = equilibrium_welfare(FcfsGame(inst, placement, priority));
      const double ub = sw_upper_bound(inst, caps);
      const double ratio = ub / mech;
      if (ratio > best.ratio + 1e-12) {
        best.instance = std::move(inst);
        best.lambda = f.uses_lambda ? lambda : 0.0;
        best.form_label = f.label;
        best.upper_bound = ub;
        best.mechanism_welfare = mech;
        best.ratio = ratio;
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------------------------
// Truthfulness

PlacementRule percentile_rule(PercentileVector v, CapacityVector caps) {
  // No scarcity requirement here: the audit also covers n <= total capacity.
  return [v = std::move(v), caps = std::move(caps)](std::span<const double> reports) {
    if (v.size() != caps.size()) throw Error(ErrorKind::LengthMismatch, "percentile vector and capacities differ");
    const auto inst = make_instance(reports);
    const auto idx = percentile_indices(v, inst.size());
    const auto slot_caps = v.slot_capacities(caps);
    return indexed_placement(inst, idx, slot_caps);
  };
}

PlacementRule mean_rule(CapacityVector caps) {
  return [caps = std::move(caps)](std::span<const double> reports) {
    if (reports.empty()) throw Error(ErrorKind::EmptyInput, "no reports");
    const double mean = std::accumulate(reports.begin(), reports.end(), 0.0) / static_cast<double>(reports.size());
    Placement p;
    p.metric = Metric::Line;
    for (int c : caps.values()) p.facilities.push_back({{mean, 0.0}, c});
    return p;
  };
}

std::vector<double> misreport_grid(double step) {
  if (!(step > 0.0) || step > 1.0) throw Error(ErrorKind::InvalidParams, "grid step must lie in (0, 1]");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  for (std::size_t t = 0; t <= count; ++t) grid.push_back(std::min(1.0, static_cast<double>(t) * step));
  if (grid.back() < 1.0) grid.push_back(1.0);
  return grid;
}

namespace {

// Agent's best utility over its own strategies, opponents fixed.
double best_response_utility(const FcfsGame& game, StrategyProfile profile, std::size_t agent) {
  double best = 0.0;
  for (std::size_t j = 0; j < game.facilities(); ++j) {
    profile[agent] = static_cast<int>(j);
    best = std::max(best, game.resolve(profile).utilities[agent]);
  }
  return best;
}

}  // namespace

std::optional<TruthfulnessWitness> check_absolute_truthfulness(const PlacementRule& mechanism,
                                                               std::span<const double> true_reports,
                                                               std::size_t agent, std::span<const double> grid,
                                                               const PriorityRule& priority,
                                                               const AuditOptions& options) {
  const std::size_t n = true_reports.size();
  if (agent >= n) throw Error(ErrorKind::InvalidParams, "agent index outside the instance");
  for (double g : grid)
    if (!(g >= 0.0 && g <= 1.0)) throw Error(ErrorKind::OutOfRange, "misreport grid must lie in [0,1]");
  std::vector<Point> truth;
  for (double x : true_reports) truth.push_back({x, 0.0});

  const Placement honest = mechanism(true_reports);
  const std::size_t m = honest.size();
  const FcfsGame honest_game(truth, honest, priority);

  // Opponent profiles, shared by every grid point.
  std::vector<StrategyProfile> profiles;
  std::uint64_t total = 1;
  bool exhaustive = true;
  for (std::size_t i = 1; i < n && exhaustive; ++i) {
    if (total > options.exhaustive_limit / m) exhaustive = false;
    total *= m;
  }
  exhaustive = exhaustive && total <= options.exhaustive_limit;
  if (exhaustive) {
    StrategyProfile p(n, 0);
    for (std::uint64_t step = 0; step < total; ++step) {
      profiles.push_back(p);
      for (std::size_t pos = n; pos-- > 0;) {
        if (pos == agent) continue;
        if (static_cast<std::size_t>(++p[pos]) < m) break;
        p[pos] = 0;
      }
    }
  } else {
    Rng rng(options.seed);
    for (std::size_t s = 0; s < options.sampled_profiles; ++s) {
      StrategyProfile p(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        if (i != agent) p[i] = static_cast<int>(rng.below(m));
      profiles.push_back(std::move(p));
    }
  }
  std::vector<double> honest_best(profiles.size());
  for (std::size_t q = 0; q < profiles.size(); ++q) honest_best[q] = best_response_utility(honest_game, profiles[q], agent);

  std::vector<std::optional<TruthfulnessWitness>> found(grid.size());
  parallel_for(grid.size(), [&](std::size_t g) {
    std::vector<double> reports(true_reports.begin(), true_reports.end());
    reports[agent] = grid[g];
    const Placement moved = mechanism(reports);
    if (moved.size() != m) throw Error(ErrorKind::InvalidParams, "mechanism changed the number of facilities");
    const FcfsGame game(truth, moved, priority);
    for (std::size_t q = 0; q < profiles.size(); ++q) {
      const double u = best_response_utility(game, profiles[q], agent);
      if (u > honest_best[q] + kDeviationTolerance) {
        found[g] = TruthfulnessWitness{grid[g], profiles[q], honest_best[q], u};
        return;
      }
    }
  });
  for (auto& w : found)
    if (w) return w;
  return std::nullopt;
}

}  // namespace capflp
