// Acceptance suite: one PASS/FAIL line per criterion, details indented below it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "capflp/analysis.hpp"
#include "capflp/distribution.hpp"
#include "capflp/fcfs.hpp"
#include "capflp/harness.hpp"
#include "capflp/mechanisms.hpp"
#include "capflp/planar.hpp"
#include "capflp/rng.hpp"
#include "oracles.hpp"

using namespace capflp;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    notes.push_back(why);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

template <class... T>
std::string cat(const T&... parts) {
  std::ostringstream os;
  os.precision(12);
  (os << ... << parts);
  return os.str();
}

int failures = 0;

void run(int id, const std::string& name, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(cat("exception: ", e.what()));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_seconds) o.fail(cat("runtime ", secs, " s over the ", limit_seconds, " s budget"));
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " (" << cat(std::round(secs * 1000) / 1000)
            << " s)\n";
  for (const auto& n : o.notes) std::cout << "    " << n << "\n";
  std::cout.flush();
}

// Percentile that lands exactly on 1-based index i.
double percentile_for(std::size_t i, std::size_t n) {
  if (n == 1 || i == n) return 1.0;
  return (static_cast<double>(i) - 0.5) / static_cast<double>(n - 1);
}

PercentileVector vector_for(std::span<const std::size_t> idx, std::size_t n) {
  std::vector<double> v;
  for (std::size_t i : idx) v.push_back(percentile_for(i, n));
  return PercentileVector(v);
}

std::vector<double> witness_positions(std::size_t n, std::size_t i1, std::size_t i2) {
  std::vector<double> xs(n);
  for (std::size_t j = 1; j <= n; ++j) {
    double x = 0.9;
    if (j < i1) x = 0.0;
    else if (j == i1) x = 0.4;
    else if (j < i2) x = 0.5;
    else if (j == i2) x = 0.6;
    xs[j - 1] = x;
  }
  return xs;
}

void criterion1(Outcome& o) {
  const auto x = make_instance({0, 0.3, 0.4, 0.5, 0.9});
  const double ys[] = {0.3, 0.5};
  const auto p = line_placement(ys, CapacityVector{2, 2});
  const auto pr = PriorityRule::by_index(5);
  const FcfsGame g(x, p, pr);
  const auto all = g.enumerate_ne();
  const StrategyProfile g1{0, 0, 1, 1, 1}, g2{0, 0, 0, 1, 1};
  for (const auto& [s, sw, name] : {std::tuple{g1, 3.6, "gamma_1"}, std::tuple{g2, 3.5, "gamma_2"}}) {
    if (std::find(all.begin(), all.end(), s) == all.end()) o.fail(cat(name, " missing from the NE set"));
    const double w = social_welfare(g.resolve(s));
    if (std::abs(w - sw) > 1e-12) o.fail(cat(name, " welfare ", w, " != ", sw));
  }
  const auto st = g.check_equilibrium_stability();
  if (st.stable) o.fail("stability check reported stable");
  o.note(cat(all.size(), " NE found; welfare set size ", st.welfare_values.size()));
}

void criterion2(Outcome& o) {
  Rng rng(20240601);
  std::size_t es_configs = 0, non_es = 0, es_mismatch = 0, witness_mismatch = 0;
  std::vector<std::string> examples;
  for (std::size_t n = 3; n <= 8; ++n)
    for (int k1 = 1; k1 < static_cast<int>(n); ++k1)
      for (int k2 = 1; k1 + k2 < static_cast<int>(n); ++k2)
        for (std::size_t i1 = 1; i1 <= n; ++i1)
          for (std::size_t i2 = i1 + 2; i2 <= n; ++i2) {
            const std::size_t idx[] = {i1, i2};
            const int caps[] = {k1, k2};
            const auto pr = PriorityRule::by_index(n);
            if (es_condition_indices(idx, caps)) {
              ++es_configs;
              for (int t = 0; t < 200; ++t) {
                std::vector<double> xs = rng.below(2) ? oracle::grid_positions(rng, n, 2 + rng.below(9))
                                                      : std::vector<double>(n);
                if (xs.back() == 0.0)
                  for (auto& v : xs) v = rng.uniform();
                const auto inst = make_instance(xs);
                if (!check_equilibrium_stability(inst, indexed_placement(inst, idx, caps), pr).stable) {
                  ++es_mismatch;
                  break;
                }
              }
            } else {
              ++non_es;
              const auto inst = make_instance(witness_positions(n, i1, i2));
              if (check_equilibrium_stability(inst, indexed_placement(inst, idx, caps), pr).stable) {
                ++witness_mismatch;
                if (examples.size() < 8) examples.push_back(cat("(n=", n, " k=", k1, ",", k2, " i=", i1, ",", i2, ")"));
              }
            }
          }
  o.note(cat(es_configs, " ES configurations x 200 instances, ", es_mismatch, " unstable"));
  o.note(cat(non_es, " non-ES configurations, ", witness_mismatch, " with a stable witness instance"));
  if (es_mismatch) o.fail(cat(es_mismatch, " ES configurations produced an unstable instance"));
  if (witness_mismatch) {
    std::string list;
    for (const auto& e : examples) list += e + " ";
    o.fail(cat("witness instance is stable in ", witness_mismatch, " non-ES configurations, e.g. ", list));
    o.note("all such cases have a capacity-1 facility; a random grid search found no unstable instance for them");
  }
}

struct RatioItem {
  std::string name;
  MechanismKind kind;
  std::size_t n;
  std::vector<int> caps;
  std::vector<std::size_t> idx;
  double stated;
  double formula;
};

void criterion3(Outcome& o) {
  std::vector<RatioItem> items = {
      {"WG (10,2,2,1,9)", MechanismKind::WG, 10, {2, 2}, {1, 9}, 8.0 / 7.0, ar_wg(10, 2, 2, 1, 9).ratio},
      {"WG (10,3,2,2,9)", MechanismKind::WG, 10, {3, 2}, {2, 9}, 5.0 / 4.0, ar_wg(10, 3, 2, 2, 9).ratio},
      {"WG (10,6,2,3,10)", MechanismKind::WG, 10, {6, 2}, {3, 10}, 8.0 / 5.0, ar_wg(10, 6, 2, 3, 10).ratio},
      {"uniform grid (20,3,3,4,14)", MechanismKind::UniformGrid, 20, {3, 3, 3}, {4, 9, 14}, 9.0 / 8.0,
       ar_uniform_m(20, 3, 3, 4, 14).ratio},
      {"median AIO (10,2,2)", MechanismKind::AIO, 10, {2, 2}, {5, 5}, 8.0 / 5.0, ar_median_aio(10, 2, 2).ratio},
      {"AIO-m (5,2,2)", MechanismKind::AIO, 5, {2, 2}, {3, 3}, 8.0 / 5.0, ar_aio_m(5, 2, 2).ratio},
  };
  Rng rng(777);
  for (const auto& it : items) {
    const CapacityVector caps(it.caps);
    const auto v = vector_for(it.idx, it.n);
    const auto pr = PriorityRule::by_index(it.n);
    const auto w = worst_case_instance(it.kind, it.n, caps, it.idx);
    const double attained = empirical_ratio(w.instance, v, caps, pr);
    double worst_random = 0.0;
    for (int t = 0; t < 10000; ++t) {
      std::vector<double> xs;
      switch (t % 3) {
        case 0: xs = oracle::grid_positions(rng, it.n, 2 + rng.below(10)); break;
        case 1: {
          const auto s = sample_positions(UniformDist{}, it.n, rng.next_u64());
          xs.assign(s.positions().begin(), s.positions().end());
          break;
        }
        default: {
          // perturbations of the extremal instance
          xs.assign(w.instance.positions().begin(), w.instance.positions().end());
          for (auto& x : xs)
            if (rng.below(3) == 0) x = std::clamp(x + (rng.uniform() - 0.5) * 0.2, 0.0, 1.0);
        }
      }
      worst_random = std::max(worst_random, empirical_ratio(make_instance(xs), v, caps, pr));
    }
    const bool ok_attain = std::abs(attained - it.stated) <= 1e-9;
    const bool ok_bound = worst_random <= it.stated + 1e-9;
    const std::string line = cat(it.name, ": stated ", it.stated, ", implemented formula ", it.formula,
                                 ", worst case (", w.form_label, ") ", attained, ", random max ", worst_random);
    if (ok_attain && ok_bound) o.note(line);
    else o.fail(line);
  }
}

void criterion4(Outcome& o) {
  int checked = 0;
  for (std::size_t m = 2; m <= 6; ++m)
    for (int k = 2; k <= 5; ++k) {
      const std::size_t n = 2 * static_cast<std::size_t>(k) * m;
      const auto r = best_uniform_vector_m(n, k, m);
      const double bound = 1.0 + 1.0 / (2.0 * static_cast<double>(m) - 1.0);
      // integer form of mk/((m-1/2)k+1/2) <= 2m/(2m-1): 2mk(2m-1) <= 2m((2m-1)k+1)
      const long long mm = static_cast<long long>(m);
      const bool exact = 2 * mm * k * (2 * mm - 1) <= 2 * mm * ((2 * mm - 1) * k + 1);
      if (!(r.predicted_ratio <= bound) || !exact)
        o.fail(cat("m=", m, " k=", k, ": predicted ", r.predicted_ratio, " > ", bound));
      ++checked;
    }
  o.note(cat(checked, " (m, k) pairs checked"));
}

void criterion5(Outcome& o) {
  Rng rng(5150);
  const auto grid = misreport_grid(0.01);
  std::size_t audits = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.below(6);
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.below(4) == 0 ? static_cast<double>(rng.below(11)) / 10.0 : rng.uniform();
    std::vector<double> v{rng.uniform(), rng.uniform()};
    std::sort(v.begin(), v.end());
    const CapacityVector caps{1 + static_cast<int>(rng.below(2)), 1 + static_cast<int>(rng.below(2))};
    const auto rule = percentile_rule(PercentileVector(v), caps);
    for (std::size_t a = 0; a < n; ++a) {
      ++audits;
      AuditOptions opts;
      opts.seed = derive_seed(5150, t, a);
      const auto w = check_absolute_truthfulness(rule, xs, a, grid, PriorityRule::by_index(n), opts);
      if (w) {
        o.fail(cat("percentile v=(", v[0], ",", v[1], ") agent ", a, " gains by reporting ", w->misreport));
        break;
      }
    }
  }
  o.note(cat(audits, " agent audits over 100 (v, instance) pairs"));
  const std::vector<double> control{0.2, 0.8};
  const auto w = check_absolute_truthfulness(mean_rule(CapacityVector{1}), control, 0, grid, PriorityRule::by_index(2));
  if (!w) o.fail("mean-mechanism control: no witness");
  else o.note(cat("mean control on (0.2, 0.8): report ", w->misreport, " raises utility ", w->truthful_utility,
                  " -> ", w->misreport_utility));
}

void criterion6(Outcome& o) {
  const double r2 = std::sqrt(2.0);
  const CapacityVector k{2, 2};
  {
    const std::vector<Point> pts{{0, 0}, {0, 0}, {0, 0}, {0.4, 0.4}, {0.4, 0.5}, {0.5, 0.5},
                                 {0.8, 0.8}, {0.8, 0.8}, {0.8, 0.8}, {0.8, 0.8}};
    Placement p;
    p.metric = Metric::Plane;
    p.facilities = {{{0.4, 0.4}, 2}, {{0.5, 0.5}, 2}};
    const auto st = FcfsGame(pts, p, PriorityRule::by_index(10)).check_equilibrium_stability();
    if (st.stable) o.fail("Example 2: placement (0.4,0.4),(0.5,0.5) reported stable");
    else o.note(cat("Example 2: ", st.welfare_values.size(), " distinct NE welfare values"));
  }
  {
    const std::vector<Point> pts{{0, 0}, {0.2, 0}, {0.2, 1}, {0.4, 0}, {0.7, 0},
                                 {0.7, 0}, {0.7, 0}, {0.7, 0}, {0.7, 0}, {0.7, 0}};
    Placement p;
    p.metric = Metric::Plane;
    p.facilities = {{{0, 0}, 2}, {{0.4, 0}, 2}};
    const auto st = FcfsGame(pts, p, PriorityRule::by_index(10)).check_equilibrium_stability();
    const std::vector<double> want{3.1 * r2, 3.5 * r2};
    bool match = st.welfare_values.size() == 2;
    for (std::size_t i = 0; match && i < 2; ++i) match = std::abs(st.welfare_values[i] - want[i]) <= 1e-9;
    std::string got;
    for (double w : st.welfare_values) got += cat(w, " ");
    const auto line = cat("Example 3: NE welfare {", got, "} vs stated {", want[0], " ", want[1], "}");
    if (match) o.note(line);
    else o.fail(line + "; with utility sqrt2 - d the set is {4 sqrt2 - 0.9, 4 sqrt2 - 0.5}");
  }
  {
    const double r = ar_median_planar(5, 2, 2).ratio;
    const auto line = cat("ar_median_planar(5,2,2) = ", r, " vs stated 2.12930");
    if (std::abs(r - 2.12930) <= 1e-4) o.note(line);
    else o.fail(line + "; the stated expression evaluates to 2.1291549");
  }
  {
    const auto x = median_planar_worst_case(5);
    const FcfsGame g(x.points(), planar_median_placement(x, k), PriorityRule::by_index(5));
    const double sw = equilibrium_welfare(g);
    const double want = (r2 - 1) * 4 + 1;
    const auto line = cat("median worst case SW ", sw, " vs ", want);
    if (std::abs(sw - want) <= 1e-9) o.note(line);
    else o.fail(line);
  }
}

void criterion7(Outcome& o) {
  ExperimentConfig c;
  c.mechanisms = {MechanismSpec{MechanismSpec::Kind::Best, {}, ""}, MechanismSpec{MechanismSpec::Kind::Fixed, {0.0, 1.0}, ""}};
  c.n_values = {10, 20, 30, 40, 50};
  c.capacity_rule = {0.2, 0.2};
  c.trials = 500;
  c.seed = 2024;
  const auto r = run_experiment(c);
  const std::string ext = mechanism_label(c.mechanisms[1]);
  for (std::size_t n : c.n_values) {
    const auto* bb = find_cell(r, "best", n, "bayesian");
    const auto* ba = find_cell(r, "best", n, "average");
    const auto* eb = find_cell(r, ext, n, "bayesian");
    if (!bb || !ba || !eb) {
      o.fail(cat("missing cells at n=", n));
      continue;
    }
    const auto line = cat("n=", n, ": best bayes ", bb->mean, " avg ", ba->mean, "; ", ext, " bayes ", eb->mean);
    if (bb->mean <= eb->mean && bb->mean <= 1.15 && ba->mean <= 1.15) o.note(line);
    else o.fail(line);
  }
  ExperimentConfig mix = c;
  mix.mechanisms.resize(1);
  mix.distribution = MixtureDist{{1.0 / 3, 1.0 / 3, 1.0 / 3}, BetaDist{5, 5}};
  const auto rm = run_experiment(mix);
  for (std::size_t n : mix.n_values) {
    const auto* bb = find_cell(rm, "best", n, "bayesian");
    const auto line = cat("mixture n=", n, ": best bayes ", bb ? bb->mean : -1.0);
    if (bb && bb->mean <= 1.05) o.note(line);
    else o.fail(line);
  }
}

void criterion8(Outcome& o) {
  Rng rng(8088);
  std::size_t mism = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng.below(6);
    const std::size_t m = 1 + rng.below(std::min<std::size_t>(3, n - 1));
    std::vector<int> caps;
    int left = static_cast<int>(n) - 1;
    for (std::size_t j = 0; j < m; ++j) {
      const int room = left - static_cast<int>(m - j - 1);
      caps.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, std::min(room, 3))))));
      left -= caps.back();
    }
    const auto inst = sample_positions(UniformDist{}, n, rng.next_u64());
    const std::vector<double> xs(inst.positions().begin(), inst.positions().end());
    const CapacityVector kv(caps);
    const auto flow = sw_upper_bound_flow(inst, kv);
    const auto dp = sw_upper_bound_solution(inst, kv);
    const auto ex = oracle::exhaustive_upper_bound(xs, caps);
    const auto want = oracle::lattice_value(xs, ex.facility_positions, ex.facility_of);
    const auto got = oracle::lattice_value(xs, flow.facility_positions, flow.facility_of);
    const auto got_dp = oracle::lattice_value(xs, dp.facility_positions, dp.facility_of);
    if (got != want || got_dp != want) {
      ++mism;
      if (mism <= 5) o.fail(cat("instance ", t, ": flow ", flow.value, " dp ", dp.value, " exhaustive ", ex.value));
    }
  }
  o.note(cat("500 instances, ", mism, " mismatches (compared in 2^-53 units)"));
  if (mism) o.fail(cat(mism, " mismatches"));
}

}  // namespace

int main() {
  run(1, "Example 1 reproduction", 1, criterion1);
  run(2, "ES characterization vs oracle", 300, criterion2);
  run(3, "closed-form ratio attainment", 600, criterion3);
  run(4, "best uniform vector bound", 1, criterion4);
  run(5, "absolute truthfulness audit", 600, criterion5);
  run(6, "planar examples", 60, criterion6);
  run(7, "experiment regression", 900, criterion7);
  run(8, "SW_UB oracle equivalence", 300, criterion8);
  std::cout << (8 - failures) << "/8 criteria passed\n";
  return failures == 0 ? 0 : 1;
}
