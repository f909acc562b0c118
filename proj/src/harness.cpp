#include "capflp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "capflp/analysis.hpp"
#include "capflp/error.hpp"
#include "capflp/io.hpp"
#include "capflp/parallel.hpp"
#include "capflp/rng.hpp"

namespace capflp {
namespace {

std::string metric_name(RatioMetric m) {
  switch (m) {
    case RatioMetric::Bayesian: return "bayesian";
    case RatioMetric::AverageCase: return "average";
    case RatioMetric::Both: return "both";
  }
  return "both";
}

RatioMetric parse_metric(const std::string& s) {
  if (s == "bayesian") return RatioMetric::Bayesian;
  if (s == "average" || s == "average-case") return RatioMetric::AverageCase;
  if (s == "both") return RatioMetric::Both;
  throw Error(ErrorKind::InvalidParams, "metric must be bayesian, average or both");
}

std::string format_number(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

MechanismSpec mechanism_from_json(const nlohmann::json& j) {
  MechanismSpec spec;
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "best") {
      spec.kind = MechanismSpec::Kind::Best;
    } else if (name == "extremes") {
      spec.kind = MechanismSpec::Kind::Extremes;
    } else {
      throw Error(ErrorKind::InvalidParams, "unknown mechanism name '" + name + "'");
    }
    return spec;
  }
  if (j.is_array() || (j.is_object() && j.contains("v"))) {
    spec.kind = MechanismSpec::Kind::Fixed;
    const PercentileVector v = percentile_from_json(j);
    spec.v.assign(v.entries().begin(), v.entries().end());
    if (j.is_object() && j.contains("label")) spec.label = j["label"].get<std::string>();
    return spec;
  }
  throw Error(ErrorKind::InvalidParams, "mechanism must be \"best\", \"extremes\" or {\"v\": [...]}");
}

}  // namespace

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidParams, "experiment config must be a JSON object");
  ExperimentConfig c;
  try {
    for (const auto& m : j.at("mechanisms")) c.mechanisms.push_back(mechanism_from_json(m));
    c.distribution = distribution_from_json(j.at("distribution"));
    for (const auto& n : j.at("n_values")) c.n_values.push_back(n.get<std::size_t>());
    for (const auto& a : j.at("capacity_rule")) c.capacity_rule.push_back(a.get<double>());
    c.trials = j.at("trials").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.metric = parse_metric(j.value("metric", std::string("both")));
    c.bootstrap = j.value("bootstrap", std::size_t{2000});
    c.per_trial = j.value("per_trial", false);
    c.threads = j.value("threads", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidParams, std::string("experiment config: ") + e.what());
  }
  if (c.mechanisms.empty()) throw Error(ErrorKind::InvalidParams, "experiment needs at least one mechanism");
  if (c.n_values.empty()) throw Error(ErrorKind::InvalidParams, "experiment needs at least one n");
  if (c.capacity_rule.empty()) throw Error(ErrorKind::InvalidParams, "capacity_rule is empty");
  for (double a : c.capacity_rule)
    if (!(a >= 0.0 && a < 1.0)) throw Error(ErrorKind::InvalidParams, "capacity fractions must lie in [0,1)");
  if (c.trials < 1) throw Error(ErrorKind::InvalidParams, "trials must be >= 1");
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json mechs = nlohmann::json::array();
  for (const auto& m : c.mechanisms) {
    switch (m.kind) {
      case MechanismSpec::Kind::Best: mechs.push_back("best"); break;
      case MechanismSpec::Kind::Extremes: mechs.push_back("extremes"); break;
      case MechanismSpec::Kind::Fixed: {
        nlohmann::json e{{"v", m.v}};
        if (!m.label.empty()) e["label"] = m.label;
        mechs.push_back(e);
        break;
      }
    }
  }
  return nlohmann::json{{"mechanisms", mechs},
                        {"distribution", to_json(c.distribution)},
                        {"n_values", c.n_values},
                        {"capacity_rule", c.capacity_rule},
                        {"trials", c.trials},
                        {"seed", c.seed},
                        {"metric", metric_name(c.metric)},
                        {"bootstrap", c.bootstrap},
                        {"per_trial", c.per_trial}};
}

CapacityVector capacities_for(const ExperimentConfig& config, std::size_t n) {
  std::vector<int> caps;
  for (double a : config.capacity_rule) {
    // The small offset keeps products like 0.2 * 30 from flooring one below.
    const auto k = static_cast<long long>(std::floor(a * static_cast<double>(n) + 1e-9));
    caps.push_back(static_cast<int>(std::max(1LL, k)));
  }
  std::sort(caps.begin(), caps.end(), std::greater<>());
  CapacityVector out(caps);
  out.require_scarce(n);
  return out;
}

std::string mechanism_label(const MechanismSpec& spec) {
  if (!spec.label.empty()) return spec.label;
  switch (spec.kind) {
    case MechanismSpec::Kind::Best: return "best";
    case MechanismSpec::Kind::Extremes: return "extremes";
    case MechanismSpec::Kind::Fixed: {
      std::ostringstream out;
      out << "pm(";
      for (std::size_t j = 0; j < spec.v.size(); ++j) out << (j ? ";" : "") << spec.v[j];
      out << ')';
      return out.str();
    }
  }
  return "?";
}

PercentileVector resolve_mechanism(const MechanismSpec& spec, std::size_t n, const CapacityVector& caps) {
  const std::size_t m = caps.size();
  switch (spec.kind) {
    case MechanismSpec::Kind::Best:
      if (m == 2) return best_wg_vector(n, std::max(caps[0], caps[1]), std::min(caps[0], caps[1])).v;
      if (!caps.uniform()) throw Error(ErrorKind::UnsupportedCase, "\"best\" for m > 2 needs uniform capacities");
      return best_uniform_vector_m(n, caps[0], m).v;
    case MechanismSpec::Kind::Extremes: {
      if (m == 1) return PercentileVector({0.5});
      std::vector<double> v;
      for (std::size_t j = 0; j < m; ++j) v.push_back(static_cast<double>(j) / static_cast<double>(m - 1));
      return PercentileVector(std::move(v));
    }
    case MechanismSpec::Kind::Fixed:
      return PercentileVector(spec.v);
  }
  throw Error(ErrorKind::InvalidParams, "unknown mechanism kind");
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::pair<double, double> bootstrap_ratio_ci(std::span<const double> a, std::span<const double> b,
                                             std::size_t resamples, std::uint64_t seed) {
  if (a.size() != b.size() || a.empty()) throw Error(ErrorKind::LengthMismatch, "bootstrap needs paired samples");
  if (resamples == 0) {
    const double r = pairwise_sum(a) / pairwise_sum(b);
    return {r, r};
  }
  Rng rng(seed);
  const std::size_t t = a.size();
  std::vector<double> stats(resamples);
  std::vector<double> ra(t), rb(t);
  for (std::size_t r = 0; r < resamples; ++r) {
    for (std::size_t i = 0; i < t; ++i) {
      const auto pick = static_cast<std::size_t>(rng.below(t));
      ra[i] = a[pick];
      rb[i] = b[pick];
    }
    stats[r] = pairwise_sum(ra) / pairwise_sum(rb);
  }
  std::sort(stats.begin(), stats.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(resamples - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, resamples - 1);
    return stats[lo] + (pos - static_cast<double>(lo)) * (stats[hi] - stats[lo]);
  };
  return {quantile(0.025), quantile(0.975)};
}

RatioReport run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) throw Error(ErrorKind::InvalidParams, "trials must be >= 1");
  validate(config.distribution);

  struct Plan {
    std::size_t n;
    CapacityVector caps;
    std::vector<PercentileVector> vectors;
  };
  std::vector<Plan> plans;
  for (std::size_t n : config.n_values) {
    Plan plan{n, capacities_for(config, n), {}};
    for (const auto& spec : config.mechanisms) {
      PercentileVector v = resolve_mechanism(spec, n, plan.caps);
      if (!es_condition(v, n, plan.caps)) {
        std::ostringstream msg;
        msg << "mechanism " << mechanism_label(spec) << " is not ES at n=" << n << ", k=(";
        for (std::size_t j = 0; j < plan.caps.size(); ++j) msg << (j ? "," : "") << plan.caps[j];
        msg << ')';
        throw Error(ErrorKind::NotES, msg.str());
      }
      plan.vectors.push_back(std::move(v));
    }
    plans.push_back(std::move(plan));
  }

  RatioReport report;
  report.seed = config.seed;
  report.per_trial = config.per_trial;
  const std::size_t threads = config.threads ? config.threads : thread_count();

  for (std::size_t pi = 0; pi < plans.size(); ++pi) {
    const Plan& plan = plans[pi];
    const std::size_t nm = plan.vectors.size();
    std::vector<double> ub(config.trials);
    std::vector<double> sw(config.trials * nm);
    const PriorityRule priority = PriorityRule::by_index(plan.n);
    parallel_for(
        config.trials,
        [&](std::size_t t) {
          const Instance inst = sample_positions(config.distribution, plan.n, derive_seed(config.seed, plan.n, t));
          ub[t] = sw_upper_bound(inst, plan.caps);
          for (std::size_t k = 0; k < nm; ++k) {
            const Placement p = apply_percentile(plan.vectors[k], inst, plan.caps);
            sw[t * nm + k] = equilibrium_welfare(FcfsGame(inst, p, priority));
          }
        },
        threads);

    for (std::size_t k = 0; k < nm; ++k) {
      TrialSeries series;
      series.mechanism = mechanism_label(config.mechanisms[k]);
      series.n = plan.n;
      series.capacities.assign(plan.caps.values().begin(), plan.caps.values().end());
      series.v.assign(plan.vectors[k].entries().begin(), plan.vectors[k].entries().end());
      series.sw_ub = ub;
      series.sw_mech.resize(config.trials);
      std::vector<double> ratios(config.trials);
      for (std::size_t t = 0; t < config.trials; ++t) {
        series.sw_mech[t] = sw[t * nm + k];
        ratios[t] = ub[t] / series.sw_mech[t];
      }
      const double T = static_cast<double>(config.trials);

      if (config.metric != RatioMetric::AverageCase) {
        RatioCell cell{series.mechanism, plan.n, "bayesian", 0.0, 0.0, 0.0, config.trials, config.seed};
        cell.mean = pairwise_sum(series.sw_ub) / pairwise_sum(series.sw_mech);
        const auto [lo, hi] = bootstrap_ratio_ci(series.sw_ub, series.sw_mech, config.bootstrap,
                                                 derive_seed(config.seed ^ 0xb0075743a9c1e5d1ULL, plan.n, k));
        cell.ci95_lo = lo;
        cell.ci95_hi = hi;
        report.cells.push_back(cell);
      }
      if (config.metric != RatioMetric::Bayesian) {
        RatioCell cell{series.mechanism, plan.n, "average", 0.0, 0.0, 0.0, config.trials, config.seed};
        cell.mean = pairwise_sum(ratios) / T;
        std::vector<double> sq(config.trials);
        for (std::size_t t = 0; t < config.trials; ++t) sq[t] = (ratios[t] - cell.mean) * (ratios[t] - cell.mean);
        const double var = config.trials > 1 ? pairwise_sum(sq) / (T - 1.0) : 0.0;
        const double half = 1.96 * std::sqrt(var / T);
        cell.ci95_lo = cell.mean - half;
        cell.ci95_hi = cell.mean + half;
        report.cells.push_back(cell);
      }
      report.series.push_back(std::move(series));
    }
  }
  return report;
}

const RatioCell* find_cell(const RatioReport& report, const std::string& mechanism, std::size_t n,
                           const std::string& metric) {
  for (const auto& c : report.cells)
    if (c.mechanism == mechanism && c.n == n && c.metric == metric) return &c;
  return nullptr;
}

std::string report_to_csv(const RatioReport& report) {
  std::ostringstream out;
  out << "mechanism,n,metric,mean,ci95_lo,ci95_hi,trials,seed\n";
  for (const auto& c : report.cells)
    out << c.mechanism << ',' << c.n << ',' << c.metric << ',' << format_number(c.mean) << ','
        << format_number(c.ci95_lo) << ',' << format_number(c.ci95_hi) << ',' << c.trials << ',' << c.seed << '\n';
  return out.str();
}

std::string report_trials_to_csv(const RatioReport& report) {
  std::ostringstream out;
  out << "mechanism,n,trial,sw_ub,sw_mech,ratio\n";
  for (const auto& s : report.series)
    for (std::size_t t = 0; t < s.sw_ub.size(); ++t)
      out << s.mechanism << ',' << s.n << ',' << t << ',' << format_number(s.sw_ub[t]) << ','
          << format_number(s.sw_mech[t]) << ',' << format_number(s.sw_ub[t] / s.sw_mech[t]) << '\n';
  return out.str();
}

nlohmann::json report_to_json(const RatioReport& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells)
    cells.push_back({{"mechanism", c.mechanism},
                     {"n", c.n},
                     {"metric", c.metric},
                     {"mean", c.mean},
                     {"ci95_lo", c.ci95_lo},
                     {"ci95_hi", c.ci95_hi},
                     {"trials", c.trials},
                     {"seed", c.seed}});
  nlohmann::json out{{"seed", report.seed}, {"cells", cells}};
  nlohmann::json series = nlohmann::json::array();
  for (const auto& s : report.series) {
    nlohmann::json e{{"mechanism", s.mechanism}, {"n", s.n}, {"capacities", s.capacities}, {"v", s.v}};
    if (report.per_trial) {
      e["sw_ub"] = s.sw_ub;
      e["sw_mech"] = s.sw_mech;
    }
    series.push_back(e);
  }
  out["series"] = series;
  return out;
}

std::vector<RatioCell> cells_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "mechanism,n,metric,mean,ci95_lo,ci95_hi,trials,seed")
    throw Error(ErrorKind::InvalidParams, "report CSV header mismatch");
  std::vector<RatioCell> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream row(line);
    std::string item;
    while (std::getline(row, item, ',')) f.push_back(item);
    if (f.size() != 8) throw Error(ErrorKind::InvalidParams, "report CSV row needs 8 fields");
    try {
      cells.push_back({f[0], std::stoul(f[1]), f[2], std::stod(f[3]), std::stod(f[4]), std::stod(f[5]),
                       std::stoul(f[6]), std::stoull(f[7])});
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidParams, "bad report CSV row '" + line + "'");
    }
  }
  return cells;
}

void emit_report(const RatioReport& report, ReportFormat format, const std::string& path) {
  if (format == ReportFormat::Json) {
    write_text_file(path, report_to_json(report).dump(2) + "\n");
    return;
  }
  write_text_file(path, report_to_csv(report));
  if (report.per_trial) write_text_file(path + ".trials.csv", report_trials_to_csv(report));
}

}  // namespace capflp
