#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "capflp/distribution.hpp"
#include "capflp/mechanisms.hpp"

namespace capflp {

enum class RatioMetric { Bayesian, AverageCase, Both };

struct MechanismSpec {
  enum class Kind { Best, Extremes, Fixed };
  Kind kind = Kind::Best;
  std::vector<double> v;  // Fixed only
  std::string label;
};

struct ExperimentConfig {
  std::vector<MechanismSpec> mechanisms;
  DistributionSpec distribution = UniformDist{};
  std::vector<std::size_t> n_values;
  std::vector<double> capacity_rule;  // k_j = max(1, floor(alpha_j n))
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  RatioMetric metric = RatioMetric::Both;
  std::size_t bootstrap = 2000;
  bool per_trial = false;
  std::size_t threads = 0;  // 0: CAPFLP_THREADS or hardware concurrency
};

// Throws InvalidParams on malformed configs.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);

// Capacities for n under the rule, larger first.
CapacityVector capacities_for(const ExperimentConfig& config, std::size_t n);
// Percentile vector the spec resolves to at (n, caps).
PercentileVector resolve_mechanism(const MechanismSpec& spec, std::size_t n, const CapacityVector& caps);
std::string mechanism_label(const MechanismSpec& spec);

struct RatioCell {
  std::string mechanism;
  std::size_t n = 0;
  std::string metric;  // "bayesian" | "average"
  double mean = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct TrialSeries {
  std::string mechanism;
  std::size_t n = 0;
  std::vector<int> capacities;
  std::vector<double> v;
  std::vector<double> sw_ub;
  std::vector<double> sw_mech;
};

struct RatioReport {
  std::vector<RatioCell> cells;
  std::vector<TrialSeries> series;  // one per (mechanism, n), trial order
  bool per_trial = false;
  std::uint64_t seed = 0;
};

// Throws NotES naming (mechanism, n, k) before any trial runs, CapacityInfeasible for a bad rule.
RatioReport run_experiment(const ExperimentConfig& config);

const RatioCell* find_cell(const RatioReport& report, const std::string& mechanism, std::size_t n,
                           const std::string& metric);

// Summation with a fixed pairwise tree, independent of thread scheduling.
double pairwise_sum(std::span<const double> values);
// Percentile bootstrap for mean(a) / mean(b) over paired samples.
std::pair<double, double> bootstrap_ratio_ci(std::span<const double> a, std::span<const double> b,
                                             std::size_t resamples, std::uint64_t seed);

enum class ReportFormat { Csv, Json };

std::string report_to_csv(const RatioReport& report);
// mechanism,n,trial,sw_ub,sw_mech,ratio
std::string report_trials_to_csv(const RatioReport& report);
nlohmann::json report_to_json(const RatioReport& report);
std::vector<RatioCell> cells_from_csv(const std::string& text);

// CSV also writes `<path>.trials.csv` when the report carries per-trial data.  Throws IoError.
void emit_report(const RatioReport& report, ReportFormat format, const std::string& path);

}  // namespace capflp
