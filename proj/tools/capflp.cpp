#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "capflp/analysis.hpp"
#include "capflp/distribution.hpp"
#include "capflp/error.hpp"
#include "capflp/fcfs.hpp"
#include "capflp/harness.hpp"
#include "capflp/io.hpp"
#include "capflp/mechanisms.hpp"
#include "capflp/rng.hpp"

using namespace capflp;

namespace {

// Arguments accept either a path or inline text.
std::string arg_text(const std::string& value) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(value, ec)) return read_text_file(value);
  return value;
}

json arg_json(const std::string& value, const char* what) {
  try {
    return json::parse(arg_text(value));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidParams, std::string("malformed ") + what + ": " + e.what());
  }
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Percentile mechanisms for capacitated facility location under FCFS service"};
  app.require_subcommand(1);

  std::string dist = "uniform", instance_arg, v_arg, caps_arg, placement_arg, kind_arg, indices_arg, config_arg,
              out_arg, format = "json", outcome_csv;
  std::size_t n = 0, m = 0, agent = 0, random_instances = 200;
  int k1 = 0, k2 = 0, k = 0;
  std::uint64_t seed = 0;
  bool enumerate = false, brute_force = false, per_trial = false;
  double grid_step = 0.01;

  auto* gen = app.add_subcommand("gen", "Sample an instance");
  gen->add_option("--dist", dist, "uniform | triangular | JSON distribution spec")->capture_default_str();
  gen->add_option("--n", n, "Number of agents")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Seed")->capture_default_str();
  gen->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* place = app.add_subcommand("place", "Apply a percentile vector");
  place->add_option("--v", v_arg, "Percentile vector JSON")->required();
  place->add_option("--caps", caps_arg, "Capacities, e.g. 2,2")->required();
  place->add_option("--instance", instance_arg, "Instance file or JSON")->required();

  auto* ne = app.add_subcommand("ne", "Nash equilibria of the FCFS game");
  ne->add_option("--instance", instance_arg, "Instance file or JSON")->required();
  ne->add_option("--placement", placement_arg, "Placement file or JSON")->required();
  ne->add_flag("--enumerate", enumerate, "Enumerate every pure NE");
  ne->add_option("--outcome-csv", outcome_csv, "Write the constructed NE outcome as CSV");

  auto* verify = app.add_subcommand("verify-es", "Check the Equilibrium Stability condition");
  verify->add_option("--v", v_arg, "Percentile vector JSON")->required();
  verify->add_option("--n", n, "Number of agents")->required()->check(CLI::PositiveNumber);
  verify->add_option("--caps", caps_arg, "Capacities")->required();
  verify->add_flag("--brute-force", brute_force, "Also enumerate NE on random instances");
  verify->add_option("--instances", random_instances, "Random instances for --brute-force")->capture_default_str();
  verify->add_option("--seed", seed, "Seed for --brute-force")->capture_default_str();

  auto* best = app.add_subcommand("best-vector", "Best ES percentile vector");
  best->add_option("--n", n, "Number of agents")->required()->check(CLI::PositiveNumber);
  best->add_option("--k1", k1, "Larger capacity (two facilities)");
  best->add_option("--k2", k2, "Smaller capacity (two facilities)");
  best->add_option("--m", m, "Number of facilities (uniform capacity)");
  best->add_option("--k", k, "Uniform capacity");

  auto* worst = app.add_subcommand("worst-case", "Extremal instance for a mechanism");
  worst->add_option("--kind", kind_arg, "AIO | SBS | WG | AllAside | UniformGrid")->required();
  worst->add_option("--n", n, "Number of agents")->required()->check(CLI::PositiveNumber);
  worst->add_option("--caps", caps_arg, "Capacities in slot order")->required();
  worst->add_option("--indices", indices_arg, "1-based facility indices (JSON); default: the best vector");

  auto* ratio = app.add_subcommand("ratio", "SW_UB over mechanism welfare on one instance");
  ratio->add_option("--instance", instance_arg, "Instance file or JSON")->required();
  ratio->add_option("--v", v_arg, "Percentile vector JSON")->required();
  ratio->add_option("--caps", caps_arg, "Capacities")->required();

  auto* exp = app.add_subcommand("experiment", "Run a Monte-Carlo experiment");
  exp->add_option("--config", config_arg, "Config file or JSON")->required();
  exp->add_option("--out", out_arg, "Report path")->required();
  exp->add_option("--format", format, "csv | json")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  exp->add_flag("--per-trial", per_trial, "Keep per-trial records");

  auto* audit = app.add_subcommand("audit-truthful", "Search for profitable misreports");
  audit->add_option("--v", v_arg, "Percentile vector JSON")->required();
  audit->add_option("--instance", instance_arg, "Instance file or JSON")->required();
  audit->add_option("--caps", caps_arg, "Capacities")->required();
  audit->add_option("--grid-step", grid_step, "Misreport grid step")->capture_default_str();
  audit->add_option("--agent", agent, "0-based agent index in sorted order; all agents when omitted");
  audit->add_option("--seed", seed, "Seed for sampled opponent profiles")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      const Instance inst = sample_positions(parse_distribution(arg_text(dist)), n, seed);
      if (format == "csv") {
        std::cout << instance_to_csv(inst);
      } else {
        std::cout << to_json(inst).dump() << '\n';
      }
    } else if (*place) {
      const Instance inst = parse_instance_text(arg_text(instance_arg));
      print(to_json(apply_percentile(percentile_from_json(arg_json(v_arg, "--v")), inst, parse_capacities(caps_arg))));
    } else if (*ne) {
      const Instance inst = parse_instance_text(arg_text(instance_arg));
      const Placement placement = placement_from_json(arg_json(placement_arg, "--placement"));
      const FcfsGame game(inst, placement, PriorityRule::by_index(inst.size()));
      const StrategyProfile profile = game.construct_ne();
      const ServiceOutcome outcome = game.resolve(profile);
      json out{{"constructed", to_json(profile)}, {"welfare", social_welfare(outcome)}};
      if (enumerate) {
        json all = json::array();
        for (const auto& p : game.enumerate_ne()) all.push_back({{"profile", to_json(p)}, {"welfare", social_welfare(game.resolve(p))}});
        const StabilityReport st = game.check_equilibrium_stability();
        out["equilibria"] = all;
        out["stable"] = st.stable;
        out["welfare_values"] = st.welfare_values;
      }
      if (!outcome_csv.empty()) {
        std::ofstream f(outcome_csv);
        if (!f) throw Error(ErrorKind::IoError, "cannot open '" + outcome_csv + "'");
        write_outcome_csv(f, inst.positions(), profile, outcome);
      }
      print(out);
    } else if (*verify) {
      const PercentileVector v = percentile_from_json(arg_json(v_arg, "--v"));
      const CapacityVector caps = parse_capacities(caps_arg);
      const bool es = es_condition(v, n, caps);
      json out{{"indices", percentile_indices(v, n)}, {"es", es}};
      if (v.size() == 2) out["kind"] = std::string(to_string(classify_percentile(v, n)));
      if (brute_force) {
        std::size_t unstable = 0;
        json witness;
        for (std::size_t t = 0; t < random_instances; ++t) {
          const Instance inst = sample_positions(UniformDist{}, n, derive_seed(seed, n, t));
          const auto st = check_equilibrium_stability(inst, apply_percentile(v, inst, caps), PriorityRule::by_index(n));
          if (!st.stable && unstable++ == 0) witness = {{"instance", to_json(inst)}, {"welfare_values", st.welfare_values}};
        }
        out["brute_force"] = {{"instances", random_instances}, {"unstable", unstable}};
        if (unstable) out["brute_force"]["first_unstable"] = witness;
      }
      print(out);
      return es ? 0 : 3;
    } else if (*best) {
      if (m > 0 || k > 0) {
        if (m == 0 || k == 0) throw Error(ErrorKind::InvalidParams, "--m and --k go together");
        print(to_json(best_uniform_vector_m(n, k, m)));
      } else {
        if (k1 == 0 || k2 == 0) throw Error(ErrorKind::InvalidParams, "give --k1 and --k2, or --m and --k");
        print(to_json(best_wg_vector(n, k1, k2)));
      }
    } else if (*worst) {
      const MechanismKind kind = parse_mechanism_kind(kind_arg);
      const CapacityVector caps = parse_capacities(caps_arg);
      std::vector<std::size_t> idx;
      if (!indices_arg.empty()) {
        for (const auto& e : arg_json(indices_arg, "--indices")) idx.push_back(e.get<std::size_t>());
      } else if (kind == MechanismKind::AIO) {
        idx.assign(caps.size(), (n + 1) / 2);
      } else if (kind == MechanismKind::SBS) {
        idx = {n / 2, n / 2 + 1};
      } else if (kind == MechanismKind::UniformGrid) {
        idx = best_uniform_vector_m(n, caps[0], caps.size()).indices;
      } else {
        idx = best_wg_vector(n, caps[0], caps.size() > 1 ? caps[1] : caps[0]).indices;
      }
      print(to_json(worst_case_instance(kind, n, caps, idx)));
    } else if (*ratio) {
      const Instance inst = parse_instance_text(arg_text(instance_arg));
      const PercentileVector v = percentile_from_json(arg_json(v_arg, "--v"));
      const CapacityVector caps = parse_capacities(caps_arg);
      const PriorityRule pr = PriorityRule::by_index(inst.size());
      const double r = empirical_ratio(inst, v, caps, pr);
      const double ub = sw_upper_bound(inst, caps);
      print({{"ratio", r}, {"sw_ub", ub}, {"sw_mech", ub / r}});
    } else if (*exp) {
      ExperimentConfig config = experiment_config_from_json(arg_json(config_arg, "--config"));
      if (per_trial) config.per_trial = true;
      const RatioReport report = run_experiment(config);
      emit_report(report, format == "csv" ? ReportFormat::Csv : ReportFormat::Json, out_arg);
      std::cout << report_to_csv(report);
    } else if (*audit) {
      const Instance inst = parse_instance_text(arg_text(instance_arg));
      const PercentileVector v = percentile_from_json(arg_json(v_arg, "--v"));
      const CapacityVector caps = parse_capacities(caps_arg);
      const auto grid = misreport_grid(grid_step);
      const PriorityRule pr = PriorityRule::by_index(inst.size());
      AuditOptions opts;
      opts.seed = seed;
      json out = json::array();
      bool any = false;
      const bool one = audit->count("--agent") > 0;
      for (std::size_t a = one ? agent : 0; a < (one ? agent + 1 : inst.size()); ++a) {
        const auto w = check_absolute_truthfulness(percentile_rule(v, caps), inst.positions(), a, grid, pr, opts);
        out.push_back({{"agent", a}, {"witness", w ? to_json(*w) : json(nullptr)}});
        any = any || w.has_value();
      }
      print({{"truthful", !any}, {"agents", out}});
    }
  } catch (const Error& e) {
    std::cerr << "capflp: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "capflp: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
