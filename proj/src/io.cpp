#include "capflp/io.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "capflp/error.hpp"

namespace capflp {
namespace {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidParams, std::string("malformed ") + what + " JSON: " + e.what());
  }
}

std::vector<double> number_array(const json& j, const char* what) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidParams, std::string(what) + " must be a JSON array");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) throw Error(ErrorKind::InvalidParams, std::string(what) + " entries must be numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

json to_json(const Instance& instance) { return json(std::vector<double>(instance.positions().begin(), instance.positions().end())); }

Instance instance_from_json(const json& j) { return make_instance(number_array(j, "instance")); }

std::string instance_to_csv(const Instance& instance) {
  std::ostringstream out;
  out << std::setprecision(17) << "position\n";
  for (double x : instance.positions()) out << x << '\n';
  return out.str();
}

Instance instance_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool header = false;
  std::vector<double> xs;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (!header) {
      if (line != "position") throw Error(ErrorKind::InvalidParams, "instance CSV must start with a 'position' header");
      header = true;
      continue;
    }
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(line, &used));
      if (used != line.size()) throw std::invalid_argument(line);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidParams, "bad position '" + line + "'");
    }
  }
  return make_instance(xs);
}

Instance parse_instance_text(const std::string& text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '[') return instance_from_json(parse_json(t, "instance"));
  return instance_from_csv(t);
}

json to_json(const DistributionSpec& spec) {
  return std::visit(overloaded{
                        [](const UniformDist&) { return json{{"kind", "uniform"}}; },
                        [](const TriangularDist&) { return json{{"kind", "triangular"}}; },
                        [](const BetaDist& b) { return json{{"kind", "beta"}, {"alpha", b.alpha}, {"beta", b.beta}}; },
                        [](const MixtureDist& m) {
                          return json{{"kind", "mixture"},
                                      {"weights", m.weights},
                                      {"alpha", m.beta.alpha},
                                      {"beta", m.beta.beta}};
                        },
                    },
                    spec);
}

DistributionSpec distribution_from_json(const json& j) {
  if (j.is_string()) return parse_distribution(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorKind::InvalidParams, "distribution must be an object with a string 'kind'");
  const auto kind = j["kind"].get<std::string>();
  DistributionSpec spec;
  try {
    if (kind == "uniform") {
      spec = UniformDist{};
    } else if (kind == "triangular") {
      spec = TriangularDist{};
    } else if (kind == "beta") {
      spec = BetaDist{j.at("alpha").get<double>(), j.at("beta").get<double>()};
    } else if (kind == "mixture") {
      MixtureDist m;
      const auto w = number_array(j.at("weights"), "mixture weights");
      if (w.size() != 3) throw Error(ErrorKind::InvalidParams, "mixture weights need three entries (U, B, T)");
      m.weights = {w[0], w[1], w[2]};
      m.beta = BetaDist{j.value("alpha", 5.0), j.value("beta", 5.0)};
      spec = m;
    } else {
      throw Error(ErrorKind::InvalidParams, "unknown distribution kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidParams, std::string("distribution parameters: ") + e.what());
  }
  validate(spec);
  return spec;
}

DistributionSpec parse_distribution(const std::string& text) {
  const std::string t = trim(text);
  if (t == "uniform") return UniformDist{};
  if (t == "triangular") return TriangularDist{};
  return distribution_from_json(parse_json(t, "distribution"));
}

json to_json(const StrategyProfile& profile) {
  json out = json::array();
  for (int s : profile) out.push_back(s + 1);
  return out;
}

StrategyProfile profile_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidParams, "profile must be a JSON array");
  StrategyProfile p;
  for (const auto& e : j) {
    if (!e.is_number_integer() || e.get<long long>() < 1)
      throw Error(ErrorKind::InvalidParams, "profile entries must be 1-based facility indices");
    p.push_back(static_cast<int>(e.get<long long>()) - 1);
  }
  return p;
}

void write_outcome_csv(std::ostream& out, std::span<const double> positions, const StrategyProfile& profile,
                       const ServiceOutcome& outcome) {
  if (positions.size() != profile.size() || profile.size() != outcome.utilities.size())
    throw Error(ErrorKind::LengthMismatch, "outcome, profile and positions differ in length");
  std::vector<char> served(profile.size(), 0);
  for (const auto& t : outcome.served)
    for (std::size_t i : t) served[i] = 1;
  out << std::setprecision(17) << "agent,position,strategy,served,utility\n";
  for (std::size_t i = 0; i < profile.size(); ++i)
    out << i + 1 << ',' << positions[i] << ',' << profile[i] + 1 << ',' << (served[i] ? 1 : 0) << ','
        << outcome.utilities[i] << '\n';
}

json to_json(const PercentileVector& v) {
  return json{{"v", std::vector<double>(v.entries().begin(), v.entries().end())},
              {"assignment", std::vector<std::size_t>(v.assignment().begin(), v.assignment().end())}};
}

PercentileVector percentile_from_json(const json& j) {
  if (j.is_array()) return PercentileVector(number_array(j, "percentile vector"));
  if (!j.is_object() || !j.contains("v")) throw Error(ErrorKind::InvalidParams, "percentile vector needs a 'v' array");
  std::vector<std::size_t> assignment;
  if (j.contains("assignment")) {
    if (!j["assignment"].is_array()) throw Error(ErrorKind::InvalidParams, "'assignment' must be an array");
    for (const auto& e : j["assignment"]) {
      if (!e.is_number_integer() || e.get<long long>() < 0)
        throw Error(ErrorKind::InvalidParams, "assignment entries must be non-negative integers");
      assignment.push_back(e.get<std::size_t>());
    }
  }
  return PercentileVector(number_array(j["v"], "percentile vector"), std::move(assignment));
}

CapacityVector parse_capacities(const std::string& text) {
  std::string t = trim(text);
  if (!t.empty() && t.front() == '[') {
    const json j = parse_json(t, "capacities");
    std::vector<int> caps;
    for (const auto& e : j) {
      if (!e.is_number_integer()) throw Error(ErrorKind::InvalidParams, "capacities must be integers");
      caps.push_back(e.get<int>());
    }
    return CapacityVector(caps);
  }
  std::vector<int> caps;
  std::istringstream in(t);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    try {
      std::size_t used = 0;
      caps.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidParams, "bad capacity '" + item + "'");
    }
  }
  return CapacityVector(caps);
}

json to_json(const BestVectorReport& r) {
  return json{{"indices", r.indices},
              {"v", std::vector<double>(r.v.entries().begin(), r.v.entries().end())},
              {"predicted_ratio", r.predicted_ratio},
              {"certified_ratio", r.certified_ratio},
              {"case_label", std::string(case_label(r.which))},
              {"delta", r.delta}};
}

json to_json(const RatioFormulaResult& r) {
  json j{{"ratio", r.ratio}, {"case", r.active_case}, {"num", r.numerator_welfare}, {"den", r.denominator_welfare}};
  if (r.approximate) j["approximate"] = true;
  return j;
}

json to_json(const WorstCaseInstance& w) {
  return json{{"instance", to_json(w.instance)},
              {"lambda", w.lambda},
              {"form", w.form_label},
              {"sw_ub", w.upper_bound},
              {"sw_mech", w.mechanism_welfare},
              {"ratio", w.ratio}};
}

json to_json(const Placement& placement) {
  json fac = json::array();
  for (const auto& f : placement.facilities) {
    json pos = placement.metric == Metric::Line ? json(f.position.x) : json::array({f.position.x, f.position.y});
    fac.push_back({{"position", pos}, {"capacity", f.capacity}});
  }
  return json{{"metric", placement.metric == Metric::Line ? "line" : "plane"}, {"facilities", fac}};
}

Placement placement_from_json(const json& j) {
  if (!j.is_object() || !j.contains("facilities") || !j["facilities"].is_array())
    throw Error(ErrorKind::InvalidParams, "placement needs a 'facilities' array");
  Placement p;
  const std::string metric = j.value("metric", std::string("line"));
  if (metric == "line") {
    p.metric = Metric::Line;
  } else if (metric == "plane") {
    p.metric = Metric::Plane;
  } else {
    throw Error(ErrorKind::InvalidParams, "metric must be 'line' or 'plane'");
  }
  try {
    for (const auto& f : j["facilities"]) {
      Facility fac;
      const auto& pos = f.at("position");
      if (p.metric == Metric::Line) {
        fac.position = {pos.get<double>(), 0.0};
      } else {
        fac.position = {pos.at(0).get<double>(), pos.at(1).get<double>()};
      }
      fac.capacity = f.at("capacity").get<int>();
      if (fac.capacity < 1) throw Error(ErrorKind::InvalidParams, "facility capacity must be >= 1");
      for (double c : {fac.position.x, fac.position.y})
        if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorKind::OutOfRange, "facility position outside the domain");
      p.facilities.push_back(fac);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidParams, std::string("placement: ") + e.what());
  }
  if (p.facilities.empty()) throw Error(ErrorKind::InvalidParams, "placement has no facilities");
  return p;
}

json to_json(const PlanarInstance& instance) {
  json out = json::array();
  for (const auto& p : instance.points()) out.push_back({p.x, p.y});
  return out;
}

PlanarInstance planar_instance_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::InvalidParams, "planar instance must be an array of [x, y] pairs");
  std::vector<Point> pts;
  for (const auto& e : j) {
    const auto xy = number_array(e, "planar point");
    if (xy.size() != 2) throw Error(ErrorKind::InvalidParams, "planar points need two coordinates");
    pts.push_back({xy[0], xy[1]});
  }
  return make_planar_instance(pts);
}

json to_json(const PercentileMatrix& V) {
  json rows = json::array();
  for (const auto& r : V.rows()) rows.push_back(std::vector<double>(r.entries().begin(), r.entries().end()));
  return json{{"rows", rows}};
}

PercentileMatrix percentile_matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
    throw Error(ErrorKind::InvalidParams, "percentile matrix needs a 'rows' array");
  std::vector<PercentileVector> rows;
  for (const auto& r : j["rows"]) rows.emplace_back(number_array(r, "percentile row"));
  return PercentileMatrix(std::move(rows));
}

json to_json(const TruthfulnessWitness& w) {
  return json{{"misreport", w.misreport},
              {"opponents", to_json(w.opponents)},
              {"truthful_utility", w.truthful_utility},
              {"misreport_utility", w.misreport_utility}};
}

}  // namespace capflp
