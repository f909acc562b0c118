#include "capflp/mechanisms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "capflp/analysis.hpp"
#include "capflp/error.hpp"

namespace capflp {

std::string_view to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::AIO: return "AIO";
    case MechanismKind::SBS: return "SBS";
    case MechanismKind::WG: return "WG";
    case MechanismKind::AllAside: return "AllAside";
    case MechanismKind::UniformGrid: return "UniformGrid";
  }
  return "?";
}

MechanismKind parse_mechanism_kind(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "aio") return MechanismKind::AIO;
  if (lower == "sbs") return MechanismKind::SBS;
  if (lower == "wg") return MechanismKind::WG;
  if (lower == "allaside" || lower == "all-aside") return MechanismKind::AllAside;
  if (lower == "uniformgrid" || lower == "uniform-grid" || lower == "grid") return MechanismKind::UniformGrid;
  throw Error(ErrorKind::InvalidParams, "unknown mechanism kind '" + std::string(name) + "'");
}

PercentileVector::PercentileVector(std::vector<double> entries, std::vector<std::size_t> assignment)
    : entries_(std::move(entries)), assignment_(std::move(assignment)) {
  for (double v : entries_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "percentile entry is not finite");
    if (v < 0.0 || v > 1.0) throw Error(ErrorKind::OutOfRange, "percentile entry outside [0,1]");
  }
  if (!std::is_sorted(entries_.begin(), entries_.end()))
    throw Error(ErrorKind::InvalidParams, "percentile entries must be non-decreasing");
  if (assignment_.empty()) {
    assignment_.resize(entries_.size());
    std::iota(assignment_.begin(), assignment_.end(), std::size_t{0});
  }
  if (assignment_.size() != entries_.size())
    throw Error(ErrorKind::LengthMismatch, "assignment length differs from percentile length");
  std::vector<char> seen(entries_.size(), 0);
  for (std::size_t a : assignment_) {
    if (a >= entries_.size() || seen[a]) throw Error(ErrorKind::InvalidParams, "assignment is not a permutation");
    seen[a] = 1;
  }
}

std::vector<int> PercentileVector::slot_capacities(const CapacityVector& caps) const {
  if (caps.size() != size()) throw Error(ErrorKind::LengthMismatch, "capacity vector length differs from percentile length");
  std::vector<int> out(size());
  for (std::size_t j = 0; j < size(); ++j) out[j] = caps[assignment_[j]];
  return out;
}

std::vector<std::size_t> larger_capacity_left(const CapacityVector& caps) {
  std::vector<std::size_t> order(caps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return caps[a] > caps[b]; });
  return order;
}

std::vector<std::size_t> larger_capacity_right(const CapacityVector& caps) {
  auto order = larger_capacity_left(caps);
  std::reverse(order.begin(), order.end());
  return order;
}

std::size_t percentile_index(double v, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidParams, "n must be positive");
  const auto i = static_cast<std::size_t>(std::floor(static_cast<double>(n - 1) * v)) + 1;
  return std::min(i, n);
}

std::vector<std::size_t> percentile_indices(const PercentileVector& v, std::size_t n) {
  std::vector<std::size_t> out;
  out.reserve(v.size());
  for (double e : v.entries()) out.push_back(percentile_index(e, n));
  return out;
}

Placement apply_percentile(const PercentileVector& v, const Instance& instance, const CapacityVector& caps) {
  const auto slot_caps = v.slot_capacities(caps);
  caps.require_scarce(instance.size());
  Placement p;
  p.metric = Metric::Line;
  const auto idx = percentile_indices(v, instance.size());
  for (std::size_t j = 0; j < v.size(); ++j) p.facilities.push_back({{instance.at_rank(idx[j]), 0.0}, slot_caps[j]});
  return p;
}

MechanismKind classify_indices(std::size_t i1, std::size_t i2) {
  if (i1 > i2) std::swap(i1, i2);
  if (i1 == i2) return MechanismKind::AIO;
  if (i2 == i1 + 1) return MechanismKind::SBS;
  return MechanismKind::WG;
}

MechanismKind classify_percentile(const PercentileVector& v, std::size_t n) {
  if (v.size() != 2) throw Error(ErrorKind::UnsupportedArity, "classification is defined for two facilities");
  const auto idx = percentile_indices(v, n);
  return classify_indices(idx[0], idx[1]);
}

bool es_condition_indices(std::span<const std::size_t> indices, std::span<const int> slot_caps) {
  if (indices.size() != slot_caps.size()) throw Error(ErrorKind::LengthMismatch, "indices and capacities differ");
  // Collapse co-located slots.
  std::vector<std::size_t> loc;
  std::vector<long long> cap;
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (j > 0 && indices[j] < indices[j - 1]) throw Error(ErrorKind::InvalidParams, "indices must be non-decreasing");
    if (loc.empty() || loc.back() != indices[j]) {
      loc.push_back(indices[j]);
      cap.push_back(0);
      members.push_back(0);
    }
    cap.back() += slot_caps[j];
    ++members.back();
  }
  if (loc.size() <= 1) return true;
  if (loc.size() == 2) {
    const std::size_t gap = loc[1] - loc[0];
    if (gap == 1) return true;
    return static_cast<long long>(gap) >= cap[0] + cap[1] - 1;
  }
  const int k = slot_caps[0];
  for (std::size_t g = 0; g < loc.size(); ++g)
    if (members[g] != 1) throw Error(ErrorKind::UnsupportedCase, "co-located facilities among three or more locations");
  for (int c : slot_caps)
    if (c != k) throw Error(ErrorKind::UnsupportedCase, "heterogeneous capacities with more than two facilities");
  for (std::size_t g = 1; g < loc.size(); ++g) {
    const std::size_t gap = loc[g] - loc[g - 1];
    if (gap == 1 && k > 1) throw Error(ErrorKind::UnsupportedCase, "adjacent facilities among three or more locations");
    if (static_cast<long long>(gap) < 2LL * k - 1) return false;
  }
  return true;
}

bool es_condition(const PercentileVector& v, std::size_t n, const CapacityVector& caps) {
  const auto slot_caps = v.slot_capacities(caps);
  caps.require_scarce(n);
  const auto idx = percentile_indices(v, n);
  return es_condition_indices(idx, slot_caps);
}

std::string_view case_label(BestVectorCase c) {
  switch (c) {
    case BestVectorCase::WideGapHalfCapacity: return "thm5-i";
    case BestVectorCase::WideGapBalanced: return "thm5-ii";
    case BestVectorCase::WideGapRightmost: return "thm5-iii";
    case BestVectorCase::UniformGrid: return "thm10";
    case BestVectorCase::MedianAio: return "aio-median";
    case BestVectorCase::AllAside: return "all-aside";
  }
  return "?";
}

namespace {

// v = i/n, nudged up when the floor lands on a different agent.
double percentile_for_index(std::size_t i, std::size_t n) {
  double v = static_cast<double>(i) / static_cast<double>(n);
  if (percentile_index(v, n) != i && n > 1) v += 1.0 / (2.0 * static_cast<double>(n) * static_cast<double>(n - 1));
  v = std::min(v, 1.0);
  if (percentile_index(v, n) != i) {
    // i/n can sit far from the floor cell of i; fall back to the cell's midpoint.
    v = n > 1 ? (static_cast<double>(i) - 0.5) / static_cast<double>(n - 1) : 0.0;
    v = std::clamp(v, 0.0, 1.0);
  }
  if (percentile_index(v, n) != i) throw Error(ErrorKind::Infeasible, "no percentile reproduces index " + std::to_string(i));
  return v;
}

PercentileVector vector_for_indices(std::span<const std::size_t> idx, std::size_t n) {
  std::vector<double> v;
  for (std::size_t i : idx) v.push_back(percentile_for_index(i, n));
  return PercentileVector(std::move(v));
}

long long ceil_div2(long long a) { return a >= 0 ? (a + 1) / 2 : -((-a) / 2); }

}  // namespace

BestVectorReport best_wg_vector(std::size_t n, int k1, int k2) {
  if (k2 < 1 || k1 < k2) throw Error(ErrorKind::InvalidParams, "best_wg_vector needs k1 >= k2 >= 1");
  const long long K = static_cast<long long>(k1) + k2;
  const auto nn = static_cast<long long>(n);
  if (K >= nn) throw Error(ErrorKind::Infeasible, "k1 + k2 must be below n");
  const long long delta = nn - K;

  BestVectorReport r;
  r.delta = delta;
  long long i1 = 0;
  long long i2 = 0;
  double den = 0.0;
  if (delta >= ceil_div2(K)) {
    r.which = BestVectorCase::WideGapHalfCapacity;
    i1 = ceil_div2(k1);
    i2 = nn - k2 / 2;
    den = (k1 + 1) / 2.0 + k2;
  } else if (k1 - k2 <= delta && delta <= K / 2 + 1) {
    r.which = BestVectorCase::WideGapBalanced;
    const long long alpha = ceil_div2(delta - (k1 - k2));
    i1 = k1 - k2 + alpha;
    i2 = nn - alpha;
    den = static_cast<double>(i1 + k2);
  } else {
    r.which = BestVectorCase::WideGapRightmost;
    i1 = delta + 1;
    i2 = nn;
    den = static_cast<double>(delta + k2 + 1);
  }
  i1 = std::max(i1, 1LL);
  r.indices = {static_cast<std::size_t>(i1), static_cast<std::size_t>(i2)};
  r.v = vector_for_indices(r.indices, n);
  r.predicted_ratio = static_cast<double>(K) / den;

  const CapacityVector caps{k1, k2};
  if (percentile_indices(r.v, n) != r.indices || !es_condition(r.v, n, caps))
    throw Error(ErrorKind::Infeasible, "selected indices are not ES for n=" + std::to_string(n));
  r.certified_ratio = ar_wg(n, k1, k2, r.indices[0], r.indices[1]).ratio;
  return r;
}

BestVectorReport best_uniform_vector_m(std::size_t n, int k, std::size_t m) {
  if (k < 1 || m < 1) throw Error(ErrorKind::InvalidParams, "best_uniform_vector_m needs k >= 1 and m >= 1");
  const auto nn = static_cast<long long>(n);
  const long long step = 2LL * k - 1;
  const auto mm = static_cast<long long>(m);
  if (nn < step * mm) throw Error(ErrorKind::Infeasible, "n below (2k-1)m: no ES vector with uniform gaps");
  if (static_cast<long long>(k) * mm >= nn) throw Error(ErrorKind::Infeasible, "mk must be below n");

  auto valid = [&](long long alpha) { return alpha >= 1 && alpha + step * (mm - 1) <= nn; };
  auto build = [&](long long alpha) {
    std::vector<std::size_t> idx;
    for (long long j = 0; j < mm; ++j) idx.push_back(static_cast<std::size_t>(alpha + step * j));
    return idx;
  };

  long long alpha = (nn - 2LL * k * (mm - 1) + 1);
  alpha = alpha >= 0 ? alpha / 2 : -((-alpha + 1) / 2);
  if (!valid(alpha)) {
    // Centre the block: split the slack left over by the gaps evenly between both ends.
    const long long slack = nn - step * (mm - 1);
    alpha = std::max(1LL, ceil_div2(slack));
  }
  if (!valid(alpha)) throw Error(ErrorKind::Infeasible, "no ES vector with uniform gaps");
  const auto idx = build(alpha);

  BestVectorReport r;
  r.which = BestVectorCase::UniformGrid;
  r.indices = idx;
  r.delta = nn - static_cast<long long>(k) * mm;
  r.v = vector_for_indices(idx, n);
  const CapacityVector caps(std::vector<int>(m, k));
  if (percentile_indices(r.v, n) != r.indices || !es_condition(r.v, n, caps))
    throw Error(ErrorKind::Infeasible, "selected indices are not ES for n=" + std::to_string(n));
  r.predicted_ratio = ar_uniform_m(n, k, m, idx.front(), idx.back()).ratio;
  r.certified_ratio = r.predicted_ratio;
  return r;
}

Placement all_aside_placement(std::size_t a, std::size_t b, const Instance& instance, std::size_t m, int k,
                              bool relaxed) {
  const std::size_t n = instance.size();
  if (m < 1 || k < 1) throw Error(ErrorKind::InvalidParams, "all-aside needs m >= 1 and k >= 1");
  if (a < 1 || b > n || a > b) throw Error(ErrorKind::PreconditionViolated, "agent indices outside 1..n or a > b");
  const auto mk = static_cast<long long>(m) * k;
  if (mk >= static_cast<long long>(n)) throw Error(ErrorKind::CapacityInfeasible, "total capacity mk must be below n");
  const auto gap = static_cast<long long>(b) - static_cast<long long>(a);
  if (relaxed ? gap < mk - 1 : gap < 2 * mk)
    throw Error(ErrorKind::PreconditionViolated, "a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                                                     " too close for m=" + std::to_string(m) + ", k=" + std::to_string(k));
  Placement p;
  p.metric = Metric::Line;
  const int left = static_cast<int>((m + 1) / 2) * k;
  const int right = static_cast<int>(m / 2) * k;
  p.facilities.push_back({{instance.at_rank(a), 0.0}, left});
  if (right > 0) p.facilities.push_back({{instance.at_rank(b), 0.0}, right});
  return p;
}

Placement median_aio_placement(const Instance& instance, const CapacityVector& caps) {
  const std::size_t n = instance.size();
  caps.require_scarce(n);
  const double y = instance.at_rank((n + 1) / 2);
  Placement p;
  p.metric = Metric::Line;
  for (int c : caps.values()) p.facilities.push_back({{y, 0.0}, c});
  return p;
}

}  // namespace capflp
