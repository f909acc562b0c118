#include "capflp/planar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "capflp/error.hpp"
#include "capflp/matching.hpp"

namespace capflp {

PlanarInstance make_planar_instance(std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorKind::EmptyInput, "instance needs at least one agent");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (double c : {points[i].x, points[i].y}) {
      if (!std::isfinite(c)) throw Error(ErrorKind::NonFinite, "point " + std::to_string(i) + " is not finite");
      if (c < 0.0 || c > 1.0) throw Error(ErrorKind::OutOfRange, "point " + std::to_string(i) + " outside [0,1]^2");
    }
    xs.push_back(points[i].x);
    ys.push_back(points[i].y);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  return PlanarInstance(std::vector<Point>(points.begin(), points.end()), std::move(xs), std::move(ys));
}

PercentileMatrix::PercentileMatrix(std::vector<PercentileVector> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw Error(ErrorKind::InvalidParams, "percentile matrix has no rows");
  for (const auto& r : rows_)
    if (r.size() != rows_.front().size()) throw Error(ErrorKind::LengthMismatch, "percentile rows differ in length");
  if (rows_.front().size() == 0) throw Error(ErrorKind::InvalidParams, "percentile rows are empty");
}

Placement planar_percentile_placement(const PercentileMatrix& V, const PlanarInstance& instance,
                                      const CapacityVector& caps) {
  if (V.dimension() != 2) throw Error(ErrorKind::UnsupportedArity, "planar placement needs exactly two rows");
  if (caps.size() != V.facilities()) throw Error(ErrorKind::LengthMismatch, "one capacity per facility required");
  const std::size_t n = instance.size();
  caps.require_scarce(n);
  const auto ix = percentile_indices(V.rows()[0], n);
  const auto iy = percentile_indices(V.rows()[1], n);
  Placement p;
  p.metric = Metric::Plane;
  for (std::size_t j = 0; j < V.facilities(); ++j)
    p.facilities.push_back({{instance.projection(0)[ix[j] - 1], instance.projection(1)[iy[j] - 1]}, caps[j]});
  return p;
}

bool cpm_family_is_es(std::span<const MechanismKind> coordinate_kinds) {
  std::size_t other = 0;
  for (MechanismKind k : coordinate_kinds) {
    if (k == MechanismKind::AIO) continue;
    if (k != MechanismKind::SBS) return false;
    ++other;
  }
  return other <= 1;
}

bool planar_is_es(const PercentileMatrix& V, std::size_t n, const CapacityVector& caps) {
  if (V.facilities() != 2) throw Error(ErrorKind::UnsupportedArity, "planar characterization covers two facilities");
  if (caps.size() != 2) throw Error(ErrorKind::LengthMismatch, "one capacity per facility required");
  caps.require_scarce(n);
  std::vector<MechanismKind> kinds;
  for (const auto& row : V.rows()) kinds.push_back(classify_percentile(row, n));
  return cpm_family_is_es(kinds);
}

RatioFormulaResult ar_median_planar(std::size_t n, int k1, int k2) {
  if (k2 < 1 || k1 < k2) throw Error(ErrorKind::InvalidParams, "need k1 >= k2 >= 1");
  const long long K = static_cast<long long>(k1) + k2;
  if (K >= static_cast<long long>(n)) throw Error(ErrorKind::CapacityInfeasible, "k1 + k2 must be below n");
  const double r2 = std::sqrt(2.0);
  const double den = (r2 - 1.0) * static_cast<double>(K) + 1.0;
  const auto half = static_cast<long long>(n / 2);
  RatioFormulaResult r;
  r.denominator_welfare = den;
  r.approximate = n % 2 == 0;
  if (k1 <= half && k2 <= half) {
    r.numerator_welfare = r2 * static_cast<double>(K);
    r.active_case = "planar-median-split";
    r.ratio = r2 / (r2 - 1.0) * (1.0 - 1.0 / den);
  } else {
    r.numerator_welfare = r2 * static_cast<double>(k2 + half) + r2 - 1.0;
    r.active_case = "planar-median-large-capacity";
    r.ratio = r.numerator_welfare / den;
  }
  return r;
}

PlanarInstance median_planar_worst_case(std::size_t n) {
  if (n % 2 == 0) throw Error(ErrorKind::UnsupportedCase, "the construction needs odd n");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n / 2; ++i) pts.push_back({0.0, 0.0});
  pts.push_back({0.0, 1.0});
  for (std::size_t i = 0; i < n / 2; ++i) pts.push_back({1.0, 1.0});
  return make_planar_instance(pts);
}

Placement planar_median_placement(const PlanarInstance& instance, const CapacityVector& caps) {
  const std::size_t n = instance.size();
  caps.require_scarce(n);
  const std::size_t r = (n + 1) / 2;
  Placement p;
  p.metric = Metric::Plane;
  for (int c : caps.values()) p.facilities.push_back({{instance.projection(0)[r - 1], instance.projection(1)[r - 1]}, c});
  return p;
}

PlanarUpperBound planar_sw_upper_bound(const PlanarInstance& instance, const CapacityVector& caps) {
  const std::size_t n = instance.size();
  const std::size_t m = caps.size();
  if (caps.total() >= static_cast<long long>(n)) throw Error(ErrorKind::Infeasible, "total capacity must be below n");
  std::vector<Point> sites(instance.points().begin(), instance.points().end());
  std::sort(sites.begin(), sites.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  const std::size_t u = sites.size();
  const double ceiling = std::sqrt(2.0);

  PlanarUpperBound best;
  best.value = -1.0;
  std::vector<std::size_t> pick(m, 0);
  std::vector<double> w(n * m);
  for (;;) {
    bool canonical = true;
    for (std::size_t a = 0; a + 1 < m && canonical; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        if (caps[a] == caps[b] && pick[a] > pick[b]) {
          canonical = false;
          break;
        }
    if (canonical) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
          w[i * m + j] = std::max(0.0, ceiling - distance(Metric::Plane, instance.points()[i], sites[pick[j]]));
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

}  // namespace capflp
