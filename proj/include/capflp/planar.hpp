#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "capflp/analysis.hpp"
#include "capflp/fcfs.hpp"
#include "capflp/mechanisms.hpp"

namespace capflp {

// Points in [0,1]^2 in input order, with each axis's sorted projection.
class PlanarInstance {
 public:
  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  // Sorted coordinates along axis 0 (x) or 1 (y).
  std::span<const double> projection(std::size_t axis) const { return axis == 0 ? xs_ : ys_; }

 private:
  friend PlanarInstance make_planar_instance(std::span<const Point>);
  PlanarInstance(std::vector<Point> pts, std::vector<double> xs, std::vector<double> ys)
      : points_(std::move(pts)), xs_(std::move(xs)), ys_(std::move(ys)) {}
  std::vector<Point> points_;
  std::vector<double> xs_;
  std::vector<double> ys_;
};

// Throws EmptyInput, NonFinite or OutOfRange.
PlanarInstance make_planar_instance(std::span<const Point> points);
inline PlanarInstance make_planar_instance(std::initializer_list<Point> pts) {
  return make_planar_instance(std::span<const Point>(pts.begin(), pts.size()));
}

// One percentile vector per axis, all of the same length m.
class PercentileMatrix {
 public:
  // Throws InvalidParams for no rows, LengthMismatch for ragged rows.
  explicit PercentileMatrix(std::vector<PercentileVector> rows);
  std::span<const PercentileVector> rows() const noexcept { return rows_; }
  std::size_t dimension() const noexcept { return rows_.size(); }
  std::size_t facilities() const noexcept { return rows_.front().size(); }

 private:
  std::vector<PercentileVector> rows_;
};

// Facility j at (z1_{i1j}, z2_{i2j}) with capacity caps[j]; Euclidean metric, ceiling sqrt 2.
// Throws CapacityInfeasible, LengthMismatch, UnsupportedArity unless two rows.
Placement planar_percentile_placement(const PercentileMatrix& V, const PlanarInstance& instance,
                                      const CapacityVector& caps);

// Two facilities: ES iff both axes co-locate, or one co-locates and the other is adjacent.
// Throws UnsupportedArity for m != 2.
bool planar_is_es(const PercentileMatrix& V, std::size_t n, const CapacityVector& caps);

// Any dimension: every coordinate AIO but at most one, which must be SBS.  Asserted by the
// source analysis, not derived here; check small cases with check_equilibrium_stability.
bool cpm_family_is_es(std::span<const MechanismKind> coordinate_kinds);

// Median in both coordinates.  Even n uses index ceil(n/2) and is marked approximate.
RatioFormulaResult ar_median_planar(std::size_t n, int k1, int k2);

// floor(n/2) agents at (0,0), floor(n/2) at (1,1), one at (0,1).  n odd.
PlanarInstance median_planar_worst_case(std::size_t n);

// Coordinate-wise median placement (every facility at the same point).
Placement planar_median_placement(const PlanarInstance& instance, const CapacityVector& caps);

struct PlanarUpperBound {
  double value = 0.0;
  std::vector<Point> facility_positions;
  std::vector<int> facility_of;
};

// Facilities restricted to agent points, weights sqrt 2 - distance, exact assignment per tuple.
PlanarUpperBound planar_sw_upper_bound(const PlanarInstance& instance, const CapacityVector& caps);

}  // namespace capflp
