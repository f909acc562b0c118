#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "capflp/distribution.hpp"
#include "capflp/error.hpp"
#include "capflp/instance.hpp"
#include "capflp/rng.hpp"
#include "oracles.hpp"

using namespace capflp;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::IoError;
}

}  // namespace

TEST_CASE("make_instance keeps, sorts and validates") {
  CHECK(make_instance({0.5}).positions()[0] == 0.5);
  const auto ex1 = make_instance({0, 0.3, 0.4, 0.5, 0.9});
  CHECK(std::vector<double>(ex1.positions().begin(), ex1.positions().end()) == std::vector<double>{0, 0.3, 0.4, 0.5, 0.9});
  const auto swapped = make_instance({0.9, 0.1});
  CHECK(swapped[0] == 0.1);
  CHECK(swapped[1] == 0.9);
  CHECK(swapped.at_rank(2) == 0.9);

  CHECK(kind_of([] { make_instance(std::span<const double>{}); }) == ErrorKind::EmptyInput);
  CHECK(kind_of([] { make_instance({0.2, 1.5}); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([] { make_instance({-0.1}); }) == ErrorKind::OutOfRange);
  CHECK(kind_of([] { make_instance({std::nan("")}); }) == ErrorKind::NonFinite);
  CHECK(kind_of([] { make_instance({INFINITY}); }) == ErrorKind::NonFinite);
}

TEST_CASE("make_instance is idempotent and allows duplicates") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> raw(1 + rng.below(12));
    for (auto& x : raw) x = rng.below(3) == 0 ? 0.0 : rng.uniform();
    const Instance a = make_instance(raw);
    const Instance b = make_instance(a.positions());
    CHECK(a == b);
    CHECK(std::is_sorted(a.positions().begin(), a.positions().end()));
  }
}

TEST_CASE("capacity vectors") {
  const CapacityVector k{2, 3};
  CHECK(k.total() == 5);
  CHECK_FALSE(k.uniform());
  CHECK(CapacityVector{4, 4, 4}.uniform());
  CHECK_NOTHROW(k.require_scarce(6));
  CHECK(kind_of([&] { k.require_scarce(5); }) == ErrorKind::CapacityInfeasible);
  CHECK(kind_of([] { CapacityVector(std::vector<int>{}); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { CapacityVector{2, 0}; }) == ErrorKind::InvalidParams);
}

TEST_CASE("inverse transforms") {
  CHECK(triangular_inverse_cdf(0.75) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(triangular_inverse_cdf(0.0) == 0.0);
  CHECK(triangular_inverse_cdf(1.0) == 1.0);
  // Uniform draws are the engine output scaled into [0,1): the identity CDF.
  Rng a(5), b(5);
  const double u = a.uniform();
  CHECK(sample_positions(UniformDist{}, 1, 5)[0] == u);
  (void)b;
}

TEST_CASE("sampling is deterministic in the seed") {
  const DistributionSpec specs[] = {UniformDist{}, TriangularDist{}, BetaDist{2.0, 3.0},
                                    MixtureDist{{0.3, 0.3, 0.4}, BetaDist{5, 5}}};
  for (const auto& s : specs) {
    CHECK(sample_positions(s, 40, 99) == sample_positions(s, 40, 99));
    CHECK_FALSE(sample_positions(s, 40, 99) == sample_positions(s, 40, 100));
  }
}

TEST_CASE("Beta(5,5) sample mean") {
  const auto inst = sample_positions(BetaDist{5, 5}, 10000, 2024);
  const double mean = std::accumulate(inst.positions().begin(), inst.positions().end(), 0.0) / 10000.0;
  CHECK(std::abs(mean - 0.5) < 0.015);
}

TEST_CASE("Beta sampler matches first two moments for skewed parameters") {
  const double a = 2.0, b = 6.0;
  const auto inst = sample_positions(BetaDist{a, b}, 20000, 7);
  double s = 0, s2 = 0;
  for (double x : inst.positions()) {
    s += x;
    s2 += x * x;
  }
  const double mean = s / 20000.0;
  const double var = s2 / 20000.0 - mean * mean;
  CHECK(mean == doctest::Approx(a / (a + b)).epsilon(0.02));
  CHECK(var == doctest::Approx(a * b / ((a + b) * (a + b) * (a + b + 1))).epsilon(0.05));
}

TEST_CASE("triangular empirical CDF within three standard errors") {
  const std::size_t n = 10000;
  const auto inst = sample_positions(TriangularDist{}, n, 77);
  const auto rej = oracle::triangular_by_rejection(n, 78);
  for (double t : {0.25, 0.5, 0.75}) {
    const double f = 2 * t - t * t;
    const double se = std::sqrt(f * (1 - f) / static_cast<double>(n));
    const auto below = static_cast<double>(std::upper_bound(inst.positions().begin(), inst.positions().end(), t) -
                                           inst.positions().begin());
    CHECK(std::abs(below / n - f) < 3 * se);
    const auto rej_below = static_cast<double>(std::count_if(rej.begin(), rej.end(), [&](double x) { return x <= t; }));
    // Both samplers agree with each other (difference of two independent proportions).
    CHECK(std::abs(below / n - rej_below / n) < 3 * std::sqrt(2.0) * se);
  }
}

TEST_CASE("mixture counts use floor plus largest remainder") {
  MixtureDist m{{1.0 / 3, 1.0 / 3, 1.0 / 3}, BetaDist{5, 5}};
  CHECK(mixture_counts(m, 50) == std::array<std::size_t, 3>{17, 17, 16});
  CHECK(mixture_counts(m, 30) == std::array<std::size_t, 3>{10, 10, 10});
  MixtureDist h{{0.5, 0.25, 0.25}, BetaDist{5, 5}};
  CHECK(mixture_counts(h, 10) == std::array<std::size_t, 3>{5, 3, 2});
  for (std::size_t n = 1; n < 40; ++n) {
    const auto c = mixture_counts(m, n);
    CHECK(c[0] + c[1] + c[2] == n);
  }
}

TEST_CASE("distribution validation") {
  CHECK(kind_of([] { sample_positions(BetaDist{0.0, 1.0}, 3, 1); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { sample_positions(BetaDist{1.0, -2.0}, 3, 1); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { validate(MixtureDist{{0.5, 0.5, 0.5}, BetaDist{5, 5}}); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { validate(MixtureDist{{1.5, -0.5, 0.0}, BetaDist{5, 5}}); }) == ErrorKind::InvalidParams);
}

TEST_CASE("derive_seed separates substreams") {
  CHECK(derive_seed(1, 10, 0) != derive_seed(1, 10, 1));
  CHECK(derive_seed(1, 10, 0) != derive_seed(1, 11, 0));
  CHECK(derive_seed(1, 10, 0) != derive_seed(2, 10, 0));
  CHECK(derive_seed(3, 4, 5) == derive_seed(3, 4, 5));
}

TEST_CASE("error exit codes") {
  CHECK(exit_code(ErrorKind::NotES) == 3);
  CHECK(exit_code(ErrorKind::Infeasible) == 3);
  CHECK(exit_code(ErrorKind::CapacityInfeasible) == 3);
  CHECK(exit_code(ErrorKind::InvalidParams) == 2);
  CHECK(exit_code(ErrorKind::IoError) == 2);
}
