#include "capflp/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "capflp/error.hpp"
#include "capflp/rng.hpp"

namespace capflp {
namespace {

void validate_beta(const BetaDist& b) {
  if (!(b.alpha > 0.0) || !(b.beta > 0.0) || !std::isfinite(b.alpha) || !std::isfinite(b.beta))
    throw Error(ErrorKind::InvalidParams, "Beta parameters must be finite and > 0");
}

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

double draw_uniform(Rng& rng) { return rng.uniform(); }
double draw_triangular(Rng& rng) { return triangular_inverse_cdf(rng.uniform()); }
double draw_beta(Rng& rng, const BetaDist& b) { return std::clamp(rng.beta(b.alpha, b.beta), 0.0, 1.0); }

}  // namespace

void validate(const DistributionSpec& spec) {
  std::visit(overloaded{
                 [](const UniformDist&) {},
                 [](const TriangularDist&) {},
                 [](const BetaDist& b) { validate_beta(b); },
                 [](const MixtureDist& m) {
                   validate_beta(m.beta);
                   double sum = 0.0;
                   for (double w : m.weights) {
                     if (!(w >= 0.0)) throw Error(ErrorKind::InvalidParams, "mixture weights must be >= 0");
                     sum += w;
                   }
                   if (std::abs(sum - 1.0) > 1e-12)
                     throw Error(ErrorKind::InvalidParams, "mixture weights must sum to 1");
                 },
             },
             spec);
}

double triangular_inverse_cdf(double u) { return 1.0 - std::sqrt(1.0 - u); }

std::array<std::size_t, 3> mixture_counts(const MixtureDist& mix, std::size_t n) {
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t f = 0; f < 3; ++f) {
    const double exact = mix.weights[f] * static_cast<double>(n);
    counts[f] = static_cast<std::size_t>(std::floor(exact));
    remainders[f] = exact - static_cast<double>(counts[f]);
    assigned += counts[f];
  }
  // Largest remainder; ties go to the earlier family.
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t r = 0; assigned < n; ++r, ++assigned) counts[order[r % 3]] += 1;
  return counts;
}

Instance sample_positions(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::InvalidParams, "n must be >= 1");
  validate(spec);
  Rng rng(seed);
  std::vector<double> xs;
  xs.reserve(n);
  std::visit(overloaded{
                 [&](const UniformDist&) {
                   for (std::size_t i = 0; i < n; ++i) xs.push_back(draw_uniform(rng));
                 },
                 [&](const TriangularDist&) {
                   for (std::size_t i = 0; i < n; ++i) xs.push_back(draw_triangular(rng));
                 },
                 [&](const BetaDist& b) {
                   for (std::size_t i = 0; i < n; ++i) xs.push_back(draw_beta(rng, b));
                 },
                 [&](const MixtureDist& m) {
                   const auto counts = mixture_counts(m, n);
                   for (std::size_t i = 0; i < counts[0]; ++i) xs.push_back(draw_uniform(rng));
                   for (std::size_t i = 0; i < counts[1]; ++i) xs.push_back(draw_beta(rng, m.beta));
                   for (std::size_t i = 0; i < counts[2]; ++i) xs.push_back(draw_triangular(rng));
                 },
             },
             spec);
  return make_instance(xs);
}

}  // namespace capflp
