#pragma once

#include <array>
#include <cstdint>
#include <variant>

#include "capflp/instance.hpp"

namespace capflp {

struct UniformDist {};

// Density 2(1-x) on [0,1].
struct TriangularDist {};

struct BetaDist {
  double alpha = 1.0;
  double beta = 1.0;
};

// Population split: round(lambda * n) agents per family (largest remainder), families U, B, T.
struct MixtureDist {
  std::array<double, 3> weights{1.0, 0.0, 0.0};  // (lambda_U, lambda_B, lambda_T)
  BetaDist beta{5.0, 5.0};
};

using DistributionSpec = std::variant<UniformDist, TriangularDist, BetaDist, MixtureDist>;

// Throws InvalidParams on non-positive Beta parameters or bad mixture weights.
void validate(const DistributionSpec& spec);

// Inverse CDF of the triangular density: x = 1 - sqrt(1 - u).
double triangular_inverse_cdf(double u);

// Agents per family (U, B, T) for a mixture of n agents; sums to n.
std::array<std::size_t, 3> mixture_counts(const MixtureDist& mix, std::size_t n);

// n draws, deterministic in `seed`.  Mixtures draw the U block, then B, then T.
Instance sample_positions(const DistributionSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace capflp
