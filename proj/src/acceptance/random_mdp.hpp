#pragma once

#include <cmdp/lasso.hpp>
#include <cmdp/mdp.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace cmdp::acceptance {

/// Shape of the seeded random instances used by the property checks.
struct RandomShape {
  std::size_t min_controllers = 1;
  std::size_t max_controllers = 8;
  std::size_t max_random = 4;
  std::size_t max_branch = 3;
  std::vector<Color> colors{0, 1};
  bool sinks = true;  // add absorbing z0 (smallest even color) and z1 (smallest odd color)
};

/// Controller states are c0, c1, ...; random states are p0, p1, ...
/// Random distributions use weights 1..4, so denominators stay small.
FiniteMdp random_mdp(std::uint64_t seed, const RandomShape& shape);

/// Lasso whose states are named after their color ("c1", "c2", "c3").
Lasso random_lasso(std::mt19937_64& rng, const std::vector<Color>& colors, std::size_t max_prefix,
                   std::size_t max_cycle);

}  // namespace cmdp::acceptance
