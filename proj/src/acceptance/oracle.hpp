#pragma once

#include <cmdp/objective.hpp>
#include <cmdp/rational.hpp>

#include <vector>

namespace cmdp::acceptance {

/// Number of memoryless deterministic strategies of `mdp`.
std::size_t md_strategy_count(const FiniteMdp& mdp);

/// Pointwise maximum of md_value over every memoryless deterministic
/// strategy. Independent of the solvers in values.cpp: each candidate is
/// scored on its induced chain only.
std::vector<Rational> brute_force_optimum(const FiniteMdp& mdp, const Objective& obj);

}  // namespace cmdp::acceptance
