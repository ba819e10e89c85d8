#pragma once

#include <cmdp/mdp.hpp>
#include <cmdp/strategy.hpp>

#include <cstddef>
#include <vector>

namespace cmdp::detail {

/// Almost-sure reachability analysis: the winning region, the BFS layer in
/// which each winning state was admitted, and a rank-decreasing choice.
struct AsReach {
  StateMask win;
  std::vector<std::size_t> rank;
  IndexStrategy choice;
};

AsReach as_reach_analysis(const FiniteMdp& mdp, const StateMask& target);

/// Greatest set avoiding `avoid` that the controller can stay in forever,
/// with a choice that stays inside.
struct Trap {
  StateMask inside;
  IndexStrategy choice;
};

Trap avoid_trap(const FiniteMdp& mdp, const StateMask& avoid);

/// Adjacency over all edges of the MDP.
std::vector<std::vector<std::size_t>> adjacency(const FiniteMdp& mdp);

}  // namespace cmdp::detail
