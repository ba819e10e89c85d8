#pragma once

#include <cmdp/mdp_ops.hpp>
#include <cmdp/objective.hpp>
#include <cmdp/strategy.hpp>

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace cmdp {

enum class Backend { rational, floating };

const char* to_string(Backend b) noexcept;
Backend backend_from_string(const std::string& s);

struct SolverOptions {
  Backend backend = Backend::rational;
  double tolerance = 1e-9;
  std::size_t max_sweeps = 1'000'000;
};

/// Per-state values, indexed like the MDP they were computed on. Exactly one
/// of `exact` / `approx` is populated, according to `backend`.
struct ValueVector {
  Backend backend = Backend::rational;
  std::vector<Rational> exact;
  std::vector<double> approx;
  std::size_t sweeps = 0;  // float backend only

  std::size_t size() const noexcept { return backend == Backend::rational ? exact.size() : approx.size(); }
  double as_double(std::size_t i) const { return backend == Backend::rational ? exact[i].get_d() : approx[i]; }
};

enum class Mode { max, min };

/// Reachability values (least fixed point of the Bellman operator). The
/// rational backend runs policy iteration with exact chain solves; the float
/// backend runs Gauss-Seidel sweeps in StateId order.
ValueVector reach_value(const FiniteMdp& mdp, const StateMask& target, Mode mode,
                        const SolverOptions& opts = {});

/// Optimal max-reach strategy found by exact policy iteration.
IndexStrategy max_reach_strategy(const FiniteMdp& mdp, const StateMask& target);

/// 1 - min-reach(avoid).
ValueVector safety_value(const FiniteMdp& mdp, const StateMask& avoid, const SolverOptions& opts = {});

struct EndComponent {
  std::vector<std::size_t> states;
  /// Allowed (controller) edges that keep the play inside the component.
  std::vector<std::vector<std::size_t>> internal_edges;
};

/// Maximal end components of the sub-MDP induced by `within` (all states if empty).
std::vector<EndComponent> mec_decomposition(const FiniteMdp& mdp, const StateMask& within = {});

/// Union of the end components whose largest color is even.
StateMask winning_ec_states(const FiniteMdp& mdp);

ValueVector parity_value(const FiniteMdp& mdp, const SolverOptions& opts = {});

/// Value of Reach / Safety / Parity on a finite MDP.
ValueVector objective_value(const FiniteMdp& mdp, const Objective& obj, const SolverOptions& opts = {});

/// Almost-sure reachability region: the greatest set in which controller
/// states keep a successor, random states stay, and `target` is reachable.
StateMask almost_sure_reach_set(const FiniteMdp& mdp, const StateMask& target);

/// Almost-sure region for the MDP's parity condition.
StateMask almost_sure_parity_set(const FiniteMdp& mdp);

ValueVector chain_reach_exact(const FiniteMdp& chain, const StateMask& target);

struct ValueBounds {
  Backend backend = Backend::rational;
  std::size_t radius = 0;
  std::size_t branch_cap = 0;
  std::vector<StateId> states;
  std::vector<Rational> lower;
  std::vector<Rational> upper;
};

/// lower from the pessimistic truncation, upper from the optimistic one,
/// both restricted to the retained states.
ValueBounds value_bounds(const CountableMdp& mdp, const Objective& obj, std::size_t radius,
                         std::optional<std::size_t> branch_cap = std::nullopt);

}  // namespace cmdp
