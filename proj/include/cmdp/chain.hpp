#pragma once

#include <cmdp/mdp.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace cmdp {

/// Sparse row-stochastic matrix over state indices.
struct SparseChain {
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;

  std::size_t size() const noexcept { return rows.size(); }
};

/// Reads a FiniteMdp without controller states. Throws PreconditionViolation otherwise.
SparseChain chain_of(const FiniteMdp& chain);

/// Chain induced by an index strategy (controller rows become Dirac).
SparseChain induced_chain(const FiniteMdp& mdp, const std::vector<std::size_t>& sigma);

/// States from which `target` is reachable with positive probability.
std::vector<bool> can_reach(const SparseChain& c, const std::vector<bool>& target);

/// Exact hitting probabilities of `target`. States that cannot reach the
/// target get 0, target states 1; the rest solve (I - Q)x = b by sparse
/// rational elimination, pivoting in `order` (identity if empty).
std::vector<Rational> hitting_probabilities(const SparseChain& c, const std::vector<bool>& target,
                                            const std::vector<std::size_t>& order = {});

/// Strongly connected components in reverse topological order (sinks first).
std::vector<std::vector<std::size_t>> sccs(const SparseChain& c);

/// Bottom SCCs of the chain.
std::vector<std::vector<std::size_t>> bsccs(const SparseChain& c);

}  // namespace cmdp
