#pragma once

#include <cmdp/objective.hpp>
#include <cmdp/strategy.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cmdp {

struct Violation {
  StateId state;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate(const FiniteMdp& mdp);

/// Throws InvalidInput listing the first violations if the MDP is malformed.
void require_valid(const FiniteMdp& mdp);

/// Controller states become random with a Dirac distribution on the chosen
/// successor. Controller states unreachable from every chosen root may stay
/// unmapped; they keep their edges split uniformly so the result is still a chain.
/// Throws PreconditionViolation when a state reachable from `roots`
/// (all states if empty) has no choice.
FiniteMdp fix_md(const FiniteMdp& mdp, const MdStrategy& sigma, const std::vector<StateId>& roots = {});

/// Explores the chain induced by an MD strategy on a countable MDP from its
/// initial state. Throws if more than `max_states` states are reachable.
FiniteMdp fix_md(const CountableMdp& mdp, const MdStrategy& sigma, std::size_t max_states = 100'000);

/// Product chain M × T restricted to pairs reachable from (m0, initial).
/// Product ids are "<mode>|<state>"; colors are lifted from the state.
struct ProductChain {
  FiniteMdp chain;
  std::vector<std::pair<std::size_t, StateId>> origin;  // per chain index: (mode, state)
};

ProductChain product(const CountableMdp& mdp, const Transducer& t, std::size_t max_states = 200'000);
ProductChain product(const FiniteMdp& mdp, const Transducer& t, std::size_t max_states = 200'000);

std::string product_id(const Transducer& t, std::size_t mode, const StateId& s);

enum class Boundary { pessimistic, optimistic };

const char* to_string(Boundary b) noexcept;

struct TruncationOptions {
  std::size_t radius = 0;
  Boundary boundary = Boundary::pessimistic;
  std::optional<std::size_t> branch_cap;  // defaults to max(radius, 1)
  std::size_t max_states = 2'000'000;
};

struct Truncation {
  FiniteMdp mdp;
  Objective objective;
  StateId sink;
  std::vector<StateId> retained;  // BFS order
  std::size_t branch_cap = 0;
  bool capped_branching = false;  // an infinite enumeration was cut
};

inline const StateId kSinkId{"#sink"};

/// Keeps the BFS ball of the given radius around the initial state and
/// redirects every edge leaving it (and the residual choices of capped
/// infinite enumerations) to a fresh absorbing sink that is losing for the
/// objective (pessimistic) or winning (optimistic).
Truncation truncate(const CountableMdp& mdp, const Objective& obj, const TruncationOptions& opts);

}  // namespace cmdp
