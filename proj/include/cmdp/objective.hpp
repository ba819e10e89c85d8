#pragma once

#include <cmdp/mdp.hpp>

#include <functional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace cmdp {

using StatePredicate = std::function<bool(const StateId&, Color)>;

struct Reach {
  StatePredicate target;
};

struct Safety {
  StatePredicate avoid;
};

struct Parity {
  std::set<Color> colors;
};

struct AcceptancePair {
  StatePredicate e;
  StatePredicate f;
};

/// Some pair has Inf ∩ E = ∅ and Inf ∩ F ≠ ∅.
struct Rabin {
  std::vector<AcceptancePair> pairs;
};

/// Every pair with Inf ∩ E = ∅ also has Inf ∩ F = ∅.
struct Streett {
  std::vector<AcceptancePair> pairs;
};

using Objective = std::variant<Reach, Safety, Parity, Rabin, Streett>;

std::string describe(const Objective& obj);

namespace pred {
StatePredicate in(std::set<StateId> ids);
StatePredicate color_eq(Color c);
StatePredicate color_ne(Color c);
StatePredicate all();
StatePredicate none();
}  // namespace pred

/// Evaluates a predicate on every state of a finite MDP.
StateMask mask_of(const FiniteMdp& mdp, const StatePredicate& p);

/// Parity set must be nonempty; Rabin/Streett pairs must carry both predicates.
void check_objective(const Objective& obj);

}  // namespace cmdp
