#pragma once

#include <cmdp/mdp.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cmdp {

template <class T>
using Distribution = std::vector<std::pair<T, Rational>>;

/// Memoryless deterministic strategy: controller state -> chosen successor.
struct MdStrategy {
  std::map<StateId, StateId> choice;

  const StateId* choose(const StateId& s) const {
    auto it = choice.find(s);
    return it == choice.end() ? nullptr : &it->second;
  }
};

/// Index form of an MD strategy on a FiniteMdp: entry i is the chosen target
/// index for controller state i and FiniteMdp::npos elsewhere.
using IndexStrategy = std::vector<std::size_t>;

IndexStrategy to_index(const FiniteMdp& mdp, const MdStrategy& sigma);
MdStrategy from_index(const FiniteMdp& mdp, const IndexStrategy& sigma);
/// Smallest-successor choice at every controller state.
IndexStrategy smallest_successor(const FiniteMdp& mdp);

/// Finite-memory randomized strategy. Rules are looked up per (mode, state);
/// a per-mode wildcard covers states without an explicit rule. Successor rules
/// may be given over concrete StateIds or over successor ordinals (position in
/// StateId order / enumeration order), which is what makes them usable on
/// infinite ladders and infinitely branching states.
struct Transducer {
  struct SuccessorRule {
    Distribution<StateId> by_id;
    Distribution<std::size_t> by_ordinal;
  };

  std::vector<std::string> modes;
  std::size_t initial = 0;
  std::map<std::pair<std::size_t, StateId>, Distribution<std::size_t>> update;
  std::vector<std::optional<Distribution<std::size_t>>> default_update;
  std::map<std::pair<std::size_t, StateId>, SuccessorRule> successor;
  std::vector<std::optional<SuccessorRule>> default_successor;

  std::size_t mode_count() const noexcept { return modes.size(); }
  /// πu(m, s); a mode without a matching rule stays where it is.
  Distribution<std::size_t> update_dist(std::size_t m, const StateId& s) const;
  /// πs(m, s) resolved against the MDP's successor list.
  Distribution<StateId> successor_dist(std::size_t m, const StateId& s, const CountableMdp& mdp) const;

  /// A 1-mode deterministic transducer playing `sigma`.
  static Transducer from_md(const MdStrategy& sigma);
};

/// Checks that every distribution of the transducer sums to exactly 1, uses
/// valid mode indices and has positive probabilities.
void check_transducer(const Transducer& t);

/// Deterministic strategy whose memory is one unbounded counter: the number of
/// visits to `anchor` so far, the current position included.
class CounterStrategy {
 public:
  using Rule = std::function<StateId(std::uint64_t visits, const StateId& state)>;

  CounterStrategy(StateId anchor, Rule rule) : anchor_(std::move(anchor)), rule_(std::move(rule)) {}

  const StateId& anchor() const noexcept { return anchor_; }
  StateId choose(std::uint64_t visits, const StateId& state) const { return rule_(visits, state); }

 private:
  StateId anchor_;
  Rule rule_;
};

using AnyStrategy = std::variant<MdStrategy, Transducer, CounterStrategy>;

}  // namespace cmdp
