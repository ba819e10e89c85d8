#pragma once

#include <cmdp/rational.hpp>
#include <cmdp/state_id.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace cmdp {

enum class StateKind : std::uint8_t { controller, random };
using Color = std::uint32_t;

const char* to_string(StateKind kind) noexcept;

/// One outgoing edge as written by the user. `prob` is ignored at controller states.
struct Transition {
  StateId to;
  Rational prob;
};

struct StateSpec {
  StateId id;
  StateKind kind = StateKind::controller;
  Color color = 0;
  std::vector<Transition> successors;
};

/// Explicit finite MDP. States are kept sorted by StateId so that index order
/// and StateId order coincide; every algorithm that breaks ties "by smallest
/// StateId" just takes the smallest index.
///
/// Construction never throws on semantic problems (bad sums, dangling ids);
/// those are reported by validate(). Edges to unknown ids resolve to npos.
class FiniteMdp {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  struct Edge {
    std::size_t target;
    Rational prob;
  };

  FiniteMdp() = default;
  explicit FiniteMdp(std::vector<StateSpec> states, std::optional<StateId> initial = std::nullopt);

  std::size_t size() const noexcept { return states_.size(); }
  const StateId& id(std::size_t i) const { return states_[i].id; }
  StateKind kind(std::size_t i) const { return states_[i].kind; }
  bool is_controller(std::size_t i) const { return states_[i].kind == StateKind::controller; }
  Color color(std::size_t i) const { return states_[i].color; }
  std::span<const Edge> edges(std::size_t i) const { return edges_[i]; }
  const StateSpec& spec(std::size_t i) const { return states_[i]; }
  const std::vector<StateSpec>& specs() const noexcept { return states_; }

  std::optional<std::size_t> find(const StateId& s) const;
  /// Like find() but throws NotFound.
  std::size_t index(const StateId& s) const;

  std::optional<std::size_t> initial() const noexcept { return initial_; }
  const std::optional<StateId>& declared_initial() const noexcept { return declared_initial_; }

  bool is_chain() const noexcept;
  bool has_edge(std::size_t from, std::size_t to) const;
  /// P(from)(to) for random `from`, 0 if absent.
  Rational prob(std::size_t from, std::size_t to) const;
  Color max_color() const noexcept;

 private:
  std::vector<StateSpec> states_;
  std::vector<std::vector<Edge>> edges_;
  std::unordered_map<StateId, std::size_t> index_;
  std::optional<StateId> declared_initial_;
  std::optional<std::size_t> initial_;
};

/// Successor description of a countable-MDP state. Finitely branching states
/// list their successors; infinitely branching controller states provide an
/// enumerator instead (the i-th successor for i = 0, 1, 2, ...).
struct Successors {
  std::vector<Transition> listed;
  std::function<StateId(std::size_t)> enumerate;

  bool infinite() const noexcept { return static_cast<bool>(enumerate); }
};

/// Lazily generated MDP. Implementations must be pure: the same query always
/// yields the same answer.
class CountableMdp {
 public:
  virtual ~CountableMdp() = default;

  virtual StateId initial() const = 0;
  virtual StateKind kind(const StateId& s) const = 0;
  virtual Color color(const StateId& s) const = 0;
  virtual Successors successors(const StateId& s) const = 0;
  /// Membership test for the transition relation; the default scans listed
  /// successors and cannot answer for infinite enumerations.
  virtual bool is_successor(const StateId& s, const StateId& t) const;
  /// Probability P(s)(t) for random s.
  virtual Rational prob(const StateId& s, const StateId& t) const;
  virtual bool is_state(const StateId& s) const = 0;
};

/// Adapts an explicit MDP to the lazy interface.
class FiniteAsCountable final : public CountableMdp {
 public:
  explicit FiniteAsCountable(std::shared_ptr<const FiniteMdp> mdp);

  StateId initial() const override;
  StateKind kind(const StateId& s) const override;
  Color color(const StateId& s) const override;
  Successors successors(const StateId& s) const override;
  bool is_state(const StateId& s) const override;

  const FiniteMdp& finite() const noexcept { return *mdp_; }

 private:
  std::shared_ptr<const FiniteMdp> mdp_;
};

using StateMask = std::vector<bool>;

}  // namespace cmdp
