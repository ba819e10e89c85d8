#include <cmdp/errors.hpp>
#include <cmdp/mdp.hpp>

#include <algorithm>

namespace cmdp {

const char* to_string(StateKind kind) noexcept { return kind == StateKind::controller ? "controller" : "random"; }

FiniteMdp::FiniteMdp(std::vector<StateSpec> states, std::optional<StateId> initial)
    : states_(std::move(states)), declared_initial_(std::move(initial)) {
  std::stable_sort(states_.begin(), states_.end(), [](const StateSpec& a, const StateSpec& b) { return a.id < b.id; });
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i].id, i);

  edges_.resize(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    auto& out = edges_[i];
    out.reserve(states_[i].successors.size());
    for (const auto& tr : states_[i].successors) {
      auto it = index_.find(tr.to);
      out.push_back(Edge{it == index_.end() ? npos : it->second, tr.prob});
    }
  }
  if (declared_initial_) {
    if (auto it = index_.find(*declared_initial_); it != index_.end()) initial_ = it->second;
  }
}

std::optional<std::size_t> FiniteMdp::find(const StateId& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteMdp::index(const StateId& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw NotFound("unknown state '" + s.str() + "'");
  return it->second;
}

bool FiniteMdp::is_chain() const noexcept {
  return std::none_of(states_.begin(), states_.end(), [](const StateSpec& s) { return s.kind == StateKind::controller; });
}

bool FiniteMdp::has_edge(std::size_t from, std::size_t to) const {
  const auto& out = edges_[from];
  return std::any_of(out.begin(), out.end(), [to](const Edge& e) { return e.target == to; });
}

Rational FiniteMdp::prob(std::size_t from, std::size_t to) const {
  Rational sum = 0;
  for (const auto& e : edges_[from])
    if (e.target == to) sum += e.prob;
  return sum;
}

Color FiniteMdp::max_color() const noexcept {
  Color c = 0;
  for (const auto& s : states_) c = std::max(c, s.color);
  return c;
}

bool CountableMdp::is_successor(const StateId& s, const StateId& t) const {
  Successors succ = successors(s);
  if (succ.infinite())
    throw InternalError("is_successor needs an override for the infinitely branching state '" + s.str() + "'");
  return std::any_of(succ.listed.begin(), succ.listed.end(), [&](const Transition& tr) { return tr.to == t; });
}

Rational CountableMdp::prob(const StateId& s, const StateId& t) const {
  Rational sum = 0;
  for (const auto& tr : successors(s).listed)
    if (tr.to == t) sum += tr.prob;
  return sum;
}

FiniteAsCountable::FiniteAsCountable(std::shared_ptr<const FiniteMdp> mdp) : mdp_(std::move(mdp)) {
  if (!mdp_->initial()) throw InvalidInput("finite MDP has no (valid) initial state");
}

StateId FiniteAsCountable::initial() const {
  if (auto i = mdp_->initial()) return mdp_->id(*i);
  if (mdp_->declared_initial()) throw NotFound("initial state '" + mdp_->declared_initial()->str() + "' does not exist");
  if (mdp_->size() == 0) throw InvalidInput("MDP has no states");
  return mdp_->id(0);
}
StateKind FiniteAsCountable::kind(const StateId& s) const { return mdp_->kind(mdp_->index(s)); }
Color FiniteAsCountable::color(const StateId& s) const { return mdp_->color(mdp_->index(s)); }
Successors FiniteAsCountable::successors(const StateId& s) const {
  return Successors{mdp_->spec(mdp_->index(s)).successors, {}};
}
bool FiniteAsCountable::is_state(const StateId& s) const { return mdp_->find(s).has_value(); }

}  // namespace cmdp
