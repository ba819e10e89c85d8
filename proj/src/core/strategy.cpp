#include <cmdp/errors.hpp>
#include <cmdp/strategy.hpp>

#include <algorithm>

namespace cmdp {

IndexStrategy to_index(const FiniteMdp& mdp, const MdStrategy& sigma) {
  IndexStrategy out(mdp.size(), FiniteMdp::npos);
  for (const auto& [from, to] : sigma.choice) {
    auto i = mdp.find(from);
    if (!i || !mdp.is_controller(*i)) continue;
    auto j = mdp.find(to);
    if (!j || !mdp.has_edge(*i, *j))
      throw InvalidInput("strategy picks '" + to.str() + "' which is not a successor of '" + from.str() + "'");
    out[*i] = *j;
  }
  return out;
}

MdStrategy from_index(const FiniteMdp& mdp, const IndexStrategy& sigma) {
  MdStrategy out;
  for (std::size_t i = 0; i < mdp.size() && i < sigma.size(); ++i)
    if (mdp.is_controller(i) && sigma[i] != FiniteMdp::npos) out.choice.emplace(mdp.id(i), mdp.id(sigma[i]));
  return out;
}

IndexStrategy smallest_successor(const FiniteMdp& mdp) {
  IndexStrategy out(mdp.size(), FiniteMdp::npos);
  for (std::size_t i = 0; i < mdp.size(); ++i) {
    if (!mdp.is_controller(i)) continue;
    for (const auto& e : mdp.edges(i)) out[i] = std::min(out[i], e.target);
  }
  return out;
}

Distribution<std::size_t> Transducer::update_dist(std::size_t m, const StateId& s) const {
  if (auto it = update.find({m, s}); it != update.end()) return it->second;
  if (m < default_update.size() && default_update[m]) return *default_update[m];
  return {{m, Rational(1)}};
}

Distribution<StateId> Transducer::successor_dist(std::size_t m, const StateId& s, const CountableMdp& mdp) const {
  const SuccessorRule* rule = nullptr;
  if (auto it = successor.find({m, s}); it != successor.end())
    rule = &it->second;
  else if (m < default_successor.size() && default_successor[m])
    rule = &*default_successor[m];
  if (rule == nullptr)
    throw PreconditionViolation("transducer has no successor rule for mode '" + (m < modes.size() ? modes[m] : "?") +
                                "' at state '" + s.str() + "'");

  Distribution<StateId> out = rule->by_id;
  if (!rule->by_ordinal.empty()) {
    Successors succ = mdp.successors(s);
    std::vector<StateId> sorted;
    if (!succ.infinite()) {
      for (const auto& tr : succ.listed) sorted.push_back(tr.to);
      std::sort(sorted.begin(), sorted.end());
    }
    for (const auto& [ord, p] : rule->by_ordinal) {
      if (succ.infinite()) {
        out.emplace_back(succ.enumerate(ord), p);
      } else {
        if (ord >= sorted.size())
          throw PreconditionViolation("successor ordinal " + std::to_string(ord) + " out of range at state '" +
                                      s.str() + "'");
        out.emplace_back(sorted[ord], p);
      }
    }
  }
  for (const auto& [t, p] : out)
    if (!mdp.is_successor(s, t))
      throw PreconditionViolation("transducer picks '" + t.str() + "' which is not a successor of '" + s.str() + "'");
  return out;
}

Transducer Transducer::from_md(const MdStrategy& sigma) {
  Transducer t;
  t.modes = {"m0"};
  t.default_update = {std::nullopt};
  t.default_successor = {std::nullopt};
  for (const auto& [from, to] : sigma.choice) t.successor[{0, from}] = SuccessorRule{{{to, Rational(1)}}, {}};
  return t;
}

namespace {

template <class T>
void check_dist(const Distribution<T>& d, const std::string& where) {
  Rational sum = 0;
  for (const auto& [x, p] : d) {
    if (p <= 0) throw InvalidInput(where + ": nonpositive probability " + p.get_str());
    sum += p;
  }
  if (sum != 1) throw InvalidInput(where + ": distribution sums to " + sum.get_str());
}

}  // namespace

void check_transducer(const Transducer& t) {
  const std::size_t n = t.modes.size();
  if (n == 0) throw InvalidInput("transducer without modes");
  if (t.initial >= n) throw InvalidInput("transducer initial mode out of range");
  auto check_modes = [n](const Distribution<std::size_t>& d, const std::string& where) {
    for (const auto& [m, p] : d)
      if (m >= n) throw InvalidInput(where + ": mode index out of range");
  };
  for (const auto& [key, d] : t.update) {
    if (key.first >= n) throw InvalidInput("update rule for unknown mode");
    const std::string where = "update(" + t.modes[key.first] + ", " + key.second.str() + ")";
    check_dist(d, where);
    check_modes(d, where);
  }
  for (std::size_t m = 0; m < t.default_update.size(); ++m) {
    if (!t.default_update[m]) continue;
    const std::string where = "update(" + t.modes.at(m) + ", *)";
    check_dist(*t.default_update[m], where);
    check_modes(*t.default_update[m], where);
  }
  auto check_rule = [](const Transducer::SuccessorRule& r, const std::string& where) {
    Distribution<int> joined;
    for (const auto& [s, p] : r.by_id) joined.emplace_back(0, p);
    for (const auto& [o, p] : r.by_ordinal) joined.emplace_back(0, p);
    check_dist(joined, where);
  };
  for (const auto& [key, r] : t.successor) {
    if (key.first >= n) throw InvalidInput("successor rule for unknown mode");
    check_rule(r, "successor(" + t.modes[key.first] + ", " + key.second.str() + ")");
  }
  for (std::size_t m = 0; m < t.default_successor.size(); ++m)
    if (t.default_successor[m]) check_rule(*t.default_successor[m], "successor(" + t.modes.at(m) + ", *)");
}

}  // namespace cmdp
