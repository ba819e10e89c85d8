#include <cmdp/errors.hpp>
#include <cmdp/mdp_ops.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace cmdp {

ValidationReport validate(const FiniteMdp& mdp) {
  ValidationReport report;
  auto flag = [&](const StateId& s, std::string msg) { report.violations.push_back({s, std::move(msg)}); };

  for (std::size_t i = 0; i + 1 < mdp.size(); ++i)
    if (mdp.id(i) == mdp.id(i + 1)) flag(mdp.id(i), "duplicate state id");

  for (std::size_t i = 0; i < mdp.size(); ++i) {
    const StateSpec& spec = mdp.spec(i);
    auto edges = mdp.edges(i);
    if (edges.empty()) {
      flag(spec.id, "no successor");
      continue;
    }
    std::set<StateId> seen;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const StateId& to = spec.successors[k].to;
      if (edges[k].target == FiniteMdp::npos) flag(spec.id, "successor '" + to.str() + "' does not exist");
      if (!seen.insert(to).second) flag(spec.id, "duplicate successor '" + to.str() + "'");
    }
    if (spec.kind == StateKind::random) {
      Rational sum = 0;
      for (const auto& e : edges) {
        if (e.prob <= 0) flag(spec.id, "nonpositive probability " + e.prob.get_str());
        sum += e.prob;
      }
      if (sum != 1) flag(spec.id, "distribution sums to " + sum.get_str());
    }
  }
  if (mdp.declared_initial() && !mdp.initial()) flag(*mdp.declared_initial(), "initial state does not exist");
  return report;
}

void require_valid(const FiniteMdp& mdp) {
  ValidationReport r = validate(mdp);
  if (r.ok()) return;
  std::string msg = "invalid MDP:";
  for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i)
    msg += " [" + r.violations[i].state.str() + ": " + r.violations[i].message + "]";
  if (r.violations.size() > 5) msg += " (+" + std::to_string(r.violations.size() - 5) + " more)";
  throw InvalidInput(msg);
}

FiniteMdp fix_md(const FiniteMdp& mdp, const MdStrategy& sigma, const std::vector<StateId>& roots) {
  require_valid(mdp);
  IndexStrategy idx = to_index(mdp, sigma);
  const IndexStrategy fallback = smallest_successor(mdp);

  std::vector<bool> reach(mdp.size(), roots.empty());
  if (!roots.empty()) {
    std::deque<std::size_t> queue;
    for (const auto& r : roots) {
      std::size_t i = mdp.index(r);
      if (!reach[i]) {
        reach[i] = true;
        queue.push_back(i);
      }
    }
    while (!queue.empty()) {
      std::size_t s = queue.front();
      queue.pop_front();
      auto visit = [&](std::size_t t) {
        if (!reach[t]) {
          reach[t] = true;
          queue.push_back(t);
        }
      };
      if (mdp.is_controller(s)) {
        if (idx[s] != FiniteMdp::npos) visit(idx[s]);
      } else {
        for (const auto& e : mdp.edges(s)) visit(e.target);
      }
    }
  }

  std::vector<StateSpec> states;
  states.reserve(mdp.size());
  for (std::size_t i = 0; i < mdp.size(); ++i) {
    StateSpec spec = mdp.spec(i);
    if (spec.kind == StateKind::controller) {
      std::size_t pick = idx[i];
      if (pick == FiniteMdp::npos) {
        if (reach[i]) throw PreconditionViolation("strategy undefined at reachable controller state '" + spec.id.str() + "'");
        pick = fallback[i];
      }
      spec.kind = StateKind::random;
      spec.successors = {Transition{mdp.id(pick), Rational(1)}};
    }
    states.push_back(std::move(spec));
  }
  return FiniteMdp(std::move(states), mdp.declared_initial());
}

FiniteMdp fix_md(const CountableMdp& mdp, const MdStrategy& sigma, std::size_t max_states) {
  std::vector<StateSpec> states;
  std::unordered_set<StateId> seen;
  std::deque<StateId> queue;
  const StateId init = mdp.initial();
  seen.insert(init);
  queue.push_back(init);
  while (!queue.empty()) {
    StateId s = std::move(queue.front());
    queue.pop_front();
    StateSpec spec{s, StateKind::random, mdp.color(s), {}};
    if (mdp.kind(s) == StateKind::controller) {
      Successors succ = mdp.successors(s);
      const StateId* pick = sigma.choose(s);
      if (pick == nullptr && !succ.infinite() && succ.listed.size() == 1) pick = &succ.listed.front().to;
      if (pick == nullptr) throw PreconditionViolation("strategy undefined at reachable controller state '" + s.str() + "'");
      if (!mdp.is_successor(s, *pick))
        throw PreconditionViolation("strategy picks '" + pick->str() + "' which is not a successor of '" + s.str() + "'");
      spec.successors = {Transition{StateId(*pick), Rational(1)}};
    } else {
      spec.successors = mdp.successors(s).listed;
    }
    for (const auto& tr : spec.successors) {
      if (seen.insert(tr.to).second) {
        if (seen.size() > max_states)
          throw PreconditionViolation("induced chain exceeds " + std::to_string(max_states) + " reachable states");
        queue.push_back(tr.to);
      }
    }
    states.push_back(std::move(spec));
  }
  return FiniteMdp(std::move(states), init);
}

std::string product_id(const Transducer& t, std::size_t mode, const StateId& s) { return t.modes.at(mode) + "|" + s.str(); }

ProductChain product(const CountableMdp& mdp, const Transducer& t, std::size_t max_states) {
  check_transducer(t);
  using Key = std::pair<std::size_t, StateId>;
  std::map<Key, std::size_t> index;
  std::vector<Key> order;
  std::vector<StateSpec> states;

  auto intern = [&](std::size_t m, const StateId& s) {
    auto [it, fresh] = index.emplace(Key{m, s}, order.size());
    if (fresh) {
      if (order.size() >= max_states)
        throw PreconditionViolation("product chain exceeds " + std::to_string(max_states) + " states");
      order.push_back({m, s});
    }
    return it->second;
  };

  intern(t.initial, mdp.initial());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto [m, s] = order[k];
    Distribution<StateId> next;
    if (mdp.kind(s) == StateKind::controller) {
      Successors succ = mdp.successors(s);
      if (!succ.infinite() && succ.listed.size() == 1)
        next = {{succ.listed.front().to, Rational(1)}};
      else
        next = t.successor_dist(m, s, mdp);
    } else {
      for (const auto& tr : mdp.successors(s).listed) next.emplace_back(tr.to, tr.prob);
    }
    const Distribution<std::size_t> upd = t.update_dist(m, s);

    std::map<std::size_t, Rational> joint;
    for (const auto& [to, p] : next)
      for (const auto& [m2, q] : upd) joint[intern(m2, to)] += p * q;

    StateSpec spec{product_id(t, m, s), StateKind::random, mdp.color(s), {}};
    for (const auto& [target, p] : joint) spec.successors.push_back({product_id(t, order[target].first, order[target].second), p});
    states.push_back(std::move(spec));
  }

  ProductChain out;
  out.chain = FiniteMdp(std::move(states), StateId(product_id(t, t.initial, mdp.initial())));
  out.origin.resize(out.chain.size());
  for (const auto& key : order) out.origin[out.chain.index(product_id(t, key.first, key.second))] = key;
  return out;
}

ProductChain product(const FiniteMdp& mdp, const Transducer& t, std::size_t max_states) {
  FiniteAsCountable view(std::make_shared<const FiniteMdp>(mdp));
  return product(view, t, max_states);
}

const char* to_string(Boundary b) noexcept { return b == Boundary::pessimistic ? "pessimistic" : "optimistic"; }

namespace {

Color fresh_color(const std::set<Color>& colors, bool even) {
  Color top = colors.empty() ? 0 : *colors.rbegin();
  Color c = top + 1;
  if ((c % 2 == 0) != even) ++c;
  return c;
}

}  // namespace

Truncation truncate(const CountableMdp& mdp, const Objective& obj, const TruncationOptions& opts) {
  if (opts.branch_cap && *opts.branch_cap < 1) throw InvalidInput("branch cap must be at least 1");
  const std::size_t cap = opts.branch_cap.value_or(std::max<std::size_t>(opts.radius, 1));
  const bool pess = opts.boundary == Boundary::pessimistic;

  Truncation out;
  out.sink = kSinkId;
  out.branch_cap = cap;
  Color sink_color = 0;

  if (const auto* r = std::get_if<Reach>(&obj)) {
    auto target = r->target;
    out.objective = pess ? Reach{[target](const StateId& s, Color c) { return s != kSinkId && target(s, c); }}
                         : Reach{[target](const StateId& s, Color c) { return s == kSinkId || target(s, c); }};
  } else if (const auto* sf = std::get_if<Safety>(&obj)) {
    auto avoid = sf->avoid;
    out.objective = pess ? Safety{[avoid](const StateId& s, Color c) { return s == kSinkId || avoid(s, c); }}
                         : Safety{[avoid](const StateId& s, Color c) { return s != kSinkId && avoid(s, c); }};
  } else if (const auto* p = std::get_if<Parity>(&obj)) {
    Parity ext = *p;
    sink_color = fresh_color(p->colors, !pess);
    ext.colors.insert(sink_color);
    out.objective = ext;
  } else {
    throw InvalidInput("truncation supports Reach, Safety and Parity objectives only");
  }

  // BFS ball, layer by layer; each new layer sorted by StateId.
  std::unordered_map<StateId, std::size_t> dist;
  std::vector<StateId> layer{mdp.initial()};
  dist.emplace(mdp.initial(), 0);
  std::map<StateId, Successors> succ_of;
  for (std::size_t d = 0;; ++d) {
    out.retained.insert(out.retained.end(), layer.begin(), layer.end());
    if (out.retained.size() > opts.max_states)
      throw PreconditionViolation("truncation exceeds " + std::to_string(opts.max_states) + " states");
    for (const auto& s : layer) succ_of.emplace(s, mdp.successors(s));
    if (d == opts.radius) break;
    std::vector<StateId> next;
    for (const auto& s : layer) {
      const Successors& succ = succ_of.at(s);
      auto consider = [&](const StateId& t) {
        if (dist.emplace(t, d + 1).second) next.push_back(t);
      };
      if (succ.infinite()) {
        for (std::size_t i = 0; i < cap; ++i) consider(succ.enumerate(i));
      } else {
        for (const auto& tr : succ.listed) consider(tr.to);
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }

  std::vector<StateSpec> states;
  states.reserve(out.retained.size() + 1);
  for (const auto& s : out.retained) {
    if (s == kSinkId) throw InternalError("model uses the reserved id '#sink'");
    const Successors& succ = succ_of.at(s);
    StateSpec spec{s, mdp.kind(s), mdp.color(s), {}};
    if (spec.kind == StateKind::random) {
      if (succ.infinite()) throw InvalidInput("random state '" + s.str() + "' is infinitely branching");
      Rational to_sink = 0;
      for (const auto& tr : succ.listed) {
        if (dist.count(tr.to))
          spec.successors.push_back(tr);
        else
          to_sink += tr.prob;
      }
      if (to_sink > 0) spec.successors.push_back({kSinkId, to_sink});
    } else {
      bool sink_edge = false;
      if (succ.infinite()) {
        out.capped_branching = true;
        for (std::size_t i = 0; i < cap; ++i) {
          StateId t = succ.enumerate(i);
          if (dist.count(t))
            spec.successors.push_back({t, 0});
          else
            sink_edge = true;
        }
        sink_edge = true;
      } else {
        for (const auto& tr : succ.listed) {
          if (dist.count(tr.to))
            spec.successors.push_back({tr.to, 0});
          else
            sink_edge = true;
        }
      }
      if (sink_edge) spec.successors.push_back({kSinkId, 0});
    }
    states.push_back(std::move(spec));
  }
  states.push_back(StateSpec{kSinkId, StateKind::random, sink_color, {{kSinkId, Rational(1)}}});
  out.mdp = FiniteMdp(std::move(states), mdp.initial());
  return out;
}

}  // namespace cmdp
