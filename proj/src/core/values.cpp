#include "graph.hpp"
#include "qualitative.hpp"

#include <cmdp/chain.hpp>
#include <cmdp/errors.hpp>
#include <cmdp/values.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

namespace cmdp {

const char* to_string(Backend b) noexcept { return b == Backend::rational ? "rational" : "float"; }

Backend backend_from_string(const std::string& s) {
  if (s == "rational" || s == "exact") return Backend::rational;
  if (s == "float" || s == "double") return Backend::floating;
  throw InvalidInput("unknown backend '" + s + "' (expected rational or float)");
}

namespace detail {

std::vector<std::vector<std::size_t>> adjacency(const FiniteMdp& mdp) {
  std::vector<std::vector<std::size_t>> adj(mdp.size());
  for (std::size_t i = 0; i < mdp.size(); ++i)
    for (const auto& e : mdp.edges(i)) adj[i].push_back(e.target);
  return adj;
}

AsReach as_reach_analysis(const FiniteMdp& mdp, const StateMask& target) {
  const std::size_t n = mdp.size();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  AsReach out;
  out.win.assign(n, true);
  out.rank.assign(n, none);
  out.choice.assign(n, FiniteMdp::npos);

  for (;;) {
    std::vector<std::size_t> rank(n, none);
    std::vector<std::size_t> choice(n, FiniteMdp::npos);
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < n; ++i)
      if (out.win[i] && target[i]) {
        rank[i] = 0;
        layer.push_back(i);
      }
    for (std::size_t r = 1; !layer.empty(); ++r) {
      std::vector<std::size_t> next;
      for (std::size_t s = 0; s < n; ++s) {
        if (!out.win[s] || rank[s] != none) continue;
        if (mdp.is_controller(s)) {
          std::size_t best = FiniteMdp::npos;
          for (const auto& e : mdp.edges(s)) {
            if (rank[e.target] == none || rank[e.target] >= r) continue;
            if (best == FiniteMdp::npos || rank[e.target] < rank[best] ||
                (rank[e.target] == rank[best] && e.target < best))
              best = e.target;
          }
          if (best != FiniteMdp::npos) {
            choice[s] = best;
            next.push_back(s);
          }
        } else {
          bool stays = true, progress = false;
          for (const auto& e : mdp.edges(s)) {
            if (!out.win[e.target]) stays = false;
            if (rank[e.target] != none && rank[e.target] < r) progress = true;
          }
          if (stays && progress) next.push_back(s);
        }
      }
      for (std::size_t s : next) rank[s] = r;
      layer = std::move(next);
    }
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i)
      if (out.win[i] && rank[i] == none) {
        out.win[i] = false;
        changed = true;
      }
    if (!changed) {
      out.rank = std::move(rank);
      out.choice = std::move(choice);
      break;
    }
  }

  // Target controller states (and losing ones) still need a valid choice:
  // stay in the winning region when possible, else the smallest successor.
  for (std::size_t s = 0; s < n; ++s) {
    if (!mdp.is_controller(s) || out.choice[s] != FiniteMdp::npos) continue;
    std::size_t pick = FiniteMdp::npos, fallback = FiniteMdp::npos;
    for (const auto& e : mdp.edges(s)) {
      fallback = std::min(fallback, e.target);
      if (out.win[e.target]) pick = std::min(pick, e.target);
    }
    out.choice[s] = pick != FiniteMdp::npos ? pick : fallback;
  }
  return out;
}

Trap avoid_trap(const FiniteMdp& mdp, const StateMask& avoid) {
  const std::size_t n = mdp.size();
  Trap out;
  out.inside.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) out.inside[i] = !avoid[i];
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (!out.inside[s]) continue;
      bool keep;
      if (mdp.is_controller(s)) {
        keep = false;
        for (const auto& e : mdp.edges(s)) keep = keep || out.inside[e.target];
      } else {
        keep = true;
        for (const auto& e : mdp.edges(s)) keep = keep && out.inside[e.target];
      }
      if (!keep) {
        out.inside[s] = false;
        changed = true;
      }
    }
  }
  out.choice.assign(n, FiniteMdp::npos);
  for (std::size_t s = 0; s < n; ++s) {
    if (!out.inside[s] || !mdp.is_controller(s)) continue;
    for (const auto& e : mdp.edges(s))
      if (out.inside[e.target]) out.choice[s] = std::min(out.choice[s], e.target);
  }
  return out;
}

}  // namespace detail

namespace {

std::size_t argbest(const FiniteMdp& mdp, std::size_t s, const std::vector<Rational>& v, Mode mode) {
  std::size_t best = FiniteMdp::npos;
  for (const auto& e : mdp.edges(s)) {
    if (best == FiniteMdp::npos) {
      best = e.target;
      continue;
    }
    const bool better = mode == Mode::max ? v[e.target] > v[best] : v[e.target] < v[best];
    if (better || (v[e.target] == v[best] && e.target < best)) best = e.target;
  }
  return best;
}

struct ExactSolution {
  std::vector<Rational> values;
  IndexStrategy strategy;
};

ExactSolution exact_reach(const FiniteMdp& mdp, const StateMask& target, Mode mode) {
  const std::size_t n = mdp.size();
  IndexStrategy sigma(n, FiniteMdp::npos);
  StateMask frozen(n, false);  // choices that never change

  if (mode == Mode::max) {
    detail::AsReach seed = detail::as_reach_analysis(mdp, target);
    // Start from a choice that makes progress toward the target wherever the
    // target is reachable at all; this only speeds up convergence.
    const auto adj = detail::adjacency(mdp);
    const auto live = detail::backward_reach(adj, target);
    std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
    std::deque<std::size_t> queue;
    std::vector<std::vector<std::size_t>> rev(n);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w : adj[v]) rev[w].push_back(v);
    for (std::size_t i = 0; i < n; ++i)
      if (target[i]) {
        dist[i] = 0;
        queue.push_back(i);
      }
    while (!queue.empty()) {
      std::size_t w = queue.front();
      queue.pop_front();
      for (std::size_t v : rev[w])
        if (dist[v] == std::numeric_limits<std::size_t>::max()) {
          dist[v] = dist[w] + 1;
          queue.push_back(v);
        }
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (!mdp.is_controller(s)) continue;
      if (seed.win[s] && !target[s]) {
        sigma[s] = seed.choice[s];
        continue;
      }
      std::size_t best = FiniteMdp::npos;
      for (const auto& e : mdp.edges(s))
        if (best == FiniteMdp::npos || dist[e.target] < dist[best] || (dist[e.target] == dist[best] && e.target < best))
          best = e.target;
      sigma[s] = best;
      if (target[s] || !live[s]) frozen[s] = true;
    }
  } else {
    detail::Trap trap = detail::avoid_trap(mdp, target);
    sigma = smallest_successor(mdp);
    for (std::size_t s = 0; s < n; ++s) {
      if (!mdp.is_controller(s)) continue;
      if (trap.inside[s]) {
        sigma[s] = trap.choice[s];
        frozen[s] = true;
      } else if (target[s]) {
        frozen[s] = true;
      }
    }
  }

  for (;;) {
    std::vector<Rational> v = hitting_probabilities(induced_chain(mdp, sigma), target);
    bool switched = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (!mdp.is_controller(s) || frozen[s]) continue;
      const std::size_t best = argbest(mdp, s, v, mode);
      const bool improves = mode == Mode::max ? v[best] > v[s] : v[best] < v[s];
      if (improves) {
        sigma[s] = best;
        switched = true;
      }
    }
    if (!switched) return {std::move(v), std::move(sigma)};
  }
}

ValueVector float_reach(const FiniteMdp& mdp, const StateMask& target, Mode mode, const SolverOptions& opts) {
  const std::size_t n = mdp.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& e : mdp.edges(i)) rows[i].emplace_back(e.target, e.prob.get_d());

  ValueVector out;
  out.backend = Backend::floating;
  out.approx.assign(n, 0.0);
  auto& v = out.approx;
  // States whose value is 0 or 1 are settled on the graph, so the sweeps
  // only approximate genuinely fractional values.
  std::vector<bool> settled(n, false);
  auto settle = [&](const StateMask& m, double value) {
    for (std::size_t i = 0; i < n; ++i)
      if (m[i] && !settled[i]) {
        settled[i] = true;
        v[i] = value;
      }
  };
  settle(target, 1.0);
  const detail::Adjacency adj = detail::adjacency(mdp);
  if (mode == Mode::max) {
    settle(detail::as_reach_analysis(mdp, target).win, 1.0);
    StateMask dead = detail::backward_reach(adj, target);
    dead.flip();
    settle(dead, 0.0);
  } else {
    const StateMask avoiding = detail::avoid_trap(mdp, target).inside;
    detail::Adjacency outside(adj);
    for (std::size_t i = 0; i < n; ++i)
      if (target[i]) outside[i].clear();
    StateMask forced = detail::backward_reach(outside, avoiding);
    forced.flip();
    settle(avoiding, 0.0);
    settle(forced, 1.0);
  }

  // A small per-sweep change does not bound the distance to the fixed point,
  // so sweeping continues well below the requested tolerance.
  const double stop = opts.tolerance * 1e-3;
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    residual = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      if (settled[s]) continue;
      double nv;
      if (mdp.is_controller(s)) {
        nv = mode == Mode::max ? 0.0 : 1.0;
        for (const auto& [t, p] : rows[s]) nv = mode == Mode::max ? std::max(nv, v[t]) : std::min(nv, v[t]);
      } else {
        nv = 0.0;
        for (const auto& [t, p] : rows[s]) nv += p * v[t];
      }
      residual = std::max(residual, std::abs(nv - v[s]));
      v[s] = nv;
    }
    out.sweeps = sweep;
    if (residual < stop) return out;
  }
  throw NotConverged("value iteration did not converge within " + std::to_string(opts.max_sweeps) + " sweeps", residual);
}

ValueVector exact_vector(std::vector<Rational> v) {
  ValueVector out;
  out.backend = Backend::rational;
  out.exact = std::move(v);
  return out;
}

}  // namespace

ValueVector reach_value(const FiniteMdp& mdp, const StateMask& target, Mode mode, const SolverOptions& opts) {
  require_valid(mdp);
  if (target.size() != mdp.size()) throw InvalidInput("target mask has the wrong size");
  if (opts.backend == Backend::floating) return float_reach(mdp, target, mode, opts);
  return exact_vector(exact_reach(mdp, target, mode).values);
}

IndexStrategy max_reach_strategy(const FiniteMdp& mdp, const StateMask& target) {
  require_valid(mdp);
  return exact_reach(mdp, target, Mode::max).strategy;
}

ValueVector safety_value(const FiniteMdp& mdp, const StateMask& avoid, const SolverOptions& opts) {
  ValueVector v = reach_value(mdp, avoid, Mode::min, opts);
  for (auto& q : v.exact) q = Rational(1) - q;
  for (auto& d : v.approx) d = 1.0 - d;
  return v;
}

std::vector<EndComponent> mec_decomposition(const FiniteMdp& mdp, const StateMask& within) {
  require_valid(mdp);
  const std::size_t n = mdp.size();
  std::vector<bool> alive(n, true);
  if (!within.empty())
    for (std::size_t i = 0; i < n; ++i) alive[i] = within[i];

  // allowed[s]: successors still usable inside the current candidate.
  detail::Adjacency allowed(n);
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& e : mdp.edges(s)) allowed[s].push_back(e.target);

  std::vector<std::size_t> comp_of(n);
  std::vector<std::vector<std::size_t>> comps;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      if (!alive[s]) continue;
      if (mdp.is_controller(s)) {
        std::erase_if(allowed[s], [&](std::size_t t) { return !alive[t]; });
        if (allowed[s].empty()) {
          alive[s] = false;
          changed = true;
        }
      } else if (std::any_of(allowed[s].begin(), allowed[s].end(), [&](std::size_t t) { return !alive[t]; })) {
        alive[s] = false;
        changed = true;
      }
    }
    if (changed) continue;

    comps = detail::tarjan(allowed, alive);
    for (std::size_t k = 0; k < comps.size(); ++k)
      for (std::size_t v : comps[k]) comp_of[v] = k;
    for (std::size_t s = 0; s < n; ++s) {
      if (!alive[s]) continue;
      if (mdp.is_controller(s)) {
        const std::size_t before = allowed[s].size();
        std::erase_if(allowed[s], [&](std::size_t t) { return comp_of[t] != comp_of[s]; });
        if (allowed[s].size() != before) changed = true;
        if (allowed[s].empty()) alive[s] = false;
      } else if (std::any_of(allowed[s].begin(), allowed[s].end(),
                             [&](std::size_t t) { return comp_of[t] != comp_of[s]; })) {
        alive[s] = false;
        changed = true;
      }
    }
  }

  std::vector<EndComponent> out;
  for (const auto& comp : comps) {
    if (comp.empty() || !alive[comp.front()]) continue;
    EndComponent ec;
    ec.states = comp;
    for (std::size_t v : comp) ec.internal_edges.push_back(allowed[v]);
    out.push_back(std::move(ec));
  }
  std::sort(out.begin(), out.end(), [](const EndComponent& a, const EndComponent& b) { return a.states < b.states; });
  return out;
}

StateMask winning_ec_states(const FiniteMdp& mdp) {
  const std::size_t n = mdp.size();
  StateMask win(n, false);
  std::set<Color> even;
  for (std::size_t i = 0; i < n; ++i)
    if (mdp.color(i) % 2 == 0) even.insert(mdp.color(i));
  for (Color c : even) {
    StateMask within(n, false);
    for (std::size_t i = 0; i < n; ++i) within[i] = mdp.color(i) <= c;
    for (const auto& ec : mec_decomposition(mdp, within)) {
      const bool touches = std::any_of(ec.states.begin(), ec.states.end(), [&](std::size_t v) { return mdp.color(v) == c; });
      if (touches)
        for (std::size_t v : ec.states) win[v] = true;
    }
  }
  return win;
}

ValueVector parity_value(const FiniteMdp& mdp, const SolverOptions& opts) {
  require_valid(mdp);
  return reach_value(mdp, winning_ec_states(mdp), Mode::max, opts);
}

ValueVector objective_value(const FiniteMdp& mdp, const Objective& obj, const SolverOptions& opts) {
  check_objective(obj);
  if (const auto* r = std::get_if<Reach>(&obj)) return reach_value(mdp, mask_of(mdp, r->target), Mode::max, opts);
  if (const auto* s = std::get_if<Safety>(&obj)) return safety_value(mdp, mask_of(mdp, s->avoid), opts);
  if (const auto* p = std::get_if<Parity>(&obj)) {
    for (std::size_t i = 0; i < mdp.size(); ++i)
      if (p->colors.count(mdp.color(i)) == 0)
        throw InvalidInput("state '" + mdp.id(i).str() + "' has color " + std::to_string(mdp.color(i)) +
                           " outside " + describe(obj));
    return parity_value(mdp, opts);
  }
  throw InvalidInput("values are computed for Reach, Safety and Parity objectives only");
}

StateMask almost_sure_reach_set(const FiniteMdp& mdp, const StateMask& target) {
  require_valid(mdp);
  return detail::as_reach_analysis(mdp, target).win;
}

StateMask almost_sure_parity_set(const FiniteMdp& mdp) {
  require_valid(mdp);
  return detail::as_reach_analysis(mdp, winning_ec_states(mdp)).win;
}

ValueVector chain_reach_exact(const FiniteMdp& chain, const StateMask& target) {
  require_valid(chain);
  if (target.size() != chain.size()) throw InvalidInput("target mask has the wrong size");
  return exact_vector(hitting_probabilities(chain_of(chain), target));
}

ValueBounds value_bounds(const CountableMdp& mdp, const Objective& obj, std::size_t radius,
                         std::optional<std::size_t> branch_cap) {
  check_objective(obj);
  if (!std::holds_alternative<Reach>(obj) && !std::holds_alternative<Safety>(obj) && !std::holds_alternative<Parity>(obj))
    throw InvalidInput("value bounds support Reach, Safety and Parity objectives only");
  TruncationOptions opts{radius, Boundary::pessimistic, branch_cap};
  Truncation lo = truncate(mdp, obj, opts);
  opts.boundary = Boundary::optimistic;
  Truncation hi = truncate(mdp, obj, opts);

  ValueVector vlo = objective_value(lo.mdp, lo.objective);
  ValueVector vhi = objective_value(hi.mdp, hi.objective);

  ValueBounds out;
  out.radius = radius;
  out.branch_cap = lo.branch_cap;
  out.states = lo.retained;
  std::sort(out.states.begin(), out.states.end());
  for (const auto& s : out.states) {
    out.lower.push_back(vlo.exact[lo.mdp.index(s)]);
    out.upper.push_back(vhi.exact[hi.mdp.index(s)]);
  }
  return out;
}

}  // namespace cmdp
