#include "qualitative.hpp"

#include <cmdp/chain.hpp>
#include <cmdp/errors.hpp>
#include <cmdp/evaluation.hpp>
#include <cmdp/synthesis.hpp>

#include <algorithm>
#include <deque>
#include <sstream>

namespace cmdp {

namespace {

StateMask color_mask(const FiniteMdp& mdp, bool (*keep)(Color)) {
  StateMask m(mdp.size(), false);
  for (std::size_t i = 0; i < mdp.size(); ++i) m[i] = keep(mdp.color(i));
  return m;
}

void require_colors(const FiniteMdp& mdp, std::initializer_list<Color> allowed, const char* what) {
  for (std::size_t i = 0; i < mdp.size(); ++i)
    if (std::find(allowed.begin(), allowed.end(), mdp.color(i)) == allowed.end())
      throw InvalidInput(std::string(what) + ": state '" + mdp.id(i).str() + "' has color " +
                         std::to_string(mdp.color(i)));
}

/// Copy of `mdp` in which the controller states selected by `fix` move
/// deterministically to sigma[s]. State order is unchanged.
FiniteMdp fix_states(const FiniteMdp& mdp, const StateMask& fix, const IndexStrategy& sigma) {
  std::vector<StateSpec> states = mdp.specs();
  for (std::size_t i = 0; i < mdp.size(); ++i) {
    if (!fix[i] || !mdp.is_controller(i)) continue;
    states[i].kind = StateKind::random;
    states[i].successors = {Transition{mdp.id(sigma[i]), Rational(1)}};
  }
  return FiniteMdp(std::move(states), mdp.declared_initial());
}

std::string fmt(const Rational& q) { return to_string(q); }

}  // namespace

IndexStrategy sigma_opt_av_index(const FiniteMdp& mdp, const std::vector<Rational>& safety) {
  IndexStrategy out(mdp.size(), FiniteMdp::npos);
  for (std::size_t s = 0; s < mdp.size(); ++s) {
    if (!mdp.is_controller(s)) continue;
    std::size_t best = FiniteMdp::npos;
    for (const auto& e : mdp.edges(s))
      if (best == FiniteMdp::npos || safety[e.target] > safety[best] ||
          (safety[e.target] == safety[best] && e.target < best))
        best = e.target;
    out[s] = best;
  }
  return out;
}

MdStrategy sigma_opt_av(const FiniteMdp& mdp, const StateMask& avoid) {
  ValueVector v = safety_value(mdp, avoid);
  return from_index(mdp, sigma_opt_av_index(mdp, v.exact));
}

namespace {

struct OptAv {
  IndexStrategy sigma;
  std::vector<Rational> stay_safe;  // exact P(G Col=0) under sigma
};

OptAv opt_av(const FiniteMdp& mdp) {
  const StateMask bad = color_mask(mdp, [](Color c) { return c != 0; });
  ValueVector v = safety_value(mdp, bad);
  OptAv out;
  out.sigma = sigma_opt_av_index(mdp, v.exact);
  std::vector<Rational> hit = hitting_probabilities(induced_chain(mdp, out.sigma), bad);
  out.stay_safe.reserve(hit.size());
  for (const auto& h : hit) out.stay_safe.push_back(Rational(1) - h);
  return out;
}

StateMask at_least(const std::vector<Rational>& v, const Rational& tau) {
  StateMask m(v.size(), false);
  for (std::size_t i = 0; i < v.size(); ++i) m[i] = v[i] >= tau;
  return m;
}

}  // namespace

std::vector<Rational> opt_av_safety(const FiniteMdp& mdp) {
  require_valid(mdp);
  return opt_av(mdp).stay_safe;
}

StateMask safe_set(const FiniteMdp& mdp, const Rational& tau) {
  if (tau < 0 || tau > 1) throw InvalidInput("threshold must lie in [0,1], got " + fmt(tau));
  return at_least(opt_av_safety(mdp), tau);
}

ConditionedMdp conditioned_mdp(const FiniteMdp& mdp, const Objective& obj, const ValueVector& values) {
  require_valid(mdp);
  check_objective(obj);
  if (values.size() != mdp.size()) throw InvalidInput("value vector has the wrong size");

  auto require_sinks = [&](const StatePredicate& p, const char* what) {
    for (std::size_t i = 0; i < mdp.size(); ++i) {
      if (!p(mdp.id(i), mdp.color(i))) continue;
      for (const auto& e : mdp.edges(i))
        if (e.target != i)
          throw PreconditionViolation(std::string(what) + " state '" + mdp.id(i).str() +
                                      "' is not a sink; the objective is not prefix-independent here");
    }
  };
  if (const auto* r = std::get_if<Reach>(&obj)) require_sinks(r->target, "target");
  if (const auto* s = std::get_if<Safety>(&obj)) require_sinks(s->avoid, "avoided");

  ConditionedMdp out;
  out.source = std::make_shared<const FiniteMdp>(mdp);
  if (values.backend == Backend::rational) {
    out.value_of = values.exact;
  } else {
    out.warnings.push_back("floating-point values were rationalized (denominators up to 10^6) before conditioning");
    for (double d : values.approx) out.value_of.push_back(rationalize(d));
  }
  const auto& val = out.value_of;

  std::vector<StateSpec> states;
  for (std::size_t s = 0; s < mdp.size(); ++s) {
    if (val[s] < 0 || val[s] > 1) throw InvalidInput("value of '" + mdp.id(s).str() + "' lies outside [0,1]");
    if (val[s] == 0) continue;
    StateSpec spec{mdp.id(s), mdp.kind(s), mdp.color(s), {}};
    if (mdp.is_controller(s)) {
      for (const auto& e : mdp.edges(s))
        if (val[e.target] == val[s]) spec.successors.push_back({mdp.id(e.target), 0});
      if (spec.successors.empty())
        throw PreconditionViolation("values inconsistent: no successor of '" + mdp.id(s).str() +
                                    "' keeps its value " + fmt(val[s]));
    } else {
      Rational sum = 0;
      for (const auto& e : mdp.edges(s)) {
        if (val[e.target] == 0) continue;
        Rational p = e.prob * val[e.target] / val[s];
        sum += p;
        spec.successors.push_back({mdp.id(e.target), p});
      }
      if (sum != 1)
        throw PreconditionViolation("values inconsistent: rescaled distribution at '" + mdp.id(s).str() + "' sums to " +
                                    fmt(sum));
    }
    out.original.push_back(s);
    states.push_back(std::move(spec));
  }
  std::optional<StateId> init;
  if (mdp.initial() && val[*mdp.initial()] > 0) init = mdp.id(*mdp.initial());
  out.mdp = FiniteMdp(std::move(states), init);
  return out;
}

GlueResult uniform_as_glue(const FiniteMdp& mdp, const Objective& obj, const AsOracle& oracle) {
  require_valid(mdp);
  check_objective(obj);
  const std::size_t n = mdp.size();
  IndexStrategy glued(n, FiniteMdp::npos);
  StateMask fixed(n, false), covered(n, false);
  GlueResult out;

  for (std::size_t seed = 0; seed < n; ++seed) {
    if (covered[seed]) continue;
    const FiniteMdp current = fix_states(mdp, fixed, glued);
    MdStrategy sigma;
    try {
      sigma = oracle(current, mdp.id(seed));
    } catch (const Error& e) {
      throw Error(e.code(), "oracle failed at state '" + mdp.id(seed).str() + "': " + e.what());
    }
    const IndexStrategy idx = to_index(current, sigma);

    GlueStep step{mdp.id(seed), sigma, {}};
    StateMask seen(n, false);
    std::deque<std::size_t> queue{seed};
    seen[seed] = true;
    while (!queue.empty()) {
      const std::size_t s = queue.front();
      queue.pop_front();
      step.region.push_back(mdp.id(s));
      auto visit = [&](std::size_t t) {
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      };
      if (current.is_controller(s)) {
        if (idx[s] == FiniteMdp::npos)
          throw PreconditionViolation("oracle strategy for '" + mdp.id(seed).str() + "' is undefined at reachable state '" +
                                      mdp.id(s).str() + "'");
        visit(idx[s]);
      } else {
        for (const auto& e : current.edges(s)) visit(e.target);
      }
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (!seen[s]) continue;
      covered[s] = true;
      if (mdp.is_controller(s) && !fixed[s]) {
        glued[s] = idx[s];
        fixed[s] = true;
      }
    }
    std::sort(step.region.begin(), step.region.end());
    out.steps.push_back(std::move(step));
  }
  out.strategy = from_index(mdp, glued);
  return out;
}

MdStrategy as_reach_md(const FiniteMdp& mdp, const StateMask& target, const std::vector<StateId>& queried) {
  require_valid(mdp);
  if (target.size() != mdp.size()) throw InvalidInput("target mask has the wrong size");
  detail::AsReach a = detail::as_reach_analysis(mdp, target);
  auto check = [&](std::size_t i) {
    if (!a.win[i])
      throw PreconditionViolation("state '" + mdp.id(i).str() + "' does not reach the target almost surely");
  };
  if (queried.empty()) {
    for (std::size_t i = 0; i < mdp.size(); ++i) check(i);
  } else {
    for (const auto& s : queried) check(mdp.index(s));
  }
  return from_index(mdp, a.choice);
}

namespace {

void require_almost_sure(const FiniteMdp& mdp) {
  StateMask as = almost_sure_parity_set(mdp);
  for (std::size_t i = 0; i < mdp.size(); ++i)
    if (!as[i]) throw PreconditionViolation("state '" + mdp.id(i).str() + "' is not almost-surely winning");
}

AsOracle reach_oracle(std::function<StateMask(const FiniteMdp&)> target) {
  return [target = std::move(target)](const FiniteMdp& current, const StateId& s) {
    return as_reach_md(current, target(current), {s});
  };
}

}  // namespace

MdStrategy as_buchi_md(const FiniteMdp& mdp) {
  require_valid(mdp);
  require_colors(mdp, {1, 2}, "Büchi synthesis expects colors in {1,2}");
  require_almost_sure(mdp);
  auto twos = [](const FiniteMdp& m) { return color_mask(m, [](Color c) { return c == 2; }); };
  return uniform_as_glue(mdp, Parity{{1, 2}}, reach_oracle(twos)).strategy;
}

MdStrategy as_parity012_md(const FiniteMdp& mdp) {
  require_valid(mdp);
  require_colors(mdp, {0, 1, 2}, "{0,1,2}-parity synthesis expects colors in {0,1,2}");
  require_almost_sure(mdp);

  const OptAv av = opt_av(mdp);
  const StateMask safe_low = at_least(av.stay_safe, Rational(1, 3));
  const StateMask safe_high = at_least(av.stay_safe, Rational(2, 3));
  const FiniteMdp fixed = fix_states(mdp, safe_low, av.sigma);

  auto target = [&](const FiniteMdp& current) {
    StateMask t(current.size(), false);
    for (std::size_t i = 0; i < current.size(); ++i) t[i] = safe_high[i] || current.color(i) == 2;
    return t;
  };
  const MdStrategy hat = uniform_as_glue(fixed, Parity{{0, 1, 2}}, reach_oracle(target)).strategy;

  IndexStrategy out = to_index(mdp, hat);
  for (std::size_t s = 0; s < mdp.size(); ++s)
    if (mdp.is_controller(s) && safe_low[s]) out[s] = av.sigma[s];
  return from_index(mdp, out);
}

SynthesisResult optimal_parity_md(const FiniteMdp& mdp, const Parity& obj) {
  require_valid(mdp);
  check_objective(obj);
  const bool buchi = obj.colors.count(0) == 0;
  for (Color c : obj.colors)
    if (c > 2) throw InvalidInput("optimal MD synthesis is provided for colors within {0,1,2} only; got " + describe(obj));
  for (std::size_t i = 0; i < mdp.size(); ++i)
    if (obj.colors.count(mdp.color(i)) == 0)
      throw InvalidInput("state '" + mdp.id(i).str() + "' has a color outside " + describe(obj));

  const ValueVector val = parity_value(mdp);
  const ConditionedMdp cond = conditioned_mdp(mdp, obj, val);

  MdStrategy star;
  if (cond.mdp.size() > 0) star = buchi ? as_buchi_md(cond.mdp) : as_parity012_md(cond.mdp);

  IndexStrategy sigma = smallest_successor(mdp);
  SynthesisResult res;
  const char* path = buchi ? "conditioned/as-buchi" : "conditioned/as-012";
  for (std::size_t s = 0; s < mdp.size(); ++s) {
    const bool positive = val.exact[s] > 0;
    if (positive && mdp.is_controller(s)) {
      const StateId* pick = star.choose(mdp.id(s));
      if (pick == nullptr) throw InternalError("conditioned strategy misses state '" + mdp.id(s).str() + "'");
      sigma[s] = mdp.index(*pick);
    }
    res.guarantee.emplace(mdp.id(s), val.exact[s]);
    res.trace.emplace(mdp.id(s), positive ? path : "value-zero/smallest-successor");
  }

  const std::vector<Rational> achieved = md_value_index(mdp, sigma, obj);
  for (std::size_t s = 0; s < mdp.size(); ++s)
    if (achieved[s] != val.exact[s])
      throw InternalError("synthesized strategy attains " + fmt(achieved[s]) + " instead of " + fmt(val.exact[s]) +
                          " at '" + mdp.id(s).str() + "'");

  res.strategy = from_index(mdp, sigma);
  res.metadata["objective"] = describe(obj);
  res.metadata["conditioned_states"] = std::to_string(cond.mdp.size());
  res.metadata["verified"] = "exact";
  res.warnings = cond.warnings;
  return res;
}

SynthesisResult eps_optimal_reach_md(const FiniteMdp& mdp, const StateMask& target, double eps) {
  if (!(eps > 0)) throw InvalidInput("epsilon must be positive");
  require_valid(mdp);
  const IndexStrategy sigma = max_reach_strategy(mdp, target);
  const std::vector<Rational> v = hitting_probabilities(induced_chain(mdp, sigma), target);
  SynthesisResult res;
  res.strategy = from_index(mdp, sigma);
  for (std::size_t s = 0; s < mdp.size(); ++s) {
    res.guarantee.emplace(mdp.id(s), v[s]);
    res.trace.emplace(mdp.id(s), "policy-iteration/optimal");
  }
  res.metadata["epsilon"] = std::to_string(eps);
  res.metadata["optimal"] = "true";
  return res;
}

namespace {

/// Maps a strategy computed on a truncation back to the countable MDP. Choices
/// that lead into the sink fall back to the smallest real successor.
MdStrategy lift(const Truncation& tr, const CountableMdp& mdp, const IndexStrategy& sigma) {
  MdStrategy out;
  for (std::size_t i = 0; i < tr.mdp.size(); ++i) {
    if (!tr.mdp.is_controller(i) || tr.mdp.id(i) == tr.sink) continue;
    StateId pick = tr.mdp.id(sigma[i]);
    if (pick == tr.sink) {
      Successors succ = mdp.successors(tr.mdp.id(i));
      if (succ.infinite()) {
        pick = succ.enumerate(0);
      } else {
        pick = succ.listed.front().to;
        for (const auto& t : succ.listed) pick = std::min(pick, t.to);
      }
    }
    out.choice.emplace(tr.mdp.id(i), pick);
  }
  return out;
}

struct Grown {
  std::size_t radius = 0;
  Rational gap;
  ValueBounds bounds;
};

Grown grow_until(const CountableMdp& mdp, const Objective& obj, const Rational& budget,
                 const CountableSynthesisOptions& opts) {
  std::vector<StateId> queried = opts.queried;
  if (queried.empty()) queried.push_back(mdp.initial());
  Rational last_gap = 1;
  for (std::size_t r = std::max<std::size_t>(opts.initial_radius, 1); r <= opts.max_radius; r *= 2) {
    ValueBounds b = value_bounds(mdp, obj, r, opts.branch_cap);
    Rational gap = 0;
    bool all_retained = true;
    for (const auto& q : queried) {
      auto it = std::lower_bound(b.states.begin(), b.states.end(), q);
      if (it == b.states.end() || *it != q) {
        all_retained = false;
        break;
      }
      const std::size_t k = static_cast<std::size_t>(it - b.states.begin());
      gap = std::max(gap, Rational(b.upper[k] - b.lower[k]));
    }
    if (!all_retained) continue;
    last_gap = gap;
    if (gap <= budget) return {r, gap, std::move(b)};
  }
  throw NotConverged("radius cap " + std::to_string(opts.max_radius) + " reached with bound gap " + fmt(last_gap),
                     last_gap.get_d());
}

}  // namespace

SynthesisResult eps_optimal_reach_md(const CountableMdp& mdp, const StatePredicate& target, double eps,
                                     const CountableSynthesisOptions& opts) {
  if (!(eps > 0)) throw InvalidInput("epsilon must be positive");
  const Objective obj = Reach{target};
  const Grown g = grow_until(mdp, obj, rationalize(eps), opts);

  const Truncation tr = truncate(mdp, obj, {g.radius, Boundary::pessimistic, opts.branch_cap});
  const StateMask tmask = mask_of(tr.mdp, std::get<Reach>(tr.objective).target);
  const IndexStrategy sigma = max_reach_strategy(tr.mdp, tmask);
  const std::vector<Rational> v = hitting_probabilities(induced_chain(tr.mdp, sigma), tmask);

  SynthesisResult res;
  res.strategy = lift(tr, mdp, sigma);
  for (std::size_t i = 0; i < tr.mdp.size(); ++i) {
    if (tr.mdp.id(i) == tr.sink) continue;
    res.guarantee.emplace(tr.mdp.id(i), v[i]);
    res.trace.emplace(tr.mdp.id(i), "pessimistic-truncation/optimal");
  }
  res.metadata["epsilon"] = std::to_string(eps);
  res.metadata["radius"] = std::to_string(g.radius);
  res.metadata["gap"] = fmt(g.gap);
  res.metadata["branch_cap"] = std::to_string(tr.branch_cap);
  res.metadata["outside_truncation"] = "smallest successor";
  if (tr.capped_branching)
    res.metadata["limitation"] = "infinitely branching states were cut to their first " + std::to_string(tr.branch_cap) +
                                 " successors; choices beyond the cap were not considered";
  return res;
}

CoBuchiConstants cobuchi_constants(const Rational& eps) {
  if (eps <= 0 || eps > 1) throw InvalidInput("epsilon must lie in (0,1], got " + fmt(eps));
  CoBuchiConstants c;
  c.eps1 = c.eps2 = c.eps3 = eps / 6;
  c.k = Rational(2) / eps;
  c.tau1 = Rational(1) - c.eps1;
  c.tau2 = Rational(1) - c.eps2 / c.k;
  return c;
}

SynthesisResult eps_optimal_cobuchi_md(const FiniteMdp& mdp, const Rational& eps) {
  const CoBuchiConstants c = cobuchi_constants(eps);
  require_valid(mdp);
  require_colors(mdp, {0, 1}, "co-Büchi synthesis expects colors in {0,1}");

  const OptAv av = opt_av(mdp);
  const StateMask safe1 = at_least(av.stay_safe, c.tau1);
  const StateMask safe2 = at_least(av.stay_safe, c.tau2);
  const FiniteMdp fixed = fix_states(mdp, safe1, av.sigma);
  const IndexStrategy reach = max_reach_strategy(fixed, safe2);

  IndexStrategy sigma(mdp.size(), FiniteMdp::npos);
  SynthesisResult res;
  for (std::size_t s = 0; s < mdp.size(); ++s) {
    if (!mdp.is_controller(s)) continue;
    sigma[s] = safe1[s] ? av.sigma[s] : reach[s];
    res.trace.emplace(mdp.id(s), safe1[s] ? "safe-tau1/opt-av" : "reach-safe-tau2");
  }
  const std::vector<Rational> achieved = md_value_index(mdp, sigma, Parity{{0, 1}});
  for (std::size_t s = 0; s < mdp.size(); ++s) res.guarantee.emplace(mdp.id(s), achieved[s]);

  res.strategy = from_index(mdp, sigma);
  res.metadata["epsilon"] = fmt(eps);
  res.metadata["eps1"] = fmt(c.eps1);
  res.metadata["eps2"] = fmt(c.eps2);
  res.metadata["eps3"] = fmt(c.eps3);
  res.metadata["k"] = fmt(c.k);
  res.metadata["tau1"] = fmt(c.tau1);
  res.metadata["tau2"] = fmt(c.tau2);
  return res;
}

SynthesisResult eps_optimal_cobuchi_md(const CountableMdp& mdp, const Rational& eps,
                                       const CountableSynthesisOptions& opts) {
  cobuchi_constants(eps);
  const Objective obj = Parity{{0, 1}};
  const Rational budget = eps / 6;
  const Grown g = grow_until(mdp, obj, budget, opts);

  Truncation tr = truncate(mdp, obj, {g.radius, Boundary::pessimistic, opts.branch_cap});
  std::vector<StateSpec> specs = tr.mdp.specs();
  for (auto& s : specs)
    if (s.id == tr.sink) s.color = 1;
  tr.mdp = FiniteMdp(std::move(specs), tr.mdp.declared_initial());

  SynthesisResult inner = eps_optimal_cobuchi_md(tr.mdp, eps - budget);
  const IndexStrategy sigma = to_index(tr.mdp, inner.strategy);

  SynthesisResult res;
  res.strategy = lift(tr, mdp, sigma);
  for (const auto& [s, v] : inner.guarantee)
    if (s != tr.sink) res.guarantee.emplace(s, v);
  for (const auto& [s, t] : inner.trace)
    if (s != tr.sink) res.trace.emplace(s, t);
  res.metadata = inner.metadata;
  res.metadata["epsilon"] = fmt(eps);
  res.metadata["truncation_budget"] = fmt(budget);
  res.metadata["inner_epsilon"] = fmt(eps - budget);
  res.metadata["radius"] = std::to_string(g.radius);
  res.metadata["gap"] = fmt(g.gap);
  if (tr.capped_branching)
    res.metadata["limitation"] = "infinitely branching states were cut to their first " + std::to_string(tr.branch_cap) +
                                 " successors";
  return res;
}

}  // namespace cmdp
