#include "acceptance/criteria.hpp"

#include "acceptance/oracle.hpp"
#include "acceptance/random_mdp.hpp"

#include <cmdp/chain.hpp>
#include <cmdp/errors.hpp>
#include <cmdp/evaluation.hpp>
#include <cmdp/gallery.hpp>
#include <cmdp/lasso.hpp>
#include <cmdp/mdp_ops.hpp>
#include <cmdp/synthesis.hpp>
#include <cmdp/values.hpp>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace cmdp::acceptance {

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records the first failure only; later ones would just repeat the story.
  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

std::string q(const Rational& r) { return to_string(r); }

constexpr std::uint64_t kSeedBase = 20'240'601;

// --- 1 ---------------------------------------------------------------------

void borel_cantelli_limits(Outcome& o) {
  const Rational slack = pow2_neg(58);
  auto check = [&](const GalleryEntry& e, const std::string& name, const Rational& want) {
    const BorelCantelliResult r = borel_cantelli_sum(e, name, 60);
    if (!r.limit || *r.limit != want)
      return o.fail(e.name + " " + name + ": limit " + (r.limit ? q(*r.limit) : std::string("none")) + ", want " + q(want));
    if (r.partial_sum > *r.limit || *r.limit - r.partial_sum > slack)
      return o.fail(e.name + " " + name + ": partial sum at K=60 is " + q(r.partial_sum));
  };
  check(fig2a_parity123(), "sigma_h", Rational(2));
  check(fig3b_cobuchi(), "sigma_h", Rational(1));
  const GalleryEntry fig3a = fig3a_safety();
  for (unsigned n = 1; n <= 10; ++n) check(fig3a, "sigma_" + std::to_string(n), pow2_neg(n));
  if (o.pass) o.detail << "limits 2, 1 and 2^-n (n=1..10) exact; K=60 partial sums within 2^-58";
}

// --- 2 ---------------------------------------------------------------------

void safety_dichotomy(Outcome& o) {
  const GalleryEntry e = fig3a_safety();
  for (unsigned j = 1; j <= 10; ++j) {
    MdStrategy pick;
    pick.choice[StateId("s")] = StateId("r:" + std::to_string(j));
    const FiniteMdp chain = fix_md(*e.mdp, pick);
    const ValueVector v = chain_reach_exact(chain, mask_of(chain, pred::in({"t"})));
    const Rational p = v.exact[chain.index(StateId("s"))];
    if (p != 1) return o.fail("pick r:" + std::to_string(j) + " reaches t with probability " + q(p));
  }
  for (unsigned n = 1; n <= 10; ++n) {
    const BorelCantelliResult r = borel_cantelli_sum(e, "sigma_" + std::to_string(n), 40);
    const Rational want = Rational(1) - pow2_neg(n);
    if (!r.survival_lower_bound || *r.survival_lower_bound < want)
      return o.fail("sigma_" + std::to_string(n) + " safety lower bound " +
                    (r.survival_lower_bound ? q(*r.survival_lower_bound) : std::string("missing")) + " < " + q(want));
  }
  o.detail << "pick r_j: P(F t) = 1 exactly for j=1..10; sigma_n safety >= 1 - 2^-n for n=1..10";
}

// --- 3 ---------------------------------------------------------------------

Transducer::SuccessorRule by_ordinal(const Rational& stop) {
  Transducer::SuccessorRule rule;
  if (stop > 0) rule.by_ordinal.emplace_back(0, stop);
  if (stop < 1) rule.by_ordinal.emplace_back(1, Rational(1) - stop);
  return rule;
}

/// Ladder transducer: in mode m, a state s_i stops at r_i (ordinal 0) with
/// probability stop[m] and climbs otherwise; the mode then moves by update[m].
Transducer ladder_transducer(const std::vector<Rational>& stop, const std::vector<Distribution<std::size_t>>& update) {
  Transducer t;
  for (std::size_t m = 0; m < stop.size(); ++m) {
    t.modes.push_back("m" + std::to_string(m));
    t.default_successor.push_back(by_ordinal(stop[m]));
    t.default_update.push_back(update[m]);
  }
  return t;
}

std::vector<Transducer> futility_suite() {
  std::vector<Transducer> out;
  out.push_back(ladder_transducer({Rational(1)}, {{{0, Rational(1)}}}));
  // Mode 0 stops, mode 1 climbs once; mode 0 flips a fair coin between them.
  out.push_back(ladder_transducer({Rational(1), Rational(0)},
                                  {{{0, Rational(1, 2)}, {1, Rational(1, 2)}}, {{0, Rational(1)}}}));
  std::mt19937_64 rng(kSeedBase + 3);
  const Rational stops[] = {Rational(1), Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(3, 4), Rational(1, 4)};
  while (out.size() < 20) {
    const std::size_t modes = 1 + rng() % 3;
    std::vector<Rational> stop;
    std::vector<Distribution<std::size_t>> update;
    for (std::size_t m = 0; m < modes; ++m) {
      stop.push_back(stops[rng() % 6]);
      Distribution<std::size_t> d;
      unsigned total = 0;
      std::vector<unsigned> w(modes);
      for (auto& x : w) total += (x = static_cast<unsigned>(rng() % 3));
      if (total == 0) w[m] = total = 1;
      for (std::size_t k = 0; k < modes; ++k)
        if (w[k]) d.emplace_back(k, ratio(w[k], total));
      update.push_back(std::move(d));
    }
    out.push_back(ladder_transducer(stop, update));
  }
  return out;
}

void fr_futility_suite(Outcome& o) {
  const GalleryEntry e = fig2a_parity123();
  const auto suite = futility_suite();
  Rational smallest = 1;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const FutilityCertificate cert = fr_futility(e, suite[i], 2000);
    if (cert.c <= 0 || cert.conclusion.empty()) return o.fail("transducer " + std::to_string(i) + ": no certificate");
    if (i == 0 && cert.c != 1) return o.fail("one-mode r_0 transducer: c = " + q(cert.c) + ", want 1");
    if (i == 1 && cert.c < Rational(1, 2)) return o.fail("r_0/r_1 mixture: c = " + q(cert.c) + " < 1/2");
    smallest = std::min(smallest, cert.c);
  }
  o.detail << suite.size() << " transducers certified (smallest c ~ " << std::setprecision(4) << smallest.get_d()
           << "); one-mode r_0 gives c = 1; " << e.claims.value("futility_conclusion", std::string());
}

// --- 4 ---------------------------------------------------------------------

void opt_av_optimality(Outcome& o) {
  const RandomShape shape{1, 8, 4, 3, {0, 1}};
  std::size_t strategies = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const FiniteMdp mdp = random_mdp(kSeedBase + 400 + i, shape);
    const StateMask avoid = mask_of(mdp, pred::color_eq(1));
    const Safety obj{pred::color_eq(1)};
    const std::vector<Rational> value = safety_value(mdp, avoid).exact;
    const std::vector<Rational> got = md_value(mdp, sigma_opt_av(mdp, avoid), obj).exact;
    const std::vector<Rational> best = brute_force_optimum(mdp, obj);
    strategies += md_strategy_count(mdp);
    for (std::size_t s = 0; s < mdp.size(); ++s)
      if (got[s] != value[s] || value[s] != best[s])
        return o.fail("instance " + std::to_string(i) + " state " + mdp.id(s).str() + ": sigma " + q(got[s]) +
                      ", value " + q(value[s]) + ", brute force " + q(best[s]));
  }
  o.detail << "200 instances, " << strategies << " MD strategies enumerated, exact agreement";
}

// --- 5 ---------------------------------------------------------------------

FiniteMdp cylinder_mdp() {
  auto rand = [](const char* id, std::vector<Transition> t) { return StateSpec{StateId(id), StateKind::random, 0, std::move(t)}; };
  return FiniteMdp(
      {
          StateSpec{StateId("a"), StateKind::controller, 0, {{StateId("b"), 0}, {StateId("c"), 0}}},
          rand("b", {{StateId("goal"), Rational(1, 2)}, {StateId("a"), Rational(1, 4)}, {StateId("fail"), Rational(1, 4)}}),
          rand("c", {{StateId("goal"), Rational(1, 3)}, {StateId("a"), Rational(1, 3)}, {StateId("fail"), Rational(1, 3)}}),
          rand("goal", {{StateId("goal"), Rational(1)}}),
          rand("fail", {{StateId("fail"), Rational(1)}}),
      },
      StateId("a"));
}

void cylinder_identity(Outcome& o) {
  const FiniteMdp m = cylinder_mdp();
  const StateMask goal = mask_of(m, pred::in({"goal"}));
  const ValueVector val = reach_value(m, goal, Mode::max);
  const IndexStrategy sigma = max_reach_strategy(m, goal);
  const ConditionedMdp cond = conditioned_mdp(m, Reach{pred::in({"goal"})}, val);
  const FiniteMdp& star = cond.mdp;

  for (std::size_t s = 0; s < star.size(); ++s) {
    if (star.is_controller(s)) continue;
    Rational sum = 0;
    for (const auto& e : star.edges(s)) sum += e.prob;
    if (sum != 1) return o.fail("distribution of " + star.id(s).str() + " sums to " + q(sum));
  }

  // Step probability under sigma in the conditioned and the original MDP.
  auto step_star = [&](std::size_t a, std::size_t b) -> Rational {
    if (star.is_controller(a)) return m.id(sigma[m.index(star.id(a))]) == star.id(b) ? 1 : 0;
    return star.prob(a, b);
  };
  auto step_orig = [&](const StateId& a, const StateId& b) -> Rational {
    const std::size_t i = m.index(a);
    if (m.is_controller(i)) return m.id(sigma[i]) == b ? 1 : 0;
    return m.prob(i, m.index(b));
  };

  std::size_t cylinders = 0;
  std::vector<std::size_t> path;
  std::function<bool(Rational, Rational)> extend = [&](Rational p_star, Rational p_orig) -> bool {
    ++cylinders;
    const Rational v0 = val.exact[m.index(star.id(path.front()))];
    const Rational vn = val.exact[m.index(star.id(path.back()))];
    if (p_star != p_orig * vn / v0) {
      std::string ids;
      for (std::size_t s : path) ids += star.id(s).str() + " ";
      o.fail("cylinder " + ids + ": " + q(p_star) + " vs " + q(p_orig * vn / v0));
      return false;
    }
    if (path.size() == 6) return true;
    for (const auto& e : star.edges(path.back())) {
      const Rational a = step_star(path.back(), e.target);
      if (a == 0) continue;
      const Rational b = step_orig(star.id(path.back()), star.id(e.target));
      path.push_back(e.target);
      const bool ok = extend(p_star * a, p_orig * b);
      path.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (std::size_t s = 0; s < star.size(); ++s) {
    path = {s};
    if (!extend(1, 1)) return;
  }
  o.detail << cylinders << " cylinders of length <= 6 checked on a " << m.size() << "-state MDP; distributions sum to 1";
}

// --- 6 ---------------------------------------------------------------------

void optimal_pipeline(Outcome& o) {
  struct Family {
    const char* name;
    std::vector<Color> colors;
    std::uint64_t offset;
  };
  for (const Family& f : {Family{"{0,1,2}", {0, 1, 2}, 600}, Family{"{1,2}", {1, 2}, 1600}}) {
    const RandomShape shape{1, 6, 4, 3, f.colors};
    const Parity obj{std::set<Color>(f.colors.begin(), f.colors.end())};
    std::size_t fractional = 0;
    for (std::uint64_t i = 0; i < 300; ++i) {
      const FiniteMdp mdp = random_mdp(kSeedBase + f.offset + i, shape);
      const SynthesisResult r = optimal_parity_md(mdp, obj);
      const std::vector<Rational> got = md_value(mdp, r.strategy, obj).exact;
      const std::vector<Rational> best = brute_force_optimum(mdp, obj);
      const ValueVector approx = objective_value(mdp, obj, SolverOptions{Backend::floating});
      for (std::size_t s = 0; s < mdp.size(); ++s) {
        if (std::fabs(approx.approx[s] - best[s].get_d()) > 1e-9)
          return o.fail(std::string(f.name) + " instance " + std::to_string(i) + " state " + mdp.id(s).str() +
                        ": float backend off by " + std::to_string(approx.approx[s] - best[s].get_d()) + ", optimum " + q(best[s]));
        fractional += best[s] > 0 && best[s] < 1;
        if (got[s] != best[s])
          return o.fail(std::string(f.name) + " instance " + std::to_string(i) + " state " + mdp.id(s).str() +
                        ": achieved " + q(got[s]) + ", optimum " + q(best[s]));
      }
    }
    o.detail << f.name << ": " << fractional << " states with value in (0,1); ";
  }
  o.detail << "300 {0,1,2} and 300 {1,2} instances: achieved value equals the MD optimum at every state (float backend within 1e-9)";
}

// --- 7, 8, 9 ---------------------------------------------------------------

FiniteMdp cobuchi_instance(std::uint64_t i) { return random_mdp(kSeedBase + 2600 + i, RandomShape{1, 6, 4, 3, {0, 1}}); }

void cobuchi_eps(Outcome& o) {
  const Parity obj{{0, 1}};
  for (const Rational& eps : {Rational(3, 10), Rational(1, 20)}) {
    const CoBuchiConstants c = cobuchi_constants(eps);
    if (c.eps1 != eps / 6 || c.eps2 != eps / 6 || c.eps3 != eps / 6 || c.k != Rational(2) / eps)
      return o.fail("constants for eps " + q(eps) + " differ from eps/6 and 2/eps");
  }
  for (std::uint64_t i = 0; i < 200; ++i) {
    const FiniteMdp mdp = cobuchi_instance(i);
    const std::vector<Rational> best = brute_force_optimum(mdp, obj);
    for (const Rational& eps : {Rational(3, 10), Rational(1, 20)}) {
      const SynthesisResult r = eps_optimal_cobuchi_md(mdp, eps);
      const std::vector<Rational> got = md_value(mdp, r.strategy, obj).exact;
      for (std::size_t s = 0; s < mdp.size(); ++s)
        if (got[s] < best[s] - eps)
          return o.fail("instance " + std::to_string(i) + " state " + mdp.id(s).str() + " eps " + q(eps) +
                        ": achieved " + q(got[s]) + ", optimum " + q(best[s]));
    }
  }
  o.detail << "200 instances, eps in {3/10, 1/20}: achieved >= optimum - eps; eps_i = eps/6, k = 2/eps";
}

void safe_two_levels(Outcome& o) {
  const std::pair<Rational, Rational> levels[] = {{Rational(1, 3), Rational(2, 3)}, {Rational(1, 2), Rational(3, 4)}};
  if ((levels[0].second - levels[0].first) / (Rational(1) - levels[0].first) != Rational(1, 2))
    return o.fail("(1/3, 2/3) bound is not 1/2");
  std::size_t checked = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const FiniteMdp mdp = cobuchi_instance(i);
    const StateMask bad = mask_of(mdp, pred::color_ne(0));
    const IndexStrategy sigma = sigma_opt_av_index(mdp, safety_value(mdp, bad).exact);
    const SparseChain chain = induced_chain(mdp, sigma);
    for (const auto& [t1, t2] : levels) {
      const StateMask low = safe_set(mdp, t1);
      const StateMask high = safe_set(mdp, t2);
      StateMask leave(mdp.size());
      for (std::size_t s = 0; s < mdp.size(); ++s) leave[s] = !low[s];
      const std::vector<Rational> exit = hitting_probabilities(chain, leave);
      const Rational bound = (t2 - t1) / (Rational(1) - t1);
      for (std::size_t s = 0; s < mdp.size(); ++s) {
        if (!high[s]) continue;
        ++checked;
        if (Rational(1) - exit[s] < bound)
          return o.fail("instance " + std::to_string(i) + " state " + mdp.id(s).str() + ": P(G Safe_" + q(t1) +
                        ") = " + q(Rational(1) - exit[s]) + " < " + q(bound));
      }
    }
  }
  o.detail << checked << " (instance, state, level) triples satisfy the bound; (1/3, 2/3) gives 1/2";
}

void return_to_safe(Outcome& o) {
  std::size_t region_states = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const FiniteMdp mdp = cobuchi_instance(i);
    for (const Rational& tau : {Rational(1, 2), Rational(3, 4)}) {
      const StateMask safe = safe_set(mdp, tau);
      StateMask outside(mdp.size());
      for (std::size_t s = 0; s < mdp.size(); ++s) outside[s] = mdp.color(s) != 0 || safe[s];
      const std::vector<Rational> stay = safety_value(mdp, outside).exact;
      for (std::size_t s = 0; s < mdp.size(); ++s) {
        if (outside[s]) continue;
        ++region_states;
        if (stay[s] != 0)
          return o.fail("instance " + std::to_string(i) + " state " + mdp.id(s).str() + " tau " + q(tau) +
                        ": can stay in the region with probability " + q(stay[s]));
      }
    }
  }
  o.detail << region_states << " region states, all with staying value 0";
}

// --- 10 --------------------------------------------------------------------

void lasso_equivalence(Outcome& o) {
  const ColorOf color_of = [](const StateId& s) { return static_cast<Color>(std::stoul(s.str().substr(1))); };
  const Objective parity = Parity{{1, 2, 3}};
  const Objective rabin = Rabin{{AcceptancePair{pred::color_eq(3), pred::color_eq(2)}}};
  const Objective streett =
      Streett{{AcceptancePair{pred::color_eq(2), pred::all()}, AcceptancePair{pred::none(), pred::color_eq(3)}}};
  std::mt19937_64 rng(kSeedBase + 10);
  std::size_t accepted = 0;
  for (int i = 0; i < 10'000; ++i) {
    const Lasso l = random_lasso(rng, {1, 2, 3}, 5, 6);
    const bool p = accepts(l, parity, color_of);
    const bool r = accepts(l, rabin, color_of);
    const bool s = accepts(l, streett, color_of);
    if (p != r || p != s) return o.fail("lasso " + std::to_string(i) + " disagrees");
    accepted += p;
  }
  o.detail << "10000 lassos agree (" << accepted << " accepted)";
}

// --- 11 --------------------------------------------------------------------

void gamblers_ruin_bounds(Outcome& o) {
  const GalleryEntry e = gamblers_ruin(Rational(3, 5));
  const Objective ruin = Reach{pred::in({"0"})};
  std::vector<Rational> prev_lo(11, Rational(0)), prev_hi(11, Rational(1));
  double worst = 0.0, width = 0.0;
  for (std::size_t radius = 10; radius <= 40; radius += 5) {
    const ValueBounds b = value_bounds(*e.mdp, ruin, radius);
    for (unsigned i = 1; i <= 10; ++i) {
      const auto it = std::lower_bound(b.states.begin(), b.states.end(), StateId(std::to_string(i)));
      if (it == b.states.end() || it->str() != std::to_string(i))
        return o.fail("state " + std::to_string(i) + " missing at radius " + std::to_string(radius));
      const std::size_t k = static_cast<std::size_t>(it - b.states.begin());
      Rational truth = 1;
      for (unsigned j = 0; j < i; ++j) truth *= Rational(2, 3);
      if (b.lower[k] > truth || truth > b.upper[k])
        return o.fail("radius " + std::to_string(radius) + " state " + std::to_string(i) + ": [" + q(b.lower[k]) +
                      ", " + q(b.upper[k]) + "] misses (2/3)^" + std::to_string(i));
      if (b.lower[k] < prev_lo[i] || b.upper[k] > prev_hi[i])
        return o.fail("bounds of state " + std::to_string(i) + " widen at radius " + std::to_string(radius));
      prev_lo[i] = b.lower[k];
      prev_hi[i] = b.upper[k];
      if (radius == 40) {
        worst = std::max(worst, Rational(truth - b.lower[k]).get_d());
        width = std::max(width, Rational(b.upper[k] - b.lower[k]).get_d());
      }
    }
  }
  if (worst > 1e-4) return o.fail("lower bound at radius 40 is " + std::to_string(worst) + " below (2/3)^i");
  std::ostringstream w;
  w << std::setprecision(3) << worst << " (optimistic width " << width << ")";
  o.detail << "radius 10..40 brackets (2/3)^i for i=1..10, monotone; at radius 40 the pessimistic bound is within "
           << w.str();
}

// --- 12 --------------------------------------------------------------------

std::string report_bytes(const SimulationReport& r) {
  std::ostringstream out;
  out << r.episodes << ' ' << r.horizon << ' ' << r.seed << ' ' << r.aborted << '\n';
  for (const auto& e : r.events) out << e.name << ' ' << e.count << '\n';
  for (const auto& [s, c] : r.visits) out << s.str() << ' ' << c << '\n';
  return out.str();
}

void simulation_calibration(Outcome& o) {
  const GalleryEntry e = fig2a_parity123();
  const AnyStrategy sigma = *find_strategy(e, "sigma_h");
  SimulationOptions opts;
  opts.horizon = 2000;
  opts.episodes = 100'000;
  opts.seed = 42;
  opts.cycle_events = 9;
  const SimulationReport a = simulate(e, sigma, opts);
  const SimulationReport b = simulate(e, sigma, opts);
  if (report_bytes(a) != report_bytes(b)) return o.fail("two runs with seed 42 differ");
  if (a.aborted) return o.fail(std::to_string(a.aborted) + " episodes aborted");
  double worst = 0;
  for (unsigned k = 0; k <= 8; ++k) {
    const EventStat& s = a.events.at(k);
    const double p = std::ldexp(1.0, -static_cast<int>(k));
    const double sigma_k = std::sqrt(p * (1 - p) / static_cast<double>(a.episodes));
    const double dev = std::fabs(s.frequency - p);
    if (dev > 3 * sigma_k)
      return o.fail(s.name + ": frequency " + std::to_string(s.frequency) + ", expected " + std::to_string(p));
    if (sigma_k > 0) worst = std::max(worst, dev / sigma_k);
  }
  std::ostringstream w;
  w << std::setprecision(3) << worst;
  o.detail << "E_0..E_8 within " << w.str() << " standard errors of 2^-k; two runs byte-identical";
}

struct Spec {
  int id;
  const char* name;
  double budget;
  void (*run)(Outcome&);
};

const Spec kSpecs[] = {
    {1, "Borel-Cantelli limits", 1, borel_cantelli_limits},
    {2, "safety dichotomy on fig3a", 5, safety_dichotomy},
    {3, "FR futility on fig2a", 10, fr_futility_suite},
    {4, "sigma_opt_av optimality", 60, opt_av_optimality},
    {5, "conditioned-MDP cylinder identity", 5, cylinder_identity},
    {6, "optimal MD pipeline", 300, optimal_pipeline},
    {7, "eps-optimal co-Buchi", 120, cobuchi_eps},
    {8, "safe-two-levels bound", 60, safe_two_levels},
    {9, "return-to-safe property", 60, return_to_safe},
    {10, "lasso acceptance equivalence", 5, lasso_equivalence},
    {11, "gambler's ruin bounds", 10, gamblers_ruin_bounds},
    {12, "simulation calibration", 120, simulation_calibration},
};

}  // namespace

std::vector<int> criterion_ids() {
  std::vector<int> ids;
  for (const auto& s : kSpecs) ids.push_back(s.id);
  return ids;
}

CriterionResult run_criterion(int id) {
  for (const auto& spec : kSpecs) {
    if (spec.id != id) continue;
    CriterionResult r;
    r.id = id;
    r.name = spec.name;
    r.budget_seconds = spec.budget;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      spec.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.pass = o.pass;
    r.detail = o.detail.str();
    if (r.pass && r.seconds > r.budget_seconds) {
      r.pass = false;
      r.detail += "; over the time budget";
    }
    return r;
  }
  throw NotFound("no acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_suite(const std::vector<int>& ids,
                                       const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(run_criterion(id));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << " (" << std::fixed << std::setprecision(2)
      << r.seconds << " s / " << std::setprecision(0) << r.budget_seconds << " s): " << r.detail;
  return out.str();
}

}  // namespace cmdp::acceptance
