#include "helpers.hpp"

#include <acceptance/random_mdp.hpp>
#include <cmdp/errors.hpp>
#include <cmdp/evaluation.hpp>
#include <cmdp/gallery.hpp>
#include <cmdp/mdp_ops.hpp>
#include <cmdp/synthesis.hpp>
#include <cmdp/values.hpp>

#include <doctest.h>

#include <cmath>
#include <optional>

using namespace cmdp;
using namespace testing;

namespace {

// Sub-MDP on the almost-surely winning parity states, or nothing if it is empty.
std::optional<FiniteMdp> almost_sure_part(const FiniteMdp& m) {
  StateMask as = almost_sure_parity_set(m);
  std::vector<StateSpec> kept;
  for (std::size_t s = 0; s < m.size(); ++s) {
    if (!as[s]) continue;
    StateSpec spec = m.spec(s);
    if (spec.kind == StateKind::controller)
      std::erase_if(spec.successors, [&](const Transition& t) { return !as[m.index(t.to)]; });
    kept.push_back(spec);
  }
  if (kept.empty()) return std::nullopt;
  FiniteMdp sub(kept);
  REQUIRE(validate(sub).ok());
  return sub;
}

}  // namespace

TEST_CASE("opt_av prefers the safest successor and breaks ties by id") {
  FiniteMdp m({ctrl("c", {"b", "a", "u"}), loop("a"), loop("b"),
               rnd("u", {{"a", Rational(1, 2)}, {"t", Rational(1, 2)}}), loop("t", 1)});
  StateMask avoid = mask_of(m, pred::color_eq(1));
  MdStrategy sigma = sigma_opt_av(m, avoid);
  CHECK(*sigma.choose("c") == StateId("a"));

  FiniteMdp m2({ctrl("c", {"u", "t"}), rnd("u", {{"a", Rational(1, 2)}, {"t", Rational(1, 2)}}), loop("a"),
                loop("t", 1)});
  CHECK(*sigma_opt_av(m2, mask_of(m2, pred::color_eq(1))).choose("c") == StateId("u"));
}

TEST_CASE("opt_av attains the safety value") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, {});
    StateMask avoid = mask_of(m, pred::color_eq(1));
    ValueVector v = safety_value(m, avoid);
    MdStrategy sigma = sigma_opt_av(m, avoid);
    ValueVector got = md_value(m, sigma, Safety{pred::color_eq(1)});
    for (std::size_t s = 0; s < m.size(); ++s) CHECK(got.exact[s] == v.exact[s]);
  }
}

TEST_CASE("Safe sets shrink as the threshold grows") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, {});
    StateMask all = safe_set(m, Rational(0));
    for (std::size_t s = 0; s < m.size(); ++s) CHECK(all[s]);
    StateMask prev = all;
    for (const Rational& tau : {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)}) {
      StateMask cur = safe_set(m, tau);
      for (std::size_t s = 0; s < m.size(); ++s)
        if (cur[s]) CHECK(prev[s]);
      prev = cur;
    }
    CHECK(prev[m.index("z0")]);
  }
}

TEST_CASE("conditioning drops value-zero states and renormalises") {
  FiniteMdp m({rnd("s", {{"t", Rational(1, 2)}, {"u", Rational(1, 2)}}), loop("t", 2), loop("u", 1)});
  Parity obj{{1, 2}};
  ConditionedMdp c = conditioned_mdp(m, obj, parity_value(m));
  CHECK_FALSE(c.mdp.find("u").has_value());
  REQUIRE(c.mdp.find("s").has_value());
  CHECK(c.mdp.prob(c.mdp.index("s"), c.mdp.index("t")) == 1);

  FiniteMdp sure({ctrl("a", {"b"}, 2), loop("b", 2)});
  ConditionedMdp same = conditioned_mdp(sure, obj, parity_value(sure));
  CHECK(same.mdp.size() == sure.size());

  ValueVector fl = parity_value(m, {Backend::floating, 1e-12, 1'000'000});
  ConditionedMdp warned = conditioned_mdp(m, obj, fl);
  CHECK_FALSE(warned.warnings.empty());
}

TEST_CASE("almost-sure strategies win with probability one") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    acceptance::RandomShape shape;
    shape.colors = {0, 1, 2};
    FiniteMdp m = acceptance::random_mdp(seed, shape);
    CAPTURE(seed);
    if (auto sub = almost_sure_part(m)) {
      auto v = md_value(*sub, as_parity012_md(*sub), Parity{{0, 1, 2}});
      for (std::size_t s = 0; s < sub->size(); ++s) CHECK(v.exact[s] == 1);
    }

    StateMask target(m.size(), false);
    target[m.index("z0")] = true;
    StateMask as_reach = almost_sure_reach_set(m, target);
    std::vector<StateId> queried;
    for (std::size_t s = 0; s < m.size(); ++s)
      if (as_reach[s]) queried.push_back(m.id(s));
    auto r = md_value(m, as_reach_md(m, target, queried), Reach{pred::in({"z0"})});
    for (std::size_t s = 0; s < m.size(); ++s)
      if (as_reach[s]) CHECK(r.exact[s] == 1);
    if (queried.size() < m.size()) CHECK_THROWS_AS(as_reach_md(m, target), PreconditionViolation);
  }
}

TEST_CASE("almost-sure Buchi strategies") {
  FiniteMdp ring({ctrl("a", {"b", "x"}, 1), ctrl("b", {"c"}, 1), ctrl("c", {"a"}, 2), ctrl("x", {"x"}, 2)});
  auto v = md_value(ring, as_buchi_md(ring), Parity{{1, 2}});
  for (std::size_t s = 0; s < ring.size(); ++s) CHECK(v.exact[s] == 1);

  FiniteMdp losing({loop("a", 1)});
  CHECK_THROWS_AS(as_buchi_md(losing), PreconditionViolation);

  int tried = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    acceptance::RandomShape shape;
    shape.colors = {1, 2};
    if (auto sub = almost_sure_part(acceptance::random_mdp(seed, shape))) {
      ++tried;
      auto w = md_value(*sub, as_buchi_md(*sub), Parity{{1, 2}});
      for (std::size_t s = 0; s < sub->size(); ++s) CHECK(w.exact[s] == 1);
    }
  }
  CHECK(tried > 10);
}

TEST_CASE("gluing almost-sure strategies keeps value one") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    acceptance::RandomShape shape;
    shape.colors = {1, 2};
    auto sub = almost_sure_part(acceptance::random_mdp(seed, shape));
    if (!sub) continue;
    GlueResult g = uniform_as_glue(*sub, Parity{{1, 2}}, [](const FiniteMdp& cur, const StateId& s) {
      StateMask twos = mask_of(cur, pred::color_eq(2));
      return as_reach_md(cur, twos, {s});
    });
    std::size_t covered = 0;
    for (const auto& step : g.steps) covered += step.region.size();
    CHECK(covered >= sub->size());
    auto v = md_value(*sub, g.strategy, Parity{{1, 2}});
    for (std::size_t s = 0; s < sub->size(); ++s) CHECK(v.exact[s] == 1);
  }
}

TEST_CASE("optimal parity strategies attain the value") {
  FiniteMdp coin({ctrl("c", {"u", "l"}, 1), rnd("u", {{"w", Rational(1, 2)}, {"l", Rational(1, 2)}}, 1),
                  loop("w", 2), loop("l", 1)});
  SynthesisResult r = optimal_parity_md(coin, Parity{{1, 2}});
  CHECK(r.guarantee.at("c") == Rational(1, 2));
  CHECK(*r.strategy.choose("c") == StateId("u"));

  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    acceptance::RandomShape shape;
    shape.colors = {1, 2};
    FiniteMdp m = acceptance::random_mdp(seed, shape);
    SynthesisResult res = optimal_parity_md(m, Parity{{1, 2}});
    ValueVector v = parity_value(m);
    auto got = md_value(m, res.strategy, Parity{{1, 2}});
    for (std::size_t s = 0; s < m.size(); ++s) {
      CHECK(got.exact[s] == v.exact[s]);
      CHECK(res.guarantee.at(m.id(s)) == v.exact[s]);
    }
  }
}

TEST_CASE("co-Buchi constants") {
  CoBuchiConstants k = cobuchi_constants(Rational(3, 10));
  CHECK(k.eps1 == Rational(1, 20));
  CHECK(k.eps2 == Rational(1, 20));
  CHECK(k.eps3 == Rational(1, 20));
  CHECK(k.k == Rational(20, 3));
  CHECK(k.tau1 == Rational(19, 20));
  CHECK(k.tau2 == Rational(397, 400));
  CHECK_THROWS(cobuchi_constants(Rational(0)));
}

TEST_CASE("co-Buchi synthesis is epsilon-optimal") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, {});
    const Rational eps(1, 20);
    SynthesisResult r = eps_optimal_cobuchi_md(m, eps);
    ValueVector v = parity_value(m);
    auto got = md_value(m, r.strategy, Parity{{0, 1}});
    for (std::size_t s = 0; s < m.size(); ++s) CHECK(got.exact[s] >= v.exact[s] - eps);
  }
  FiniteMdp calm({ctrl("a", {"b"}), loop("b")});
  SynthesisResult r = eps_optimal_cobuchi_md(calm, Rational(1, 10));
  CHECK(md_value(calm, r.strategy, Parity{{0, 1}}).exact[0] == 1);
}

TEST_CASE("epsilon-optimal reachability on gambler's ruin") {
  GalleryEntry e = gamblers_ruin(Rational(3, 5));
  CountableSynthesisOptions opts;
  opts.initial_radius = 20;
  SynthesisResult r = eps_optimal_reach_md(*e.mdp, pred::in({"0"}), 1.0, opts);
  REQUIRE(r.guarantee.count("1"));
  const double g = r.guarantee.at("1").get_d();
  CHECK(g <= 2.0 / 3.0);
  CHECK(g >= 2.0 / 3.0 - 0.01);
  CHECK(r.metadata.at("radius") == "20");

  opts.max_radius = 64;
  CHECK_THROWS_AS(eps_optimal_reach_md(*e.mdp, pred::in({"0"}), 0.01, opts), NotConverged);
}

TEST_CASE("finite epsilon-optimal reachability") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, {});
    StateMask target = mask_of(m, pred::in({"z1"}));
    SynthesisResult r = eps_optimal_reach_md(m, target, 1e-3);
    ValueVector v = reach_value(m, target, Mode::max);
    auto got = md_value(m, r.strategy, Reach{pred::in({"z1"})});
    for (std::size_t s = 0; s < m.size(); ++s) CHECK(got.exact[s].get_d() >= v.exact[s].get_d() - 1e-3);
  }
}
