#include "helpers.hpp"

#include <cmdp/errors.hpp>
#include <cmdp/gallery.hpp>
#include <cmdp/io.hpp>
#include <cmdp/mdp_ops.hpp>
#include <cmdp/values.hpp>

#include <doctest.h>

#include <deque>
#include <map>
#include <set>

using namespace cmdp;
using testing::at_radius;

namespace {

Rational claim_value(const nlohmann::json& claim) { return parse_rational(claim.at("value").get<std::string>()); }

// Probability of reaching `target` before any state in `stop`, over the random-only
// fragment reachable from `from`. The fragment must be finite.
Rational hit_before(const CountableMdp& mdp, const StateId& from, const StateId& target,
                    const std::function<bool(const StateId&)>& stop) {
  std::vector<StateSpec> specs;
  std::set<StateId> seen{from};
  std::deque<StateId> queue{from};
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    if (s == target || stop(s)) {
      specs.push_back({s, StateKind::random, 0, {{s, Rational(1)}}});
      continue;
    }
    REQUIRE(mdp.kind(s) == StateKind::random);
    Successors succ = mdp.successors(s);
    specs.push_back({s, StateKind::random, 0, succ.listed});
    for (const auto& tr : succ.listed)
      if (seen.insert(tr.to).second) queue.push_back(tr.to);
  }
  FiniteMdp chain(specs);
  StateMask goal(chain.size(), false);
  goal[chain.index(target)] = true;
  return chain_reach_exact(chain, goal).exact[chain.index(from)];
}

}  // namespace

TEST_CASE("every gallery entry checks its probability and color claims") {
  for (const auto& name : gallery_names()) {
    GalleryEntry e = gallery_entry(name);
    CAPTURE(name);
    if (e.claims.contains("prob"))
      for (const auto& c : e.claims["prob"])
        CHECK(e.mdp->prob(c["from"].get<std::string>(), c["to"].get<std::string>()) == claim_value(c));
    if (e.claims.contains("color"))
      for (const auto& [id, col] : e.claims["color"].items()) CHECK(e.mdp->color(id) == col.get<Color>());
  }
}

TEST_CASE("ladder rungs lose with probability 2^-i") {
  GalleryEntry e = fig2a_parity123();
  for (unsigned i = 0; i < 12; ++i) {
    StateId r("r:" + std::to_string(i));
    CHECK(e.mdp->prob(r, "t") == pow2_neg(i));
    CHECK(e.mdp->kind(r) == StateKind::random);
  }
  CHECK(e.mdp->successors("t").listed.front().to == StateId("s:0"));
  CHECK_THROWS_AS(e.mdp->color("s:01"), NotFound);
  CHECK_THROWS_AS(e.mdp->color("q:1"), NotFound);
}

TEST_CASE("Buchi ladder has an absorbing losing state") {
  GalleryEntry e = fig2b_buchi();
  Successors b = e.mdp->successors("b");
  REQUIRE(b.listed.size() == 1);
  CHECK(b.listed.front().to == StateId("b"));
  for (unsigned i = 1; i < 8; ++i)
    CHECK(e.mdp->prob("r:" + std::to_string(i), "s:0") == Rational(1) - pow2_neg(i));
}

TEST_CASE("fan state enumerates every rung") {
  GalleryEntry e = fig3a_safety();
  Successors s = e.mdp->successors("s");
  REQUIRE(s.infinite());
  for (std::size_t i = 0; i < 20; ++i) CHECK(s.enumerate(i) == StateId("r:" + std::to_string(i + 1)));
  CHECK(e.mdp->is_successor("s", "r:1000"));
  CHECK_FALSE(e.mdp->is_successor("s", "t"));
  CHECK_FALSE(e.mdp->is_state("r:0"));
  CHECK(e.mdp->successors("t").listed.front().to == StateId("t"));
}

TEST_CASE("co-Buchi fan returns from t to s") {
  GalleryEntry e = fig3b_cobuchi();
  Successors t = e.mdp->successors("t");
  REQUIRE(t.listed.size() == 1);
  CHECK(t.listed.front().to == StateId("s"));
  CHECK(e.mdp->color("t") == 1);
  CHECK(e.mdp->color("r:4") == 0);
}

TEST_CASE("one-counter ladder reaches t before s with probability 2^-n") {
  GalleryEntry e = fig4_one_counter();
  auto is_s = [](const StateId& s) { return s.str().rfind("s:", 0) == 0; };
  for (unsigned n = 0; n <= 10; ++n)
    CHECK(hit_before(*e.mdp, "r:" + std::to_string(n), "t:0", is_s) == pow2_neg(n));
}

TEST_CASE("gambler's ruin transitions") {
  GalleryEntry e = gamblers_ruin(Rational(3, 5));
  CHECK(e.mdp->prob("5", "6") == Rational(3, 5));
  CHECK(e.mdp->prob("5", "4") == Rational(2, 5));
  CHECK(e.mdp->prob("0", "0") == 1);
  CHECK(e.mdp->color("0") == 1);
  CHECK(e.mdp->initial() == StateId("1"));
  CHECK_FALSE(e.mdp->is_state("01"));
  CHECK_THROWS_AS(gamblers_ruin(Rational(1)), InvalidInput);
  CHECK_THROWS_AS(gallery_entry("fig9"), NotFound);
}

TEST_CASE("truncations of every entry validate") {
  for (const auto& name : gallery_names()) {
    GalleryEntry e = gallery_entry(name);
    CAPTURE(name);
    for (std::size_t r = 0; r <= 30; ++r) {
      CAPTURE(r);
      for (Boundary b : {Boundary::pessimistic, Boundary::optimistic}) {
        Truncation tr = truncate(*e.mdp, e.objective, at_radius(r, b));
        CHECK(validate(tr.mdp).ok());
      }
    }
  }
}

TEST_CASE("gallery builders are pure") {
  for (const auto& name : gallery_names()) {
    GalleryEntry a = gallery_entry(name), b = gallery_entry(name);
    Truncation ta = truncate(*a.mdp, a.objective, at_radius(12));
    Truncation tb = truncate(*b.mdp, b.objective, at_radius(12));
    CHECK(mdp_to_json(ta.mdp) == mdp_to_json(tb.mdp));
    CHECK(mdp_to_json(ta.mdp) == mdp_to_json(truncate(*a.mdp, a.objective, at_radius(12)).mdp));
  }
}

TEST_CASE("named strategies resolve") {
  GalleryEntry e = fig3a_safety();
  CHECK(find_strategy(e, "sigma_7").has_value());
  CHECK(find_strategy(e, "pick_r1").has_value());
  CHECK_FALSE(find_strategy(e, "sigma_0").has_value());
  CHECK_FALSE(find_strategy(e, "nonsense").has_value());
  CounterStrategy s2 = fig3a_sigma(2);
  CHECK(s2.choose(1, "s") == StateId("r:3"));
  CHECK(s2.choose(5, "s") == StateId("r:7"));
}
