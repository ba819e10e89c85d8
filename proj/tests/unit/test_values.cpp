#include "helpers.hpp"

#include <acceptance/oracle.hpp>
#include <acceptance/random_mdp.hpp>
#include <cmdp/errors.hpp>
#include <cmdp/evaluation.hpp>
#include <cmdp/gallery.hpp>
#include <cmdp/mdp_ops.hpp>
#include <cmdp/values.hpp>

#include <doctest.h>

#include <cmath>

using namespace cmdp;
using namespace testing;

namespace {

StateMask only(const FiniteMdp& m, std::initializer_list<const char*> ids) {
  StateMask mask(m.size(), false);
  for (const char* id : ids) mask[m.index(id)] = true;
  return mask;
}

acceptance::RandomShape ten_states() {
  acceptance::RandomShape shape;
  shape.max_controllers = 5;
  shape.max_random = 3;
  return shape;
}

}  // namespace

TEST_CASE("reachability on small examples") {
  FiniteMdp m({rnd("u", {{"t", Rational(1, 2)}, {"z", Rational(1, 2)}}), loop("t"), loop("z")});
  ValueVector v = reach_value(m, only(m, {"t"}), Mode::max);
  CHECK(v.exact[m.index("u")] == Rational(1, 2));
  CHECK(v.exact[m.index("t")] == 1);
  CHECK(v.exact[m.index("z")] == 0);

  FiniteMdp c({ctrl("c", {"u", "t"}), rnd("u", {{"t", Rational(1, 2)}, {"z", Rational(1, 2)}}), loop("t"),
               loop("z")});
  CHECK(reach_value(c, only(c, {"t"}), Mode::max).exact[c.index("c")] == 1);
  CHECK(reach_value(c, only(c, {"t"}), Mode::min).exact[c.index("c")] == Rational(1, 2));
}

TEST_CASE("reachability matches brute force on random MDPs") {
  for (std::uint64_t seed = 100; seed < 220; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, ten_states());
    Reach obj{pred::in({"z1"})};
    auto expect = acceptance::brute_force_optimum(m, obj);
    ValueVector v = objective_value(m, obj);
    CAPTURE(seed);
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(v.exact[i] == expect[i]);
  }
}

TEST_CASE("safety complements minimal reachability") {
  for (std::uint64_t seed = 300; seed < 360; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, ten_states());
    StateMask avoid = mask_of(m, pred::color_eq(1));
    ValueVector safe = safety_value(m, avoid);
    ValueVector reach = reach_value(m, avoid, Mode::min);
    auto expect = acceptance::brute_force_optimum(m, Safety{pred::color_eq(1)});
    for (std::size_t i = 0; i < m.size(); ++i) {
      CHECK(safe.exact[i] + reach.exact[i] == 1);
      CHECK(safe.exact[i] == expect[i]);
      if (avoid[i]) CHECK(safe.exact[i] == 0);
    }
  }
}

TEST_CASE("max-reach values satisfy the Bellman equations") {
  for (std::uint64_t seed = 400; seed < 460; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, {});
    StateMask target = only(m, {"z0"});
    ValueVector v = reach_value(m, target, Mode::max);
    for (std::size_t s = 0; s < m.size(); ++s) {
      if (target[s]) {
        CHECK(v.exact[s] == 1);
        continue;
      }
      Rational rhs = 0;
      if (m.is_controller(s)) {
        for (const auto& e : m.edges(s)) rhs = std::max(rhs, v.exact[e.target]);
      } else {
        for (const auto& e : m.edges(s)) rhs += e.prob * v.exact[e.target];
      }
      CHECK(v.exact[s] == rhs);
    }
    IndexStrategy sigma = max_reach_strategy(m, target);
    auto achieved = md_value_index(m, sigma, Reach{pred::in({"z0"})});
    for (std::size_t s = 0; s < m.size(); ++s) CHECK(achieved[s] == v.exact[s]);
  }
}

TEST_CASE("float backend agrees with exact values") {
  SolverOptions fl{Backend::floating, 1e-12, 1'000'000};
  for (std::uint64_t seed = 500; seed < 560; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, {});
    StateMask target = only(m, {"z1"});
    ValueVector exact = reach_value(m, target, Mode::max);
    ValueVector approx = reach_value(m, target, Mode::max, fl);
    for (std::size_t s = 0; s < m.size(); ++s) CHECK(std::abs(approx.approx[s] - exact.exact[s].get_d()) <= 1e-9);
  }
}

TEST_CASE("float backend reports non-convergence") {
  FiniteMdp m({rnd("a", {{"a", Rational(999, 1000)}, {"t", Rational(1, 2000)}, {"z", Rational(1, 2000)}}), loop("t"),
               loop("z")});
  SolverOptions tight{Backend::floating, 1e-15, 2};
  CHECK_THROWS_AS(reach_value(m, only(m, {"t"}), Mode::max, tight), NotConverged);
}

TEST_CASE("maximal end components") {
  FiniteMdp single({loop("a")});
  auto mecs = mec_decomposition(single);
  REQUIRE(mecs.size() == 1);
  CHECK(mecs[0].states.size() == 1);

  FiniteMdp m({ctrl("a", {"b", "c"}), ctrl("b", {"a"}), loop("c"), rnd("d", {{"a", Rational(1, 2)}, {"c", Rational(1, 2)}})});
  mecs = mec_decomposition(m);
  std::size_t covered = 0;
  for (const auto& ec : mecs) covered += ec.states.size();
  CHECK(mecs.size() == 2);
  CHECK(covered == 3);

  for (std::uint64_t seed = 600; seed < 640; ++seed) {
    FiniteMdp r = acceptance::random_mdp(seed, {});
    for (const auto& ec : mec_decomposition(r)) {
      std::vector<bool> in(r.size(), false);
      for (auto s : ec.states) in[s] = true;
      for (auto s : ec.states)
        if (!r.is_controller(s))
          for (const auto& e : r.edges(s)) CHECK(in[e.target]);
    }
  }
}

TEST_CASE("parity values") {
  FiniteMdp all2({ctrl("a", {"b"}, 2), rnd("b", {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}, 2)});
  ValueVector v = parity_value(all2);
  CHECK(v.exact[0] == 1);
  CHECK(v.exact[1] == 1);

  FiniteMdp coin({rnd("u", {{"w", Rational(1, 2)}, {"l", Rational(1, 2)}}), loop("w", 2), loop("l", 1)});
  CHECK(parity_value(coin).exact[coin.index("u")] == Rational(1, 2));

  for (std::uint64_t seed = 700; seed < 760; ++seed) {
    acceptance::RandomShape shape = ten_states();
    shape.colors = {0, 1, 2};
    FiniteMdp m = acceptance::random_mdp(seed, shape);
    auto expect = acceptance::brute_force_optimum(m, Parity{{0, 1, 2}});
    ValueVector got = parity_value(m);
    for (std::size_t s = 0; s < m.size(); ++s) CHECK(got.exact[s] == expect[s]);
  }
}

TEST_CASE("almost-sure sets contain exactly the value-one states") {
  for (std::uint64_t seed = 800; seed < 840; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, {});
    StateMask as = almost_sure_parity_set(m);
    ValueVector v = parity_value(m);
    for (std::size_t s = 0; s < m.size(); ++s) CHECK(as[s] == (v.exact[s] == 1));
  }
}

TEST_CASE("exact chain reachability matches the float solver") {
  for (std::uint64_t seed = 900; seed < 940; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, {});
    FiniteMdp chain = fix_md(m, from_index(m, smallest_successor(m)));
    StateMask target = only(chain, {"z0"});
    ValueVector exact = chain_reach_exact(chain, target);
    ValueVector approx = reach_value(chain, target, Mode::max, {Backend::floating, 1e-12, 1'000'000});
    for (std::size_t s = 0; s < chain.size(); ++s)
      CHECK(std::abs(approx.approx[s] - exact.exact[s].get_d()) <= 1e-9);
  }
}

TEST_CASE("gambler's ruin bounds bracket the closed form") {
  GalleryEntry e = gamblers_ruin(Rational(3, 5));
  ValueBounds b = value_bounds(*e.mdp, e.objective, 30);
  for (std::size_t i = 0; i < b.states.size(); ++i) {
    const auto& id = b.states[i].str();
    if (id.empty() || id[0] == '#') continue;
    const double truth = 1.0 - std::pow(2.0 / 3.0, std::stod(id));
    CHECK(b.lower[i].get_d() <= truth + 1e-12);
    CHECK(truth <= b.upper[i].get_d() + 1e-12);
  }
}
