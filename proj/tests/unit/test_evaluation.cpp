#include "helpers.hpp"

#include <acceptance/random_mdp.hpp>
#include <cmdp/chain.hpp>
#include <cmdp/errors.hpp>
#include <cmdp/evaluation.hpp>
#include <cmdp/gallery.hpp>
#include <cmdp/mdp_ops.hpp>
#include <cmdp/values.hpp>

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace cmdp;
using namespace testing;

namespace {

const EventStat& event(const SimulationReport& r, const std::string& name) {
  for (const auto& e : r.events)
    if (e.name == name) return e;
  FAIL("missing event " << name);
  return r.events.front();
}

// Ladder transducer: in mode "stop" take the rung's exit, in mode "climb" go up.
Transducer ladder_transducer(const std::vector<std::pair<std::string, std::size_t>>& modes,
                             const std::vector<Distribution<std::size_t>>& after_exit) {
  Transducer t;
  for (const auto& [name, ordinal] : modes) {
    t.modes.push_back(name);
    t.default_successor.push_back(Transducer::SuccessorRule{{}, {{ordinal, Rational(1)}}});
  }
  t.default_update.assign(modes.size(), std::nullopt);
  for (std::size_t m = 0; m < modes.size(); ++m) t.update[{m, "t"}] = after_exit[m];
  return t;
}

}  // namespace

TEST_CASE("MD strategy values on chains") {
  FiniteMdp trivial({loop("a", 2)});
  CHECK(md_value(trivial, MdStrategy{{{"a", "a"}}}, Parity{{2}}).exact[0] == 1);

  FiniteMdp split({rnd("u", {{"w", Rational(1, 2)}, {"l", Rational(1, 2)}}), loop("w", 2), loop("l", 1)});
  MdStrategy sigma{{{"w", "w"}, {"l", "l"}}};
  CHECK(md_value(split, sigma, Parity{{1, 2}}).exact[split.index("u")] == Rational(1, 2));
  CHECK(md_value(split, sigma, Reach{pred::in({"l"})}).exact[split.index("u")] == Rational(1, 2));
  CHECK_THROWS_AS(md_value(split, sigma, Parity{{2}}), InvalidInput);
}

TEST_CASE("parity under an MD strategy equals reaching winning bottom components") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    acceptance::RandomShape shape;
    shape.colors = {0, 1, 2};
    FiniteMdp m = acceptance::random_mdp(seed, shape);
    IndexStrategy sigma = smallest_successor(m);
    FiniteMdp chain = fix_md(m, from_index(m, sigma));
    StateMask win(chain.size(), false);
    for (const auto& b : bsccs(chain_of(chain))) {
      Color top = 0;
      for (auto s : b) top = std::max(top, chain.color(s));
      if (top % 2 == 0)
        for (auto s : b) win[s] = true;
    }
    ValueVector reach = chain_reach_exact(chain, win);
    auto parity = md_value_index(m, sigma, Parity{{0, 1, 2}});
    for (std::size_t s = 0; s < m.size(); ++s) CHECK(parity[s] == reach.exact[s]);
  }
}

TEST_CASE("simulation with horizon zero never reaches the fatal state") {
  GalleryEntry e = fig3a_safety();
  SimulationReport r = simulate(e, fig3a_sigma(1), {0, 200, 5, 4, 1});
  CHECK(event(r, "fatal_within_horizon").count == 0);
  CHECK(r.aborted == 0);
}

TEST_CASE("simulation is reproducible and independent of the thread count") {
  GalleryEntry e = fig2a_parity123();
  AnyStrategy s = *find_strategy(e, "sigma_h");
  SimulationReport a = simulate(e, s, {300, 2000, 11, 6, 1});
  SimulationReport b = simulate(e, s, {300, 2000, 11, 6, 3});
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) CHECK(a.events[i].count == b.events[i].count);
  CHECK(a.visits == b.visits);
  SimulationReport c = simulate(e, s, {300, 2000, 12, 6, 1});
  bool differs = c.visits != a.visits;
  for (std::size_t i = 0; i < a.events.size(); ++i) differs = differs || a.events[i].count != c.events[i].count;
  CHECK(differs);
  CHECK(episode_seed(11, 3) == episode_seed(11, 3));
  CHECK(episode_seed(11, 3) != episode_seed(11, 4));
}

TEST_CASE("safety strategy on the fan loses with probability at most 2^-n") {
  GalleryEntry e = fig3a_safety();
  SimulationReport r = simulate(e, fig3a_sigma(2), {1000, 20000, 3, 4, 1});
  const EventStat& f = event(r, "fatal_within_horizon");
  const double sigma = std::sqrt(0.25 * 0.75 / 20000.0);
  CHECK(f.frequency <= 0.25 + 3 * sigma);
}

TEST_CASE("simulated reach frequencies match exact values") {
  for (std::uint64_t seed : {3u, 17u, 29u}) {
    FiniteMdp m = acceptance::random_mdp(seed, {});
    MdStrategy sigma = from_index(m, smallest_successor(m));
    const double truth = md_value(m, sigma, Reach{pred::in({"z1"})}).exact[0].get_d();
    auto mdp = std::make_shared<FiniteMdp>(m);
    FiniteAsCountable countable(mdp);
    const std::uint64_t n = 100'000;
    SimulationReport r = simulate(countable, sigma, {400, n, seed, 0, 1}, std::nullopt, pred::in({"z1"}));
    const double f = event(r, "fatal_within_horizon").frequency;
    const double sd = std::sqrt(std::max(truth * (1 - truth), 1e-12) / static_cast<double>(n));
    CAPTURE(seed);
    CHECK(std::abs(f - truth) <= 4 * sd + 1e-9);
  }
}

TEST_CASE("an illegal strategy choice aborts the episode with a diagnostic") {
  FiniteMdp m({ctrl("a", {"b", "c"}), loop("b"), loop("c")}, StateId("a"));
  auto mdp = std::make_shared<FiniteMdp>(m);
  FiniteAsCountable countable(mdp);
  SimulationReport r = simulate(countable, MdStrategy{{{"a", "a"}}}, {5, 10, 1, 0, 1});
  CHECK(r.aborted == 10);
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(r.diagnostics.front().find("not a successor") != std::string::npos);
}

TEST_CASE("Borel-Cantelli partial sums") {
  GalleryEntry e = fig3a_safety();
  BorelCantelliResult r = borel_cantelli_sum(e, "sigma_3", 20);
  REQUIRE(r.terms.size() == 20);
  Rational sum = 0;
  for (const auto& q : r.terms) {
    CHECK(q >= 0);
    sum += q;
  }
  CHECK(sum == r.partial_sum);
  REQUIRE(r.limit.has_value());
  CHECK(*r.limit == Rational(1, 8));
  CHECK(r.partial_sum <= *r.limit);
  CHECK(r.terms.front() == Rational(1, 16));

  BorelCantelliResult longer = borel_cantelli_sum(e, "sigma_3", 30);
  CHECK(r.partial_sum <= longer.partial_sum);

  CHECK_THROWS_AS(borel_cantelli_sum(e, "sigma_nope", 5), NotFound);
  CHECK_THROWS_AS(borel_cantelli_sum(e, "pick_r1", 5), InvalidInput);
}

TEST_CASE("Borel-Cantelli limit on the ladder") {
  GalleryEntry e = fig2a_parity123();
  BorelCantelliResult r = borel_cantelli_sum(e, "sigma_h", 40);
  REQUIRE(r.limit.has_value());
  CHECK(*r.limit == 2);
}

TEST_CASE("futility of a one-mode ladder strategy") {
  GalleryEntry e = fig2a_parity123();
  FutilityCertificate cert = fr_futility(e, ladder_transducer({{"r0", 0}}, {{{0, Rational(1)}}}), 2000);
  CHECK(cert.c == 1);
  CHECK_FALSE(cert.case_split);
  REQUIRE(cert.anchors.size() == 1);
  CHECK(cert.anchors[0].fatal_before_return == 1);
}

TEST_CASE("futility of a coin-flipping two-mode ladder strategy") {
  GalleryEntry e = fig2a_parity123();
  Distribution<std::size_t> coin{{0, Rational(1, 2)}, {1, Rational(1, 2)}};
  Transducer t = ladder_transducer({{"stop", 0}, {"climb", 1}}, {coin, coin});
  t.successor[{1, "s:1"}] = Transducer::SuccessorRule{{}, {{0, Rational(1)}}};
  FutilityCertificate cert = fr_futility(e, t, 2000);
  CHECK(cert.c >= Rational(1, 2));
  CHECK(cert.c <= 1);
}

TEST_CASE("futility on the fan with a memoryless pick") {
  GalleryEntry e = fig3a_safety();
  Transducer t = Transducer::from_md(std::get<MdStrategy>(*find_strategy(e, "pick_r1")));
  FutilityCertificate cert = fr_futility(e, t, 2000);
  CHECK(cert.c == Rational(1, 2));
  ProductChain pc = product(*e.mdp, t);
  StateMask fatal(pc.chain.size(), false);
  for (std::size_t i = 0; i < pc.chain.size(); ++i) fatal[i] = pc.origin[i].second == StateId("t");
  ValueVector v = chain_reach_exact(pc.chain, fatal);
  for (std::size_t i = 0; i < pc.chain.size(); ++i) CHECK(v.exact[i] == 1);
}

TEST_CASE("futility flags the case split on the Buchi ladder") {
  GalleryEntry e = fig2b_buchi();
  FutilityCertificate cert = fr_futility(e, ladder_transducer({{"r1", 0}}, {{{0, Rational(1)}}}), 2000);
  CHECK(cert.case_split);
  CHECK(cert.c > 0);
}

TEST_CASE("a strategy that never risks the fatal state has no cycle bound") {
  GalleryEntry e = fig2a_parity123();
  CHECK_THROWS_AS(fr_futility(e, ladder_transducer({{"up", 1}}, {{{0, Rational(1)}}}), 500), PreconditionViolation);
}
