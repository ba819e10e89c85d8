#include "helpers.hpp"

#include <acceptance/random_mdp.hpp>
#include <cmdp/errors.hpp>
#include <cmdp/gallery.hpp>
#include <cmdp/lasso.hpp>
#include <cmdp/mdp_ops.hpp>
#include <cmdp/values.hpp>

#include <doctest.h>

#include <random>

using namespace cmdp;
using namespace testing;

namespace {

bool has_violation(const ValidationReport& r, const std::string& text) {
  for (const auto& v : r.violations)
    if (v.message == text) return true;
  return false;
}

Color color_digit(const StateId& s) { return static_cast<Color>(s.str().back() - '0'); }

Rabin rabin_encoding() { return Rabin{{{pred::color_eq(3), pred::color_eq(2)}}}; }

Streett streett_encoding() {
  return Streett{{{pred::color_eq(2), pred::all()}, {pred::none(), pred::color_eq(3)}}};
}

}  // namespace

TEST_CASE("state ids order naturally") {
  CHECK(StateId("r:2") < StateId("r:10"));
  CHECK(StateId("a") < StateId("b"));
  CHECK(StateId("s9") < StateId("s10"));
  CHECK(StateId("x") == StateId(std::string("x")));
  CHECK(StateId::of_index(42) == StateId("42"));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
  CHECK(ratio(2, 4) == Rational(1, 2));
}

TEST_CASE("validation accepts a one-state self-loop") {
  FiniteMdp m({loop("s")});
  CHECK(validate(m).ok());
}

TEST_CASE("validation reports a distribution that does not sum to one") {
  FiniteMdp m({rnd("u", {{"a", Rational(1, 2)}, {"b", Rational(1, 3)}}), loop("a"), loop("b")});
  auto r = validate(m);
  CHECK(has_violation(r, "distribution sums to 5/6"));
  CHECK_THROWS_AS(require_valid(m), InvalidInput);
}

TEST_CASE("validation reports structural defects") {
  SUBCASE("controller without successor") {
    FiniteMdp m({ctrl("c", {})});
    CHECK(has_violation(validate(m), "no successor"));
  }
  SUBCASE("dangling successor") {
    FiniteMdp m({ctrl("c", {"nowhere"})});
    CHECK(has_violation(validate(m), "successor 'nowhere' does not exist"));
  }
  SUBCASE("nonpositive probability") {
    FiniteMdp m({rnd("u", {{"a", Rational(0)}, {"b", Rational(1)}}), loop("a"), loop("b")});
    CHECK(has_violation(validate(m), "nonpositive probability 0"));
  }
  SUBCASE("duplicate ids") {
    FiniteMdp m({loop("a"), loop("a")});
    CHECK(has_violation(validate(m), "duplicate state id"));
  }
  SUBCASE("missing initial state") {
    FiniteMdp m({loop("a")}, StateId("b"));
    CHECK(has_violation(validate(m), "initial state does not exist"));
  }
}

TEST_CASE("finite MDP keeps states in natural order") {
  FiniteMdp m({loop("s10"), loop("s2"), loop("s1")});
  REQUIRE(m.size() == 3);
  CHECK(m.id(0) == StateId("s1"));
  CHECK(m.id(1) == StateId("s2"));
  CHECK(m.id(2) == StateId("s10"));
  CHECK(m.index("s10") == 2);
  CHECK_FALSE(m.find("nope").has_value());
}

TEST_CASE("lasso acceptance for parity, Rabin and Streett") {
  ColorOf col = color_digit;
  Lasso l{{"c0"}, {"c1", "c2"}};
  CHECK(accepts(l, Parity{{0, 1, 2, 3}}, col));
  CHECK_FALSE(accepts(Lasso{{}, {"c1", "c2", "c3"}}, Parity{{1, 2, 3}}, col));
  CHECK_THROWS_AS(accepts(l, Parity{{1, 3}}, col), InvalidInput);

  CHECK(accepts(Lasso{{}, {"c1", "c2"}}, rabin_encoding(), col));
  CHECK_FALSE(accepts(Lasso{{}, {"c2", "c3"}}, streett_encoding(), col));
  CHECK_FALSE(accepts(Lasso{{}, {"c2", "c3"}}, Parity{{1, 2, 3}}, col));
  CHECK(accepts(Lasso{{"c3"}, {"c2"}}, streett_encoding(), col));

  CHECK(accepts(Lasso{{"c0", "c1"}, {"c2"}}, Reach{pred::color_eq(1)}, col));
  CHECK_FALSE(accepts(Lasso{{"c0", "c1"}, {"c2"}}, Safety{pred::color_eq(1)}, col));
}

TEST_CASE("lasso acceptance ignores cycle rotation and pumping") {
  std::mt19937_64 rng(7);
  const std::vector<Color> colors{1, 2, 3};
  std::vector<Objective> objectives{Parity{{1, 2, 3}}, rabin_encoding(), streett_encoding(),
                                    Reach{pred::color_eq(3)}, Safety{pred::color_eq(1)}};
  for (int i = 0; i < 300; ++i) {
    Lasso l = acceptance::random_lasso(rng, colors, 3, 4);
    for (const auto& obj : objectives) {
      const bool base = accepts(l, obj, color_digit);
      Lasso rotated = l;
      std::rotate(rotated.cycle.begin(), rotated.cycle.begin() + 1, rotated.cycle.end());
      rotated.prefix.push_back(l.cycle.front());
      CHECK(accepts(rotated, obj, color_digit) == base);
      Lasso pumped = l;
      pumped.cycle.insert(pumped.cycle.end(), l.cycle.begin(), l.cycle.end());
      CHECK(accepts(pumped, obj, color_digit) == base);
    }
  }
}

TEST_CASE("fixing an MD strategy yields a chain") {
  FiniteMdp m({ctrl("c", {"a", "b"}), loop("a", 1), loop("b", 2)});
  FiniteMdp chain = fix_md(m, MdStrategy{{{"c", "b"}, {"a", "a"}, {"b", "b"}}});
  CHECK(chain.is_chain());
  CHECK(chain.prob(chain.index("c"), chain.index("b")) == 1);
  CHECK_FALSE(chain.has_edge(chain.index("c"), chain.index("a")));
  CHECK_THROWS_AS(fix_md(m, MdStrategy{{{"c", "a"}}}), PreconditionViolation);
  CHECK_THROWS(fix_md(m, MdStrategy{{{"c", "zzz"}, {"a", "a"}, {"b", "b"}}}));
}

TEST_CASE("a chain is its own MD fixpoint") {
  FiniteMdp m({rnd("u", {{"a", Rational(1, 3)}, {"b", Rational(2, 3)}}), rnd("a", {{"a", Rational(1)}}),
               rnd("b", {{"u", Rational(1)}})});
  FiniteMdp fixed = fix_md(m, MdStrategy{});
  REQUIRE(fixed.size() == m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) CHECK(fixed.prob(i, j) == m.prob(i, j));
}

TEST_CASE("product with a one-mode transducer matches fixing the MD strategy") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, {});
    MdStrategy sigma = from_index(m, smallest_successor(m));
    FiniteMdp fixed = fix_md(m, sigma);
    ProductChain pc = product(m, Transducer::from_md(sigma));
    REQUIRE(pc.chain.is_chain());
    CHECK(pc.chain.size() <= m.size());
    for (std::size_t i = 0; i < pc.chain.size(); ++i) {
      const auto& [mode, orig] = pc.origin[i];
      CHECK(mode == 0);
      const std::size_t oi = fixed.index(orig);
      for (const auto& e : pc.chain.edges(i)) {
        const StateId& to = pc.origin[e.target].second;
        CHECK(e.prob == fixed.prob(oi, fixed.index(to)));
      }
    }
  }
}

TEST_CASE("product on a countable ladder with pick r0") {
  GalleryEntry e = fig2a_parity123();
  Transducer t = Transducer::from_md(std::get<MdStrategy>(*find_strategy(e, "pick_r0")));
  ProductChain pc = product(*e.mdp, t);
  CHECK(pc.chain.is_chain());
  CHECK(pc.chain.size() == 3);
}

TEST_CASE("truncation at radius zero keeps the initial state and the sink") {
  GalleryEntry e = fig2a_parity123();
  Truncation tr = truncate(*e.mdp, e.objective, at_radius(0));
  CHECK(tr.mdp.size() == 2);
  CHECK(tr.mdp.find("s:0").has_value());
  CHECK(tr.mdp.find(kSinkId).has_value());
  CHECK(validate(tr.mdp).ok());
}

TEST_CASE("truncation keeps a BFS ball") {
  GalleryEntry e = fig2a_parity123();
  Truncation tr = truncate(*e.mdp, e.objective, at_radius(3));
  CHECK(tr.retained.size() == 8);
  CHECK(tr.retained.front() == StateId("s:0"));
  CHECK(validate(tr.mdp).ok());
}

TEST_CASE("truncation bounds are monotone in the radius") {
  GalleryEntry e = gamblers_ruin(Rational(3, 5));
  ValueBounds small = value_bounds(*e.mdp, e.objective, 10);
  ValueBounds large = value_bounds(*e.mdp, e.objective, 20);
  auto at = [](const ValueBounds& b, const StateId& s) {
    for (std::size_t i = 0; i < b.states.size(); ++i)
      if (b.states[i] == s) return i;
    FAIL("state missing");
    return std::size_t{0};
  };
  for (const char* s : {"1", "3", "5"}) {
    const std::size_t i = at(small, s), j = at(large, s);
    CHECK(small.lower[i] <= large.lower[j]);
    CHECK(large.upper[j] <= small.upper[i]);
    CHECK(large.lower[j] <= large.upper[j]);
  }
}
