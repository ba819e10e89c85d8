#include "helpers.hpp"

#include <acceptance/random_mdp.hpp>
#include <cmdp/errors.hpp>
#include <cmdp/gallery.hpp>
#include <cmdp/io.hpp>
#include <cmdp/mdp_ops.hpp>

#include <doctest.h>

#include <algorithm>

using namespace cmdp;
using namespace testing;
using nlohmann::json;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("MDP JSON round trip is the identity") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    FiniteMdp m = acceptance::random_mdp(seed, {});
    const json j = mdp_to_json(m);
    const json again = mdp_to_json(mdp_from_json(j));
    CHECK(j == again);
    CHECK(j.dump() == json::parse(j.dump()).dump());
  }
}

TEST_CASE("MDP JSON input") {
  const json j = json::parse(R"({
    "schema": 1, "initial": "u",
    "states": [{"id": "u", "kind": "random", "color": 2}, {"id": "a"}, {"id": "b", "color": 1}],
    "transitions": [{"from": "u", "to": "a", "prob": "1/3"}, {"from": "u", "to": "b", "prob": 0.5},
                    {"from": "a", "to": "a"}, {"from": "b", "to": "b"}]})");
  FiniteMdp m = mdp_from_json(j);
  CHECK(m.size() == 3);
  CHECK(m.initial() == m.find("u"));
  CHECK(m.color(m.index("u")) == 2);
  CHECK(m.prob(m.index("u"), m.index("b")) == Rational(1, 2));
  CHECK_FALSE(validate(m).ok());

  json bad = j;
  bad["schema"] = 2;
  CHECK_THROWS_AS(mdp_from_json(bad), InvalidInput);
  json nostates = j;
  nostates.erase("states");
  CHECK_THROWS_AS(mdp_from_json(nostates), InvalidInput);
  json badkind = j;
  badkind["states"][1]["kind"] = "angel";
  CHECK_THROWS_AS(mdp_from_json(badkind), InvalidInput);
}

TEST_CASE("MD strategy JSON round trip") {
  MdStrategy sigma{{{"a", "b"}, {"c", "d"}}};
  std::map<StateId, Rational> g{{"a", Rational(1, 3)}};
  json j = md_to_json(sigma, &g);
  CHECK(j["guarantee"]["a"] == "1/3");
  CHECK(md_from_json(j).choice == sigma.choice);
}

TEST_CASE("transducer JSON round trip") {
  const json j = json::parse(R"({
    "schema": 1, "modes": ["stop", "climb"], "initial": "climb",
    "update": [{"mode": "stop", "state": "*", "dist": {"stop": "1/2", "climb": "1/2"}},
               {"mode": "climb", "state": "t", "dist": {"stop": 1}}],
    "successor": [{"mode": "stop", "state": "*", "ordinal_dist": {"0": 1}},
                  {"mode": "climb", "state": "s:0", "dist": {"s:1": 1}}]})");
  Transducer t = transducer_from_json(j);
  CHECK(t.mode_count() == 2);
  CHECK(t.initial == 1);
  CHECK(t.update_dist(0, "anything").size() == 2);
  CHECK(transducer_to_json(transducer_from_json(transducer_to_json(t))) == transducer_to_json(t));

  json dup = j;
  dup["modes"] = {"x", "x"};
  CHECK_THROWS_AS(transducer_from_json(dup), InvalidInput);
  json unknown = j;
  unknown["initial"] = "nope";
  CHECK_THROWS_AS(transducer_from_json(unknown), InvalidInput);
  json half = j;
  half["update"][0]["dist"] = {{"stop", "1/2"}};
  CHECK_THROWS(transducer_from_json(half));
}

TEST_CASE("objectives from JSON") {
  FiniteMdp m({loop("a", 0), loop("b", 1), loop("c", 2)});
  auto holds = [&](const StatePredicate& p, const char* id) { return p(id, m.color(m.index(id))); };

  Objective reach = objective_from_json(json::parse(R"({"type": "reach", "target": ["a", "c"]})"));
  REQUIRE(std::holds_alternative<Reach>(reach));
  CHECK(holds(std::get<Reach>(reach).target, "c"));
  CHECK_FALSE(holds(std::get<Reach>(reach).target, "b"));

  Objective safety = objective_from_json(json::parse(R"({"type": "safety", "avoid": {"color": 1}})"));
  CHECK(holds(std::get<Safety>(safety).avoid, "b"));

  Objective parity = objective_from_json(json::parse(R"({"type": "parity"})"), {0, 1, 2});
  CHECK(std::get<Parity>(parity).colors == std::set<Color>{0, 1, 2});

  Objective rabin = objective_from_json(
      json::parse(R"({"type": "rabin", "pairs": [{"e": "none", "f": {"not_color": 0}}]})"));
  REQUIRE(std::get<Rabin>(rabin).pairs.size() == 1);
  CHECK(holds(std::get<Rabin>(rabin).pairs[0].f, "c"));
  CHECK_FALSE(holds(std::get<Rabin>(rabin).pairs[0].e, "c"));

  CHECK_THROWS_AS(objective_from_json(json::parse(R"({"type": "mystery"})")), InvalidInput);
}

TEST_CASE("DOT export") {
  FiniteMdp one({loop("a")});
  const std::string dot = to_dot(one);
  CHECK(count(dot, "[shape=") == 1);
  CHECK(count(dot, "->") == 1);

  GalleryEntry e = fig2a_parity123();
  Truncation tr = truncate(*e.mdp, e.objective, at_radius(3));
  const std::string ladder = to_dot(tr.mdp, "fig2a");
  CHECK(count(ladder, "[shape=") == 9);
  CHECK(count(ladder, "style=dashed") == 1);
  CHECK(count(ladder, "shape=box") == 5);

  FiniteMdp quoted({loop("say \"hi\"")});
  CHECK(to_dot(quoted).find("say \\\"hi\\\"") != std::string::npos);
}
