#include <cmdp/cmdp.h>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <string>
#include <vector>

using nlohmann::json;

namespace {

json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  cmdp_string_free(s);
  return j;
}

const char* kCoin = R"({"schema": 1, "initial": "c",
  "states": [{"id": "c", "color": 1}, {"id": "u", "kind": "random", "color": 1}, {"id": "w", "color": 2}, {"id": "l", "color": 1}],
  "transitions": [{"from": "c", "to": "u"}, {"from": "c", "to": "l"},
                  {"from": "u", "to": "w", "prob": "1/2"}, {"from": "u", "to": "l", "prob": "1/2"},
                  {"from": "w", "to": "w"}, {"from": "l", "to": "l"}]})";

struct Mdp {
  cmdp_mdp* h = nullptr;
  explicit Mdp(const char* text) { REQUIRE(cmdp_mdp_from_json(text, &h) == CMDP_OK); }
  ~Mdp() { cmdp_mdp_free(h); }
};

struct Gallery {
  cmdp_gallery* h = nullptr;
  explicit Gallery(const char* name, const char* param = nullptr) { REQUIRE(cmdp_gallery_open(name, param, &h) == CMDP_OK); }
  ~Gallery() { cmdp_gallery_free(h); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(cmdp_version()).size() > 0);
  CHECK(std::string(cmdp_status_name(CMDP_OK)) == "ok");
  CHECK(std::string(cmdp_status_name(CMDP_NOT_FOUND)) == "not found");
}

TEST_CASE("loading MDPs reports parse and validation errors") {
  cmdp_mdp* h = nullptr;
  CHECK(cmdp_mdp_from_json("{not json", &h) == CMDP_PARSE_ERROR);
  CHECK(h == nullptr);
  CHECK(std::string(cmdp_last_error()).size() > 0);
  CHECK(cmdp_mdp_from_json(R"({"states": [{"id": "a"}], "transitions": []})", &h) == CMDP_INVALID_ARGUMENT);
  CHECK(std::string(cmdp_last_error()).find("no successor") != std::string::npos);
  CHECK(cmdp_mdp_from_json(nullptr, &h) == CMDP_INVALID_ARGUMENT);
  CHECK(cmdp_mdp_from_json(kCoin, nullptr) == CMDP_INVALID_ARGUMENT);
  cmdp_mdp_free(nullptr);
}

TEST_CASE("validation report") {
  char* out = nullptr;
  REQUIRE(cmdp_validate_json(R"({"states": [{"id": "a"}], "transitions": []})", &out) == CMDP_OK);
  json r = take(out);
  CHECK(r["ok"] == false);
  CHECK(r["violations"][0]["message"] == "no successor");
  CHECK(r["schema"] == 1);
}

TEST_CASE("values, synthesis and evaluation through the C API") {
  Mdp m(kCoin);
  CHECK(cmdp_mdp_size(m.h) == 4);

  char* out = nullptr;
  REQUIRE(cmdp_value(m.h, R"({"objective": {"type": "parity", "colors": [1, 2]}})", &out) == CMDP_OK);
  json v = take(out);
  CHECK(v["schema"] == 1);
  CHECK(v["values"]["c"] == "1/2");

  REQUIRE(cmdp_value(m.h, R"({"objective": {"type": "reach", "target": ["w"]}, "backend": "float"})", &out) ==
          CMDP_OK);
  v = take(out);
  CHECK(v["backend"] == "float");
  CHECK(v["values"]["c"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));

  REQUIRE(cmdp_synthesize(m.h, R"({"method": "optimal", "objective": {"type": "parity", "colors": [1, 2]}})", &out) ==
          CMDP_OK);
  json s = take(out);
  CHECK(s["strategy"]["choice"]["c"] == "u");
  CHECK(s["guarantee"]["c"] == "1/2");

  REQUIRE(cmdp_evaluate(m.h, R"({"schema": 1, "choice": {"c": "l", "w": "w", "l": "l"}})",
                        R"({"objective": {"type": "reach", "target": ["w"]}})", &out) == CMDP_OK);
  CHECK(take(out)["values"]["c"] == "0");

  CHECK(cmdp_value(m.h, R"({"objective": {"type": "reach", "target": ["ghost"]}})", &out) == CMDP_NOT_FOUND);
  CHECK(cmdp_value(m.h, R"({"objective": {"type": "nope"}})", &out) == CMDP_INVALID_ARGUMENT);
  CHECK(cmdp_value(nullptr, "{}", &out) == CMDP_INVALID_ARGUMENT);
}

TEST_CASE("JSON and DOT export") {
  Mdp m(kCoin);
  char* out = nullptr;
  REQUIRE(cmdp_mdp_to_json(m.h, &out) == CMDP_OK);
  json j = take(out);
  CHECK(j["states"].size() == 4);
  REQUIRE(cmdp_mdp_to_dot(m.h, &out) == CMDP_OK);
  std::string dot(out);
  cmdp_string_free(out);
  CHECK(dot.rfind("digraph", 0) == 0);
}

TEST_CASE("gallery handles") {
  char* out = nullptr;
  REQUIRE(cmdp_gallery_list(&out) == CMDP_OK);
  json list = take(out);
  CHECK(list["entries"].size() == 6);

  cmdp_gallery* g = nullptr;
  CHECK(cmdp_gallery_open("nonexistent", nullptr, &g) == CMDP_NOT_FOUND);
  CHECK(g == nullptr);
  CHECK(cmdp_gallery_open("gamblers_ruin", "3/2", &g) == CMDP_INVALID_ARGUMENT);

  Gallery ladder("fig2a");
  REQUIRE(cmdp_gallery_describe(ladder.h, &out) == CMDP_OK);
  json d = take(out);
  CHECK(d["initial"] == "s:0");

  cmdp_mdp* t = nullptr;
  REQUIRE(cmdp_gallery_truncate(ladder.h, R"({"radius": 3})", &t) == CMDP_OK);
  CHECK(cmdp_mdp_size(t) == 9);
  cmdp_mdp_free(t);

  REQUIRE(cmdp_borel_cantelli(ladder.h, R"({"strategy": "sigma_h", "cutoff": 10})", &out) == CMDP_OK);
  json bc = take(out);
  CHECK(bc["limit"] == "2");
  CHECK(cmdp_borel_cantelli(ladder.h, R"({"strategy": "nope", "cutoff": 10})", &out) == CMDP_NOT_FOUND);

  Gallery ruin("gamblers_ruin", "3/5");
  REQUIRE(cmdp_value_bounds(ruin.h, R"({"radius": 10})", &out) == CMDP_OK);
  json b = take(out);
  CHECK(b["schema"] == 1);
}

TEST_CASE("simulation through the C API is reproducible") {
  Gallery fan("fig3a");
  const char* req = R"({"strategy": "sigma_2", "horizon": 200, "episodes": 500, "seed": 9, "threads": 2})";
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(cmdp_simulate(fan.h, req, &a) == CMDP_OK);
  REQUIRE(cmdp_simulate(fan.h, req, &b) == CMDP_OK);
  CHECK(std::string(a) == std::string(b));
  json r = take(a);
  cmdp_string_free(b);
  CHECK(r["episodes"] == 500);
}

TEST_CASE("futility through the C API") {
  Gallery ladder("fig2a");
  const char* t = R"({"schema": 1, "modes": ["r0"],
    "successor": [{"mode": "r0", "state": "*", "ordinal_dist": {"0": 1}}]})";
  char* out = nullptr;
  REQUIRE(cmdp_futility(ladder.h, t, R"({"max_states": 2000})", &out) == CMDP_OK);
  json f = take(out);
  CHECK(f["c"] == "1");
  CHECK(cmdp_futility(ladder.h, "{", "{}", &out) == CMDP_PARSE_ERROR);
}

namespace {
void collect(const char* line, int passed, void* user) {
  static_cast<std::vector<std::pair<std::string, int>>*>(user)->emplace_back(line, passed);
}
}  // namespace

TEST_CASE("acceptance callback") {
  std::vector<std::pair<std::string, int>> lines;
  int failures = -1;
  REQUIRE(cmdp_accept("10", collect, &lines, &failures) == CMDP_OK);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].second == 1);
  CHECK(lines[0].first.rfind("[PASS]", 0) == 0);
  CHECK(failures == 0);
  CHECK(cmdp_accept("1,x", collect, &lines, &failures) == CMDP_INVALID_ARGUMENT);
  CHECK(cmdp_accept("99", collect, &lines, &failures) == CMDP_NOT_FOUND);
}
