#include <cmdp/errors.hpp>
#include <cmdp/gallery.hpp>

#include <charconv>
#include <optional>

namespace cmdp {

using nlohmann::json;

namespace {

struct Indexed {
  std::string head;
  unsigned long n = 0;
};

// "r:12" -> {"r", 12}. Rejects leading zeros so each abstract state has one token.
std::optional<Indexed> split(const StateId& s) {
  const std::string& str = s.str();
  auto colon = str.find(':');
  if (colon == std::string::npos || colon + 1 >= str.size()) return std::nullopt;
  const char* first = str.data() + colon + 1;
  const char* last = str.data() + str.size();
  if (*first == '0' && last - first > 1) return std::nullopt;
  Indexed out{str.substr(0, colon), 0};
  auto [ptr, ec] = std::from_chars(first, last, out.n);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return out;
}

StateId idx(const char* head, unsigned long n) { return StateId(std::string(head) + ":" + std::to_string(n)); }

[[noreturn]] void unknown(const StateId& s) { throw NotFound("no such state '" + s.str() + "'"); }

Rational one_minus(const Rational& q) { return Rational(1) - q; }

// Ladder behind fig2a / fig2b: s_i -> {r_i, s_{i+1}}, r_i -> fatal w.p. 2^{-i} and s_0 otherwise.
class Ladder final : public CountableMdp {
 public:
  explicit Ladder(bool buchi) : buchi_(buchi), fatal_(buchi ? "b" : "t") {}

  StateId initial() const override { return idx("s", 0); }

  bool is_state(const StateId& s) const override {
    if (s == fatal_) return true;
    auto p = split(s);
    return p && (p->head == "s" || p->head == "r");
  }

  StateKind kind(const StateId& s) const override {
    if (s == fatal_) return StateKind::controller;
    auto p = check(s);
    return p.head == "s" ? StateKind::controller : StateKind::random;
  }

  Color color(const StateId& s) const override {
    if (s == fatal_) return buchi_ ? 1 : 3;
    auto p = check(s);
    if (buchi_) return (p.head == "s" && p.n == 0) ? 2 : 1;
    return p.head == "s" ? 1 : 2;
  }

  Successors successors(const StateId& s) const override {
    if (s == fatal_) return {{{buchi_ ? fatal_ : idx("s", 0), 0}}, {}};
    auto p = check(s);
    if (p.head == "s") return {{{idx("r", p.n), 0}, {idx("s", p.n + 1), 0}}, {}};
    if (p.n == 0) return {{{fatal_, Rational(1)}}, {}};
    Rational q = pow2_neg(static_cast<unsigned>(p.n));
    return {{{fatal_, q}, {idx("s", 0), one_minus(q)}}, {}};
  }

 private:
  Indexed check(const StateId& s) const {
    auto p = split(s);
    if (!p || (p->head != "s" && p->head != "r")) unknown(s);
    return *p;
  }

  bool buchi_;
  StateId fatal_;
};

// Fan behind fig3a / fig3b: s -> r_i for every i >= 1, r_i -> t w.p. 2^{-i} and s otherwise.
class Fan final : public CountableMdp {
 public:
  explicit Fan(bool cobuchi) : cobuchi_(cobuchi) {}

  StateId initial() const override { return "s"; }

  bool is_state(const StateId& s) const override {
    if (s == StateId("s") || s == StateId("t")) return true;
    auto p = split(s);
    return p && p->head == "r" && p->n >= 1;
  }

  StateKind kind(const StateId& s) const override {
    if (s == StateId("s") || s == StateId("t")) return StateKind::controller;
    check(s);
    return StateKind::random;
  }

  Color color(const StateId& s) const override {
    if (!is_state(s)) unknown(s);
    return s == StateId("t") ? 1 : 0;
  }

  Successors successors(const StateId& s) const override {
    if (s == StateId("s")) return {{}, [](std::size_t i) { return idx("r", i + 1); }};
    if (s == StateId("t")) return {{{cobuchi_ ? StateId("s") : StateId("t"), 0}}, {}};
    Rational q = pow2_neg(static_cast<unsigned>(check(s)));
    return {{{"t", q}, {"s", one_minus(q)}}, {}};
  }

  bool is_successor(const StateId& s, const StateId& t) const override {
    if (s == StateId("s")) {
      auto p = split(t);
      return p && p->head == "r" && p->n >= 1;
    }
    return CountableMdp::is_successor(s, t);
  }

 private:
  unsigned long check(const StateId& s) const {
    auto p = split(s);
    if (!p || p->head != "r" || p->n < 1) unknown(s);
    return p->n;
  }

  bool cobuchi_;
};

// One-counter ladder (fig4) with the counter folded into the token: s:n, r:n, rp:n (r'), t:0.
class OneCounter final : public CountableMdp {
 public:
  StateId initial() const override { return idx("s", 0); }

  bool is_state(const StateId& s) const override {
    auto p = split(s);
    if (!p) return false;
    if (p->head == "t") return p->n == 0;
    return p->head == "s" || p->head == "r" || p->head == "rp";
  }

  StateKind kind(const StateId& s) const override {
    auto p = check(s);
    return (p.head == "s" || p.head == "t") ? StateKind::controller : StateKind::random;
  }

  Color color(const StateId& s) const override {
    auto p = check(s);
    if (p.head == "s") return 1;
    if (p.head == "t") return 3;
    return 2;
  }

  Successors successors(const StateId& s) const override {
    auto p = check(s);
    if (p.head == "s") return {{{idx("r", p.n), 0}, {idx("s", p.n + 1), 0}}, {}};
    if (p.head == "t") return {{{idx("s", 0), 0}}, {}};
    if (p.head == "rp") return {{{p.n == 0 ? idx("s", 0) : idx("rp", p.n - 1), Rational(1)}}, {}};
    if (p.n == 0) return {{{idx("t", 0), Rational(1)}}, {}};
    return {{{idx("r", p.n - 1), Rational(1, 2)}, {idx("rp", p.n - 1), Rational(1, 2)}}, {}};
  }

 private:
  Indexed check(const StateId& s) const {
    if (!is_state(s)) unknown(s);
    return *split(s);
  }
};

class GamblersRuin final : public CountableMdp {
 public:
  explicit GamblersRuin(Rational p) : p_(std::move(p)) {}

  StateId initial() const override { return StateId::of_index(1); }
  bool is_state(const StateId& s) const override { return parse(s).has_value(); }
  StateKind kind(const StateId& s) const override {
    check(s);
    return StateKind::random;
  }
  Color color(const StateId& s) const override { return check(s) == 0 ? 1 : 0; }

  Successors successors(const StateId& s) const override {
    unsigned long i = check(s);
    if (i == 0) return {{{s, Rational(1)}}, {}};
    return {{{StateId::of_index(i - 1), one_minus(p_)}, {StateId::of_index(i + 1), p_}}, {}};
  }

 private:
  static std::optional<unsigned long> parse(const StateId& s) {
    const std::string& str = s.str();
    if (str.empty() || (str[0] == '0' && str.size() > 1)) return std::nullopt;
    unsigned long n = 0;
    auto [ptr, ec] = std::from_chars(str.data(), str.data() + str.size(), n);
    if (ec != std::errc() || ptr != str.data() + str.size()) return std::nullopt;
    return n;
  }
  unsigned long check(const StateId& s) const {
    auto n = parse(s);
    if (!n) unknown(s);
    return *n;
  }

  Rational p_;
};

// Climb to s_{v-1} on the v-th visit to s_0 (visits counted from 1), then exit.
CounterStrategy climbing(unsigned offset, const char* exit_head) {
  return CounterStrategy(idx("s", 0), [offset, exit_head](std::uint64_t visits, const StateId& state) -> StateId {
    auto p = split(state);
    if (!p || p->head != "s") throw PreconditionViolation("counter strategy consulted at '" + state.str() + "'");
    const std::uint64_t rung = visits + offset - 1;
    return p->n < rung ? idx("s", p->n + 1) : idx(exit_head, p->n);
  });
}

json prob_claim(const char* from, const char* to, const Rational& q) {
  return {{"from", from}, {"to", to}, {"value", to_string(q)}};
}

}  // namespace

CounterStrategy fig3a_sigma(unsigned n) {
  return CounterStrategy("s", [n](std::uint64_t visits, const StateId& state) -> StateId {
    if (state != StateId("s")) throw PreconditionViolation("counter strategy consulted at '" + state.str() + "'");
    return idx("r", n + visits);
  });
}

GalleryEntry fig2a_parity123() {
  GalleryEntry e;
  e.name = "fig2a";
  e.summary = "ladder with colors 1/2/3; almost-sure Parity{1,2,3} needs infinite memory";
  e.mdp = std::make_shared<Ladder>(false);
  e.objective = Parity{{1, 2, 3}};
  e.strategies.push_back({"sigma_h", climbing(0, "r")});
  e.strategies.push_back({"pick_r0", MdStrategy{{{idx("s", 0), idx("r", 0)}, {"t", idx("s", 0)}}}});
  e.anchor = idx("s", 0);
  e.fatal = pred::in({"t"});
  e.claims = {{"prob", json::array({prob_claim("r:3", "t", Rational(1, 8)), prob_claim("r:0", "t", Rational(1))})},
              {"color", {{"t", 3}, {"s:0", 1}, {"r:0", 2}}},
              {"borel_cantelli", {{"sigma_h", {{"limit", "2"}}}}},
              {"futility_conclusion", "P(Parity{1,2,3}) = 0: color 3 recurs almost surely, or the play climbs forever on color 1"}};
  return e;
}

GalleryEntry fig2b_buchi() {
  GalleryEntry e;
  e.name = "fig2b";
  e.summary = "ladder with absorbing color-1 state b; Büchi is limit-sure and needs infinite memory";
  e.mdp = std::make_shared<Ladder>(true);
  e.objective = Parity{{1, 2}};
  e.strategies.push_back({"sigma_h", climbing(1, "r")});
  e.anchor = idx("s", 0);
  e.fatal = pred::in({"b"});
  e.fatal_is_absorbing = true;
  e.claims = {{"prob", json::array({prob_claim("r:1", "s:0", Rational(1, 2)), prob_claim("r:0", "b", Rational(1))})},
              {"color", {{"s:0", 2}, {"b", 1}}},
              {"futility_conclusion",
               "P(Parity{1,2}) = 0: returning to s:0 infinitely often reaches b almost surely; "
               "returning finitely often sees color 2 finitely often"}};
  return e;
}

GalleryEntry fig3a_safety() {
  GalleryEntry e;
  e.name = "fig3a";
  e.summary = "infinitely branching s; safety is limit-sure only with infinite memory";
  e.mdp = std::make_shared<Fan>(false);
  e.objective = Safety{pred::in({"t"})};
  for (unsigned n = 1; n <= 3; ++n) e.strategies.push_back({"sigma_" + std::to_string(n), fig3a_sigma(n)});
  e.strategies.push_back({"pick_r1", MdStrategy{{{"s", idx("r", 1)}, {"t", "t"}}}});
  e.anchor = StateId("s");
  e.fatal = pred::in({"t"});
  e.fatal_is_absorbing = true;
  e.claims = {{"prob", json::array({prob_claim("r:2", "t", Rational(1, 4))})},
              {"borel_cantelli", {{"sigma_n", {{"limit", "2^-n"}}}}},
              {"futility_conclusion", "P(Safety{t}) = 0: t is reached almost surely"}};
  return e;
}

GalleryEntry fig3b_cobuchi() {
  GalleryEntry e;
  e.name = "fig3b";
  e.summary = "infinitely branching s, t returns to s; almost-sure co-Büchi needs infinite memory";
  e.mdp = std::make_shared<Fan>(true);
  e.objective = Parity{{0, 1}};
  e.strategies.push_back({"sigma_h", CounterStrategy("s", [](std::uint64_t visits, const StateId& state) -> StateId {
                            if (state == StateId("t")) return "s";
                            return idx("r", visits);
                          })});
  e.anchor = StateId("s");
  e.fatal = pred::in({"t"});
  e.claims = {{"color", {{"t", 1}, {"s", 0}}},
              {"borel_cantelli", {{"sigma_h", {{"limit", "1"}}}}},
              {"futility_conclusion", "P(Parity{0,1}) = 0: color 1 recurs almost surely"}};
  return e;
}

GalleryEntry fig4_one_counter() {
  GalleryEntry e;
  e.name = "fig4";
  e.summary = "one-counter rendering of the fig2a ladder";
  e.mdp = std::make_shared<OneCounter>();
  e.objective = Parity{{1, 2, 3}};
  e.strategies.push_back({"sigma_h", climbing(0, "r")});
  e.anchor = idx("s", 0);
  e.fatal = pred::in({"t:0"});
  e.claims = {{"reach_t_before_s_from_r", "2^-n"}, {"color", {{"s:0", 1}, {"r:0", 2}, {"rp:0", 2}, {"t:0", 3}}}};
  return e;
}

GalleryEntry gamblers_ruin(const Rational& p) {
  if (p <= 0 || p >= 1) throw InvalidInput("gamblers_ruin needs 0 < p < 1, got " + to_string(p));
  GalleryEntry e;
  e.name = "gamblers_ruin";
  e.summary = "random walk on the naturals, absorbing ruin at 0";
  e.mdp = std::make_shared<GamblersRuin>(p);
  e.objective = Safety{pred::in({"0"})};
  e.strategies.push_back({"chain", MdStrategy{}});
  e.fatal = pred::in({"0"});
  e.fatal_is_absorbing = true;
  json claims = {{"p", to_string(p)}};
  if (p > Rational(1, 2)) claims["ruin_from_i"] = "(" + to_string(Rational(1) - p) + " / " + to_string(p) + ")^i";
  e.claims = std::move(claims);
  return e;
}

std::vector<std::string> gallery_names() { return {"fig2a", "fig2b", "fig3a", "fig3b", "fig4", "gamblers_ruin"}; }

GalleryEntry gallery_entry(const std::string& name, const std::optional<Rational>& p) {
  if (name == "fig2a") return fig2a_parity123();
  if (name == "fig2b") return fig2b_buchi();
  if (name == "fig3a") return fig3a_safety();
  if (name == "fig3b") return fig3b_cobuchi();
  if (name == "fig4") return fig4_one_counter();
  if (name == "gamblers_ruin") return gamblers_ruin(p.value_or(Rational(3, 5)));
  throw NotFound("no gallery entry named '" + name + "'");
}

std::optional<AnyStrategy> find_strategy(const GalleryEntry& entry, const std::string& name) {
  for (const auto& s : entry.strategies)
    if (s.name == name) return s.strategy;
  if (entry.name == "fig3a" && name.rfind("sigma_", 0) == 0) {
    unsigned n = 0;
    const char* first = name.data() + 6;
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec == std::errc() && ptr == last && n >= 1 && n <= 1000) return AnyStrategy(fig3a_sigma(n));
  }
  return std::nullopt;
}

}  // namespace cmdp
