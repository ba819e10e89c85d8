#include <cmdp/errors.hpp>
#include <cmdp/objective.hpp>

#include <sstream>

namespace cmdp {

std::string describe(const Objective& obj) {
  struct Visitor {
    std::string operator()(const Reach&) const { return "Reach"; }
    std::string operator()(const Safety&) const { return "Safety"; }
    std::string operator()(const Parity& p) const {
      std::ostringstream os;
      os << "Parity{";
      bool first = true;
      for (Color c : p.colors) {
        os << (first ? "" : ",") << c;
        first = false;
      }
      os << "}";
      return os.str();
    }
    std::string operator()(const Rabin& r) const { return "Rabin[" + std::to_string(r.pairs.size()) + "]"; }
    std::string operator()(const Streett& s) const { return "Streett[" + std::to_string(s.pairs.size()) + "]"; }
  };
  return std::visit(Visitor{}, obj);
}

namespace pred {

StatePredicate in(std::set<StateId> ids) {
  return [ids = std::move(ids)](const StateId& s, Color) { return ids.count(s) > 0; };
}
StatePredicate color_eq(Color c) {
  return [c](const StateId&, Color k) { return k == c; };
}
StatePredicate color_ne(Color c) {
  return [c](const StateId&, Color k) { return k != c; };
}
StatePredicate all() {
  return [](const StateId&, Color) { return true; };
}
StatePredicate none() {
  return [](const StateId&, Color) { return false; };
}

}  // namespace pred

StateMask mask_of(const FiniteMdp& mdp, const StatePredicate& p) {
  StateMask m(mdp.size(), false);
  for (std::size_t i = 0; i < mdp.size(); ++i) m[i] = p(mdp.id(i), mdp.color(i));
  return m;
}

void check_objective(const Objective& obj) {
  if (const auto* r = std::get_if<Reach>(&obj); r && !r->target) throw InvalidInput("Reach objective without target");
  if (const auto* s = std::get_if<Safety>(&obj); s && !s->avoid) throw InvalidInput("Safety objective without avoid set");
  if (const auto* p = std::get_if<Parity>(&obj); p && p->colors.empty())
    throw InvalidInput("Parity objective needs a nonempty color set");
  auto check_pairs = [](const std::vector<AcceptancePair>& pairs) {
    for (const auto& pr : pairs)
      if (!pr.e || !pr.f) throw InvalidInput("acceptance pair with a missing predicate");
  };
  if (const auto* r = std::get_if<Rabin>(&obj)) check_pairs(r->pairs);
  if (const auto* s = std::get_if<Streett>(&obj)) check_pairs(s->pairs);
}

}  // namespace cmdp
