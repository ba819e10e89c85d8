#include <cmdp/errors.hpp>
#include <cmdp/lasso.hpp>

#include <algorithm>

namespace cmdp {
namespace {

void check_lasso(const Lasso& lasso, const Related& related) {
  if (lasso.cycle.empty()) throw InvalidInput("lasso cycle must be nonempty");
  if (!related) return;
  std::vector<StateId> seq = lasso.prefix;
  seq.insert(seq.end(), lasso.cycle.begin(), lasso.cycle.end());
  seq.push_back(lasso.cycle.front());
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (!related(seq[i], seq[i + 1]))
      throw InvalidInput("lasso step '" + seq[i].str() + "' -> '" + seq[i + 1].str() + "' is not a transition");
}

}  // namespace

bool accepts(const Lasso& lasso, const Objective& obj, const ColorOf& color_of, const Related& related) {
  check_lasso(lasso, related);
  check_objective(obj);

  auto any_of = [&](const std::vector<StateId>& seq, const StatePredicate& p) {
    return std::any_of(seq.begin(), seq.end(), [&](const StateId& s) { return p(s, color_of(s)); });
  };
  auto seen = [&](const StatePredicate& p) { return any_of(lasso.prefix, p) || any_of(lasso.cycle, p); };
  auto inf = [&](const StatePredicate& p) { return any_of(lasso.cycle, p); };

  struct Visitor {
    decltype(seen)& seen_;
    decltype(inf)& inf_;
    const Lasso& lasso_;
    const ColorOf& color_of_;

    bool operator()(const Reach& r) const { return seen_(r.target); }
    bool operator()(const Safety& s) const { return !seen_(s.avoid); }
    bool operator()(const Parity& p) const {
      Color top = 0;
      for (const auto& s : lasso_.cycle) top = std::max(top, color_of_(s));
      if (p.colors.count(top) == 0)
        throw InvalidInput("cycle color " + std::to_string(top) + " is outside the parity color set");
      return top % 2 == 0;
    }
    bool operator()(const Rabin& r) const {
      return std::any_of(r.pairs.begin(), r.pairs.end(),
                         [&](const AcceptancePair& pr) { return !inf_(pr.e) && inf_(pr.f); });
    }
    bool operator()(const Streett& s) const {
      return std::all_of(s.pairs.begin(), s.pairs.end(),
                         [&](const AcceptancePair& pr) { return inf_(pr.e) || !inf_(pr.f); });
    }
  };
  return std::visit(Visitor{seen, inf, lasso, color_of}, obj);
}

bool accepts(const Lasso& lasso, const Objective& obj, const CountableMdp& mdp) {
  for (const auto& s : lasso.prefix)
    if (!mdp.is_state(s)) throw InvalidInput("lasso mentions unknown state '" + s.str() + "'");
  for (const auto& s : lasso.cycle)
    if (!mdp.is_state(s)) throw InvalidInput("lasso mentions unknown state '" + s.str() + "'");
  return accepts(
      lasso, obj, [&](const StateId& s) { return mdp.color(s); },
      [&](const StateId& a, const StateId& b) { return mdp.is_successor(a, b); });
}

}  // namespace cmdp
