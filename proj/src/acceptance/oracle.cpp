#include "acceptance/oracle.hpp"

#include <cmdp/errors.hpp>
#include <cmdp/evaluation.hpp>

namespace cmdp::acceptance {

std::size_t md_strategy_count(const FiniteMdp& mdp) {
  std::size_t n = 1;
  for (std::size_t s = 0; s < mdp.size(); ++s)
    if (mdp.is_controller(s)) n *= mdp.edges(s).size();
  return n;
}

std::vector<Rational> brute_force_optimum(const FiniteMdp& mdp, const Objective& obj) {
  if (md_strategy_count(mdp) > 1'000'000) throw InvalidInput("too many MD strategies to enumerate");
  std::vector<std::size_t> controllers;
  for (std::size_t s = 0; s < mdp.size(); ++s)
    if (mdp.is_controller(s)) controllers.push_back(s);

  std::vector<std::size_t> digit(controllers.size(), 0);
  IndexStrategy sigma(mdp.size(), FiniteMdp::npos);
  std::vector<Rational> best(mdp.size(), Rational(-1));
  while (true) {
    for (std::size_t i = 0; i < controllers.size(); ++i)
      sigma[controllers[i]] = mdp.edges(controllers[i])[digit[i]].target;
    const std::vector<Rational> v = md_value_index(mdp, sigma, obj);
    for (std::size_t s = 0; s < v.size(); ++s)
      if (v[s] > best[s]) best[s] = v[s];

    std::size_t i = 0;
    while (i < controllers.size() && ++digit[i] == mdp.edges(controllers[i]).size()) digit[i++] = 0;
    if (i == controllers.size()) break;
  }
  return best;
}

}  // namespace cmdp::acceptance
