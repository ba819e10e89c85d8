#include "acceptance/random_mdp.hpp"

#include <algorithm>
#include <numeric>

namespace cmdp::acceptance {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

FiniteMdp random_mdp(std::uint64_t seed, const RandomShape& shape) {
  std::mt19937_64 rng(seed);
  const std::size_t nc = uniform(rng, shape.min_controllers, shape.max_controllers);
  const std::size_t nr = uniform(rng, 1, shape.max_random);
  std::vector<StateId> ids;
  for (std::size_t i = 0; i < nc; ++i) ids.emplace_back("c" + std::to_string(i));
  for (std::size_t i = 0; i < nr; ++i) ids.emplace_back("p" + std::to_string(i));
  std::vector<Color> sink_colors;
  if (shape.sinks)
    for (Color parity : {0u, 1u}) {
      auto it = std::find_if(shape.colors.begin(), shape.colors.end(), [&](Color c) { return c % 2 == parity; });
      if (it == shape.colors.end()) continue;
      sink_colors.push_back(*it);
      ids.emplace_back("z" + std::to_string(parity));
    }

  std::vector<StateSpec> states;
  std::vector<std::size_t> all(ids.size());
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = 0; i < nc + nr; ++i) {
    StateSpec spec;
    spec.id = ids[i];
    spec.kind = i < nc ? StateKind::controller : StateKind::random;
    spec.color = shape.colors[uniform(rng, 0, shape.colors.size() - 1)];
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t lo = spec.kind == StateKind::random ? 2 : 1;
    const std::size_t k = uniform(rng, std::min(lo, all.size()), std::min(shape.max_branch, all.size()));
    std::vector<unsigned> weight(k);
    unsigned total = 0;
    for (auto& w : weight) total += (w = static_cast<unsigned>(uniform(rng, 1, 4)));
    for (std::size_t j = 0; j < k; ++j)
      spec.successors.push_back({ids[all[j]], spec.kind == StateKind::random ? ratio(weight[j], total) : Rational(0)});
    states.push_back(std::move(spec));
  }
  for (std::size_t k = 0; k < sink_colors.size(); ++k) {
    const StateId& z = ids[nc + nr + k];
    states.push_back(StateSpec{z, StateKind::random, sink_colors[k], {{z, Rational(1)}}});
  }
  return FiniteMdp(std::move(states), ids.front());
}

Lasso random_lasso(std::mt19937_64& rng, const std::vector<Color>& colors, std::size_t max_prefix,
                   std::size_t max_cycle) {
  auto draw = [&] { return StateId("c" + std::to_string(colors[uniform(rng, 0, colors.size() - 1)])); };
  Lasso l;
  const std::size_t np = uniform(rng, 0, max_prefix);
  const std::size_t nc = uniform(rng, 1, max_cycle);
  for (std::size_t i = 0; i < np; ++i) l.prefix.push_back(draw());
  for (std::size_t i = 0; i < nc; ++i) l.cycle.push_back(draw());
  return l;
}

}  // namespace cmdp::acceptance
