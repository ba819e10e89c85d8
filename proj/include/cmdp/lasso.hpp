#pragma once

#include <cmdp/objective.hpp>

#include <functional>
#include <vector>

namespace cmdp {

struct Lasso {
  std::vector<StateId> prefix;
  std::vector<StateId> cycle;
};

using ColorOf = std::function<Color(const StateId&)>;
using Related = std::function<bool(const StateId&, const StateId&)>;

/// Decides membership of the ultimately periodic play prefix·cycle^ω.
/// When `related` is given, every consecutive pair (seam and wrap-around
/// included) must satisfy it. Throws InvalidInput on an invalid lasso.
bool accepts(const Lasso& lasso, const Objective& obj, const ColorOf& color_of, const Related& related = {});

/// Same, with colors and the transition relation taken from the MDP.
bool accepts(const Lasso& lasso, const Objective& obj, const CountableMdp& mdp);

}  // namespace cmdp
