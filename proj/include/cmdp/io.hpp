#pragma once

#include <cmdp/mdp.hpp>
#include <cmdp/objective.hpp>
#include <cmdp/strategy.hpp>

#include <json.hpp>

#include <map>
#include <set>
#include <string>

namespace cmdp {

inline constexpr int kSchemaVersion = 1;

FiniteMdp mdp_from_json(const nlohmann::json& j);
nlohmann::json mdp_to_json(const FiniteMdp& mdp);

MdStrategy md_from_json(const nlohmann::json& j);
nlohmann::json md_to_json(const MdStrategy& sigma, const std::map<StateId, Rational>* guarantee = nullptr);

Transducer transducer_from_json(const nlohmann::json& j);
nlohmann::json transducer_to_json(const Transducer& t);

/// Graphviz rendering: controller states as boxes, random states as circles,
/// colors in the labels, probabilities on random edges.
/// Objectives as JSON:
///   {"type": "reach", "target": P}      {"type": "safety", "avoid": P}
///   {"type": "parity", "colors": [0, 1, 2]}
///   {"type": "rabin" | "streett", "pairs": [{"e": P, "f": P}, ...]}
/// where a predicate P is a list of state ids, {"color": c}, {"not_color": c},
/// "all" or "none". A parity objective without "colors" takes `default_colors`.
Objective objective_from_json(const nlohmann::json& j, const std::set<Color>& default_colors = {});

/// Memoryless strategy if the document has "choice", transducer if it has "modes".
AnyStrategy strategy_from_json(const nlohmann::json& j);

std::string to_dot(const FiniteMdp& mdp, const std::string& name = "mdp");

StateId state_id_from_json(const nlohmann::json& j);

}  // namespace cmdp
