#pragma once

#include <cmdp/objective.hpp>
#include <cmdp/strategy.hpp>

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cmdp {

struct NamedStrategy {
  std::string name;
  AnyStrategy strategy;
};

/// A model from the gallery together with the strategies used in the
/// arguments about it and the quantities it is expected to exhibit.
struct GalleryEntry {
  std::string name;
  std::string summary;
  std::shared_ptr<const CountableMdp> mdp;
  Objective objective;
  std::vector<NamedStrategy> strategies;
  nlohmann::json claims;
  /// For fatal-event analyses: the anchor state and the event that is fatal
  /// for the objective when it recurs (or is absorbing).
  std::optional<StateId> anchor;
  StatePredicate fatal;
  bool fatal_is_absorbing = false;
};

GalleryEntry fig2a_parity123();
GalleryEntry fig2b_buchi();
GalleryEntry fig3a_safety();
GalleryEntry fig3b_cobuchi();
GalleryEntry fig4_one_counter();
GalleryEntry gamblers_ruin(const Rational& p);

std::vector<std::string> gallery_names();
/// Builds an entry by name; gamblers_ruin takes `p` (default 3/5).
GalleryEntry gallery_entry(const std::string& name, const std::optional<Rational>& p = std::nullopt);

/// Looks up a bundled strategy. fig3a also resolves any "sigma_<n>", n >= 1.
std::optional<AnyStrategy> find_strategy(const GalleryEntry& entry, const std::string& name);

/// σ_n on fig3a: on the k-th visit to s pick r_{n+k}.
CounterStrategy fig3a_sigma(unsigned n);

}  // namespace cmdp
