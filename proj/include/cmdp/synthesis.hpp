#pragma once

#include <cmdp/values.hpp>

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace cmdp {

struct SynthesisResult {
  MdStrategy strategy;
  std::map<StateId, Rational> guarantee;
  std::map<StateId, std::string> trace;
  Backend backend = Backend::rational;
  std::map<std::string, std::string> metadata;
  std::vector<std::string> warnings;
};

/// Optimal-avoiding safety strategy: argmax of the safety value, ties to the
/// smallest StateId.
IndexStrategy sigma_opt_av_index(const FiniteMdp& mdp, const std::vector<Rational>& safety);
MdStrategy sigma_opt_av(const FiniteMdp& mdp, const StateMask& avoid);

/// Exact probability of staying in color-0 states forever under σ_opt-av.
std::vector<Rational> opt_av_safety(const FiniteMdp& mdp);

/// {s : P_{s,σ_opt-av}(G Col=0) >= tau}.
StateMask safe_set(const FiniteMdp& mdp, const Rational& tau);

struct ConditionedMdp {
  FiniteMdp mdp;
  std::vector<Rational> value_of;         // by original index
  std::vector<std::size_t> original;      // conditioned index -> original index
  std::shared_ptr<const FiniteMdp> source;
  std::vector<std::string> warnings;
};

/// Restricts to positive-value states, keeps controller edges between equal
/// values and rescales random edges by val(t)/val(s).
ConditionedMdp conditioned_mdp(const FiniteMdp& mdp, const Objective& obj, const ValueVector& values);

struct GlueStep {
  StateId seed;
  MdStrategy sigma;
  std::vector<StateId> region;
};

struct GlueResult {
  MdStrategy strategy;
  std::vector<GlueStep> steps;
};

/// Oracle returning an MD strategy that wins almost surely from `s` in `current`.
using AsOracle = std::function<MdStrategy(const FiniteMdp& current, const StateId& s)>;

GlueResult uniform_as_glue(const FiniteMdp& mdp, const Objective& obj, const AsOracle& oracle);

/// Almost-sure reachability strategy. Throws PreconditionViolation if any of
/// `queried` (all states if empty) lies outside the almost-sure region.
MdStrategy as_reach_md(const FiniteMdp& mdp, const StateMask& target, const std::vector<StateId>& queried = {});

MdStrategy as_buchi_md(const FiniteMdp& mdp);
MdStrategy as_parity012_md(const FiniteMdp& mdp);

SynthesisResult optimal_parity_md(const FiniteMdp& mdp, const Parity& obj);

SynthesisResult eps_optimal_reach_md(const FiniteMdp& mdp, const StateMask& target, double eps);

struct CountableSynthesisOptions {
  std::vector<StateId> queried;  // initial state if empty
  std::size_t initial_radius = 8;
  std::size_t max_radius = 512;
  std::optional<std::size_t> branch_cap;
};

SynthesisResult eps_optimal_reach_md(const CountableMdp& mdp, const StatePredicate& target, double eps,
                                     const CountableSynthesisOptions& opts = {});

struct CoBuchiConstants {
  Rational eps1, eps2, eps3, k, tau1, tau2;
};

CoBuchiConstants cobuchi_constants(const Rational& eps);

SynthesisResult eps_optimal_cobuchi_md(const FiniteMdp& mdp, const Rational& eps);
SynthesisResult eps_optimal_cobuchi_md(const CountableMdp& mdp, const Rational& eps,
                                       const CountableSynthesisOptions& opts = {});

}  // namespace cmdp
