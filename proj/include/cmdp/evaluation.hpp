#pragma once

#include <cmdp/gallery.hpp>
#include <cmdp/values.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cmdp {

/// Exact value of a fixed MD strategy. Reach/Safety by hitting probabilities;
/// Parity/Rabin/Streett by classifying the bottom SCCs of the induced chain
/// (their states are exactly the ones seen infinitely often, almost surely).
ValueVector md_value(const FiniteMdp& mdp, const MdStrategy& sigma, const Objective& obj);
std::vector<Rational> md_value_index(const FiniteMdp& mdp, const IndexStrategy& sigma, const Objective& obj);

struct SimulationOptions {
  std::uint64_t horizon = 1000;
  std::uint64_t episodes = 1000;
  std::uint64_t seed = 0;
  std::size_t cycle_events = 16;  // how many anchor-cycle events E_0..E_{n-1} to track
  unsigned threads = 0;           // 0: hardware concurrency
};

struct EventStat {
  std::string name;
  std::uint64_t count = 0;
  double frequency = 0.0;
  double std_error = 0.0;
};

struct SimulationReport {
  std::uint64_t episodes = 0;
  std::uint64_t horizon = 0;
  std::uint64_t seed = 0;
  std::string rng = "splitmix64(seed, episode) -> mt19937_64; u = (x >> 11) * 2^-53";
  std::vector<EventStat> events;
  std::map<StateId, std::uint64_t> visits;  // episodes in which the state was visited
  std::uint64_t aborted = 0;
  std::vector<std::string> diagnostics;
};

/// Monte Carlo plays. Event E_k: the fatal set is visited during the cycle that
/// starts at the (k+1)-th visit to the anchor (the starting position counts as
/// the first visit). "fatal_within_horizon" records any fatal visit.
SimulationReport simulate(const GalleryEntry& entry, const AnyStrategy& strategy, const SimulationOptions& opts);
SimulationReport simulate(const CountableMdp& mdp, const AnyStrategy& strategy, const SimulationOptions& opts,
                          const std::optional<StateId>& anchor = std::nullopt, const StatePredicate& fatal = {});

std::uint64_t episode_seed(std::uint64_t seed, std::uint64_t episode) noexcept;

struct BorelCantelliResult {
  std::string entry;
  std::string strategy;
  unsigned cutoff = 0;
  /// q_k = P(fatal event during cycle k | cycle k is entered), k = 1..K.
  std::vector<Rational> terms;
  Rational partial_sum;
  std::optional<Rational> limit;
  /// True when the summed series is the majorant Σ q_k rather than Σ P(E_k)
  /// (the two differ when the fatal event is absorbing).
  bool limit_is_bound = false;
  Rational event_partial_sum;
  /// For absorbing fatal events: exact lower bound on never reaching it.
  std::optional<Rational> survival_lower_bound;
};

BorelCantelliResult borel_cantelli_sum(const GalleryEntry& entry, const std::string& strategy, unsigned cutoff);

struct AnchorBound {
  std::string mode;
  Rational fatal_before_return;
  Rational return_prob;
};

struct FutilityCertificate {
  std::string entry;
  std::size_t product_states = 0;
  std::vector<AnchorBound> anchors;
  Rational c;
  std::string conclusion;
  bool case_split = false;
  std::string note;
};

FutilityCertificate fr_futility(const GalleryEntry& entry, const Transducer& t, std::size_t max_states = 50'000);

}  // namespace cmdp
