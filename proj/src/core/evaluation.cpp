#include <cmdp/chain.hpp>
#include <cmdp/errors.hpp>
#include <cmdp/evaluation.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <thread>
#include <unordered_map>

namespace cmdp {

std::vector<Rational> md_value_index(const FiniteMdp& mdp, const IndexStrategy& sigma, const Objective& obj) {
  check_objective(obj);
  const SparseChain chain = induced_chain(mdp, sigma);

  if (const auto* r = std::get_if<Reach>(&obj)) return hitting_probabilities(chain, mask_of(mdp, r->target));
  if (const auto* s = std::get_if<Safety>(&obj)) {
    std::vector<Rational> hit = hitting_probabilities(chain, mask_of(mdp, s->avoid));
    for (auto& h : hit) h = Rational(1) - h;
    return hit;
  }

  auto holds_somewhere = [&](const std::vector<std::size_t>& comp, const StatePredicate& p) {
    return std::any_of(comp.begin(), comp.end(), [&](std::size_t v) { return p(mdp.id(v), mdp.color(v)); });
  };
  auto winning = [&](const std::vector<std::size_t>& comp) -> bool {
    if (const auto* p = std::get_if<Parity>(&obj)) {
      Color top = 0;
      for (std::size_t v : comp) top = std::max(top, mdp.color(v));
      if (p->colors.count(top) == 0)
        throw InvalidInput("color " + std::to_string(top) + " recurs but lies outside " + describe(obj));
      return top % 2 == 0;
    }
    if (const auto* r = std::get_if<Rabin>(&obj))
      return std::any_of(r->pairs.begin(), r->pairs.end(), [&](const AcceptancePair& pr) {
        return !holds_somewhere(comp, pr.e) && holds_somewhere(comp, pr.f);
      });
    const auto& st = std::get<Streett>(obj);
    return std::all_of(st.pairs.begin(), st.pairs.end(), [&](const AcceptancePair& pr) {
      return holds_somewhere(comp, pr.e) || !holds_somewhere(comp, pr.f);
    });
  };

  StateMask good(mdp.size(), false);
  for (const auto& comp : bsccs(chain))
    if (winning(comp))
      for (std::size_t v : comp) good[v] = true;
  return hitting_probabilities(chain, good);
}

ValueVector md_value(const FiniteMdp& mdp, const MdStrategy& sigma, const Objective& obj) {
  require_valid(mdp);
  ValueVector out;
  out.backend = Backend::rational;
  out.exact = md_value_index(mdp, to_index(mdp, sigma), obj);
  return out;
}

std::uint64_t episode_seed(std::uint64_t seed, std::uint64_t episode) noexcept {
  // splitmix64 applied twice: once to the seed, once to the mixed episode index.
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ episode);
}

namespace {

/// Per-thread cache that turns the lazy MDP and the strategy into small
/// integer tables, so a simulation step is a couple of lookups.
class Walker {
 public:
  Walker(const CountableMdp& mdp, const AnyStrategy& strategy, const std::optional<StateId>& anchor,
         const StatePredicate& fatal)
      : mdp_(mdp), strategy_(strategy), anchor_(anchor), fatal_(fatal) {}

  struct Node {
    StateId id;
    bool controller = false;
    bool anchor = false;
    bool fatal = false;
    bool forced = false;
    std::vector<std::uint32_t> next;  // random: support; forced controller: the single successor
    std::vector<double> cumulative;
  };

  std::uint32_t intern(const StateId& s) {
    auto [it, fresh] = ids_.emplace(s, static_cast<std::uint32_t>(nodes_.size()));
    if (!fresh) return it->second;
    const std::uint32_t k = it->second;
    nodes_.emplace_back();
    Node node;
    node.id = s;
    node.controller = mdp_.kind(s) == StateKind::controller;
    node.anchor = anchor_ && *anchor_ == s;
    node.fatal = fatal_ && fatal_(s, mdp_.color(s));
    Successors succ = mdp_.successors(s);
    if (succ.infinite() && !node.controller) throw InvalidInput("random state '" + s.str() + "' is infinitely branching");
    if (!succ.infinite()) {
      if (succ.listed.empty()) throw InvalidInput("state '" + s.str() + "' has no successor");
      node.forced = node.controller && succ.listed.size() == 1;
      if (!node.controller || node.forced) {
        std::vector<std::pair<StateId, double>> tmp;
        for (const auto& tr : succ.listed) tmp.emplace_back(tr.to, tr.prob.get_d());
        double acc = 0;
        for (const auto& [t, p] : tmp) {
          acc += node.forced ? 1.0 : p;
          node.cumulative.push_back(acc);
          node.next.push_back(intern(t));
        }
      }
    }
    nodes_[k] = std::move(node);
    return k;
  }

  const Node& node(std::uint32_t k) const { return nodes_[k]; }

  /// Picks the successor of controller state k; throws PreconditionViolation
  /// when the strategy leaves the transition relation.
  std::uint32_t choose(std::uint32_t k, std::uint64_t visits, std::size_t mode, double u) {
    struct Visitor {
      Walker& w;
      std::uint32_t k;
      std::uint64_t visits;
      std::size_t mode;
      double u;
      std::uint32_t operator()(const MdStrategy& s) { return w.md_choice(s, k); }
      std::uint32_t operator()(const CounterStrategy& s) { return w.counter_choice(s, k, visits); }
      std::uint32_t operator()(const Transducer& t) { return w.transducer_choice(t, k, mode, u); }
    };
    return std::visit(Visitor{*this, k, visits, mode, u}, strategy_);
  }

  std::size_t update(const Transducer& t, std::size_t mode, std::uint32_t k, double u) {
    auto key = std::make_pair(mode, k);
    auto it = updates_.find(key);
    if (it == updates_.end()) {
      std::pair<std::vector<std::size_t>, std::vector<double>> table;
      double acc = 0;
      for (const auto& [m, p] : t.update_dist(mode, nodes_[k].id)) {
        acc += p.get_d();
        table.first.push_back(m);
        table.second.push_back(acc);
      }
      it = updates_.emplace(key, std::move(table)).first;
    }
    return it->second.first[pick(it->second.second, u)];
  }

  static std::size_t pick(const std::vector<double>& cumulative, double u) {
    for (std::size_t i = 0; i + 1 < cumulative.size(); ++i)
      if (u < cumulative[i]) return i;
    return cumulative.size() - 1;
  }

 private:
  std::uint32_t checked(std::uint32_t from, const StateId& to) {
    auto key = std::make_pair(from, to);
    auto it = valid_.find(key);
    if (it == valid_.end()) it = valid_.emplace(key, mdp_.is_successor(nodes_[from].id, to)).first;
    if (!it->second)
      throw PreconditionViolation("strategy picks '" + to.str() + "' which is not a successor of '" +
                                  nodes_[from].id.str() + "'");
    return intern(to);
  }

  std::uint32_t md_choice(const MdStrategy& s, std::uint32_t k) {
    auto it = md_.find(k);
    if (it != md_.end()) return it->second;
    const StateId* to = s.choose(nodes_[k].id);
    if (to == nullptr) throw PreconditionViolation("strategy undefined at '" + nodes_[k].id.str() + "'");
    const std::uint32_t t = checked(k, *to);
    md_.emplace(k, t);
    return t;
  }

  std::uint32_t counter_choice(const CounterStrategy& s, std::uint32_t k, std::uint64_t visits) {
    auto key = std::make_pair(visits, k);
    auto it = counter_.find(key);
    if (it != counter_.end()) return it->second;
    const std::uint32_t t = checked(k, s.choose(visits, nodes_[k].id));
    counter_.emplace(key, t);
    return t;
  }

  std::uint32_t transducer_choice(const Transducer& t, std::uint32_t k, std::size_t mode, double u) {
    auto key = std::make_pair(mode, k);
    auto it = succ_.find(key);
    if (it == succ_.end()) {
      std::pair<std::vector<std::uint32_t>, std::vector<double>> table;
      double acc = 0;
      for (const auto& [to, p] : t.successor_dist(mode, nodes_[k].id, mdp_)) {
        acc += p.get_d();
        table.first.push_back(intern(to));
        table.second.push_back(acc);
      }
      it = succ_.emplace(key, std::move(table)).first;
    }
    return it->second.first[pick(it->second.second, u)];
  }

  struct PairHash {
    template <class A, class B>
    std::size_t operator()(const std::pair<A, B>& p) const noexcept {
      return std::hash<A>{}(p.first) * 0x9E3779B97F4A7C15ULL ^ std::hash<B>{}(p.second);
    }
  };

  const CountableMdp& mdp_;
  const AnyStrategy& strategy_;
  std::optional<StateId> anchor_;
  StatePredicate fatal_;
  std::unordered_map<StateId, std::uint32_t> ids_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint32_t, std::uint32_t> md_;
  std::unordered_map<std::pair<std::uint64_t, std::uint32_t>, std::uint32_t, PairHash> counter_;
  std::unordered_map<std::pair<std::size_t, std::uint32_t>, std::pair<std::vector<std::uint32_t>, std::vector<double>>,
                     PairHash>
      succ_;
  std::unordered_map<std::pair<std::size_t, std::uint32_t>, std::pair<std::vector<std::size_t>, std::vector<double>>,
                     PairHash>
      updates_;
  std::unordered_map<std::pair<std::uint32_t, StateId>, bool, PairHash> valid_;
};

struct Tally {
  std::vector<std::uint64_t> cycle;  // E_k counts
  std::uint64_t fatal = 0;
  std::uint64_t aborted = 0;
  std::map<StateId, std::uint64_t> visits;
  std::vector<std::string> diagnostics;
};

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void run_block(const CountableMdp& mdp, const AnyStrategy& strategy, const SimulationOptions& opts,
               const std::optional<StateId>& anchor, const StatePredicate& fatal, std::uint64_t first,
               std::uint64_t last, Tally& tally) {
  Walker w(mdp, strategy, anchor, fatal);
  tally.cycle.assign(opts.cycle_events, 0);
  std::vector<std::uint64_t> seen_in;  // per interned state: 1 + last episode that visited it
  std::vector<char> cycle_hit(opts.cycle_events);
  const Transducer* transducer = std::get_if<Transducer>(&strategy);
  const std::uint32_t start = w.intern(mdp.initial());

  for (std::uint64_t ep = first; ep < last; ++ep) {
    std::mt19937_64 rng(episode_seed(opts.seed, ep));
    std::fill(cycle_hit.begin(), cycle_hit.end(), 0);
    bool fatal_seen = false;
    std::uint32_t cur = start;
    std::uint64_t visits = 0;
    std::size_t mode = transducer ? transducer->initial : 0;
    std::vector<std::uint32_t> touched;

    auto arrive = [&](std::uint32_t k) {
      const auto& n = w.node(k);
      if (seen_in.size() <= k) seen_in.resize(k + 1, 0);
      if (seen_in[k] != ep + 1) {
        seen_in[k] = ep + 1;
        touched.push_back(k);
      }
      if (n.anchor) ++visits;
      if (n.fatal) {
        fatal_seen = true;
        if (visits >= 1 && visits - 1 < cycle_hit.size()) cycle_hit[visits - 1] = 1;
      }
    };

    try {
      arrive(cur);
      for (std::uint64_t step = 0; step < opts.horizon; ++step) {
        const auto& n = w.node(cur);
        std::uint32_t nxt;
        if (n.controller && !n.forced) {
          nxt = w.choose(cur, visits, mode, uniform(rng));
        } else {
          nxt = n.next[Walker::pick(n.cumulative, uniform(rng))];
        }
        if (transducer) mode = w.update(*transducer, mode, cur, uniform(rng));
        cur = nxt;
        arrive(cur);
      }
    } catch (const Error& e) {
      ++tally.aborted;
      if (tally.diagnostics.size() < 8) tally.diagnostics.push_back("episode " + std::to_string(ep) + ": " + e.what());
      continue;
    }
    for (std::size_t k = 0; k < cycle_hit.size(); ++k) tally.cycle[k] += cycle_hit[k];
    tally.fatal += fatal_seen ? 1 : 0;
    for (std::uint32_t k : touched) ++tally.visits[w.node(k).id];
  }
}

EventStat stat(std::string name, std::uint64_t count, std::uint64_t n) {
  EventStat s;
  s.name = std::move(name);
  s.count = count;
  s.frequency = n ? static_cast<double>(count) / static_cast<double>(n) : 0.0;
  s.std_error = n ? std::sqrt(s.frequency * (1.0 - s.frequency) / static_cast<double>(n)) : 0.0;
  return s;
}

}  // namespace

SimulationReport simulate(const CountableMdp& mdp, const AnyStrategy& strategy, const SimulationOptions& opts,
                          const std::optional<StateId>& anchor, const StatePredicate& fatal) {
  if (opts.episodes < 1) throw InvalidInput("episodes must be at least 1");
  if (const auto* t = std::get_if<Transducer>(&strategy)) check_transducer(*t);

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, opts.episodes));
  std::vector<Tally> tallies(threads);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::uint64_t chunk = (opts.episodes + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t first = t * chunk;
    const std::uint64_t last = std::min(opts.episodes, first + chunk);
    auto job = [&, t, first, last] {
      try {
        run_block(mdp, strategy, opts, anchor, fatal, first, last, tallies[t]);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    };
    if (threads == 1)
      job();
    else
      pool.emplace_back(job);
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  Tally total;
  total.cycle.assign(opts.cycle_events, 0);
  for (const auto& t : tallies) {
    for (std::size_t k = 0; k < t.cycle.size(); ++k) total.cycle[k] += t.cycle[k];
    total.fatal += t.fatal;
    total.aborted += t.aborted;
    for (const auto& [s, c] : t.visits) total.visits[s] += c;
    for (const auto& d : t.diagnostics)
      if (total.diagnostics.size() < 8) total.diagnostics.push_back(d);
  }

  SimulationReport rep;
  rep.episodes = opts.episodes;
  rep.horizon = opts.horizon;
  rep.seed = opts.seed;
  const std::uint64_t completed = opts.episodes - total.aborted;
  if (anchor && fatal)
    for (std::size_t k = 0; k < total.cycle.size(); ++k)
      rep.events.push_back(stat("E_" + std::to_string(k), total.cycle[k], completed));
  if (fatal) rep.events.push_back(stat("fatal_within_horizon", total.fatal, completed));
  rep.visits = std::move(total.visits);
  rep.aborted = total.aborted;
  rep.diagnostics = std::move(total.diagnostics);
  return rep;
}

SimulationReport simulate(const GalleryEntry& entry, const AnyStrategy& strategy, const SimulationOptions& opts) {
  return simulate(*entry.mdp, strategy, opts, entry.anchor, entry.fatal);
}

namespace {

struct CycleMass {
  Rational fatal;
  Rational returned;
};

/// Exact mass propagation through one anchor cycle of a counter strategy.
CycleMass analyse_cycle(const GalleryEntry& entry, const CounterStrategy& sigma, std::uint64_t visits) {
  const CountableMdp& mdp = *entry.mdp;
  const StateId& anchor = *entry.anchor;
  CycleMass out;
  // Mass before / after the fatal event was observed in this cycle.
  std::map<StateId, Rational> fresh{{anchor, Rational(1)}}, marked;
  for (int step = 0; step < 1'000'000; ++step) {
    if (fresh.empty() && marked.empty()) return out;
    std::map<StateId, Rational> next_fresh, next_marked;
    auto push = [&](const std::map<StateId, Rational>& layer, bool was_marked) {
      for (const auto& [s, mass] : layer) {
        std::vector<std::pair<StateId, Rational>> succ;
        if (mdp.kind(s) == StateKind::controller) {
          Successors options = mdp.successors(s);
          if (!options.infinite() && options.listed.size() == 1) {
            succ.emplace_back(options.listed.front().to, Rational(1));
          } else {
            StateId t = sigma.choose(visits, s);
            if (!mdp.is_successor(s, t))
              throw PreconditionViolation("counter strategy picks '" + t.str() + "' from '" + s.str() + "'");
            succ.emplace_back(std::move(t), Rational(1));
          }
        } else {
          for (const auto& tr : mdp.successors(s).listed) succ.emplace_back(tr.to, tr.prob);
        }
        for (auto& [t, p] : succ) {
          const Rational m = mass * p;
          const bool is_fatal = entry.fatal(t, mdp.color(t));
          if (is_fatal && !was_marked) out.fatal += m;
          if (is_fatal && entry.fatal_is_absorbing) continue;
          if (t == anchor) {
            out.returned += m;
            continue;
          }
          (was_marked || is_fatal ? next_marked : next_fresh)[t] += m;
        }
      }
    };
    push(fresh, false);
    push(marked, true);
    fresh = std::move(next_fresh);
    marked = std::move(next_marked);
  }
  throw InternalError("anchor cycle analysis did not terminate");
}

}  // namespace

BorelCantelliResult borel_cantelli_sum(const GalleryEntry& entry, const std::string& strategy, unsigned cutoff) {
  std::optional<AnyStrategy> found = find_strategy(entry, strategy);
  if (!found) throw NotFound("entry '" + entry.name + "' has no strategy named '" + strategy + "'");
  const auto* sigma = std::get_if<CounterStrategy>(&*found);
  if (sigma == nullptr || !entry.anchor || !entry.fatal)
    throw InvalidInput("'" + strategy + "' is not a counter strategy with an anchor-cycle analysis on '" + entry.name + "'");
  if (cutoff < 1) throw InvalidInput("cutoff must be at least 1");

  BorelCantelliResult res;
  res.entry = entry.name;
  res.strategy = strategy;
  res.cutoff = cutoff;
  Rational alive = 1;  // probability that cycle k is entered
  bool complementary = true;
  Rational survive = 1;
  std::vector<CycleMass> cycles;
  for (unsigned k = 1; k <= cutoff + 1; ++k) cycles.push_back(analyse_cycle(entry, *sigma, k));
  for (unsigned k = 1; k <= cutoff; ++k) {
    const CycleMass& c = cycles[k - 1];
    res.terms.push_back(c.fatal);
    res.partial_sum += c.fatal;
    res.event_partial_sum += alive * c.fatal;
    alive *= c.returned;
    if (c.returned != 1) res.limit_is_bound = true;
    if (c.fatal + c.returned != 1) complementary = false;
    survive *= Rational(1) - c.fatal;
  }

  // Closed form when the computed terms (plus one lookahead) are exactly geometric.
  const std::size_t m = cycles.size();
  if (m >= 2 && cycles[0].fatal > 0) {
    const Rational ratio = cycles[1].fatal / cycles[0].fatal;
    bool geometric = ratio >= 0 && ratio < 1;
    for (std::size_t k = 1; geometric && k + 1 < m; ++k) geometric = cycles[k + 1].fatal == cycles[k].fatal * ratio;
    if (geometric) {
      res.limit = cycles[0].fatal / (Rational(1) - ratio);
      if (entry.fatal_is_absorbing && complementary) {
        const Rational tail = cycles[m - 1].fatal / (Rational(1) - ratio);
        res.survival_lower_bound = survive * (Rational(1) - tail);
      }
    }
  }
  return res;
}

namespace {

struct AnchorAnalysis {
  Rational fatal;
  Rational returned;
  std::size_t explored = 0;
  bool capped = false;
};

AnchorAnalysis analyse_anchor(const GalleryEntry& entry, const Transducer& t, std::size_t mode, std::size_t cap,
                              bool reverse_order) {
  const CountableMdp& mdp = *entry.mdp;
  const StateId& anchor = *entry.anchor;
  using Key = std::pair<std::size_t, StateId>;

  // Index 0: fatal, 1..|M|: return in mode m-1, |M|+1: open frontier, then interior nodes.
  const std::size_t modes = t.mode_count();
  const std::size_t kFatal = 0, kOpen = modes + 1, kFirst = modes + 2;
  std::map<Key, std::size_t> index;
  std::vector<Key> nodes;
  SparseChain chain;
  chain.rows.resize(kFirst);
  for (std::size_t i = 0; i < kFirst; ++i) chain.rows[i] = {{i, Rational(1)}};

  AnchorAnalysis out;
  auto node_of = [&](std::size_t m, const StateId& s) -> std::size_t {
    if (entry.fatal(s, mdp.color(s))) return kFatal;
    auto [it, fresh] = index.emplace(Key{m, s}, kFirst + nodes.size());
    if (fresh) {
      nodes.push_back({m, s});
      chain.rows.emplace_back();
    }
    return it->second;
  };

  nodes.push_back({mode, anchor});
  index.emplace(Key{mode, anchor}, kFirst);
  chain.rows.emplace_back();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto [m, s] = nodes[k];
    const std::size_t row = kFirst + k;
    if (k >= cap) {
      out.capped = true;
      chain.rows[row] = {{kOpen, Rational(1)}};
      continue;
    }
    Distribution<StateId> next;
    if (mdp.kind(s) == StateKind::controller) {
      Successors succ = mdp.successors(s);
      if (!succ.infinite() && succ.listed.size() == 1)
        next = {{succ.listed.front().to, Rational(1)}};
      else
        next = t.successor_dist(m, s, mdp);
    } else {
      for (const auto& tr : mdp.successors(s).listed) next.emplace_back(tr.to, tr.prob);
    }
    std::map<std::size_t, Rational> joint;
    for (const auto& [to, p] : next)
      for (const auto& [m2, q] : t.update_dist(m, s)) {
        std::size_t target;
        if (entry.fatal(to, mdp.color(to)))
          target = kFatal;
        else if (to == anchor)
          target = 1 + m2;
        else
          target = node_of(m2, to);
        joint[target] += p * q;
      }
    std::vector<std::pair<std::size_t, Rational>> r(joint.begin(), joint.end());
    chain.rows[row] = std::move(r);
  }
  out.explored = nodes.size();

  std::vector<std::size_t> order;
  if (reverse_order)
    for (std::size_t i = chain.size(); i-- > 0;) order.push_back(i);

  std::vector<bool> fatal(chain.size(), false);
  fatal[kFatal] = true;
  out.fatal = hitting_probabilities(chain, fatal, order)[kFirst];
  for (std::size_t m2 = 0; m2 < modes; ++m2) {
    std::vector<bool> ret(chain.size(), false);
    ret[1 + m2] = true;
    out.returned += hitting_probabilities(chain, ret, order)[kFirst];
  }
  return out;
}

}  // namespace

/// Modes in which plays started at (mode, anchor) come back to the anchor,
/// passing through fatal states unless those are absorbing.
std::set<std::size_t> anchor_modes_reached(const GalleryEntry& entry, const Transducer& t, std::size_t mode,
                                           std::size_t cap, bool& capped) {
  const CountableMdp& mdp = *entry.mdp;
  const StateId& anchor = *entry.anchor;
  using Key = std::pair<std::size_t, StateId>;
  std::set<Key> seen{{mode, anchor}};
  std::vector<Key> queue{{mode, anchor}};
  std::set<std::size_t> out;
  for (std::size_t k = 0; k < queue.size(); ++k) {
    if (k >= cap) {
      capped = true;
      break;
    }
    const auto [m, s] = queue[k];
    std::vector<StateId> next;
    if (mdp.kind(s) == StateKind::controller) {
      Successors succ = mdp.successors(s);
      if (!succ.infinite() && succ.listed.size() == 1)
        next.push_back(succ.listed.front().to);
      else
        for (const auto& [to, p] : t.successor_dist(m, s, mdp)) next.push_back(to);
    } else {
      for (const auto& tr : mdp.successors(s).listed) next.push_back(tr.to);
    }
    for (const auto& [m2, q] : t.update_dist(m, s))
      for (const auto& to : next) {
        if (to == anchor) {
          out.insert(m2);
          continue;
        }
        if (entry.fatal_is_absorbing && entry.fatal(to, mdp.color(to))) continue;
        if (seen.insert({m2, to}).second) queue.push_back({m2, to});
      }
  }
  return out;
}

FutilityCertificate fr_futility(const GalleryEntry& entry, const Transducer& t, std::size_t max_states) {
  if (!entry.anchor || !entry.fatal) throw InvalidInput("entry '" + entry.name + "' has no anchor-cycle structure");
  check_transducer(t);
  if (entry.mdp->initial() != *entry.anchor)
    throw InvalidInput("futility analysis expects plays to start at the anchor state");

  FutilityCertificate cert;
  cert.entry = entry.name;
  std::set<std::size_t> pending{t.initial}, done;
  bool capped = false;
  std::map<std::size_t, AnchorAnalysis> results;
  while (!pending.empty()) {
    const std::size_t m = *pending.begin();
    pending.erase(pending.begin());
    if (!done.insert(m).second) continue;
    AnchorAnalysis a = analyse_anchor(entry, t, m, max_states, false);
    const AnchorAnalysis check = analyse_anchor(entry, t, m, max_states, true);
    if (check.fatal != a.fatal || check.returned != a.returned)
      throw InternalError("hitting probabilities differ between elimination orders");
    capped = capped || a.capped;
    cert.product_states += a.explored;
    for (std::size_t m2 : anchor_modes_reached(entry, t, m, max_states, capped))
      if (!done.count(m2)) pending.insert(m2);
    if (a.capped)
      for (std::size_t m2 = 0; m2 < t.mode_count(); ++m2)
        if (!done.count(m2)) pending.insert(m2);
    results.emplace(m, std::move(a));
  }

  bool first = true;
  for (const auto& [m, a] : results) {
    cert.anchors.push_back({t.modes[m], a.fatal, a.returned});
    if (first || a.fatal < cert.c) cert.c = a.fatal;
    first = false;
  }
  if (cert.c == 0)
    throw PreconditionViolation("cycle bound c = 0 on '" + entry.name + "': some anchor mode never risks the fatal event");

  cert.conclusion = entry.claims.value("futility_conclusion", std::string("fatal event recurs almost surely"));
  if (capped)
    cert.note = "exploration capped at " + std::to_string(max_states) +
                " product states per anchor mode; unexplored mass counted as non-fatal, all modes analysed";
  if (entry.fatal_is_absorbing && entry.name == "fig2b") {
    cert.case_split = true;
    cert.note += std::string(cert.note.empty() ? "" : "; ") +
                 "case split: with infinitely many anchor returns b is reached almost surely (bound c); "
                 "plays that stop returning see color 2 only finitely often. Per-mode return probabilities are listed.";
  }
  return cert;
}

}  // namespace cmdp
