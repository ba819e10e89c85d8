#include "graph.hpp"

#include <cmdp/chain.hpp>
#include <cmdp/errors.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace cmdp {

namespace detail {

std::vector<std::vector<std::size_t>> tarjan(const Adjacency& adj, const std::vector<bool>& alive) {
  const std::size_t n = adj.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  auto is_alive = [&](std::size_t v) { return alive.empty() || alive[v]; };

  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next_edge;
  };
  std::vector<Frame> call;

  for (std::size_t root = 0; root < n; ++root) {
    if (!is_alive(root) || index[root] != unvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const std::size_t v = f.v;
      if (f.next_edge < adj[v].size()) {
        const std::size_t w = adj[v][f.next_edge++];
        if (!is_alive(w)) continue;
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
    }
  }
  return out;
}

std::vector<bool> backward_reach(const Adjacency& adj, const std::vector<bool>& target) {
  const std::size_t n = adj.size();
  Adjacency rev(n);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w : adj[v]) rev[w].push_back(v);
  std::vector<bool> seen(target);
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v)
    if (seen[v]) queue.push_back(v);
  while (!queue.empty()) {
    std::size_t w = queue.front();
    queue.pop_front();
    for (std::size_t v : rev[w])
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
  }
  return seen;
}

}  // namespace detail

namespace {

detail::Adjacency adjacency(const SparseChain& c) {
  detail::Adjacency adj(c.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (const auto& [j, p] : c.rows[i]) adj[i].push_back(j);
  return adj;
}

}  // namespace

SparseChain chain_of(const FiniteMdp& chain) {
  if (!chain.is_chain()) throw PreconditionViolation("expected a Markov chain (no controller states)");
  SparseChain c;
  c.rows.resize(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (const auto& e : chain.edges(i)) {
      if (e.target == FiniteMdp::npos) throw InvalidInput("chain edge to an unknown state at '" + chain.id(i).str() + "'");
      c.rows[i].emplace_back(e.target, e.prob);
    }
  }
  return c;
}

SparseChain induced_chain(const FiniteMdp& mdp, const std::vector<std::size_t>& sigma) {
  SparseChain c;
  c.rows.resize(mdp.size());
  for (std::size_t i = 0; i < mdp.size(); ++i) {
    if (mdp.is_controller(i)) {
      if (i >= sigma.size() || sigma[i] == FiniteMdp::npos)
        throw PreconditionViolation("strategy undefined at controller state '" + mdp.id(i).str() + "'");
      c.rows[i].emplace_back(sigma[i], Rational(1));
    } else {
      for (const auto& e : mdp.edges(i)) c.rows[i].emplace_back(e.target, e.prob);
    }
  }
  return c;
}

std::vector<bool> can_reach(const SparseChain& c, const std::vector<bool>& target) {
  return detail::backward_reach(adjacency(c), target);
}

std::vector<Rational> hitting_probabilities(const SparseChain& c, const std::vector<bool>& target,
                                            const std::vector<std::size_t>& order) {
  const std::size_t n = c.size();
  std::vector<Rational> x(n, Rational(0));
  const std::vector<bool> live = can_reach(c, target);

  std::vector<std::size_t> local(n, FiniteMdp::npos);
  std::vector<std::size_t> unknowns;
  for (std::size_t i = 0; i < n; ++i) {
    if (target[i])
      x[i] = 1;
    else if (live[i]) {
      local[i] = unknowns.size();
      unknowns.push_back(i);
    }
  }
  const std::size_t m = unknowns.size();
  if (m == 0) return x;

  // (I - Q) x = b over the unknowns, as sparse rows keyed by local column.
  std::vector<std::map<std::size_t, Rational>> rows(m);
  std::vector<Rational> rhs(m, Rational(0));
  std::vector<std::set<std::size_t>> col(m);
  for (std::size_t r = 0; r < m; ++r) {
    auto& row = rows[r];
    row[r] += 1;
    for (const auto& [j, p] : c.rows[unknowns[r]]) {
      if (target[j])
        rhs[r] += p;
      else if (local[j] != FiniteMdp::npos)
        row[local[j]] -= p;
    }
    for (auto it = row.begin(); it != row.end();) {
      if (it->second == 0) {
        it = row.erase(it);
      } else {
        col[it->first].insert(r);
        ++it;
      }
    }
  }

  std::vector<std::size_t> pivots;
  pivots.reserve(m);
  if (order.empty()) {
    pivots.resize(m);
    std::iota(pivots.begin(), pivots.end(), 0);
  } else {
    for (std::size_t i : order)
      if (i < n && local[i] != FiniteMdp::npos) pivots.push_back(local[i]);
    if (pivots.size() != m) throw InvalidInput("elimination order is not a permutation of the chain states");
  }

  std::vector<bool> done(m, false);
  for (std::size_t k : pivots) {
    auto pit = rows[k].find(k);
    if (pit == rows[k].end() || pit->second == 0)
      throw InternalError("singular hitting-probability system at state index " + std::to_string(unknowns[k]));
    const Rational pivot = pit->second;
    done[k] = true;
    std::vector<std::size_t> touched(col[k].begin(), col[k].end());
    for (std::size_t r : touched) {
      if (r == k || done[r]) continue;
      auto& row = rows[r];
      const Rational factor = row.at(k) / pivot;
      for (const auto& [j, a] : rows[k]) {
        Rational& cell = row[j];
        const bool was_zero = (cell == 0);
        cell -= factor * a;
        if (cell == 0) {
          row.erase(j);
          col[j].erase(r);
        } else if (was_zero) {
          col[j].insert(r);
        }
      }
      rhs[r] -= factor * rhs[k];
    }
  }

  std::vector<Rational> sol(m);
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const std::size_t k = *it;
    Rational acc = rhs[k];
    Rational diag;
    for (const auto& [j, a] : rows[k]) {
      if (j == k)
        diag = a;
      else
        acc -= a * sol[j];
    }
    sol[k] = acc / diag;
  }
  for (std::size_t r = 0; r < m; ++r) x[unknowns[r]] = sol[r];
  return x;
}

std::vector<std::vector<std::size_t>> sccs(const SparseChain& c) { return detail::tarjan(adjacency(c)); }

std::vector<std::vector<std::size_t>> bsccs(const SparseChain& c) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> comp_of(c.size());
  auto all = sccs(c);
  for (std::size_t k = 0; k < all.size(); ++k)
    for (std::size_t v : all[k]) comp_of[v] = k;
  for (std::size_t k = 0; k < all.size(); ++k) {
    bool bottom = true;
    for (std::size_t v : all[k])
      for (const auto& [w, p] : c.rows[v])
        if (comp_of[w] != k) bottom = false;
    if (bottom) out.push_back(all[k]);
  }
  return out;
}

}  // namespace cmdp
