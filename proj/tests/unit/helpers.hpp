#pragma once

#include <cmdp/mdp.hpp>
#include <cmdp/mdp_ops.hpp>
#include <cmdp/rational.hpp>

#include <initializer_list>
#include <utility>
#include <vector>

namespace testing {

using cmdp::Color;
using cmdp::Rational;
using cmdp::StateId;
using cmdp::StateKind;
using cmdp::StateSpec;

inline StateSpec ctrl(const char* id, std::initializer_list<const char*> succ, Color color = 0) {
  StateSpec s{id, StateKind::controller, color, {}};
  for (const char* t : succ) s.successors.push_back({t, Rational(0)});
  return s;
}

inline StateSpec rnd(const char* id, std::initializer_list<std::pair<const char*, Rational>> succ, Color color = 0) {
  StateSpec s{id, StateKind::random, color, {}};
  for (const auto& [t, p] : succ) s.successors.push_back({t, p});
  return s;
}

inline StateSpec loop(const char* id, Color color = 0) { return ctrl(id, {id}, color); }

inline cmdp::TruncationOptions at_radius(std::size_t radius, cmdp::Boundary b = cmdp::Boundary::pessimistic) {
  cmdp::TruncationOptions opts;
  opts.radius = radius;
  opts.boundary = b;
  return opts;
}

}  // namespace testing
