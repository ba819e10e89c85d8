#pragma once

#include <cstddef>
#include <vector>

namespace cmdp::detail {

using Adjacency = std::vector<std::vector<std::size_t>>;

/// Iterative Tarjan. Only vertices with alive[v] (all if empty) and edges
/// between alive vertices are considered. Components come out sinks first.
std::vector<std::vector<std::size_t>> tarjan(const Adjacency& adj, const std::vector<bool>& alive = {});

/// Vertices that can reach `target` along edges of `adj` (target included).
std::vector<bool> backward_reach(const Adjacency& adj, const std::vector<bool>& target);

}  // namespace cmdp::detail
