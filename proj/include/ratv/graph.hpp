#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

namespace ratv {

using Adjacency = std::vector<std::vector<std::size_t>>;

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Strongly connected components of the subgraph induced by `alive` (all nodes if empty).
/// Components come out in reverse topological order (Tarjan), nodes sorted inside each.
inline std::vector<std::vector<std::size_t>> sccs(const Adjacency& adj, const std::vector<char>& alive = {}) {
  std::size_t n = adj.size();
  auto live = [&](std::size_t v) { return alive.empty() || alive[v]; };
  std::vector<std::size_t> index(n, npos), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;
  struct Frame {
    std::size_t v, edge;
  };
  std::vector<Frame> call;
  for (std::size_t root = 0; root < n; ++root) {
    if (!live(root) || index[root] != npos) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.edge < adj[f.v].size()) {
        std::size_t w = adj[f.v][f.edge++];
        if (!live(w)) continue;
        if (index[w] == npos) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

/// A component carries a cycle iff it has two nodes or a self-loop.
inline bool is_cyclic(const Adjacency& adj, const std::vector<std::size_t>& comp) {
  if (comp.size() > 1) return true;
  const auto& s = adj[comp[0]];
  return std::find(s.begin(), s.end(), comp[0]) != s.end();
}

inline std::vector<char> reachable(const Adjacency& adj, std::size_t from, const std::vector<char>& alive = {}) {
  std::vector<char> seen(adj.size(), 0);
  if (!alive.empty() && !alive[from]) return seen;
  std::vector<std::size_t> work{from};
  seen[from] = 1;
  while (!work.empty()) {
    std::size_t v = work.back();
    work.pop_back();
    for (std::size_t w : adj[v])
      if (!seen[w] && (alive.empty() || alive[w])) {
        seen[w] = 1;
        work.push_back(w);
      }
  }
  return seen;
}

/// Shortest node path from `from` to the first node satisfying `goal` (inclusive at both ends),
/// moving only through `alive` nodes. With `nonempty`, the path uses at least one edge.
template <typename Goal>
std::optional<std::vector<std::size_t>> bfs_path(const Adjacency& adj, std::size_t from, Goal&& goal,
                                                 const std::vector<char>& alive = {}, bool nonempty = false) {
  std::size_t n = adj.size();
  std::vector<std::size_t> parent(n, npos);
  std::vector<char> seen(n, 0);
  std::deque<std::size_t> queue;
  auto finish = [&](std::size_t t, std::size_t last) {
    std::vector<std::size_t> path{t};
    for (std::size_t v = last; v != npos; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
  };
  if (!nonempty && goal(from)) return std::vector<std::size_t>{from};
  seen[from] = 1;
  queue.push_back(from);
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[v]) {
      if (!alive.empty() && !alive[w]) continue;
      if (goal(w)) return finish(w, v);
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  return std::nullopt;
}

}  // namespace ratv
