#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ratv/core/arena.hpp"
#include "ratv/graph.hpp"
#include "ratv/lasso_search.hpp"
#include "ratv/ltl2buchi.hpp"
#include "ratv/rational.hpp"

namespace ratv {

enum class Relation { LessEq, GreaterEq, Equal };

struct LpRow {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Relation rel = Relation::GreaterEq;
  Rational rhs;
  std::string family;  // which constraint family produced the row, for diagnostics
};

struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<LpRow> rows;

  void add(std::vector<std::pair<std::size_t, Rational>> terms, Relation rel, Rational rhs, std::string family) {
    rows.push_back({std::move(terms), rel, std::move(rhs), std::move(family)});
  }
};

inline bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_vars) return false;
  for (const auto& r : lp.rows) {
    Rational lhs;
    for (const auto& [v, c] : r.terms) lhs += c * x[v];
    if (r.rel == Relation::LessEq && lhs > r.rhs) return false;
    if (r.rel == Relation::GreaterEq && lhs < r.rhs) return false;
    if (r.rel == Relation::Equal && lhs != r.rhs) return false;
  }
  return true;
}

/// Exact phase-1 simplex with Bland's rule. Rows of the form c*x >= 0 (c > 0) become sign
/// bounds; other variables are free and split into two non-negative columns.
inline std::optional<std::vector<Rational>> feasible(const LinearProgram& lp) {
  std::size_t nv = lp.num_vars;
  std::vector<char> nonneg(nv, 0);
  std::vector<const LpRow*> rows;
  for (const auto& r : lp.rows) {
    if (r.terms.size() == 1 && r.rhs.sign() == 0) {
      int s = r.terms[0].second.sign();
      if ((r.rel == Relation::GreaterEq && s > 0) || (r.rel == Relation::LessEq && s < 0)) {
        nonneg[r.terms[0].first] = 1;
        continue;
      }
    }
    rows.push_back(&r);
  }
  std::vector<std::size_t> pos_col(nv), neg_col(nv, npos);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    pos_col[v] = cols++;
    if (!nonneg[v]) neg_col[v] = cols++;
  }
  std::size_t m = rows.size();
  std::size_t slack0 = cols;
  for (const LpRow* r : rows)
    if (r->rel != Relation::Equal) ++cols;
  std::size_t art0 = cols;
  cols += m;
  std::vector<std::vector<mpq_class>> T(m, std::vector<mpq_class>(cols + 1, 0));
  std::size_t slack = slack0;
  for (std::size_t i = 0; i < m; ++i) {
    const LpRow& r = *rows[i];
    for (const auto& [v, c] : r.terms) {
      T[i][pos_col[v]] += c.get();
      if (neg_col[v] != npos) T[i][neg_col[v]] -= c.get();
    }
    if (r.rel == Relation::LessEq) T[i][slack++] = 1;
    if (r.rel == Relation::GreaterEq) T[i][slack++] = -1;
    T[i][cols] = r.rhs.get();
    if (sgn(T[i][cols]) < 0)
      for (auto& x : T[i]) x = -x;
    T[i][art0 + i] = 1;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = art0 + i;
  std::vector<mpq_class> cost(cols + 1, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < art0 || j == cols) cost[j] -= T[i][j];
  while (true) {
    std::size_t enter = npos;
    for (std::size_t j = 0; j < art0; ++j)
      if (sgn(cost[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == npos) break;
    std::size_t leave = npos;
    mpq_class best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(T[i][enter]) <= 0) continue;
      mpq_class ratio = T[i][cols] / T[i][enter];
      if (leave == npos || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == npos) throw std::logic_error("phase-1 simplex is unbounded");
    mpq_class piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(T[i][enter]) == 0) continue;
      mpq_class f = T[i][enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (sgn(T[leave][j]) != 0) T[i][j] -= f * T[leave][j];
    }
    if (sgn(cost[enter]) != 0) {
      mpq_class f = cost[enter];
      for (std::size_t j = 0; j <= cols; ++j)
        if (sgn(T[leave][j]) != 0) cost[j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  if (sgn(cost[cols]) != 0) return std::nullopt;
  std::vector<mpq_class> val(cols, 0);
  for (std::size_t i = 0; i < m; ++i) val[basis[i]] = T[i][cols];
  std::vector<Rational> x(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    mpq_class r = val[pos_col[v]];
    if (neg_col[v] != npos) r -= val[neg_col[v]];
    x[v] = Rational(r);
  }
  return x;
}

// ---------------------------------------------------------------------------
// Cycle-flow programs

/// Graph with per-dimension vertex weights (already shifted) and marked vertex sets.
struct WeightedEdgeGraph {
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (src, trg)
  std::vector<std::vector<Rational>> weight;              // [dimension][vertex]
  std::vector<std::vector<char>> theta;                   // sets to visit
  std::vector<std::vector<char>> psi;                     // sets to avoid, one program each
};

namespace detail {

inline void add_common_rows(const WeightedEdgeGraph& g, LinearProgram& lp) {
  std::size_t E = g.edges.size();
  lp.num_vars = E;
  for (std::size_t e = 0; e < E; ++e) lp.add({{e, Rational(1)}}, Relation::GreaterEq, 0, "nonneg");
  std::vector<std::pair<std::size_t, Rational>> all;
  for (std::size_t e = 0; e < E; ++e) all.emplace_back(e, Rational(1));
  lp.add(all, Relation::GreaterEq, 1, "total");
  for (const auto& w : g.weight) {
    std::vector<std::pair<std::size_t, Rational>> t;
    for (std::size_t e = 0; e < E; ++e)
      if (w[g.edges[e].first].sign() != 0) t.emplace_back(e, w[g.edges[e].first]);
    lp.add(t, Relation::GreaterEq, 0, "weight");
  }
}

inline void add_flow_rows(const WeightedEdgeGraph& g, LinearProgram& lp) {
  for (std::size_t v = 0; v < g.num_vertices; ++v) {
    std::vector<std::pair<std::size_t, Rational>> t;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      int c = (g.edges[e].second == v ? 1 : 0) - (g.edges[e].first == v ? 1 : 0);
      if (c) t.emplace_back(e, Rational(c));
    }
    if (!t.empty()) lp.add(t, Relation::Equal, 0, "flow");
  }
}

inline std::vector<std::pair<std::size_t, Rational>> usage(const WeightedEdgeGraph& g, const std::vector<char>& set) {
  std::vector<std::pair<std::size_t, Rational>> t;
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (set[g.edges[e].first]) t.emplace_back(e, Rational(1));
  return t;
}

}  // namespace detail

/// Every theta set is used at least once per unit of flow.
inline LinearProgram build_lp_theta(const WeightedEdgeGraph& g) {
  LinearProgram lp;
  detail::add_common_rows(g, lp);
  for (const auto& th : g.theta) lp.add(detail::usage(g, th), Relation::GreaterEq, 1, "visit");
  detail::add_flow_rows(g, lp);
  return lp;
}

/// The l-th psi set carries no flow.
inline LinearProgram build_lp_psi(const WeightedEdgeGraph& g, std::size_t l) {
  LinearProgram lp;
  detail::add_common_rows(g, lp);
  lp.add(detail::usage(g, g.psi[l]), Relation::Equal, 0, "avoid");
  detail::add_flow_rows(g, lp);
  return lp;
}

// ---------------------------------------------------------------------------
// Mean-payoff lasso search

struct MpSearchResult {
  bool feasible = false;
  std::optional<Lasso> lasso;
  bool witness_gap = false;  // feasible, but no connected support was found
};

namespace detail {

/// Euler circuit of the multigraph with `count[e]` copies of each edge, as a vertex cycle
/// starting at `from`, with the edge index used to leave each vertex.
inline std::vector<std::pair<std::size_t, std::size_t>> euler_circuit(
    const std::vector<std::pair<std::size_t, std::size_t>>& edges, std::vector<mpz_class> count, std::size_t from,
    std::size_t num_vertices) {
  std::vector<std::vector<std::size_t>> out(num_vertices);
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (count[e] > 0) out[edges[e].first].push_back(e);
  std::vector<std::size_t> next(num_vertices, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{from, npos}}, circuit;
  while (!stack.empty()) {
    std::size_t v = stack.back().first;
    while (next[v] < out[v].size() && count[out[v][next[v]]] == 0) ++next[v];
    if (next[v] < out[v].size()) {
      std::size_t e = out[v][next[v]];
      --count[e];
      stack.push_back({edges[e].second, e});
    } else {
      circuit.push_back(stack.back());
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  // circuit[k] = (vertex, edge entering it); convert to (vertex, edge leaving it)
  std::vector<std::pair<std::size_t, std::size_t>> cyc;
  for (std::size_t k = 0; k + 1 < circuit.size(); ++k) cyc.push_back({circuit[k].first, circuit[k + 1].second});
  return cyc;
}

/// Weakly connected components of the support of x.
inline std::vector<std::vector<std::size_t>> support_components(const WeightedEdgeGraph& g,
                                                                 const std::vector<Rational>& x) {
  std::vector<std::size_t> parent(g.num_vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    if (x[e].sign() > 0) parent[find(g.edges[e].first)] = find(g.edges[e].second);
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> index(g.num_vertices, npos);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (x[e].sign() <= 0) continue;
    std::size_t r = find(g.edges[e].first);
    if (index[r] == npos) {
      index[r] = comps.size();
      comps.emplace_back();
    }
    comps[index[r]].push_back(e);
  }
  return comps;
}

/// Whether the flow x (a circulation) meets the weight and usage rows of the program.
inline bool flow_ok(const WeightedEdgeGraph& g, const std::vector<Rational>& x, bool theta_program) {
  Rational total;
  for (std::size_t e = 0; e < g.edges.size(); ++e) total += x[e];
  if (total.sign() <= 0) return false;
  for (const auto& w : g.weight) {
    Rational s;
    for (std::size_t e = 0; e < g.edges.size(); ++e) s += w[g.edges[e].first] * x[e];
    if (s.sign() < 0) return false;
  }
  if (theta_program)
    for (const auto& th : g.theta) {
      Rational s;
      for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (th[g.edges[e].first]) s += x[e];
      if (s.sign() <= 0) return false;
    }
  return true;
}

/// A flow with connected support satisfying the program, derived from the feasible x, if one is found.
inline std::optional<std::vector<Rational>> connected_flow(const WeightedEdgeGraph& g, const std::vector<Rational>& x,
                                                           bool theta_program) {
  auto comps = support_components(g, x);
  if (comps.size() == 1) return x;
  for (const auto& comp : comps) {
    std::vector<Rational> y(g.edges.size());
    for (std::size_t e : comp) y[e] = x[e];
    if (flow_ok(g, y, theta_program)) return y;
  }
  // Add a small circulation covering every edge of the (strongly connected) graph.
  Adjacency adj(g.num_vertices);
  for (const auto& [s, t] : g.edges) adj[s].push_back(t);
  std::vector<Rational> cover(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [s, t] = g.edges[e];
    auto back = bfs_path(adj, t, [&](std::size_t v) { return v == s; });
    if (!back) return std::nullopt;
    cover[e] += 1;
    for (std::size_t k = 0; k + 1 < back->size(); ++k) {
      for (std::size_t f = 0; f < g.edges.size(); ++f)
        if (g.edges[f].first == (*back)[k] && g.edges[f].second == (*back)[k + 1]) {
          cover[f] += 1;
          break;
        }
    }
  }
  Rational eps(1);
  for (const auto& w : g.weight) {
    Rational wx, wy;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      wx += w[g.edges[e].first] * x[e];
      wy += w[g.edges[e].first] * cover[e];
    }
    if (wy.sign() >= 0) continue;
    if (wx.sign() == 0) return std::nullopt;
    eps = min(eps, wx / -wy);
  }
  std::vector<Rational> z(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) z[e] = x[e] + eps * cover[e];
  if (flow_ok(g, z, theta_program)) return z;
  return std::nullopt;
}

}  // namespace detail

/// Specification for the cycle search: a GR(1) formula or a Buchi automaton (as one theta-like set).
using CycleSpec = std::variant<Gr1Formula, BuchiAutomaton>;

/// Searches a lasso from the start of `ra` whose cycle has average >= 0 in every dimension of
/// `dims` ([dimension][state], already shifted) and satisfies `spec`. Each program runs per
/// reachable SCC (for psi programs, per SCC after deleting the psi vertices).
inline MpSearchResult mp_lasso_search(const Arena& arena, const RestrictedArena& ra,
                                      const std::vector<std::vector<Rational>>& dims, const CycleSpec& spec) {
  std::optional<BuchiAutomaton> buchi;
  if (spec.index() == 1) buchi = std::get<1>(spec);
  StreettProduct p = build_streett_product(arena, ra, {}, buchi);
  std::size_t n = p.size();
  std::vector<std::vector<char>> theta, psi;
  if (buchi) {
    theta.push_back(p.pairs[0].C);
  } else {
    const Gr1Formula& g = std::get<0>(spec);
    auto mark = [&](const BoolExpr& b) {
      std::vector<char> m(n);
      for (std::size_t v = 0; v < n; ++v) m[v] = eval_bool(b, arena.labels[p.state[v]]);
      return m;
    };
    for (const auto& t : g.consequents) theta.push_back(mark(t));
    for (const auto& s : g.antecedents) psi.push_back(mark(s));
  }

  MpSearchResult result;
  auto try_component = [&](const std::vector<std::size_t>& comp, std::optional<std::size_t> l) -> bool {
    std::vector<std::size_t> local(n, npos);
    for (std::size_t k = 0; k < comp.size(); ++k) local[comp[k]] = k;
    WeightedEdgeGraph g;
    g.num_vertices = comp.size();
    std::vector<std::pair<std::size_t, std::size_t>> global_edge;  // (node, adjacency slot)
    for (std::size_t v : comp)
      for (std::size_t k = 0; k < p.adj[v].size(); ++k)
        if (local[p.adj[v][k]] != npos) {
          g.edges.push_back({local[v], local[p.adj[v][k]]});
          global_edge.push_back({v, k});
        }
    if (g.edges.empty()) return false;
    for (const auto& d : dims) {
      std::vector<Rational> w(comp.size());
      for (std::size_t k = 0; k < comp.size(); ++k) w[k] = d[p.state[comp[k]]];
      g.weight.push_back(std::move(w));
    }
    auto restrict_set = [&](const std::vector<char>& s) {
      std::vector<char> r(comp.size());
      for (std::size_t k = 0; k < comp.size(); ++k) r[k] = s[comp[k]];
      return r;
    };
    for (const auto& t : theta) g.theta.push_back(restrict_set(t));
    for (const auto& s : psi) g.psi.push_back(restrict_set(s));
    LinearProgram lp = l ? build_lp_psi(g, *l) : build_lp_theta(g);
    auto x = feasible(lp);
    if (!x) return false;
    result.feasible = true;
    auto flow = detail::connected_flow(g, *x, !l);
    if (!flow) {
      result.witness_gap = true;  // keep looking for a component with a connected witness
      return false;
    }
    mpz_class scale = common_denominator(*flow);
    std::vector<mpz_class> count(g.edges.size());
    mpz_class gcd = 0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      count[e] = (*flow)[e].num() * (scale / (*flow)[e].den());
      mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), count[e].get_mpz_t());
    }
    for (auto& c : count) c /= gcd;
    std::size_t from = npos;
    for (std::size_t e = 0; e < g.edges.size() && from == npos; ++e)
      if (count[e] > 0) from = g.edges[e].first;
    auto circuit = detail::euler_circuit(g.edges, count, from, g.num_vertices);
    auto pre = bfs_path(p.adj, 0, [&](std::size_t v) { return v == comp[from]; });
    Lasso lasso;
    for (std::size_t k = 0; k + 1 < pre->size(); ++k) {
      std::size_t v = (*pre)[k], w = (*pre)[k + 1];
      std::size_t slot = std::find(p.adj[v].begin(), p.adj[v].end(), w) - p.adj[v].begin();
      lasso.prefix.push_back({p.state[v], p.edge_profile[v][slot]});
    }
    for (const auto& [v, e] : circuit) {
      auto [node, slot] = global_edge[e];
      lasso.cycle.push_back({p.state[node], p.edge_profile[node][slot]});
    }
    result.lasso = std::move(lasso);
    result.witness_gap = false;
    return true;
  };

  std::vector<char> reach = reachable(p.adj, 0);
  auto order = [&](std::vector<std::vector<std::size_t>> comps) {
    std::reverse(comps.begin(), comps.end());
    return comps;
  };
  for (const auto& comp : order(sccs(p.adj, reach))) {
    if (!is_cyclic(p.adj, comp)) continue;
    if (try_component(comp, std::nullopt)) return result;
  }
  for (std::size_t l = 0; l < psi.size(); ++l) {
    std::vector<char> keep(n);
    for (std::size_t v = 0; v < n; ++v) keep[v] = reach[v] && !psi[l][v];
    for (const auto& comp : order(sccs(p.adj, keep))) {
      if (!is_cyclic(p.adj, comp)) continue;
      if (try_component(comp, l)) return result;
    }
  }
  return result;
}

}  // namespace ratv
