#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "ratv/core/arena.hpp"
#include "ratv/formula.hpp"
#include "ratv/graph.hpp"

namespace ratv {

/// Conjunction of literals; the empty guard is true.
struct Guard {
  std::vector<AtomId> pos, neg;

  bool holds(const std::vector<bool>& labels) const {
    for (AtomId a : pos)
      if (a >= labels.size() || !labels[a]) return false;
    for (AtomId a : neg)
      if (a < labels.size() && labels[a]) return false;
    return true;
  }

  BoolExpr expr() const {
    std::optional<BoolExpr> e;
    auto add = [&](BoolExpr lit) { e = e ? BoolExpr::conjunction(*e, lit) : lit; };
    for (AtomId a : pos) add(BoolExpr::atom(a));
    for (AtomId a : neg) add(BoolExpr::negation(BoolExpr::atom(a)));
    return e.value_or(BoolExpr::top());
  }

  friend auto operator<=>(const Guard&, const Guard&) = default;
};

struct BuchiEdge {
  std::size_t target;
  Guard guard;
  friend auto operator<=>(const BuchiEdge&, const BuchiEdge&) = default;
};

/// Nondeterministic Buchi automaton with guards on edges; a run reads letter k on its k-th edge.
struct BuchiAutomaton {
  std::size_t num_states = 0;
  std::vector<std::size_t> initial;
  std::vector<std::vector<BuchiEdge>> edges;
  std::vector<char> accepting;
};

namespace detail {

class Tableau {
 public:
  enum Kind { kTrue, kFalse, kPos, kNeg, kAnd, kOr, kNext, kUntil, kRelease };
  struct Sub {
    Kind kind;
    std::size_t a, b;
    AtomId atom;
  };
  struct Node {
    std::set<std::size_t> incoming, old, next;
  };
  static constexpr std::size_t kInit = npos;

  explicit Tableau(const LtlFormula& f) {
    root_ = intern(to_nnf(f));
    expand({kInit}, {root_}, {}, {});
  }

  BuchiAutomaton generalized(std::vector<std::vector<char>>& acc_sets) const {
    // State 0 is the initial pseudo-state; node k becomes state k + 1.
    BuchiAutomaton a;
    a.num_states = nodes_.size() + 1;
    a.initial = {0};
    a.edges.assign(a.num_states, {});
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      Guard g = guard_of(nodes_[k]);
      for (std::size_t from : nodes_[k].incoming) a.edges[from == kInit ? 0 : from + 1].push_back({k + 1, g});
    }
    for (std::size_t u = 0; u < subs_.size(); ++u) {
      if (subs_[u].kind != kUntil) continue;
      std::vector<char> f(a.num_states, 0);
      f[0] = 1;
      for (std::size_t k = 0; k < nodes_.size(); ++k)
        f[k + 1] = !nodes_[k].old.count(u) || nodes_[k].old.count(subs_[u].b);
      acc_sets.push_back(std::move(f));
    }
    return a;
  }

 private:
  std::size_t intern(Kind k, std::size_t a = 0, std::size_t b = 0, AtomId atom = 0) {
    auto key = std::make_tuple(static_cast<int>(k), a, b, atom);
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    subs_.push_back({k, a, b, atom});
    ids_.emplace(key, subs_.size() - 1);
    return subs_.size() - 1;
  }

  std::size_t intern(const LtlFormula& f) {
    using K = LtlFormula::Kind;
    switch (f.kind()) {
      case K::True: return intern(kTrue);
      case K::False: return intern(kFalse);
      case K::Atom: return intern(kPos, 0, 0, f.atom_id());
      case K::Not: return intern(kNeg, 0, 0, f.lhs().atom_id());  // NNF: operand is an atom
      case K::And: return intern(kAnd, intern(f.lhs()), intern(f.rhs()));
      case K::Or: return intern(kOr, intern(f.lhs()), intern(f.rhs()));
      case K::Next: return intern(kNext, intern(f.lhs()));
      case K::Until: return intern(kUntil, intern(f.lhs()), intern(f.rhs()));
      case K::Release: return intern(kRelease, intern(f.lhs()), intern(f.rhs()));
      case K::Finally: return intern(kUntil, intern(kTrue), intern(f.lhs()));
      case K::Globally: return intern(kRelease, intern(kFalse), intern(f.lhs()));
      case K::Implies: break;
    }
    return intern(kOr, intern(to_nnf(LtlFormula::negation(f.lhs()))), intern(f.rhs()));
  }

  std::optional<std::size_t> negated_literal(const Sub& s) const {
    auto it = ids_.find(std::make_tuple(static_cast<int>(s.kind == kPos ? kNeg : kPos), std::size_t{0}, std::size_t{0}, s.atom));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  Guard guard_of(const Node& n) const {
    Guard g;
    for (std::size_t id : n.old) {
      if (subs_[id].kind == kPos) g.pos.push_back(subs_[id].atom);
      if (subs_[id].kind == kNeg) g.neg.push_back(subs_[id].atom);
    }
    std::sort(g.pos.begin(), g.pos.end());
    std::sort(g.neg.begin(), g.neg.end());
    return g;
  }

  void expand(std::set<std::size_t> incoming, std::set<std::size_t> fresh, std::set<std::size_t> old,
              std::set<std::size_t> next) {
    if (fresh.empty()) {
      for (std::size_t k = 0; k < nodes_.size(); ++k) {
        if (nodes_[k].old == old && nodes_[k].next == next) {
          nodes_[k].incoming.insert(incoming.begin(), incoming.end());
          return;
        }
      }
      nodes_.push_back({std::move(incoming), std::move(old), next});
      expand({nodes_.size() - 1}, std::move(next), {}, {});
      return;
    }
    std::size_t eta = *fresh.begin();
    fresh.erase(fresh.begin());
    if (old.count(eta)) {
      expand(std::move(incoming), std::move(fresh), std::move(old), std::move(next));
      return;
    }
    const Sub s = subs_[eta];
    auto with = [&](std::set<std::size_t> set, std::initializer_list<std::size_t> add) {
      for (std::size_t x : add)
        if (!old.count(x)) set.insert(x);
      return set;
    };
    old.insert(eta);
    switch (s.kind) {
      case kFalse: return;
      case kTrue: break;
      case kPos:
      case kNeg:
        if (auto n = negated_literal(s); n && old.count(*n)) return;
        break;
      case kAnd: fresh = with(fresh, {s.a, s.b}); break;
      case kNext: next.insert(s.a); break;
      case kOr: {
        auto left = with(fresh, {s.a});
        auto right = with(fresh, {s.b});
        expand(incoming, std::move(left), old, next);
        expand(std::move(incoming), std::move(right), std::move(old), std::move(next));
        return;
      }
      case kUntil:
      case kRelease: {
        // a U b = b | (a & X(a U b));  a R b = (a & b) | (b & X(a R b))
        auto deferred = with(fresh, {s.kind == kUntil ? s.a : s.b});
        auto now = s.kind == kUntil ? with(fresh, {s.b}) : with(fresh, {s.a, s.b});
        auto next1 = next;
        next1.insert(eta);
        expand(incoming, std::move(deferred), old, std::move(next1));
        expand(std::move(incoming), std::move(now), std::move(old), std::move(next));
        return;
      }
    }
    expand(std::move(incoming), std::move(fresh), std::move(old), std::move(next));
  }

  std::vector<Sub> subs_;
  std::map<std::tuple<int, std::size_t, std::size_t, AtomId>, std::size_t> ids_;
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

/// Counter degeneralization: (q, c) waits for set c; accepting = (q, 0) with q in set 0.
inline BuchiAutomaton degeneralize(const BuchiAutomaton& g, const std::vector<std::vector<char>>& sets) {
  std::size_t k = std::max<std::size_t>(sets.size(), 1);
  auto in_set = [&](std::size_t q, std::size_t c) { return sets.empty() || sets[c][q]; };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> id;
  std::vector<std::pair<std::size_t, std::size_t>> states;
  auto get = [&](std::size_t q, std::size_t c) {
    auto [it, fresh] = id.emplace(std::make_pair(q, c), states.size());
    if (fresh) states.emplace_back(q, c);
    return it->second;
  };
  BuchiAutomaton d;
  for (std::size_t q : g.initial) d.initial.push_back(get(q, 0));
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [q, c] = states[i];
    std::size_t c2 = in_set(q, c) ? (c + 1) % k : c;
    std::vector<BuchiEdge> out;
    for (const auto& e : g.edges[q]) out.push_back({get(e.target, c2), e.guard});
    d.edges.resize(states.size());
    d.edges[i] = std::move(out);
  }
  d.num_states = states.size();
  d.edges.resize(d.num_states);
  d.accepting.resize(d.num_states);
  for (std::size_t i = 0; i < states.size(); ++i) d.accepting[i] = states[i].second == 0 && in_set(states[i].first, 0);
  return d;
}

/// Merges forward-bisimilar states with equal acceptance.
inline BuchiAutomaton merge_bisimilar(const BuchiAutomaton& a) {
  std::vector<std::size_t> cls(a.num_states);
  for (std::size_t q = 0; q < a.num_states; ++q) cls[q] = a.accepting[q] ? 1 : 0;
  std::size_t num_classes = 0;
  while (true) {
    std::map<std::pair<std::size_t, std::set<std::pair<Guard, std::size_t>>>, std::size_t> sig;
    std::vector<std::size_t> next(a.num_states);
    for (std::size_t q = 0; q < a.num_states; ++q) {
      std::set<std::pair<Guard, std::size_t>> out;
      for (const auto& e : a.edges[q]) out.emplace(e.guard, cls[e.target]);
      auto [it, fresh] = sig.emplace(std::make_pair(cls[q], std::move(out)), sig.size());
      next[q] = it->second;
    }
    bool stable = sig.size() == num_classes;
    num_classes = sig.size();
    cls = std::move(next);
    if (stable) break;
  }
  BuchiAutomaton m;
  m.num_states = num_classes;
  m.edges.assign(num_classes, {});
  m.accepting.assign(num_classes, 0);
  std::vector<std::set<BuchiEdge>> edges(num_classes);
  for (std::size_t q = 0; q < a.num_states; ++q) {
    m.accepting[cls[q]] = a.accepting[q];
    for (const auto& e : a.edges[q]) edges[cls[q]].insert({cls[e.target], e.guard});
  }
  for (std::size_t c = 0; c < num_classes; ++c) m.edges[c].assign(edges[c].begin(), edges[c].end());
  std::set<std::size_t> init;
  for (std::size_t q : a.initial) init.insert(cls[q]);
  m.initial.assign(init.begin(), init.end());
  return m;
}

inline BuchiAutomaton reachable_part(const BuchiAutomaton& a) {
  std::vector<std::size_t> map(a.num_states, npos), order;
  std::vector<std::size_t> work;
  for (std::size_t q : a.initial)
    if (map[q] == npos) {
      map[q] = order.size();
      order.push_back(q);
      work.push_back(q);
    }
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& e : a.edges[order[i]])
      if (map[e.target] == npos) {
        map[e.target] = order.size();
        order.push_back(e.target);
      }
  BuchiAutomaton r;
  r.num_states = order.size();
  r.edges.resize(order.size());
  r.accepting.resize(order.size());
  for (std::size_t q : a.initial) r.initial.push_back(map[q]);
  std::sort(r.initial.begin(), r.initial.end());
  r.initial.erase(std::unique(r.initial.begin(), r.initial.end()), r.initial.end());
  for (std::size_t i = 0; i < order.size(); ++i) {
    r.accepting[i] = a.accepting[order[i]];
    for (const auto& e : a.edges[order[i]]) r.edges[i].push_back({map[e.target], e.guard});
  }
  return r;
}

}  // namespace detail

/// Tableau translation; the automaton accepts exactly the words satisfying f.
inline BuchiAutomaton translate(const LtlFormula& f) {
  detail::Tableau t(f);
  std::vector<std::vector<char>> sets;
  BuchiAutomaton g = t.generalized(sets);
  BuchiAutomaton d = detail::reachable_part(detail::degeneralize(g, sets));
  return detail::reachable_part(detail::merge_bisimilar(d));
}

/// Node path prefix and cycle (cycle.front() is the re-entry node).
struct NodeLasso {
  std::vector<std::size_t> prefix, cycle;
};

/// Lasso from `start` whose cycle meets an accepting node, searching only `alive` nodes.
inline std::optional<NodeLasso> accepting_lasso(const Adjacency& adj, const std::vector<char>& accepting,
                                                std::size_t start) {
  auto reach = reachable(adj, start);
  std::vector<std::size_t> good(adj.size(), npos);
  auto comps = sccs(adj, reach);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (!is_cyclic(adj, comps[c])) continue;
    for (std::size_t v : comps[c])
      if (accepting[v]) good[v] = c;
  }
  auto pre = bfs_path(adj, start, [&](std::size_t v) { return good[v] != npos; });
  if (!pre) return std::nullopt;
  std::size_t target = pre->back();
  std::vector<char> in_comp(adj.size(), 0);
  for (std::size_t v : comps[good[target]]) in_comp[v] = 1;
  auto loop = bfs_path(adj, target, [&](std::size_t v) { return v == target; }, in_comp, true);
  NodeLasso l;
  l.prefix.assign(pre->begin(), pre->end() - 1);
  l.cycle.assign(loop->begin(), loop->end() - 1);
  return l;
}

/// Product of a labelled graph with an automaton. Node (v, q): q is the automaton state
/// before reading v's label.
struct BuchiProduct {
  Adjacency adj;
  std::vector<std::pair<std::size_t, std::size_t>> nodes;
  std::vector<char> accepting;
};

template <typename Labels>
BuchiProduct build_buchi_product(const Adjacency& graph, Labels&& label_of, const BuchiAutomaton& aut,
                                 std::size_t start, std::size_t init) {
  BuchiProduct p;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> id;
  auto get = [&](std::size_t v, std::size_t q) {
    auto [it, fresh] = id.emplace(std::make_pair(v, q), p.nodes.size());
    if (fresh) p.nodes.emplace_back(v, q);
    return it->second;
  };
  get(start, init);
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    auto [v, q] = p.nodes[i];
    std::vector<std::size_t> out;
    const std::vector<bool>& lab = label_of(v);
    for (const auto& e : aut.edges[q]) {
      if (!e.guard.holds(lab)) continue;
      for (std::size_t w : graph[v]) out.push_back(get(w, e.target));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    p.adj.resize(p.nodes.size());
    p.adj[i] = std::move(out);
  }
  p.adj.resize(p.nodes.size());
  p.accepting.resize(p.nodes.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) p.accepting[i] = aut.accepting[p.nodes[i].second];
  return p;
}

/// A product lasso witnessing a word of the graph from `start` accepted by the automaton, if any.
template <typename Labels>
std::optional<NodeLasso> nonempty_product(const Adjacency& graph, Labels&& label_of, const BuchiAutomaton& aut,
                                          std::size_t start) {
  for (std::size_t init : aut.initial) {
    BuchiProduct p = build_buchi_product(graph, label_of, aut, start, init);
    if (auto l = accepting_lasso(p.adj, p.accepting, 0)) {
      for (auto& v : l->prefix) v = p.nodes[v].first;
      for (auto& v : l->cycle) v = p.nodes[v].first;
      return l;
    }
  }
  return std::nullopt;
}

/// Membership of the lasso's label word in the language of f.
inline bool lasso_satisfies(const BuchiAutomaton& aut, const Lasso& l, const std::vector<std::vector<bool>>& labels) {
  std::size_t n = l.size();
  Adjacency pos(n);
  for (std::size_t k = 0; k < n; ++k) pos[k] = {k + 1 < n ? k + 1 : l.prefix.size()};
  auto lab = [&](std::size_t k) -> const std::vector<bool>& { return labels[l.at(k).state]; };
  return nonempty_product(pos, lab, aut, 0).has_value();
}

inline bool lasso_satisfies(const LtlFormula& f, const Lasso& l, const std::vector<std::vector<bool>>& labels) {
  return lasso_satisfies(translate(f), l, labels);
}

}  // namespace ratv
