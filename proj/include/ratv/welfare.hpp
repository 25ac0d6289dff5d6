#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ratv/core/arena.hpp"
#include "ratv/engine.hpp"

namespace ratv {

enum class Measure { Utilitarian, Egalitarian };
enum class Direction { AtLeast, AtMost };
enum class OptMode { Max, Min };

class NoEquilibrium : public std::runtime_error {
 public:
  NoEquilibrium() : std::runtime_error("no equilibrium satisfies the property") {}
};

inline Rational usw(const Lasso& l, const Weights& w) {
  Rational s;
  for (std::size_t i = 0; i < w.size(); ++i) s += mp_payoff(l, w, i);
  return s;
}

inline Rational esw(const Lasso& l, const Weights& w) {
  Rational m = mp_payoff(l, w, 0);
  for (std::size_t i = 1; i < w.size(); ++i) m = min(m, mp_payoff(l, w, i));
  return m;
}

inline Rational social_welfare(Measure m, const Lasso& l, const Weights& w) {
  return m == Measure::Utilitarian ? usw(l, w) : esw(l, w);
}

/// [a, b] containing every achievable welfare value: sums (usw) or minima (esw) of the
/// per-player weight extremes.
inline std::pair<Rational, Rational> welfare_bounds(const Game& game, Measure m) {
  const Weights& w = game.weights();
  std::vector<Rational> lo, hi;
  for (const auto& row : w) {
    lo.emplace_back(*std::min_element(row.begin(), row.end()));
    hi.emplace_back(*std::max_element(row.begin(), row.end()));
  }
  Rational a = lo[0], b = hi[0];
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (m == Measure::Utilitarian) {
      a += lo[i];
      b += hi[i];
    } else {
      a = min(a, lo[i]);
      b = min(b, hi[i]);
    }
  }
  return {a, b};
}

struct WelfareQuery {
  Measure measure = Measure::Utilitarian;
  Direction direction = Direction::AtLeast;
  Rational threshold;
  Specification spec;
};

/// Is there an equilibrium satisfying the property whose welfare meets the threshold?
inline Verdict welfare_threshold(const Game& game, const WelfareQuery& q, const EngineOptions& opt = {}) {
  if (!game.is_mp()) throw ModelError("welfare queries need a mean-payoff game");
  auto [a, b] = welfare_bounds(game, q.measure);
  const Rational& t = q.threshold;
  bool ge = q.direction == Direction::AtLeast;
  if ((ge && t > b) || (!ge && t < a)) return Verdict{};
  if ((ge && t < a) || (!ge && t > b)) return e_nash_mp(game, q.spec, opt);
  const Arena& arena = game.arena;
  std::size_t S = arena.num_states();
  auto dim = [&](auto&& value) {
    std::vector<Rational> d(S);
    for (std::size_t s = 0; s < S; ++s) d[s] = value(s);
    return d;
  };
  if (q.measure == Measure::Utilitarian) {
    MpConstraints c;
    c.extra_dims.push_back(dim([&](std::size_t s) {
      Rational sum;
      for (const auto& row : game.weights()) sum += Rational(row[s]);
      return ge ? sum - t : t - sum;
    }));
    return e_nash_mp(game, q.spec, opt, c);
  }
  if (ge) {
    MpConstraints c;
    c.payoff_floor = t;
    return e_nash_mp(game, q.spec, opt, c);
  }
  // min_i payoff_i <= t iff some player's payoff is <= t
  Verdict last;
  std::size_t examined = 0;
  for (std::size_t k = 0; k < arena.num_players(); ++k) {
    MpConstraints c;
    c.extra_dims.push_back(dim([&](std::size_t s) { return t - Rational(game.weights()[k][s]); }));
    Verdict v = e_nash_mp(game, q.spec, opt, c);
    examined += v.candidates_examined;
    if (v.answer) {
      v.candidates_examined = examined;
      return v;
    }
    last = v;
  }
  last.candidates_examined = examined;
  return last;
}

/// Smallest k with 2^k >= (b - a) / eps; 0 when a = b or the ratio is at most 1.
inline std::size_t bisection_steps(const Rational& a, const Rational& b, const Rational& eps) {
  if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
  if (!(a < b)) return 0;
  Rational ratio = (b - a) / eps;
  std::size_t k = 0;
  Rational p(1);
  while (p < ratio) {
    p *= 2;
    ++k;
  }
  return k;
}

struct BisectionTrace {
  Rational value;
  std::size_t calls = 0;
  std::vector<std::pair<Rational, Rational>> brackets;  // [lo, hi] after every call
};

/// Bisection over [a, b]. Max mode asks "welfare >= mid?" and returns lo; min mode asks
/// "welfare <= mid?" and returns hi.
inline BisectionTrace bisect(const Rational& a, const Rational& b, const Rational& eps, OptMode mode,
                             const std::function<bool(const Rational&)>& query) {
  BisectionTrace tr;
  Rational lo = a, hi = b;
  std::size_t steps = bisection_steps(a, b, eps);
  for (std::size_t k = 0; k < steps; ++k) {
    Rational mid = (lo + hi) / 2;
    bool yes = query(mid);
    ++tr.calls;
    if (mode == OptMode::Max) (yes ? lo : hi) = mid;
    else (yes ? hi : lo) = mid;
    tr.brackets.emplace_back(lo, hi);
  }
  tr.value = mode == OptMode::Max ? lo : hi;
  return tr;
}

/// Within eps of the best (max) or worst (min) welfare over equilibria satisfying the property.
inline BisectionTrace approx_opt_welfare(const Game& game, const Specification& spec, Measure m, OptMode mode,
                                         const Rational& eps, const EngineOptions& opt = {}) {
  if (!game.is_mp()) throw ModelError("welfare queries need a mean-payoff game");
  if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
  if (!e_nash_mp(game, spec, opt).answer) throw NoEquilibrium();
  auto [a, b] = welfare_bounds(game, m);
  Direction dir = mode == OptMode::Max ? Direction::AtLeast : Direction::AtMost;
  return bisect(a, b, eps, mode, [&](const Rational& t) {
    return welfare_threshold(game, {m, dir, t, spec}, opt).answer;
  });
}

}  // namespace ratv
