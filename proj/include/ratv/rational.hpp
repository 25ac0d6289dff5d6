#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ratv {

/// Exact rational number in canonical form (positive denominator, reduced).
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(std::int64_t n) : value_(to_mpz(n)) {}  // NOLINT: implicit by design of arithmetic types
  Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(to_mpz(num), to_mpz(den));
    value_.canonicalize();
  }
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Parses "INT" or "INT/INT" (optional leading sign, no spaces).
  static Rational parse(std::string_view text) {
    auto valid_int = [](std::string_view s) {
      if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    auto strip = [](std::string_view s) { return std::string(!s.empty() && s.front() == '+' ? s.substr(1) : s); };
    mpz_class n(strip(num)), d(strip(den));
    if (d == 0) throw std::invalid_argument("rational with zero denominator '" + std::string(text) + "'");
    return Rational(mpq_class(n, d));
  }

  const mpz_class& num() const { return value_.get_num(); }
  const mpz_class& den() const { return value_.get_den(); }
  const mpq_class& get() const { return value_; }

  bool is_integer() const { return den() == 1; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }

  /// Always "num/den", e.g. "2/1", "-3/4".
  std::string to_string() const { return num().get_str() + "/" + den().get_str(); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.sign() == 0) throw std::domain_error("division by zero rational");
    value_ /= o.value_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static mpz_class to_mpz(std::int64_t v) {
    if constexpr (sizeof(long) == sizeof(std::int64_t)) return mpz_class(static_cast<long>(v));
    else return mpz_class(std::to_string(v));
  }

  mpq_class value_;
};

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Least common multiple of the denominators; used to scale rational vectors to integers.
template <typename Range>
mpz_class common_denominator(const Range& values) {
  mpz_class l = 1;
  for (const Rational& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.den().get_mpz_t());
  return l;
}

}  // namespace ratv

template <>
struct std::hash<ratv::Rational> {
  std::size_t operator()(const ratv::Rational& r) const noexcept {
    return std::hash<std::string>()(r.to_string());
  }
};
