#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anomaly/error.hpp"

namespace anomaly {

using Integer = mpz_class;
// mpq_class is kept canonical (gcd 1, positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using QVector = std::vector<Rational>;
using ZVector = std::vector<Integer>;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) fail(ErrorKind::contract_violation, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) { return make_rational(Integer(num), Integer(den)); }

inline Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

// x - floor(x), always in [0, 1).
inline Rational frac(const Rational& x) { return x - Rational(floor_of(x)); }

// Reduce into [0, m) for a positive integer modulus m.
inline Rational mod_into(const Rational& x, long m) {
  Rational scaled = x / m;
  return (scaled - Rational(floor_of(scaled))) * m;
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline Integer as_integer(const Rational& x) {
  if (!is_integer(x)) fail(ErrorKind::internal_consistency, "expected an integer, got " + x.get_str());
  return x.get_num();
}

// Serialised as "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& x) { return x.get_str(); }
inline std::string to_string(const Integer& x) { return x.get_str(); }

inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) fail(ErrorKind::contract_violation, "not a rational: '" + s + "'");
  if (r.get_den() == 0) fail(ErrorKind::contract_violation, "zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline long to_long(const Integer& x) {
  if (!x.fits_slong_p()) fail(ErrorKind::size_budget, "integer does not fit in 64 bits: " + x.get_str());
  return x.get_si();
}

inline QVector to_qvector(const ZVector& v) {
  QVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

inline ZVector to_zvector(const QVector& v) {
  ZVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(as_integer(x));
  return out;
}

/// Element of U(1) written e^{i*pi*t}; the exponent t is kept in [0, 2).
///
/// Integer exponents give exactly +1 / -1, which is why the pi (not 2*pi) normalization is used.
class Phase {
 public:
  Phase() = default;
  explicit Phase(const Rational& exponent) : t_(mod_into(exponent, 2)) {}

  static Phase one() { return Phase(); }
  static Phase minus_one() { return Phase(Rational(1)); }

  const Rational& exponent() const { return t_; }

  // Exponent of the same value written e^{2*pi*i*r}, r in [0, 1).
  Rational turns() const { return t_ / 2; }

  bool is_one() const { return t_ == 0; }
  bool is_sign() const { return t_ == 0 || t_ == 1; }

  // +1 or -1; throws for any other value.
  int sign() const {
    if (t_ == 0) return 1;
    if (t_ == 1) return -1;
    fail(ErrorKind::contract_violation, "phase e^{i*pi*" + to_string(t_) + "} is not a sign");
  }

  Phase inverse() const { return Phase(-t_); }
  Phase pow(long m) const { return Phase(t_ * m); }

  friend Phase operator*(const Phase& a, const Phase& b) { return Phase(a.t_ + b.t_); }
  Phase& operator*=(const Phase& b) { return *this = *this * b; }
  friend Phase operator/(const Phase& a, const Phase& b) { return Phase(a.t_ - b.t_); }
  friend bool operator==(const Phase& a, const Phase& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Phase& a, const Phase& b) { return !(a == b); }

  std::string str() const { return "e^{i*pi*" + to_string(t_) + "}"; }

 private:
  Rational t_{0};
};

/// Product of phases raised to integer multiplicities.
inline Phase phase_combine(std::span<const std::pair<Phase, long>> factors) {
  Rational t = 0;
  for (const auto& [p, m] : factors) t += p.exponent() * m;
  return Phase(t);
}

inline Phase phase_combine(std::initializer_list<std::pair<Phase, long>> factors) {
  return phase_combine(std::span<const std::pair<Phase, long>>(factors.begin(), factors.size()));
}

}  // namespace anomaly
