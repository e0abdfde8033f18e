#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anomaly/torus.hpp"

namespace anomaly {

template <class V>
struct CochainValue;

template <>
struct CochainValue<Phase> {
  static Phase zero() { return Phase::one(); }
  static Phase add(const Phase& a, const Phase& b) { return a * b; }
  static Phase sub(const Phase& a, const Phase& b) { return a / b; }
};

template <>
struct CochainValue<Integer> {
  static Integer zero() { return 0; }
  static Integer add(const Integer& a, const Integer& b) { return a + b; }
  static Integer sub(const Integer& a, const Integer& b) { return a - b; }
};

template <>
struct CochainValue<Rational> {
  static Rational zero() { return 0; }
  static Rational add(const Rational& a, const Rational& b) { return a + b; }
  static Rational sub(const Rational& a, const Rational& b) { return a - b; }
};

using PointSpan = std::span<const TorusPoint>;

/// n-argument function on torus points (trivial coefficient action).
template <class V>
struct Cochain {
  using Fn = std::function<V(PointSpan)>;

  std::size_t arity = 0;
  Fn eval;
  std::string provenance;

  V operator()(PointSpan args) const {
    if (args.size() != arity)
      fail(ErrorKind::dimension_mismatch, "cochain of arity " + std::to_string(arity) + " evaluated on " +
                                              std::to_string(args.size()) + " points");
    return eval(args);
  }

  template <class... P>
  V operator()(const TorusPoint& first, const P&... rest) const {
    std::array<TorusPoint, 1 + sizeof...(P)> a{first, rest...};
    return (*this)(PointSpan(a));
  }
};

using IntCochain = Cochain<Integer>;
using RealCochain = Cochain<Rational>;

/// Phase-valued cochain, optionally carrying a real lift r with value e^{2*pi*i*r}.
struct PhaseCochain : Cochain<Phase> {
  // Unreduced closed-form lift; empty when none is known.
  std::function<Rational(PointSpan)> real_lift;
};

/// (d w)(g_1..g_{n+1}) = w(g_2..g_{n+1}) + sum_i (-1)^i w(.., g_i + g_{i+1}, ..) + (-1)^{n+1} w(g_1..g_n),
/// written additively; for phases "+" is multiplication.
template <class V>
V boundary(const Cochain<V>& w, PointSpan args) {
  using Ops = CochainValue<V>;
  const std::size_t n = w.arity;
  if (args.size() != n + 1)
    fail(ErrorKind::dimension_mismatch, "boundary of an arity-" + std::to_string(n) + " cochain needs " +
                                            std::to_string(n + 1) + " points");
  std::vector<TorusPoint> buf(args.begin() + 1, args.end());
  V acc = w(PointSpan(buf));
  for (std::size_t i = 0; i < n; ++i) {
    buf.clear();
    for (std::size_t k = 0; k < i; ++k) buf.push_back(args[k]);
    buf.push_back(args[i] + args[i + 1]);
    for (std::size_t k = i + 2; k <= n; ++k) buf.push_back(args[k]);
    V term = w(PointSpan(buf));
    acc = (i % 2 == 0) ? Ops::sub(acc, term) : Ops::add(acc, term);
  }
  buf.assign(args.begin(), args.end() - 1);
  V last = w(PointSpan(buf));
  acc = (n % 2 == 0) ? Ops::sub(acc, last) : Ops::add(acc, last);
  return acc;
}

template <class V, class... P>
V boundary(const Cochain<V>& w, const TorusPoint& first, const P&... rest) {
  std::array<TorusPoint, 1 + sizeof...(P)> a{first, rest...};
  return boundary(w, PointSpan(a));
}

/// The coboundary as a cochain of one higher arity.
template <class V>
Cochain<V> boundary_cochain(Cochain<V> w) {
  const std::size_t n = w.arity;
  std::string tag = "boundary(" + w.provenance + ")";
  return Cochain<V>{n + 1, [w = std::move(w)](PointSpan a) { return boundary(w, a); }, std::move(tag)};
}

template <class V>
Cochain<V> constant_cochain(std::size_t arity, V value) {
  return Cochain<V>{arity, [value](PointSpan) { return value; }, "constant"};
}

inline PhaseCochain trivial_phase_cochain(std::size_t arity) {
  PhaseCochain c;
  c.arity = arity;
  c.eval = [](PointSpan) { return Phase::one(); };
  c.real_lift = [](PointSpan) { return Rational(0); };
  c.provenance = "trivial";
  return c;
}

/// Pointwise product; the lift is the sum of lifts when both factors carry one.
inline PhaseCochain multiply(const PhaseCochain& a, const PhaseCochain& b) {
  if (a.arity != b.arity) fail(ErrorKind::dimension_mismatch, "product of cochains of different arity");
  PhaseCochain c;
  c.arity = a.arity;
  c.eval = [a, b](PointSpan x) { return a(x) * b(x); };
  if (a.real_lift && b.real_lift)
    c.real_lift = [la = a.real_lift, lb = b.real_lift](PointSpan x) -> Rational { return la(x) + lb(x); };
  c.provenance = "product(" + a.provenance + "," + b.provenance + ")";
  return c;
}

template <class V>
Cochain<V> add(const Cochain<V>& a, const Cochain<V>& b, long b_coefficient = 1) {
  if (a.arity != b.arity) fail(ErrorKind::dimension_mismatch, "sum of cochains of different arity");
  return Cochain<V>{a.arity,
                    [a, b, b_coefficient](PointSpan x) { return V(a(x) + V(b_coefficient) * b(x)); },
                    "sum(" + a.provenance + "," + b.provenance + ")"};
}

}  // namespace anomaly
