#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "anomaly/cochain.hpp"
#include "anomaly/lattice.hpp"

namespace anomaly {

/// Closed-form anomaly 3-cocycle of an even symmetric form G on R^n / Z^n.
///
/// With A = s(q)+s(r)-s(q+r), B = s(q+r)+s(t)-s(q+r+t), C = s(r)+s(t)-s(r+t),
/// D = s(q)+s(r+t)-s(q+r+t) (all integer vectors) and [x, y] = x^T G^up y for the strictly upper
/// triangular part G^up of G, the value is e^{i*pi*e} with
///   e = sign * ([A, B] - [C, D] + <s(q), G C>).
/// exponent() returns e unreduced; e/2 is the canonical real lift.
class AnomalyCocycle {
 public:
  AnomalyCocycle(IntMatrix g, Sign sign = Sign::minus)
      : AnomalyCocycle(SectionMap(g.rows()), std::move(g), sign) {}

  AnomalyCocycle(SectionMap s, IntMatrix g, Sign sign = Sign::minus)
      : g_(std::move(g)), sign_(sign), section_(std::move(s)) {
    require_even_symmetric(g_);
    if (section_.rank() != g_.rows()) fail(ErrorKind::dimension_mismatch, "section and form ranks differ");
    const std::size_t n = g_.rows();
    upper_ = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) upper_(i, j) = g_(i, j);
  }

  const IntMatrix& gram() const { return g_; }
  const IntMatrix& upper_triangle() const { return upper_; }
  Sign sign() const { return sign_; }
  const SectionMap& section_map() const { return section_; }
  std::size_t rank() const { return g_.rows(); }

  Rational exponent(const TorusPoint& q, const TorusPoint& r, const TorusPoint& t) const {
    check_rank(q), check_rank(r), check_rank(t);
    const TorusPoint qr = q + r;
    const TorusPoint rt = r + t;
    const ZVector a = section_.carry(q, r);
    const ZVector b = section_.carry(qr, t);
    const ZVector c = section_.carry(r, t);
    const ZVector d = section_.carry(q, rt);
    Rational e = Rational(bilinear(a, upper_, b) - bilinear(c, upper_, d));
    e += bilinear(section_(q), g_, to_qvector(c));
    return exponent_sign(sign_) * e;
  }

  Phase operator()(const TorusPoint& q, const TorusPoint& r, const TorusPoint& t) const {
    return Phase(exponent(q, r, t));
  }

  Rational canonical_lift(const TorusPoint& q, const TorusPoint& r, const TorusPoint& t) const {
    return exponent(q, r, t) / 2;
  }

  PhaseCochain cochain() const {
    PhaseCochain c;
    c.arity = 3;
    c.eval = [self = *this](PointSpan x) { return self(x[0], x[1], x[2]); };
    c.real_lift = [self = *this](PointSpan x) { return self.canonical_lift(x[0], x[1], x[2]); };
    c.provenance = "omega_G" + std::string(sign_ == Sign::plus ? "+" : "-") + to_string(g_);
    return c;
  }

 private:
  void check_rank(const TorusPoint& x) const {
    if (x.rank() != rank()) fail(ErrorKind::dimension_mismatch, "torus point rank does not match the form");
  }

  IntMatrix g_;
  IntMatrix upper_;
  Sign sign_;
  SectionMap section_;
};

inline Phase omega_closed_form(const IntMatrix& g, Sign sign, const TorusPoint& q, const TorusPoint& r,
                               const TorusPoint& t) {
  return AnomalyCocycle(g, sign)(q, r, t);
}

/// One-dimensional cocycle e^{sign * 2*pi*i*m * s(x)(s(y)+s(z)-s(y+z))}, written as an e^{i*pi*.} exponent.
inline Rational omega_one_dim_exponent(long m, const TorusPoint& x, const TorusPoint& y, const TorusPoint& z,
                                       Sign sign = Sign::minus) {
  if (m < 1) fail(ErrorKind::precondition, "omega_m needs m >= 1");
  if (x.rank() != 1 || y.rank() != 1 || z.rank() != 1)
    fail(ErrorKind::dimension_mismatch, "omega_m is defined on rank-1 points");
  const Rational carry = y[0] + z[0] - (y + z)[0];
  return exponent_sign(sign) * 2 * m * x[0] * carry;
}

inline Phase omega_one_dim(long m, const TorusPoint& x, const TorusPoint& y, const TorusPoint& z,
                           Sign sign = Sign::minus) {
  return Phase(omega_one_dim_exponent(m, x, y, z, sign));
}

inline PhaseCochain omega_one_dim_cochain(long m, Sign sign = Sign::minus) {
  PhaseCochain c;
  c.arity = 3;
  c.eval = [m, sign](PointSpan x) { return omega_one_dim(m, x[0], x[1], x[2], sign); };
  c.real_lift = [m, sign](PointSpan x) -> Rational { return omega_one_dim_exponent(m, x[0], x[1], x[2], sign) / 2; };
  c.provenance = "omega_" + std::to_string(m);
  return c;
}

using MuFn = std::function<Phase(const ZVector&, const ZVector&)>;
using LambdaFn = std::function<Phase(const QVector&, const ZVector&)>;

inline MuFn mu_of(const BilinearTwoCocycle& b) {
  return [b](const ZVector& x, const ZVector& y) { return b(x, y); };
}

/// lambda(g, l) = e^{sign * i*pi*<g, G l>}: the braiding for `minus`, its inverse for `plus`.
inline LambdaFn lambda_braiding(const IntMatrix& g, Sign sign = Sign::minus) {
  return [g, sign](const QVector& x, const ZVector& l) {
    Phase p = braiding_phase(x, to_qvector(l), g);
    return sign == Sign::minus ? p : p.inverse();
  };
}

/// Jones' 3-cocycle from a lattice 2-cocycle mu, a pairing lambda and a section:
///   mu(A, B) * mu(C, D)^* * lambda(s(q), C)
/// with A, B, C, D the integer carries as in AnomalyCocycle.
inline Phase jones_assemble(const MuFn& mu, const LambdaFn& lambda, const SectionMap& s, const TorusPoint& q,
                            const TorusPoint& r, const TorusPoint& t) {
  const TorusPoint qr = q + r;
  const TorusPoint rt = r + t;
  const ZVector a = s.carry(q, r);
  const ZVector b = s.carry(qr, t);
  const ZVector c = s.carry(r, t);
  const ZVector d = s.carry(q, rt);
  return mu(a, b) * mu(c, d).inverse() * lambda(s(q), c);
}

inline PhaseCochain jones_cochain(MuFn mu, LambdaFn lambda, SectionMap s) {
  PhaseCochain c;
  c.arity = 3;
  c.eval = [mu = std::move(mu), lambda = std::move(lambda), s = std::move(s)](PointSpan x) {
    return jones_assemble(mu, lambda, s, x[0], x[1], x[2]);
  };
  c.provenance = "jones";
  return c;
}

/// b_i(x, y) = s(x_i) + s(y_i) - s(x_i + y_i), in {0, 1}. Indices are 0-based.
inline IntCochain b_generator(std::size_t i, std::size_t rank) {
  if (i >= rank) fail(ErrorKind::index_out_of_range, "b_" + std::to_string(i) + " on rank " + std::to_string(rank));
  return IntCochain{2,
                    [i, rank](PointSpan x) {
                      if (x[0].rank() != rank || x[1].rank() != rank)
                        fail(ErrorKind::dimension_mismatch, "b_i evaluated on points of the wrong rank");
                      return as_integer(x[0][i] + x[1][i] - (x[0] + x[1])[i]);
                    },
                    "b_" + std::to_string(i)};
}

/// x -> s(x)_i as a real 1-cochain; its boundary is b_i.
inline RealCochain section_coordinate(std::size_t i, std::size_t rank) {
  if (i >= rank) fail(ErrorKind::index_out_of_range, "section coordinate index");
  return RealCochain{1, [i](PointSpan x) { return x[0][i]; }, "s_" + std::to_string(i)};
}

/// (b_i ^ b_j)(x1, x2, x3, x4) = b_i(x1, x2) * b_j(x3, x4).
inline IntCochain cup_bb(std::size_t i, std::size_t j, std::size_t rank) {
  IntCochain bi = b_generator(i, rank), bj = b_generator(j, rank);
  return IntCochain{4,
                    [bi, bj](PointSpan x) {
                      Integer left = bi(x[0], x[1]);
                      if (left == 0) return Integer(0);
                      return Integer(left * bj(x[2], x[3]));
                    },
                    "b_" + std::to_string(i) + "^b_" + std::to_string(j)};
}

/// c_G = sum_i (G_ii / 2) b_i^b_i + sum_{i<j} G_ij b_i^b_j.
inline IntCochain gram_pairing_cochain(const IntMatrix& g) {
  require_even_symmetric(g);
  const std::size_t n = g.rows();
  std::vector<std::pair<Integer, std::pair<std::size_t, std::size_t>>> terms;
  for (std::size_t i = 0; i < n; ++i) {
    if (g(i, i) != 0) terms.push_back({g(i, i) / 2, {i, i}});
    for (std::size_t j = i + 1; j < n; ++j)
      if (g(i, j) != 0) terms.push_back({g(i, j), {i, j}});
  }
  return IntCochain{4,
                    [terms, n](PointSpan x) {
                      std::vector<Integer> left(n), right(n);
                      for (std::size_t i = 0; i < n; ++i) {
                        left[i] = as_integer(x[0][i] + x[1][i] - (x[0] + x[1])[i]);
                        right[i] = as_integer(x[2][i] + x[3][i] - (x[2] + x[3])[i]);
                      }
                      Integer acc = 0;
                      for (const auto& [c, ij] : terms) acc += c * left[ij.first] * right[ij.second];
                      return acc;
                    },
                    "c_G" + to_string(g)};
}

enum class LiftMode {
  // The cochain's closed-form real lift when it has one, else the [0,1) lift.
  canonical,
  // exponent/2 reduced into [0, 1).
  normalized,
};

inline std::function<Rational(PointSpan)> real_lift(const PhaseCochain& w, LiftMode mode) {
  if (mode == LiftMode::canonical && w.real_lift) return w.real_lift;
  return [w](PointSpan x) { return w(x).turns(); };
}

inline RealCochain lift_cochain(const PhaseCochain& w, LiftMode mode) {
  return RealCochain{w.arity, real_lift(w, mode), "lift(" + w.provenance + ")"};
}

/// Bockstein of a phase 3-cocycle: the integer 4-cochain d3(r) for a real lift r of w.
/// Throws lift_consistency if d3(r) is not an integer (w is not a cocycle there).
inline IntCochain bockstein_lift(const PhaseCochain& w, LiftMode mode = LiftMode::canonical) {
  if (w.arity != 3) fail(ErrorKind::contract_violation, "Bockstein lift expects a 3-cochain");
  RealCochain lift = lift_cochain(w, mode);
  return IntCochain{4,
                    [lift](PointSpan x) {
                      Rational v = boundary(lift, x);
                      if (!is_integer(v))
                        fail(ErrorKind::lift_consistency, "boundary of the lift is " + to_string(v) +
                                                              ", not an integer (input is not a cocycle here)");
                      return Integer(v.get_num());
                    },
                    "delta3(" + w.provenance + ")"};
}

/// kappa = lift(w_G1) + lift(w_G2) - lift(w_{G1+G2}), integer valued.
inline IntCochain carry_cochain(const IntMatrix& g1, const IntMatrix& g2, Sign sign,
                                LiftMode mode = LiftMode::normalized) {
  if (g1.rows() != g2.rows()) fail(ErrorKind::dimension_mismatch, "carry cochain of forms of different rank");
  auto l1 = real_lift(AnomalyCocycle(g1, sign).cochain(), mode);
  auto l2 = real_lift(AnomalyCocycle(g2, sign).cochain(), mode);
  auto l12 = real_lift(AnomalyCocycle(g1 + g2, sign).cochain(), mode);
  return IntCochain{3,
                    [l1, l2, l12](PointSpan x) {
                      Rational v = l1(x) + l2(x) - l12(x);
                      if (!is_integer(v)) fail(ErrorKind::lift_consistency, "carry " + to_string(v) + " is not an integer");
                      return Integer(v.get_num());
                    },
                    "kappa"};
}

/// rho_G = normalized lift - canonical lift of w_G, integer valued.
inline IntCochain reduction_carry(const IntMatrix& g, Sign sign) {
  AnomalyCocycle w(g, sign);
  return IntCochain{3,
                    [w](PointSpan x) {
                      Rational canon = w.canonical_lift(x[0], x[1], x[2]);
                      return as_integer(frac(canon) - canon);
                    },
                    "rho"};
}

struct CoboundaryCertificate {
  std::vector<GeneratorTerm> terms;  // decomposition G = sum c_k G_k
  IntCochain eta;                    // arity 3
};

/// Certificate for delta3(w_G) - c_G = d3(eta), with delta3 taken on the [0,1) lift.
///
/// Along G = sum_k c_k G_k with partial sums P_k:
///   eta = sum_k [ rho(c_k G_k) - kappa(P_{k-1}, c_k G_k) ].
/// The identity holds exactly when the canonical Bockstein of each positive generator G_k is c_{G_k}.
inline CoboundaryCertificate coboundary_certificate(const IntMatrix& g, Sign sign = Sign::minus) {
  CoboundaryCertificate cert;
  cert.terms = decompose_even_symmetric(g);
  const std::size_t n = g.rows();
  std::vector<IntCochain> pieces;
  IntMatrix partial(n, n);
  for (const auto& t : cert.terms) {
    IntMatrix scaled = t.coefficient * t.lattice.gram();
    pieces.push_back(reduction_carry(scaled, sign));
    IntCochain kappa = carry_cochain(partial, scaled, sign, LiftMode::normalized);
    pieces.push_back(IntCochain{3, [kappa](PointSpan x) { return Integer(-kappa(x)); }, "-kappa"});
    partial = partial + scaled;
  }
  if (partial != g) fail(ErrorKind::internal_consistency, "decomposition does not re-sum to the input");
  cert.eta = IntCochain{3,
                        [pieces](PointSpan x) {
                          Integer acc = 0;
                          for (const auto& p : pieces) acc += p(x);
                          return acc;
                        },
                        "eta"};
  return cert;
}

}  // namespace anomaly
