#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anomaly/finite_group.hpp"
#include "anomaly/matrix.hpp"
#include "anomaly/random.hpp"
#include "anomaly/smith.hpp"

namespace anomaly {

// Throws unless m is a square symmetric integer matrix with even diagonal.
inline void require_even_symmetric(const IntMatrix& m) {
  if (!m.square() || m.rows() == 0) fail(ErrorKind::precondition, "Gram matrix must be square and non-empty");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i))
        fail(ErrorKind::precondition, "Gram matrix is not symmetric: entry (" + std::to_string(i) + "," +
                                          std::to_string(j) + ") = " + m(i, j).get_str() + " but (" +
                                          std::to_string(j) + "," + std::to_string(i) + ") = " + m(j, i).get_str());
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!mpz_even_p(m(i, i).get_mpz_t()))
      fail(ErrorKind::evenness, "odd diagonal entry " + m(i, i).get_str() + " at (" + std::to_string(i) + "," +
                                    std::to_string(i) + ")");
}

/// Even lattice given by its Gram matrix in a fixed basis e_1..e_n.
class EvenLattice {
 public:
  static EvenLattice from_gram(IntMatrix gram) {
    require_even_symmetric(gram);
    EvenLattice l;
    l.definite_ = is_positive_definite(gram);
    l.gram_ = std::move(gram);
    return l;
  }

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  bool definite() const { return definite_; }
  Integer det() const { return determinant(gram_); }

  friend bool operator==(const EvenLattice& a, const EvenLattice& b) { return a.gram_ == b.gram_; }

 private:
  EvenLattice() = default;
  IntMatrix gram_;
  bool definite_ = false;
};

namespace lattices {

inline IntMatrix a2() { return IntMatrix{{2, -1}, {-1, 2}}; }

inline IntMatrix scaled_identity(std::size_t n, long c) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
  return m;
}

inline IntMatrix diagonal(const std::vector<long>& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

// Cartan matrix of A_n.
inline IntMatrix a_n(std::size_t n) {
  IntMatrix m = scaled_identity(n, 2);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = -1;
  return m;
}

inline IntMatrix d4() { return IntMatrix{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}}; }

inline IntMatrix e8() {
  IntMatrix m = a_n(7);
  IntMatrix e(8, 8);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) e(i, j) = m(i, j);
  e(7, 7) = 2;
  e(7, 4) = e(4, 7) = -1;
  return e;
}

inline IntMatrix hyperbolic() { return IntMatrix{{0, 1}, {1, 0}}; }

}  // namespace lattices

/// Dual basis in basis coordinates: the columns of gram^{-1}.
inline QMatrix dual_basis(const EvenLattice& l) { return inverse(l.gram()); }

/// The finite group L^*/L together with coset representatives in [0,1)^n.
struct DiscriminantGroup {
  FiniteAbelianGroup group;
  std::vector<QVector> representatives;  // representatives[i] is group element i
  Integer order;

  // Group element of a dual-lattice vector given in basis coordinates.
  std::size_t element_of(const QVector& v) const {
    QVector r = v;
    for (auto& x : r) x = frac(x);
    auto it = lookup.find(r);
    if (it == lookup.end()) fail(ErrorKind::contract_violation, "vector is not in the dual lattice");
    return it->second;
  }

  std::map<QVector, std::size_t> lookup;
};

inline constexpr std::size_t kMaxDiscriminantOrder = 1u << 20;

/// L^*/L from the Smith form U G V = S: the element with SNF coordinates u maps to V S^{-1} u mod 1.
/// Representatives are listed in lexicographic order of u.
inline DiscriminantGroup discriminant_group(const EvenLattice& l) {
  const IntMatrix& g = l.gram();
  const std::size_t n = g.rows();
  const Integer det = l.det();
  if (det == 0) fail(ErrorKind::degenerate_lattice, "singular Gram matrix " + to_string(g));

  auto snf = smith_normal_form<Integer>(g);
  std::vector<long> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = to_long(snf.diagonal(i, i));

  DiscriminantGroup out;
  out.order = abs_of(det);
  if (out.order > Integer(static_cast<unsigned long>(kMaxDiscriminantOrder)))
    fail(ErrorKind::size_budget, "discriminant group of order " + out.order.get_str() + " is too large to enumerate");
  out.group = FiniteAbelianGroup::from_diagonal(diag);

  // Positions of the nontrivial invariant factors inside the SNF diagonal.
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i)
    if (diag[i] > 1) pos.push_back(i);

  out.representatives.reserve(out.group.order());
  for (std::size_t e = 0; e < out.group.order(); ++e) {
    auto c = out.group.coords(e);
    QVector rep(n, Rational(0));
    for (std::size_t k = 0; k < pos.size(); ++k) {
      const std::size_t col = pos[k];
      const Rational coef = make_rational(c[k], diag[col]);
      for (std::size_t i = 0; i < n; ++i) rep[i] += Rational(snf.right(i, col)) * coef;
    }
    for (auto& x : rep) x = frac(x);
    out.lookup.emplace(rep, e);
    out.representatives.push_back(std::move(rep));
  }
  if (out.lookup.size() != out.representatives.size())
    fail(ErrorKind::internal_consistency, "discriminant representatives are not distinct");
  return out;
}

enum class TwoCocycleVariant { standard, kac, custom };

inline const char* to_string(TwoCocycleVariant v) {
  switch (v) {
    case TwoCocycleVariant::standard: return "std";
    case TwoCocycleVariant::kac: return "kac";
    case TwoCocycleVariant::custom: return "custom";
  }
  return "?";
}

/// b(x, y) = (-1)^{x^T B y} on the lattice, B kept reduced mod 2.
class BilinearTwoCocycle {
 public:
  BilinearTwoCocycle(IntMatrix b, TwoCocycleVariant variant) : variant_(variant) {
    if (!b.square()) fail(ErrorKind::dimension_mismatch, "two-cocycle matrix must be square");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = mpz_odd_p(b(i, j).get_mpz_t()) ? 1 : 0;
    b_ = std::move(b);
  }

  const IntMatrix& matrix() const { return b_; }
  TwoCocycleVariant variant() const { return variant_; }
  std::size_t rank() const { return b_.rows(); }

  Integer exponent(const ZVector& x, const ZVector& y) const { return bilinear(x, b_, y); }

  Phase operator()(const ZVector& x, const ZVector& y) const { return Phase(Rational(exponent(x, y))); }

 private:
  IntMatrix b_;
  TwoCocycleVariant variant_;
};

/// std: b(e_i, e_j) = (-1)^{<e_i,e_j>} for i < j and 1 otherwise.
/// kac: additionally b(e_i, e_i) = (-1)^{<e_i,e_i>/2}.
inline BilinearTwoCocycle two_cocycle(const EvenLattice& l, TwoCocycleVariant variant) {
  const IntMatrix& g = l.gram();
  const std::size_t n = g.rows();
  IntMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) b(i, j) = g(i, j);
  if (variant == TwoCocycleVariant::kac)
    for (std::size_t i = 0; i < n; ++i) b(i, i) = g(i, i) / 2;
  else if (variant == TwoCocycleVariant::custom)
    fail(ErrorKind::contract_violation, "custom two-cocycles are built from an explicit matrix");
  return BilinearTwoCocycle(std::move(b), variant);
}

struct CheckResult {
  bool ok = true;
  std::string counterexample;  // empty when ok
};

namespace detail {

inline std::string zvec_str(const ZVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

inline ZVector zadd(const ZVector& a, const ZVector& b) {
  ZVector c = a;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
  return c;
}

inline ZVector unit(std::size_t n, std::size_t i) {
  ZVector e(n, Integer(0));
  e[i] = 1;
  return e;
}

}  // namespace detail

/// Checks the 2-cocycle identity b(y,z) b(x+y,z)^{-1} b(x,y+z) b(x,y)^{-1} = 1 and the commutator rule
/// b(x,y) b(y,x)^{-1} = (-1)^{<x,y>} on all basis triples and on `samples` random integer triples.
inline CheckResult verify_two_cocycle(const BilinearTwoCocycle& b, const EvenLattice& l, SplitMix64& rng,
                                      std::size_t samples = 200) {
  const std::size_t n = l.rank();
  if (b.rank() != n) fail(ErrorKind::dimension_mismatch, "two-cocycle and lattice ranks differ");

  auto cocycle_at = [&](const ZVector& x, const ZVector& y, const ZVector& z) -> std::optional<std::string> {
    Phase v = b(y, z) / b(detail::zadd(x, y), z) * b(x, detail::zadd(y, z)) / b(x, y);
    if (!v.is_one())
      return "2-cocycle identity fails at x=" + detail::zvec_str(x) + " y=" + detail::zvec_str(y) +
             " z=" + detail::zvec_str(z) + ": " + v.str();
    return std::nullopt;
  };
  auto commutator_at = [&](const ZVector& x, const ZVector& y) -> std::optional<std::string> {
    Phase lhs = b(x, y) / b(y, x);
    Phase rhs(Rational(bilinear(x, l.gram(), y)));
    if (lhs != rhs)
      return "commutator rule fails at x=" + detail::zvec_str(x) + " y=" + detail::zvec_str(y) + ": " + lhs.str() +
             " vs " + rhs.str();
    return std::nullopt;
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (auto e = commutator_at(detail::unit(n, i), detail::unit(n, j))) return {false, *e};
      for (std::size_t k = 0; k < n; ++k)
        if (auto e = cocycle_at(detail::unit(n, i), detail::unit(n, j), detail::unit(n, k))) return {false, *e};
    }

  auto rand_vec = [&] {
    ZVector v(n);
    for (auto& x : v) x = rng.between(-4, 4);
    return v;
  };
  for (std::size_t s = 0; s < samples; ++s) {
    ZVector x = rand_vec(), y = rand_vec(), z = rand_vec();
    if (auto e = cocycle_at(x, y, z)) return {false, *e};
    if (auto e = commutator_at(x, y)) return {false, *e};
  }
  return {};
}

struct GeneratorTerm {
  Integer coefficient;
  EvenLattice lattice;
};

/// Writes a symmetric matrix with even diagonal as an integer combination of Gram matrices of
/// positive-definite even lattices:
///   -H_ij * (2 Id - E_ij - E_ji) for i < j, then one positive diagonal matrix R + 2t Id and -t * 2 Id.
/// Terms with equal Gram matrices are merged (first-appearance order) and zero coefficients dropped.
inline std::vector<GeneratorTerm> decompose_even_symmetric(const IntMatrix& h) {
  require_even_symmetric(h);
  const std::size_t n = h.rows();

  std::vector<std::pair<Integer, IntMatrix>> raw;
  IntMatrix acc(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (h(i, j) == 0) continue;
      IntMatrix k = lattices::scaled_identity(n, 2);
      k(i, j) = k(j, i) = -1;
      Integer c = -h(i, j);
      acc = acc + c * k;
      raw.emplace_back(c, std::move(k));
    }

  IntMatrix residual = h - acc;  // diagonal with even entries
  Integer min_diag = residual(0, 0);
  for (std::size_t i = 1; i < n; ++i) min_diag = std::min(min_diag, Integer(residual(i, i)));
  Integer t = 1 - min_diag / 2;
  if (t < 0) t = 0;
  raw.emplace_back(Integer(1), residual + (2 * t) * IntMatrix::identity(n));
  if (t != 0) raw.emplace_back(Integer(-t), lattices::scaled_identity(n, 2));

  std::vector<std::pair<Integer, IntMatrix>> merged;
  for (auto& [c, m] : raw) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& p) { return p.second == m; });
    if (it == merged.end())
      merged.emplace_back(c, std::move(m));
    else
      it->first += c;
  }

  std::vector<GeneratorTerm> out;
  for (auto& [c, m] : merged) {
    if (c == 0) continue;
    EvenLattice l = EvenLattice::from_gram(std::move(m));
    if (!l.definite()) fail(ErrorKind::internal_consistency, "decomposition produced an indefinite generator");
    out.push_back({c, std::move(l)});
  }
  return out;
}

inline IntMatrix resum(const std::vector<GeneratorTerm>& terms, std::size_t n) {
  IntMatrix acc(n, n);
  for (const auto& t : terms) acc = acc + t.coefficient * t.lattice.gram();
  return acc;
}

}  // namespace anomaly
