#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "anomaly/matrix.hpp"

namespace anomaly {

/// Point of R^n / Z^n in lattice-basis coordinates; every coordinate kept in [0, 1).
class TorusPoint {
 public:
  TorusPoint() = default;
  explicit TorusPoint(QVector coords) : c_(std::move(coords)) {
    for (auto& x : c_) x = frac(x);
  }
  static TorusPoint zero(std::size_t n) { return TorusPoint(QVector(n, Rational(0))); }

  std::size_t rank() const { return c_.size(); }
  const QVector& coords() const { return c_; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }

  friend TorusPoint operator+(const TorusPoint& a, const TorusPoint& b) {
    if (a.rank() != b.rank()) fail(ErrorKind::dimension_mismatch, "torus points of different rank");
    QVector c(a.rank());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
    return TorusPoint(std::move(c));
  }
  friend bool operator==(const TorusPoint& a, const TorusPoint& b) { return a.c_ == b.c_; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + to_string(c_[i]);
    return s + ")";
  }

 private:
  QVector c_;
};

/// Borel section of R^n -> R^n / Z^n: coordinate i lands in [offset_i, offset_i + 1).
/// The default offset 0 gives s(x) = fractional part, applied coordinatewise.
class SectionMap {
 public:
  explicit SectionMap(std::size_t rank) : offset_(rank, Rational(0)) {}
  explicit SectionMap(QVector offset) : offset_(std::move(offset)) {}

  std::size_t rank() const { return offset_.size(); }
  const QVector& offset() const { return offset_; }
  bool standard() const {
    for (const auto& o : offset_)
      if (o != 0) return false;
    return true;
  }

  Rational coordinate(const TorusPoint& x, std::size_t i) const {
    return offset_[i] + frac(x[i] - offset_[i]);
  }

  QVector operator()(const TorusPoint& x) const {
    if (x.rank() != rank()) fail(ErrorKind::dimension_mismatch, "section rank mismatch");
    QVector v(rank());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coordinate(x, i);
    return v;
  }

  // s(x) + s(y) - s(x + y); always an integer vector.
  ZVector carry(const TorusPoint& x, const TorusPoint& y) const {
    const TorusPoint xy = x + y;
    ZVector out(rank());
    for (std::size_t i = 0; i < out.size(); ++i) {
      Rational c = coordinate(x, i) + coordinate(y, i) - coordinate(xy, i);
      if (!is_integer(c)) fail(ErrorKind::internal_consistency, "section carry is not an integer");
      out[i] = c.get_num();
    }
    return out;
  }

 private:
  QVector offset_;
};

/// Standard section: coordinatewise fractional part.
inline QVector section(const TorusPoint& x) { return SectionMap(x.rank())(x); }

/// Which alpha-induction the cocycle comes from. `plus` is the upper sign of the "-/+" pair,
/// so its exponents carry an overall minus sign; `minus` (the default) carries a plus sign.
enum class Sign { plus, minus };

inline const char* to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

inline int exponent_sign(Sign s) { return s == Sign::plus ? -1 : 1; }

/// Braiding of two charges: e^{i*pi*<p, G q>}.
inline Phase braiding_phase(const QVector& p, const QVector& q, const IntMatrix& g) {
  if (!g.is_symmetric()) fail(ErrorKind::precondition, "braiding form must be symmetric");
  return Phase(bilinear(p, g, q));
}

}  // namespace anomaly
