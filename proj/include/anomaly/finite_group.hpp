#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "anomaly/error.hpp"

namespace anomaly {

/// Finite abelian group Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... and every d_i > 1.
///
/// Elements are addressed by a dense index: the coordinate vector read lexicographically,
/// first coordinate most significant. Index 0 is the identity.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  explicit FiniteAbelianGroup(std::vector<long> factors) : factors_(std::move(factors)) {
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] < 2) fail(ErrorKind::contract_violation, "invariant factors must be >= 2");
      if (i > 0 && factors_[i] % factors_[i - 1] != 0)
        fail(ErrorKind::contract_violation, "invariant factors must form a divisibility chain");
      if (__builtin_mul_overflow(order, static_cast<std::uint64_t>(factors_[i]), &order) || order > (1ULL << 31))
        fail(ErrorKind::size_budget, "group order too large");
    }
    order_ = static_cast<std::size_t>(order);
  }

  // Builds the group from arbitrary diagonal entries (e.g. an SNF diagonal), dropping 1s.
  static FiniteAbelianGroup from_diagonal(const std::vector<long>& diag) {
    std::vector<long> f;
    for (long d : diag) {
      if (d <= 0) fail(ErrorKind::contract_violation, "diagonal entry must be positive");
      if (d > 1) f.push_back(d);
    }
    return FiniteAbelianGroup(std::move(f));
  }

  static FiniteAbelianGroup cyclic(long n) { return n == 1 ? FiniteAbelianGroup() : FiniteAbelianGroup({n}); }

  const std::vector<long>& factors() const { return factors_; }
  std::size_t order() const { return order_; }
  std::size_t rank() const { return factors_.size(); }
  bool trivial() const { return order_ == 1; }

  long exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  std::vector<long> coords(std::size_t index) const {
    std::vector<long> c(factors_.size());
    for (std::size_t i = factors_.size(); i-- > 0;) {
      c[i] = static_cast<long>(index % factors_[i]);
      index /= factors_[i];
    }
    return c;
  }

  std::size_t index(const std::vector<long>& c) const {
    if (c.size() != factors_.size()) fail(ErrorKind::dimension_mismatch, "element coordinate length");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      long r = c[i] % factors_[i];
      if (r < 0) r += factors_[i];
      idx = idx * factors_[i] + static_cast<std::size_t>(r);
    }
    return idx;
  }

  std::size_t add(std::size_t a, std::size_t b) const {
    auto ca = coords(a), cb = coords(b);
    for (std::size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
    return index(ca);
  }

  std::size_t negate(std::size_t a) const {
    auto c = coords(a);
    for (auto& x : c) x = -x;
    return index(c);
  }

  long element_order(std::size_t a) const {
    long o = 1;
    auto c = coords(a);
    for (std::size_t i = 0; i < c.size(); ++i)
      o = std::lcm(o, factors_[i] / std::gcd(factors_[i], c[i]));
    return o;
  }

  // order x order addition table.
  std::vector<std::uint32_t> addition_table() const {
    std::vector<std::uint32_t> t(order_ * order_);
    for (std::size_t a = 0; a < order_; ++a)
      for (std::size_t b = 0; b < order_; ++b) t[a * order_ + b] = static_cast<std::uint32_t>(add(a, b));
    return t;
  }

  std::string str() const {
    if (factors_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " x Z/" : "Z/") + std::to_string(factors_[i]);
    return s;
  }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<long> factors_;
  std::size_t order_ = 1;
};

}  // namespace anomaly
