#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "anomaly/finite_group.hpp"
#include "anomaly/smith.hpp"
#include "anomaly/torus_cocycle.hpp"

namespace anomaly {

/// Dense n-cochain on a finite abelian group with values in (1/D)Z/Z, i.e. e^{2*pi*i*v/D}.
/// Tables are indexed lexicographically by the element indices of the arguments.
class FiniteCochain {
 public:
  FiniteCochain() = default;
  FiniteCochain(FiniteAbelianGroup g, std::size_t arity, long denominator)
      : group_(std::move(g)), arity_(arity), denom_(denominator) {
    if (denom_ < 1) fail(ErrorKind::contract_violation, "cochain denominator must be positive");
    std::size_t size = 1;
    for (std::size_t i = 0; i < arity_; ++i) size *= group_.order();
    values_.assign(size, 0);
  }

  const FiniteAbelianGroup& group() const { return group_; }
  std::size_t arity() const { return arity_; }
  long denominator() const { return denom_; }
  const std::vector<long>& values() const { return values_; }

  std::size_t flat_index(std::span<const std::size_t> args) const {
    if (args.size() != arity_) fail(ErrorKind::dimension_mismatch, "finite cochain arity");
    std::size_t idx = 0;
    for (auto a : args) idx = idx * group_.order() + a;
    return idx;
  }

  long at(std::span<const std::size_t> args) const { return values_[flat_index(args)]; }
  long at(std::size_t a, std::size_t b, std::size_t c) const {
    const std::size_t n = group_.order();
    return values_[(a * n + b) * n + c];
  }
  void set(std::span<const std::size_t> args, long v) { values_[flat_index(args)] = reduce(v); }
  void set_flat(std::size_t idx, long v) { values_[idx] = reduce(v); }

  // Exponent v/D of e^{2*pi*i*(v/D)}.
  Rational turns(std::span<const std::size_t> args) const { return make_rational(at(args), denom_); }
  Phase phase(std::span<const std::size_t> args) const { return Phase(2 * turns(args)); }

  long reduce(long v) const {
    v %= denom_;
    return v < 0 ? v + denom_ : v;
  }

  // Same values over a larger common denominator.
  FiniteCochain rescaled(long new_denominator) const {
    if (new_denominator % denom_ != 0)
      fail(ErrorKind::coefficient_model, "denominator " + std::to_string(denom_) + " does not divide " +
                                             std::to_string(new_denominator));
    FiniteCochain c(group_, arity_, new_denominator);
    const long f = new_denominator / denom_;
    for (std::size_t i = 0; i < values_.size(); ++i) c.values_[i] = values_[i] * f;
    return c;
  }

  friend FiniteCochain operator*(const FiniteCochain& a, const FiniteCochain& b) {
    if (!(a.group_ == b.group_) || a.arity_ != b.arity_)
      fail(ErrorKind::dimension_mismatch, "product of incompatible finite cochains");
    const long d = std::lcm(a.denom_, b.denom_);
    FiniteCochain x = a.rescaled(d), y = b.rescaled(d);
    for (std::size_t i = 0; i < x.values_.size(); ++i) x.values_[i] = x.reduce(x.values_[i] + y.values_[i]);
    return x;
  }

  friend bool operator==(const FiniteCochain& a, const FiniteCochain& b) {
    return a.group_ == b.group_ && a.arity_ == b.arity_ && a.denom_ == b.denom_ && a.values_ == b.values_;
  }

  static FiniteCochain trivial(const FiniteAbelianGroup& g, std::size_t arity, long denominator = 1) {
    return FiniteCochain(g, arity, denominator);
  }

 private:
  FiniteAbelianGroup group_;
  std::size_t arity_ = 0;
  long denom_ = 1;
  std::vector<long> values_;
};

inline long default_coefficient_denominator(const FiniteAbelianGroup& g) {
  const long e = g.exponent();
  return 2 * e * e;
}

/// |G| limit for h_three; ANOMALY_FORGE_BUDGET overrides the default of 12.
inline std::size_t default_group_budget() {
  if (const char* env = std::getenv("ANOMALY_FORGE_BUDGET")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 12;
}

struct RestrictedCocycle {
  DiscriminantGroup discriminant;
  FiniteCochain omega;
};

/// Evaluates w_G at all triples of discriminant representatives, giving a 3-cochain on L^*/L.
inline RestrictedCocycle restrict_to_discriminant(const EvenLattice& l, Sign sign = Sign::minus,
                                                  std::optional<SectionMap> section = std::nullopt,
                                                  long denominator = 0) {
  RestrictedCocycle out{discriminant_group(l), {}};
  const auto& grp = out.discriminant.group;
  const std::size_t n = grp.order();
  if (n > 128) fail(ErrorKind::size_budget, "discriminant group of order " + std::to_string(n) + " is too large to tabulate");
  const long d = denominator > 0 ? denominator : default_coefficient_denominator(grp);
  AnomalyCocycle w(section.value_or(SectionMap(l.rank())), l.gram(), sign);

  std::vector<TorusPoint> pts;
  pts.reserve(n);
  for (const auto& r : out.discriminant.representatives) pts.emplace_back(r);

  out.omega = FiniteCochain(grp, 3, d);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Rational turns = w(pts[a], pts[b], pts[c]).turns();
        const Rational scaled = turns * d;
        if (!is_integer(scaled))
          fail(ErrorKind::coefficient_model, "value " + to_string(turns) + " needs a denominator not dividing " +
                                                 std::to_string(d));
        const std::array<std::size_t, 3> idx{a, b, c};
        out.omega.set(idx, to_long(scaled.get_num()));
      }
  return out;
}

struct PentagonResult {
  bool ok = true;
  std::optional<std::array<std::size_t, 4>> witness;
};

/// Exhaustive check of w(h,k,l) w(g,h+k,l) w(g,h,k) = w(g+h,k,l) w(g,h,k+l) over G^4.
inline PentagonResult pentagon_check(const FiniteCochain& w) {
  if (w.arity() != 3) fail(ErrorKind::contract_violation, "pentagon check expects a 3-cochain");
  const auto& g = w.group();
  const std::size_t n = g.order();
  const auto add = g.addition_table();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = add[a * n + b];
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t bc = add[b * n + c];
        for (std::size_t d = 0; d < n; ++d) {
          const std::size_t cd = add[c * n + d];
          long v = w.at(b, c, d) - w.at(ab, c, d) + w.at(a, bc, d) - w.at(a, b, cd) + w.at(a, b, c);
          if (w.reduce(v) != 0) return {false, std::array<std::size_t, 4>{a, b, c, d}};
        }
      }
    }
  return {};
}

/// Frobenius-Schur indicator w(g, g, g) of an element with 2g = 0; returns +1 or -1.
inline int fs_indicator(const FiniteCochain& w, std::size_t g) {
  const auto& grp = w.group();
  if (g >= grp.order()) fail(ErrorKind::index_out_of_range, "group element index");
  if (grp.add(g, g) != 0) fail(ErrorKind::precondition, "Frobenius-Schur indicator needs an element of order <= 2");
  const long v = w.at(g, g, g);
  if (w.reduce(2 * v) != 0)
    fail(ErrorKind::contract_violation, "w(g,g,g) = e^{2*pi*i*" + std::to_string(v) + "/" +
                                            std::to_string(w.denominator()) + "} does not square to 1");
  return v == 0 ? 1 : -1;
}

/// H^3(G, U(1)) with explicit generators.
///
/// Computed as the torsion of coker(d3 : C^3(G,Z) -> C^4(G,Z)) on normalized bar cochains, which is
/// H^4(G,Z) = H^3(G,U(1)) through the Bockstein. If U d3 V = S, generator k is the cocycle
/// (V e_k)/s_k mod 1, and a cocycle with real lift r has coordinate s_k (V^{-1} r)_k mod s_k.
struct H3Presentation {
  FiniteAbelianGroup group;
  long denominator = 1;                 // coefficient model (1/D)Z/Z
  std::vector<long> factors;            // torsion invariant factors s_k > 1
  std::vector<FiniteCochain> basis;     // basis[k] has order factors[k]
  // Row k of V^{-1} restricted to its nonzero entries, indexed by normalized 3-tuples.
  std::vector<std::vector<std::pair<std::size_t, Integer>>> functionals;

  Integer order() const {
    Integer o = 1;
    for (long f : factors) o *= f;
    return o;
  }
};

struct CohomologyClass {
  std::vector<long> coordinates;
  std::vector<long> factors;

  bool is_zero() const {
    for (long c : coordinates)
      if (c != 0) return false;
    return true;
  }

  long order() const {
    long o = 1;
    for (std::size_t k = 0; k < factors.size(); ++k) o = std::lcm(o, factors[k] / std::gcd(factors[k], coordinates[k]));
    return o;
  }

  friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;
};

namespace detail {

// Index helpers for normalized cochains: arguments range over the |G|-1 nonzero elements.
struct NormalizedIndex {
  std::size_t m;  // |G| - 1

  std::size_t idx3(std::size_t a, std::size_t b, std::size_t c) const { return ((a - 1) * m + (b - 1)) * m + (c - 1); }
  std::array<std::size_t, 3> args3(std::size_t i) const {
    return {i / (m * m) + 1, (i / m) % m + 1, i % m + 1};
  }
};

// Sparse integer rows of d3 on normalized cochains: one row per normalized 4-tuple.
inline std::vector<std::vector<std::pair<std::uint32_t, long>>> normalized_d3_rows(const FiniteAbelianGroup& g) {
  const std::size_t n = g.order();
  const auto add = g.addition_table();
  NormalizedIndex ix{n - 1};
  std::vector<std::vector<std::pair<std::uint32_t, long>>> rows;
  rows.reserve((n - 1) * (n - 1) * (n - 1) * (n - 1));
  std::vector<std::pair<std::uint32_t, long>> row;
  for (std::size_t a = 1; a < n; ++a)
    for (std::size_t b = 1; b < n; ++b)
      for (std::size_t c = 1; c < n; ++c)
        for (std::size_t d = 1; d < n; ++d) {
          row.clear();
          auto put = [&](std::size_t x, std::size_t y, std::size_t z, long s) {
            if (x == 0 || y == 0 || z == 0) return;
            row.emplace_back(static_cast<std::uint32_t>(ix.idx3(x, y, z)), s);
          };
          put(b, c, d, 1);
          put(add[a * n + b], c, d, -1);
          put(a, add[b * n + c], d, 1);
          put(a, b, add[c * n + d], -1);
          put(a, b, c, 1);
          std::sort(row.begin(), row.end());
          std::vector<std::pair<std::uint32_t, long>> merged;
          for (const auto& e : row) {
            if (!merged.empty() && merged.back().first == e.first)
              merged.back().second += e.second;
            else
              merged.push_back(e);
          }
          std::erase_if(merged, [](const auto& e) { return e.second == 0; });
          rows.push_back(std::move(merged));
        }
  return rows;
}

template <class Int>
struct CokernelData {
  std::vector<long> torsion;
  std::vector<std::vector<std::pair<std::size_t, Integer>>> functionals;
  std::vector<ZVector> generators;  // y_k with d3 y_k = s_k * (torsion generator)
};

inline Integer to_integer(const Integer& x) { return x; }
inline Integer to_integer(const CheckedInt& x) { return Integer(static_cast<long>(x.value())); }

/// Torsion of coker(A) for a sparse integer matrix A with `cols` columns.
/// Unit pivots are eliminated sparsely first; the remaining block goes through the dense SNF.
template <class Int>
CokernelData<Int> sparse_cokernel(const std::vector<std::vector<std::pair<std::uint32_t, long>>>& input,
                                  std::size_t cols) {
  using Row = std::vector<std::pair<std::uint32_t, Int>>;
  std::vector<Row> rows(input.size());
  std::vector<std::set<std::uint32_t>> col_rows(cols);
  for (std::size_t i = 0; i < input.size(); ++i) {
    for (const auto& [c, v] : input[i]) {
      rows[i].emplace_back(c, Int(v));
      col_rows[c].insert(static_cast<std::uint32_t>(i));
    }
  }
  std::vector<char> row_done(rows.size(), 0), col_done(cols, 0);

  auto entry = [&](const Row& r, std::uint32_t c) -> Int {
    auto it = std::lower_bound(r.begin(), r.end(), std::pair<std::uint32_t, Int>{c, Int(0)},
                               [](const auto& x, const auto& y) { return x.first < y.first; });
    return (it != r.end() && it->first == c) ? it->second : Int(0);
  };

  struct ColumnOp {
    std::uint32_t pivot_col, target_col;
    Int q;  // V: col[target] -= q * col[pivot]
  };
  std::vector<ColumnOp> log;

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::uint32_t c = 0; c < cols; ++c) {
      if (col_done[c]) continue;
      std::optional<std::uint32_t> best;
      for (std::uint32_t r : col_rows[c]) {
        const Int v = entry(rows[r], c);
        if (v != 1 && v != -1) continue;
        if (!best || rows[r].size() < rows[*best].size()) best = r;
      }
      if (!best) continue;
      const std::uint32_t pr = *best;
      const Row pivot_row = rows[pr];
      const Int p = entry(pivot_row, c);

      std::vector<std::uint32_t> others(col_rows[c].begin(), col_rows[c].end());
      for (std::uint32_t i : others) {
        if (i == pr) continue;
        const Int f = entry(rows[i], c) * p;  // p^{-1} = p for a unit
        if (f == 0) continue;
        Row merged;
        merged.reserve(rows[i].size() + pivot_row.size());
        std::size_t x = 0, y = 0;
        const Row& ri = rows[i];
        while (x < ri.size() || y < pivot_row.size()) {
          if (y == pivot_row.size() || (x < ri.size() && ri[x].first < pivot_row[y].first)) {
            merged.push_back(ri[x++]);
          } else if (x == ri.size() || pivot_row[y].first < ri[x].first) {
            const auto col = pivot_row[y].first;
            merged.emplace_back(col, Int(0) - f * pivot_row[y].second);
            col_rows[col].insert(i);
            ++y;
          } else {
            const auto col = ri[x].first;
            Int v = ri[x].second - f * pivot_row[y].second;
            if (v != 0)
              merged.emplace_back(col, v);
            else
              col_rows[col].erase(i);
            ++x, ++y;
          }
        }
        rows[i] = std::move(merged);
      }
      for (const auto& [j, v] : pivot_row) {
        col_rows[j].erase(pr);
        if (j != c) log.push_back({c, j, v * p});
      }
      row_done[pr] = 1;
      col_done[c] = 1;
      rows[pr].clear();
      progress = true;
    }
  }

  std::vector<std::uint32_t> rest_cols;
  std::vector<std::size_t> col_pos(cols, SIZE_MAX);
  for (std::uint32_t c = 0; c < cols; ++c)
    if (!col_done[c]) {
      col_pos[c] = rest_cols.size();
      rest_cols.push_back(c);
    }
  std::vector<std::size_t> rest_rows;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!row_done[i] && !rows[i].empty()) rest_rows.push_back(i);

  CokernelData<Int> out;
  if (rest_cols.empty() || rest_rows.empty()) return out;

  Matrix<Int> block(rest_rows.size(), rest_cols.size());
  for (std::size_t i = 0; i < rest_rows.size(); ++i)
    for (const auto& [c, v] : rows[rest_rows[i]]) block(i, col_pos[c]) = v;

  SmithOptions opt;
  opt.track_left = false;
  opt.track_right = true;
  opt.track_right_inverse = true;
  auto snf = smith_normal_form<Int>(std::move(block), opt);

  for (std::size_t k = 0; k < snf.rank; ++k) {
    const Int s = snf.diagonal(k, k);
    if (s == 1) continue;
    out.torsion.push_back(static_cast<long>(to_long(to_integer(s))));

    std::vector<std::pair<std::size_t, Integer>> f;
    for (std::size_t j = 0; j < rest_cols.size(); ++j)
      if (snf.right_inverse(k, j) != 0) f.emplace_back(rest_cols[j], to_integer(snf.right_inverse(k, j)));
    out.functionals.push_back(std::move(f));

    ZVector y(cols, Integer(0));
    for (std::size_t j = 0; j < rest_cols.size(); ++j) y[rest_cols[j]] = to_integer(snf.right(j, k));
    for (auto it = log.rbegin(); it != log.rend(); ++it)
      if (y[it->target_col] != 0) y[it->pivot_col] -= to_integer(it->q) * y[it->target_col];
    out.generators.push_back(std::move(y));
  }
  return out;
}

}  // namespace detail

inline H3Presentation h_three(const FiniteAbelianGroup& g, long denominator = 0,
                              std::size_t budget = default_group_budget()) {
  if (g.order() > budget)
    fail(ErrorKind::size_budget, "|G| = " + std::to_string(g.order()) + " exceeds the H^3 budget of " +
                                     std::to_string(budget) + " (set ANOMALY_FORGE_BUDGET to raise it)");
  H3Presentation out;
  out.group = g;
  out.denominator = denominator > 0 ? denominator : default_coefficient_denominator(g);
  if (g.trivial()) return out;

  const std::size_t n = g.order();
  const std::size_t m = n - 1;
  const auto rows = detail::normalized_d3_rows(g);
  const std::size_t cols = m * m * m;

  detail::CokernelData<Integer> data;
  try {
    auto small = detail::sparse_cokernel<CheckedInt>(rows, cols);
    data.torsion = std::move(small.torsion);
    data.functionals = std::move(small.functionals);
    data.generators = std::move(small.generators);
  } catch (const IntOverflow&) {
    data = detail::sparse_cokernel<Integer>(rows, cols);
  }

  detail::NormalizedIndex ix{m};
  for (std::size_t k = 0; k < data.torsion.size(); ++k) {
    const long s = data.torsion[k];
    if (out.denominator % s != 0)
      fail(ErrorKind::coefficient_model, "coefficient denominator " + std::to_string(out.denominator) +
                                             " is not a multiple of the invariant factor " + std::to_string(s));
    FiniteCochain c(g, 3, out.denominator);
    const long scale = out.denominator / s;
    for (std::size_t j = 0; j < cols; ++j) {
      Integer r = data.generators[k][j] % s;
      if (r < 0) r += s;
      if (r == 0) continue;
      const auto a = ix.args3(j);
      c.set(a, to_long(r) * scale);
    }
    out.factors.push_back(s);
    out.basis.push_back(std::move(c));
  }
  out.functionals = std::move(data.functionals);
  return out;
}

/// Gauge-equivalent copy of a 3-cocycle that vanishes whenever an argument is 0:
///   w'(a,b,c) = w(a,b,c) + [a+b=0] w(0,0,c) + [b+c=0] w(a,0,0) - (degenerate corrections).
inline FiniteCochain normalize_cocycle(const FiniteCochain& w) {
  const auto& g = w.group();
  const std::size_t n = g.order();
  const auto add = g.addition_table();
  // c(g,0) = -w(g,0,0), c(0,k) = w(0,0,k), all other values 0; w' = w - d c.
  auto c2 = [&](std::size_t x, std::size_t y) -> long {
    if (x == 0) return w.at(0, 0, y);
    if (y == 0) return -w.at(x, 0, 0);
    return 0;
  };
  FiniteCochain out(g, 3, w.denominator());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const long dc = c2(b, c) - c2(add[a * n + b], c) + c2(a, add[b * n + c]) - c2(a, b);
        const std::array<std::size_t, 3> idx{a, b, c};
        out.set(idx, w.at(a, b, c) - dc);
      }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if ((a == 0 || b == 0 || c == 0) && out.at(a, b, c) != 0)
          fail(ErrorKind::not_a_cocycle, "cochain cannot be normalized; it is not a cocycle");
  return out;
}

/// Coordinates of [w] in the presentation's generators.
inline CohomologyClass classify(const FiniteCochain& w, const H3Presentation& pres) {
  if (!(w.group() == pres.group) || w.arity() != 3)
    fail(ErrorKind::dimension_mismatch, "cochain does not live on the presented group");
  if (auto p = pentagon_check(w); !p.ok) {
    const auto& x = *p.witness;
    fail(ErrorKind::not_a_cocycle, "d3 w != 0 at (" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," +
                                       std::to_string(x[2]) + "," + std::to_string(x[3]) + ")");
  }
  CohomologyClass out;
  out.factors = pres.factors;
  if (pres.factors.empty()) return out;

  const FiniteCochain nw = normalize_cocycle(w);
  const long d = nw.denominator();
  detail::NormalizedIndex ix{pres.group.order() - 1};
  for (std::size_t k = 0; k < pres.factors.size(); ++k) {
    const long s = pres.factors[k];
    Integer acc = 0;
    for (const auto& [j, f] : pres.functionals[k]) {
      const auto a = ix.args3(j);
      acc += f * nw.at(a[0], a[1], a[2]);
    }
    acc *= s;
    if (acc % d != 0) fail(ErrorKind::not_a_cocycle, "class coordinate is not integral");
    Integer c = (acc / d) % s;
    if (c < 0) c += s;
    out.coordinates.push_back(to_long(c));
  }
  return out;
}

}  // namespace anomaly
