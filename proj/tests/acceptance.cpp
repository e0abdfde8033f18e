// Acceptance run: one PASS/FAIL line per criterion; exit status 1 if any criterion fails.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "anomaly/finite_cohomology.hpp"
#include "anomaly/lattice.hpp"
#include "anomaly/torus_cocycle.hpp"
#include "h3_oracle.hpp"
#include "support.hpp"

using namespace anomaly;
using anomaly::testing::random_points;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Criteria {
 public:
  void run(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("time limit exceeded");
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << timing;
    if (limit_seconds > 0) std::cout << ", limit " << limit_seconds << "s";
    std::cout << ")";
    if (!o.detail.empty()) std::cout << ": " << o.detail;
    std::cout << std::endl;
    failed_ += o.pass ? 0 : 1;
  }

  int failed() const { return failed_; }

 private:
  int failed_ = 0;
};

std::string run_capture(const std::string& args, int& code) {
  const std::string cmd = std::string(ANOMALY_FORGE_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  if (!pipe) {
    code = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string where(PointSpan p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + p[i].str();
  return s;
}

IntMatrix random_rank3(std::uint64_t seed) {
  SplitMix64 rng(seed);
  return anomaly::testing::random_even_symmetric(rng, 3, 4);
}

FiniteCochain span_sample(const H3Presentation& h, const std::vector<long>& c) {
  FiniteCochain w(h.group, 3, h.denominator);
  for (std::size_t k = 0; k < c.size(); ++k)
    for (long i = 0; i < c[k]; ++i) w = w * h.basis[k];
  return w;
}

std::vector<IntMatrix> restricted_test_set() {
  return {IntMatrix{{2}}, IntMatrix{{4}}, IntMatrix{{6}}, IntMatrix{{8}}, lattices::a2(), lattices::a_n(3), lattices::d4(),
          lattices::e8(), lattices::hyperbolic(), lattices::diagonal({2, 2}), lattices::diagonal({2, 4}),
          IntMatrix{{2, 1}, {1, 4}}, IntMatrix{{4, 2}, {2, 4}}};
}

}  // namespace

int main() {
  Criteria c;

  c.run(1, "omega(q,q,q) = -1 for sqrt(2)Z at q = 1/2", 0.001, [] {
    const TorusPoint q(QVector{make_rational(1, 2)});
    const Phase v = omega_closed_form(IntMatrix{{2}}, Sign::minus, q, q, q);
    return Outcome{v == Phase::minus_one(), "value " + v.str()};
  });

  c.run(2, "cocycle law at 1000 4-tuples for [[2]], [[4]], A2, diag(2,4), random rank 3", 5.0, [] {
    SplitMix64 rng(2);
    for (const auto& g : {IntMatrix{{2}}, IntMatrix{{4}}, lattices::a2(), lattices::diagonal({2, 4}), random_rank3(20)}) {
      PhaseCochain w = AnomalyCocycle(g, Sign::minus).cochain();
      for (int i = 0; i < 1000; ++i) {
        auto p = random_points(rng, g.rows(), 4);
        if (!boundary(w, PointSpan(p)).is_one()) return Outcome{false, to_string(g) + " at " + where(PointSpan(p))};
      }
    }
    return Outcome{};
  });

  c.run(3, "multiplicativity w_G1 w_G2 = w_(G1+G2) at 500 triples for three pairs", 0, [] {
    SplitMix64 rng(3);
    const std::vector<std::pair<IntMatrix, IntMatrix>> pairs{{IntMatrix{{2}}, IntMatrix{{4}}},
                                                             {lattices::a2(), lattices::scaled_identity(2, 2)},
                                                             {random_rank3(30), random_rank3(31)}};
    for (const auto& [g1, g2] : pairs)
      for (int i = 0; i < 500; ++i) {
        auto p = random_points(rng, g1.rows(), 3);
        const Phase lhs = omega_closed_form(g1, Sign::minus, p[0], p[1], p[2]) * omega_closed_form(g2, Sign::minus, p[0], p[1], p[2]);
        if (lhs != omega_closed_form(g1 + g2, Sign::minus, p[0], p[1], p[2]))
          return Outcome{false, to_string(g1) + " + " + to_string(g2) + " at " + where(PointSpan(p))};
      }
    return Outcome{};
  });

  c.run(4, "Jones assembler with std mu and braiding equals closed form at 500 triples, ranks 1-3", 0, [] {
    SplitMix64 rng(4);
    for (const auto& g : {IntMatrix{{2}}, lattices::a2(), random_rank3(40)}) {
      EvenLattice l = EvenLattice::from_gram(g);
      const MuFn mu = mu_of(two_cocycle(l, TwoCocycleVariant::standard));
      const LambdaFn lambda = lambda_braiding(g);
      const SectionMap s(l.rank());
      for (int i = 0; i < 500; ++i) {
        auto p = random_points(rng, l.rank(), 3);
        if (jones_assemble(mu, lambda, s, p[0], p[1], p[2]) != omega_closed_form(g, Sign::minus, p[0], p[1], p[2]))
          return Outcome{false, to_string(g) + " at " + where(PointSpan(p))};
      }
    }
    return Outcome{};
  });

  c.run(5, "Bockstein identities delta3(w_1) = b^b and delta3(w_A2) = b1^b1 + b2^b2 - b1^b2 at 500 4-tuples", 0, [] {
    SplitMix64 rng(5);
    IntCochain d1 = bockstein_lift(omega_one_dim_cochain(1)), bb = cup_bb(0, 0, 1);
    for (int i = 0; i < 500; ++i) {
      auto p = random_points(rng, 1, 4);
      PointSpan x(p);
      if (d1(x) != bb(x)) return Outcome{false, "rank 1 at " + where(x)};
    }
    IntCochain da = bockstein_lift(AnomalyCocycle(lattices::a2(), Sign::minus).cochain());
    IntCochain b11 = cup_bb(0, 0, 2), b22 = cup_bb(1, 1, 2), b12 = cup_bb(0, 1, 2);
    for (int i = 0; i < 500; ++i) {
      auto p = random_points(rng, 2, 4);
      PointSpan x(p);
      if (da(x) != b11(x) + b22(x) - b12(x)) return Outcome{false, "A2 at " + where(x)};
    }
    return Outcome{};
  });

  c.run(6, "coboundary certificate delta3(w_G) - c_G = d(eta) for 10 random G of rank <= 4, 200 4-tuples each", 30.0, [] {
    SplitMix64 rng(6);
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = 1 + rng.below(4);
      const IntMatrix g = anomaly::testing::random_even_symmetric(rng, n, 3);
      const CoboundaryCertificate cert = coboundary_certificate(g);
      const IntCochain dn = bockstein_lift(AnomalyCocycle(g, Sign::minus).cochain(), LiftMode::normalized);
      const IntCochain cg = gram_pairing_cochain(g);
      for (int i = 0; i < 200; ++i) {
        auto p = random_points(rng, n, 4);
        PointSpan x(p);
        if (dn(x) - cg(x) != boundary(cert.eta, x)) return Outcome{false, to_string(g) + " at " + where(x)};
      }
    }
    return Outcome{};
  });

  c.run(7, "decomposition of 50 random even symmetric H (rank <= 6) re-sums exactly into definite even terms", 5.0, [] {
    SplitMix64 rng(7);
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = 1 + rng.below(6);
      IntMatrix h(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = 2 * rng.between(-4, 4);
        for (std::size_t j = i + 1; j < n; ++j) h(i, j) = h(j, i) = rng.between(-8, 8);
      }
      auto terms = decompose_even_symmetric(h);
      if (resum(terms, n) != h) return Outcome{false, "re-sum differs for " + to_string(h)};
      for (const auto& term : terms) {
        const IntMatrix& m = term.lattice.gram();
        for (std::size_t i = 0; i < n; ++i)
          if (!mpz_even_p(m(i, i).get_mpz_t())) return Outcome{false, "odd term " + to_string(m)};
        if (!is_positive_definite(m)) return Outcome{false, "indefinite term " + to_string(m)};
      }
    }
    return Outcome{};
  });

  c.run(8, "h_three(Z/N) = [N] for N = 2..8; |h_three(Z/2 x Z/2)| = 8 = brute-force oracle", 60.0, [] {
    for (long n = 2; n <= 8; ++n) {
      auto f = h_three(FiniteAbelianGroup::cyclic(n)).factors;
      if (f != std::vector<long>{n}) return Outcome{false, "Z/" + std::to_string(n)};
    }
    const H3Presentation k = h_three(FiniteAbelianGroup({2, 2}));
    const long brute = oracle::h3_order({2, 2}, 2);
    if (k.order() != 8 || brute != 8) return Outcome{false, "order " + k.order().get_str() + ", oracle " + std::to_string(brute)};
    return Outcome{};
  });

  c.run(9, "restricted sqrt(2)Z class generates Z/2; trivial class is 0; classify is additive on the basis span", 0, [] {
    RestrictedCocycle r = restrict_to_discriminant(EvenLattice::from_gram(IntMatrix{{2}}));
    H3Presentation h = h_three(r.discriminant.group, r.omega.denominator());
    CohomologyClass cls = classify(r.omega, h);
    if (h.factors != std::vector<long>{2} || cls.order() != 2) return Outcome{false, "sqrt(2)Z class is not a generator"};
    if (!classify(FiniteCochain::trivial(h.group, 3, h.denominator), h).is_zero()) return Outcome{false, "trivial class"};
    SplitMix64 rng(9);
    for (const auto& f : std::vector<std::vector<long>>{{4}, {2, 2}, {2, 4}, {3, 3}}) {
      H3Presentation p = h_three(FiniteAbelianGroup(f));
      for (int t = 0; t < 5; ++t) {
        std::vector<long> a, b;
        for (long s : p.factors) {
          a.push_back(static_cast<long>(rng.below(static_cast<std::uint64_t>(s))));
          b.push_back(static_cast<long>(rng.below(static_cast<std::uint64_t>(s))));
        }
        CohomologyClass ca = classify(span_sample(p, a), p), cb = classify(span_sample(p, b), p);
        CohomologyClass cab = classify(span_sample(p, a) * span_sample(p, b), p);
        for (std::size_t k = 0; k < p.factors.size(); ++k)
          if (cab.coordinates[k] != (ca.coordinates[k] + cb.coordinates[k]) % p.factors[k] || ca.coordinates[k] != a[k])
            return Outcome{false, "additivity on " + p.group.str()};
      }
    }
    return Outcome{};
  });

  c.run(10, "Frobenius-Schur indicator: -1 for sqrt(2)Z, +1 for trivial, nu^2 = 1 on every order-2 element", 0, [] {
    RestrictedCocycle r = restrict_to_discriminant(EvenLattice::from_gram(IntMatrix{{2}}));
    if (fs_indicator(r.omega, 1) != -1) return Outcome{false, "sqrt(2)Z indicator"};
    if (fs_indicator(FiniteCochain::trivial(FiniteAbelianGroup::cyclic(2), 3, 2), 1) != 1) return Outcome{false, "trivial"};
    std::size_t calls = 0;
    for (const auto& g : restricted_test_set()) {
      RestrictedCocycle rr = restrict_to_discriminant(EvenLattice::from_gram(g));
      for (std::size_t e = 0; e < rr.discriminant.group.order(); ++e)
        if (rr.discriminant.group.add(e, e) == 0) {
          const int nu = fs_indicator(rr.omega, e);  // throws unless nu^2 = 1
          if (nu * nu != 1) return Outcome{false, "nu^2 != 1"};
          ++calls;
        }
    }
    return Outcome{true, std::to_string(calls) + " indicators evaluated"};
  });

  c.run(11, "pentagon holds for every restricted lattice cocycle; a one-entry perturbation fails with a witness", 0, [] {
    for (const auto& g : restricted_test_set())
      for (Sign s : {Sign::plus, Sign::minus}) {
        RestrictedCocycle r = restrict_to_discriminant(EvenLattice::from_gram(g), s);
        if (!pentagon_check(r.omega).ok) return Outcome{false, "pentagon fails for " + to_string(g)};
        if (r.omega.values().size() > 1) {
          FiniteCochain bad = r.omega;
          const std::size_t idx = bad.values().size() - 1;
          bad.set_flat(idx, bad.values()[idx] + 1);
          PentagonResult p = pentagon_check(bad);
          if (p.ok || !p.witness) return Outcome{false, "perturbation not detected for " + to_string(g)};
        }
      }
    return Outcome{};
  });

  c.run(12, "two runs of `verify --gram A2 --seed 7` give byte-identical JSON", 0, [] {
    int c1 = 0, c2 = 0;
    const std::string a = run_capture("verify --gram A2 --seed 7", c1);
    const std::string b = run_capture("verify --gram A2 --seed 7", c2);
    if (c1 != 0 || c2 != 0) return Outcome{false, "exit codes " + std::to_string(c1) + ", " + std::to_string(c2)};
    if (a.empty() || a != b) return Outcome{false, "outputs differ"};
    return Outcome{true, std::to_string(a.size()) + " bytes"};
  });

  return c.failed() == 0 ? 0 : 1;
}
