#include <gtest/gtest.h>

#include "anomaly/torus_cocycle.hpp"
#include "support.hpp"

using namespace anomaly;
using anomaly::testing::random_points;

namespace {

TorusPoint pt(std::initializer_list<Rational> c) { return TorusPoint(QVector(c)); }
Rational q(long a, long b) { return make_rational(a, b); }

std::vector<IntMatrix> sample_grams() {
  return {IntMatrix{{2}}, IntMatrix{{4}}, lattices::a2(), lattices::diagonal({2, 4}), lattices::hyperbolic(),
          IntMatrix{{4, 1, 0}, {1, -2, 3}, {0, 3, 6}}};
}

}  // namespace

TEST(TorusPointTest, ReducesModOne) {
  EXPECT_EQ(pt({q(7, 10)}).coords()[0], q(7, 10));
  EXPECT_EQ(pt({q(3, 2)}).coords()[0], q(1, 2));
  TorusPoint p = pt({q(5, 4), q(-1, 3)});
  EXPECT_EQ(p[0], q(1, 4));
  EXPECT_EQ(p[1], q(2, 3));
  EXPECT_EQ(pt({q(3, 4)}) + pt({q(1, 2)}), pt({q(1, 4)}));
}

TEST(SectionTest, StandardSectionIsCoordinatewise) {
  SplitMix64 rng(31);
  SectionMap s(3);
  for (int i = 0; i < 200; ++i) {
    TorusPoint x = anomaly::testing::random_point(rng, 3);
    QVector v = s(x);
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_GE(v[k], 0);
      EXPECT_LT(v[k], 1);
      EXPECT_EQ(frac(v[k]), x[k]);
    }
  }
}

TEST(SectionTest, ShiftedSectionStaysInItsWindow) {
  SectionMap s(QVector{q(-1, 2), q(1, 3)});
  QVector v = s(pt({q(3, 4), q(1, 6)}));
  EXPECT_EQ(v[0], q(-1, 4));
  EXPECT_EQ(v[1], q(7, 6));
}

TEST(BraidingTest, Examples) {
  EXPECT_EQ(braiding_phase(QVector{Rational(1)}, QVector{Rational(1)}, IntMatrix{{1}}), Phase::minus_one());
  EXPECT_TRUE(braiding_phase(QVector{q(1, 3), q(1, 5)}, QVector{Rational(0), Rational(0)}, lattices::a2()).is_one());
  EXPECT_EQ(braiding_phase(QVector{Rational(1), Rational(0)}, QVector{Rational(0), Rational(1)}, lattices::a2()),
            Phase::minus_one());
}

TEST(BraidingTest, Bilinear) {
  SplitMix64 rng(32);
  for (const auto& g : sample_grams()) {
    const std::size_t n = g.rows();
    for (int i = 0; i < 100; ++i) {
      QVector a = sample_coordinates(rng, n, default_denominators());
      QVector b = sample_coordinates(rng, n, default_denominators());
      QVector c = sample_coordinates(rng, n, default_denominators());
      QVector ab = a;
      for (std::size_t k = 0; k < n; ++k) ab[k] += b[k];
      EXPECT_EQ(braiding_phase(ab, c, g), braiding_phase(a, c, g) * braiding_phase(b, c, g));
      EXPECT_EQ(braiding_phase(a, c, g), braiding_phase(c, a, g));
    }
  }
}

TEST(OmegaTest, SqrtTwoValueIsMinusOne) {
  TorusPoint h = pt({q(1, 2)});
  EXPECT_EQ(omega_closed_form(IntMatrix{{2}}, Sign::minus, h, h, h), Phase::minus_one());
  EXPECT_EQ(omega_closed_form(IntMatrix{{2}}, Sign::plus, h, h, h), Phase::minus_one());
  EXPECT_EQ(omega_one_dim(1, h, h, h), Phase::minus_one());
}

TEST(OmegaTest, TrivialWhenFirstArgumentVanishes) {
  SplitMix64 rng(33);
  for (const auto& g : sample_grams())
    for (int i = 0; i < 50; ++i) {
      auto p = random_points(rng, g.rows(), 2);
      EXPECT_TRUE(omega_closed_form(g, Sign::minus, TorusPoint::zero(g.rows()), p[0], p[1]).is_one());
    }
  for (long m = 1; m <= 4; ++m) EXPECT_TRUE(omega_one_dim(m, pt({Rational(0)}), pt({q(1, 3)}), pt({q(5, 6)})).is_one());
}

TEST(OmegaTest, A2ValueAgreesWithAssembler) {
  TorusPoint x = pt({q(2, 3), q(1, 3)});
  const Phase w = omega_closed_form(lattices::a2(), Sign::minus, x, x, x);
  // carries A=(1,0), B=(1,1), C=(1,0), D=(1,1): exponent -1 - (-1) + <s(q), G C> = 1
  EXPECT_EQ(w, Phase::minus_one());
  EvenLattice l = EvenLattice::from_gram(lattices::a2());
  const Phase j = jones_assemble(mu_of(two_cocycle(l, TwoCocycleVariant::standard)), lambda_braiding(lattices::a2()),
                                 SectionMap(2), x, x, x);
  EXPECT_EQ(w, j);
}

TEST(OmegaTest, SignsAreInverse) {
  SplitMix64 rng(34);
  for (const auto& g : sample_grams())
    for (int i = 0; i < 50; ++i) {
      auto p = random_points(rng, g.rows(), 3);
      EXPECT_EQ(omega_closed_form(g, Sign::plus, p[0], p[1], p[2]),
                omega_closed_form(g, Sign::minus, p[0], p[1], p[2]).inverse());
    }
}

TEST(OmegaTest, OneDimensionalMatchesClosedForm) {
  SplitMix64 rng(35);
  for (long m = 1; m <= 4; ++m)
    for (Sign s : {Sign::plus, Sign::minus})
      for (int i = 0; i < 60; ++i) {
        auto p = random_points(rng, 1, 3);
        EXPECT_EQ(omega_one_dim(m, p[0], p[1], p[2], s), omega_closed_form(IntMatrix{{2 * m}}, s, p[0], p[1], p[2]));
      }
}

TEST(OmegaTest, OneDimensionalIsMultiplicative) {
  SplitMix64 rng(36);
  for (int i = 0; i < 50; ++i) {
    auto p = random_points(rng, 1, 3);
    EXPECT_EQ(omega_one_dim(1, p[0], p[1], p[2]) * omega_one_dim(1, p[0], p[1], p[2]), omega_one_dim(2, p[0], p[1], p[2]));
    EXPECT_EQ(omega_one_dim(2, p[0], p[1], p[2]) * omega_one_dim(3, p[0], p[1], p[2]), omega_one_dim(5, p[0], p[1], p[2]));
  }
  EXPECT_THROW(omega_one_dim(0, pt({q(1, 2)}), pt({q(1, 2)}), pt({q(1, 2)})), Error);
}

TEST(OmegaTest, CocycleLawOnRandomForms) {
  SplitMix64 rng(37);
  for (int t = 0; t < 24; ++t) {
    const std::size_t n = 1 + rng.below(4);
    IntMatrix g = anomaly::testing::random_even_symmetric(rng, n, 6);
    for (Sign s : {Sign::plus, Sign::minus}) {
      PhaseCochain w = AnomalyCocycle(g, s).cochain();
      for (int i = 0; i < 40; ++i) {
        auto p = random_points(rng, n, 4);
        EXPECT_TRUE(boundary(w, PointSpan(p)).is_one()) << to_string(g);
      }
    }
  }
}

TEST(OmegaTest, MultiplicativeInTheForm) {
  SplitMix64 rng(38);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng.below(3);
    IntMatrix g1 = anomaly::testing::random_even_symmetric(rng, n, 5), g2 = anomaly::testing::random_even_symmetric(rng, n, 5);
    for (int i = 0; i < 40; ++i) {
      auto p = random_points(rng, n, 3);
      EXPECT_EQ(omega_closed_form(g1, Sign::minus, p[0], p[1], p[2]) * omega_closed_form(g2, Sign::minus, p[0], p[1], p[2]),
                omega_closed_form(g1 + g2, Sign::minus, p[0], p[1], p[2]));
    }
  }
}

TEST(OmegaTest, RejectsOddOrMismatchedInput) {
  EXPECT_THROW(AnomalyCocycle(IntMatrix{{1}}, Sign::minus), Error);
  AnomalyCocycle w(lattices::a2(), Sign::minus);
  EXPECT_THROW(w(pt({q(1, 2)}), pt({q(1, 2)}), pt({q(1, 2)})), Error);
}

TEST(JonesTest, TrivialInputsGiveTrivialCocycle) {
  MuFn mu = [](const ZVector&, const ZVector&) { return Phase::one(); };
  LambdaFn lambda = [](const QVector&, const ZVector&) { return Phase::one(); };
  SplitMix64 rng(39);
  for (int i = 0; i < 30; ++i) {
    auto p = random_points(rng, 2, 3);
    EXPECT_TRUE(jones_assemble(mu, lambda, SectionMap(2), p[0], p[1], p[2]).is_one());
  }
}

TEST(JonesTest, AgreesWithClosedFormForStandardCocycle) {
  SplitMix64 rng(40);
  std::vector<IntMatrix> grams = sample_grams();
  for (int t = 0; t < 6; ++t) grams.push_back(anomaly::testing::random_even_symmetric(rng, 1 + rng.below(3), 4));
  for (const auto& g : grams) {
    EvenLattice l = EvenLattice::from_gram(g);
    for (Sign s : {Sign::plus, Sign::minus}) {
      PhaseCochain j = jones_cochain(mu_of(two_cocycle(l, TwoCocycleVariant::standard)), lambda_braiding(g, s), SectionMap(l.rank()));
      for (int i = 0; i < 50; ++i) {
        auto p = random_points(rng, l.rank(), 3);
        EXPECT_EQ(j(PointSpan(p)), omega_closed_form(g, s, p[0], p[1], p[2])) << to_string(g);
      }
    }
  }
  for (int i = 0; i < 50; ++i) {
    auto p = random_points(rng, 1, 3);
    EvenLattice l = EvenLattice::from_gram(IntMatrix{{2}});
    EXPECT_EQ(jones_assemble(mu_of(two_cocycle(l, TwoCocycleVariant::standard)), lambda_braiding(l.gram()), SectionMap(1),
                             p[0], p[1], p[2]),
              omega_one_dim(1, p[0], p[1], p[2]));
  }
}

TEST(JonesTest, KacVariantStillGivesACocycle) {
  SplitMix64 rng(41);
  for (const auto& g : sample_grams()) {
    EvenLattice l = EvenLattice::from_gram(g);
    PhaseCochain j = jones_cochain(mu_of(two_cocycle(l, TwoCocycleVariant::kac)), lambda_braiding(g), SectionMap(l.rank()));
    for (int i = 0; i < 40; ++i) {
      auto p = random_points(rng, l.rank(), 4);
      EXPECT_TRUE(boundary(j, PointSpan(p)).is_one());
    }
  }
}

TEST(BoundaryTest, TrivialCochainsAreClosed) {
  SplitMix64 rng(42);
  for (std::size_t arity = 1; arity <= 3; ++arity) {
    PhaseCochain one = trivial_phase_cochain(arity);
    auto p = random_points(rng, 2, arity + 1);
    EXPECT_TRUE(boundary(one, PointSpan(p)).is_one());
  }
}

TEST(BoundaryTest, BoundaryOfBoundaryVanishes) {
  SplitMix64 rng(43);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 1 + rng.below(3);
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = make_rational(rng.between(-7, 7), rng.between(1, 6));
    PhaseCochain f;
    f.arity = 2;
    f.eval = [m, n](PointSpan x) {
      Rational acc = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc += x[0][i] * m(i, j) * x[1][j];
      return Phase(acc);
    };
    auto df = boundary_cochain<Phase>(f);
    for (int i = 0; i < 40; ++i) {
      auto p = random_points(rng, n, 4);
      EXPECT_TRUE(boundary(df, PointSpan(p)).is_one());
    }
  }
}

TEST(CarryGeneratorTest, Examples) {
  IntCochain b = b_generator(0, 1);
  EXPECT_EQ(b(pt({Rational(0)}), pt({q(2, 5)})), 0);
  EXPECT_EQ(b(pt({q(1, 2)}), pt({q(1, 2)})), 1);
  EXPECT_EQ(b(pt({q(1, 3)}), pt({q(1, 3)})), 0);
  EXPECT_THROW(b_generator(1, 1), Error);

  IntCochain bb = cup_bb(0, 0, 1);
  TorusPoint h = pt({q(1, 2)});
  EXPECT_EQ(bb(h, h, h, h), 1);
  EXPECT_EQ(bb(pt({Rational(0)}), h, h, h), 0);
  IntCochain b12 = cup_bb(0, 1, 2);
  TorusPoint a = pt({q(1, 2), Rational(0)}), c = pt({Rational(0), q(1, 2)});
  EXPECT_EQ(b12(a, a, c, c), 1);
}

TEST(CarryGeneratorTest, IsTheBoundaryOfTheSectionCoordinate) {
  SplitMix64 rng(44);
  for (std::size_t i = 0; i < 3; ++i) {
    RealCochain s = section_coordinate(i, 3);
    IntCochain b = b_generator(i, 3);
    for (int k = 0; k < 100; ++k) {
      auto p = random_points(rng, 3, 2);
      Integer v = b(PointSpan(p));
      EXPECT_TRUE(v == 0 || v == 1);
      EXPECT_EQ(boundary(s, PointSpan(p)), Rational(v));
    }
  }
}

TEST(BocksteinTest, TrivialCocycleHasZeroLift) {
  IntCochain d = bockstein_lift(trivial_phase_cochain(3));
  SplitMix64 rng(45);
  for (int i = 0; i < 20; ++i) {
    auto p = random_points(rng, 2, 4);
    EXPECT_EQ(d(PointSpan(p)), 0);
  }
}

TEST(BocksteinTest, OmegaOneIsBWedgeB) {
  IntCochain d = bockstein_lift(omega_one_dim_cochain(1));
  IntCochain bb = cup_bb(0, 0, 1);
  SplitMix64 rng(46);
  for (int i = 0; i < 500; ++i) {
    auto p = random_points(rng, 1, 4);
    EXPECT_EQ(d(PointSpan(p)), bb(PointSpan(p)));
  }
}

TEST(BocksteinTest, A2Identity) {
  IntCochain d = bockstein_lift(AnomalyCocycle(lattices::a2(), Sign::minus).cochain());
  IntCochain b11 = cup_bb(0, 0, 2), b22 = cup_bb(1, 1, 2), b12 = cup_bb(0, 1, 2);
  SplitMix64 rng(47);
  for (int i = 0; i < 500; ++i) {
    auto p = random_points(rng, 2, 4);
    PointSpan x(p);
    EXPECT_EQ(d(x), b11(x) + b22(x) - b12(x));
  }
}

TEST(BocksteinTest, DiagonalFormsAndRandomForms) {
  SplitMix64 rng(48);
  std::vector<IntMatrix> grams;
  for (long m = 1; m <= 4; ++m) grams.push_back(IntMatrix{{2 * m}});
  for (int t = 0; t < 8; ++t) grams.push_back(anomaly::testing::random_even_symmetric(rng, 1 + rng.below(3), 4));
  for (const auto& g : grams) {
    IntCochain c = gram_pairing_cochain(g);
    IntCochain dm = bockstein_lift(AnomalyCocycle(g, Sign::minus).cochain());
    IntCochain dp = bockstein_lift(AnomalyCocycle(g, Sign::plus).cochain());
    for (int i = 0; i < 80; ++i) {
      auto p = random_points(rng, g.rows(), 4);
      PointSpan x(p);
      EXPECT_EQ(dm(x), c(x)) << to_string(g);
      EXPECT_EQ(dp(x), -c(x)) << to_string(g);
    }
  }
}

TEST(BocksteinTest, NonCocycleIsRejected) {
  PhaseCochain w = AnomalyCocycle(IntMatrix{{2}}, Sign::minus).cochain();
  PhaseCochain bad = multiply(w, PhaseCochain{{3, [](PointSpan) { return Phase(make_rational(1, 3)); }, "c"},
                                              [](PointSpan) { return make_rational(1, 6); }});
  IntCochain d = bockstein_lift(bad);
  TorusPoint h = pt({q(1, 2)});
  try {
    d(h, h, h, h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::lift_consistency);
  }
}

TEST(PairingTest, Examples) {
  IntCochain c2 = gram_pairing_cochain(IntMatrix{{2}}), bb = cup_bb(0, 0, 1);
  IntCochain ca = gram_pairing_cochain(lattices::a2());
  IntCochain b11 = cup_bb(0, 0, 2), b22 = cup_bb(1, 1, 2), b12 = cup_bb(0, 1, 2);
  IntCochain zero = gram_pairing_cochain(IntMatrix(2, 2));
  SplitMix64 rng(49);
  for (int i = 0; i < 200; ++i) {
    auto p1 = random_points(rng, 1, 4);
    EXPECT_EQ(c2(PointSpan(p1)), bb(PointSpan(p1)));
    auto p2 = random_points(rng, 2, 4);
    PointSpan x(p2);
    EXPECT_EQ(ca(x), b11(x) + b22(x) - b12(x));
    EXPECT_EQ(zero(x), 0);
  }
}

TEST(CarryCochainTest, ZeroSecondFormGivesZero) {
  IntCochain k = carry_cochain(lattices::a2(), IntMatrix(2, 2), Sign::minus);
  SplitMix64 rng(50);
  for (int i = 0; i < 50; ++i) {
    auto p = random_points(rng, 2, 3);
    EXPECT_EQ(k(PointSpan(p)), 0);
  }
}

TEST(CarryCochainTest, AdditivityIdentity) {
  SplitMix64 rng(51);
  std::vector<std::pair<IntMatrix, IntMatrix>> pairs{{IntMatrix{{2}}, IntMatrix{{2}}},
                                                     {lattices::a2(), lattices::scaled_identity(2, 2)}};
  for (int t = 0; t < 4; ++t) {
    const std::size_t n = 1 + rng.below(3);
    pairs.emplace_back(anomaly::testing::random_even_symmetric(rng, n, 4), anomaly::testing::random_even_symmetric(rng, n, 4));
  }
  for (const auto& [g1, g2] : pairs)
    for (Sign s : {Sign::plus, Sign::minus}) {
      IntCochain k = carry_cochain(g1, g2, s);
      IntCochain d1 = bockstein_lift(AnomalyCocycle(g1, s).cochain(), LiftMode::normalized);
      IntCochain d2 = bockstein_lift(AnomalyCocycle(g2, s).cochain(), LiftMode::normalized);
      IntCochain d12 = bockstein_lift(AnomalyCocycle(g1 + g2, s).cochain(), LiftMode::normalized);
      for (int i = 0; i < 100; ++i) {
        auto p = random_points(rng, g1.rows(), 4);
        PointSpan x(p);
        EXPECT_EQ(d12(x), d1(x) + d2(x) - boundary(k, x));
      }
    }
}

TEST(CertificateTest, HoldsForRandomForms) {
  SplitMix64 rng(52);
  for (int t = 0; t < 8; ++t) {
    const std::size_t n = 1 + rng.below(4);
    IntMatrix g = anomaly::testing::random_even_symmetric(rng, n, 3);
    for (Sign s : {Sign::plus, Sign::minus}) {
      CoboundaryCertificate cert = coboundary_certificate(g, s);
      EXPECT_EQ(resum(cert.terms, n), g);
      IntCochain dn = bockstein_lift(AnomalyCocycle(g, s).cochain(), LiftMode::normalized);
      IntCochain c = gram_pairing_cochain(g);
      const int sg = exponent_sign(s);
      for (int i = 0; i < 40; ++i) {
        auto p = random_points(rng, n, 4);
        PointSpan x(p);
        EXPECT_EQ(dn(x) - sg * c(x), boundary(cert.eta, x)) << to_string(g);
      }
    }
  }
}
