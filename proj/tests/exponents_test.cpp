#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rpa/entropy.hpp"
#include "rpa/error.hpp"
#include "rpa/exponents.hpp"

namespace rpa {
namespace {

using testing::TestRng;

const double kLn2 = std::log(2.0);

AdditiveSpec bsc_spec(double p) { return AdditiveSpec(Module::cyclic(2), Dist::bernoulli(p)); }

Dist mix_like(const Dist& a, const Dist& b, double lambda) {
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = lambda * a[i] + (1.0 - lambda) * b[i];
  return make_dist(v);
}

TEST(Psi, Examples) {
  const Channel bsc = Channel::bsc(0.2);
  const Dist pmix = Dist::uniform(2);
  EXPECT_EQ(psi(0.0, bsc, pmix), 0.0);
  EXPECT_NEAR(psi(1.0, bsc, pmix), 0.307485, 1e-6);
  EXPECT_NEAR(psi(1.0, bsc, pmix), kLn2 + std::log(0.68), 1e-14);
  for (double s : {0.2, 0.9}) EXPECT_NEAR(psi(s, Channel::identity(5), Dist::uniform(5)), s * std::log(5.0), 1e-14);
  EXPECT_THROW(psi(1.2, bsc, pmix), Error);
}

TEST(Psi, MatchesDirectSum) {
  TestRng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Channel w = testing::random_channel(rng, 3, 4, 0.2);
    const Dist p = testing::random_dist(rng, 3, 0.2);
    for (double s : {0.1, 0.5, 1.0}) {
      EXPECT_NEAR(psi(s, w, p), testing::psi_direct(s, w, p), 1e-12);
      const double h = 1e-6;
      const double fd = (psi(std::min(1.0, s + h), w, p) - psi(s - h, w, p)) / (std::min(1.0, s + h) - (s - h));
      EXPECT_NEAR(psi_derivative(s, w, p), fd, 1e-6);
    }
  }
}

TEST(Phi, Examples) {
  const Channel bsc = Channel::bsc(0.2);
  const Dist pmix = Dist::uniform(2);
  EXPECT_EQ(phi(0.0, bsc, pmix), 0.0);
  EXPECT_NEAR(phi(0.5, Channel::identity(6), Dist::uniform(6)), 0.5 * std::log(6.0), 1e-14);
  EXPECT_NEAR(phi(0.5, bsc, pmix), 0.153742, 1e-6);
  EXPECT_THROW(phi(1.0, bsc, pmix), Error);
  EXPECT_THROW(phi(-1.5, bsc, pmix), Error);
}

TEST(Phi, MatchesDirectSum) {
  TestRng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Channel w = testing::random_channel(rng, 4, 3, 0.2);
    const Dist p = testing::random_dist(rng, 4, 0.2);
    for (double s : {-1.0, -0.4, 0.3, 0.9}) EXPECT_NEAR(phi(s, w, p), testing::phi_direct(s, w, p), 1e-12);
  }
}

TEST(GallagerErrorBound, Examples) {
  const Dist u4 = Dist::uniform(4);
  const Optimum id = gallager_error_bound(2, 1, Channel::identity(4), u4);
  EXPECT_NEAR(id.value, 0.5, 1e-9);
  EXPECT_NEAR(id.arg, 1.0, 1e-6);
  EXPECT_LE(gallager_error_bound(1, 1, Channel::bsc(0.1), Dist::uniform(2)).value, 1.0 + 1e-12);
  const Optimum noisy = gallager_error_bound(2, 1, Channel::constant(3, Dist::bernoulli(0.3)), Dist::uniform(3));
  EXPECT_NEAR(noisy.value, 1.0, 1e-12);
  EXPECT_NEAR(noisy.arg, 0.0, 1e-6);
}

TEST(ExponentPsi, Examples) {
  const Channel bsc = Channel::bsc(0.2);
  const Dist pmix = Dist::uniform(2);
  EXPECT_NEAR(exponent_e_psi(0.0, bsc, pmix).value, 0.0, 1e-15);
  EXPECT_NEAR(exponent_e_psi(0.192745, bsc, pmix).value, 0.0, 1e-10);
  const Optimum full = exponent_e_psi(kLn2, bsc, pmix);
  EXPECT_NEAR(full.value, 0.385662, 1e-6);
  EXPECT_NEAR(full.arg, 1.0, 1e-9);
}

TEST(ExponentPhi, Examples) {
  const Channel bsc = Channel::bsc(0.2);
  const Dist pmix = Dist::uniform(2);
  EXPECT_NEAR(exponent_e_phi(0.0, bsc, pmix).value, 0.0, 1e-15);
  EXPECT_NEAR(exponent_e_phi(kLn2, bsc, pmix).value, 0.192831, 1e-6);
}

TEST(ExponentPsi2, Examples) {
  const AdditiveSpec spec = bsc_spec(0.2);
  EXPECT_NEAR(exponent_e_psi2(kLn2, spec), 0.385662, 1e-6);
  const double h2 = renyi_tilde(spec.noise, 1.0);
  EXPECT_NEAR(exponent_e_psi2(kLn2 - h2, spec), 0.0, 1e-15);
  const JointDist side(Alphabet(2), Alphabet(2), {0.4, 0.1, 0.3, 0.2});
  EXPECT_THROW(exponent_e_psi2(0.5, AdditiveSpec(Module::cyclic(2), side.row_marginal(), side)), Error);
}

TEST(ExponentPsi2, MergesWithPsiAboveThreshold) {
  const AdditiveSpec spec = bsc_spec(0.2);
  const Channel w = realize_additive(spec);
  const Dist pmix = Dist::uniform(2);
  const double merge = psi2_merge_threshold(w, pmix);
  EXPECT_NEAR(merge, 0.388457, 1e-6);
  for (double r = merge; r <= 1.5; r += 0.05) EXPECT_NEAR(exponent_e_psi(r, w, pmix).value, exponent_e_psi2(r, spec), 1e-9);
  EXPECT_GT(exponent_e_psi(merge - 0.05, w, pmix).value, exponent_e_psi2(merge - 0.05, spec) + 1e-6);
}

TEST(ExponentCurves, PsiDominatesPhiOnAdditiveInstances) {
  TestRng rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const AdditiveSpec plain(Module::cyclic(3), testing::random_dist(rng, 3));
    const JointDist side = testing::random_joint(rng, 3, 2);
    const AdditiveSpec general(Module::cyclic(3), side.row_marginal(), side);
    for (const AdditiveSpec* spec : {&plain, &general}) {
      const Channel w = realize_additive(*spec);
      const Dist pmix = Dist::uniform(3);
      for (double r = 0.0; r <= 1.2; r += 0.1)
        EXPECT_GE(exponent_e_psi(r, w, pmix).value, exponent_e_phi(r, w, pmix).value - 1e-12);
    }
  }
}

TEST(ExponentCurves, NonDecreasingAndConvexInRate) {
  const auto rates = rate_linspace(0.0, kLn2, 60);
  const ExponentCurve c = exponent_curve(ExponentKind::ePsi, rates, bsc_spec(0.15));
  const ExponentCurve d = exponent_curve(ExponentKind::ePhi, rates, bsc_spec(0.15));
  for (const ExponentCurve* e : {&c, &d}) {
    for (std::size_t i = 1; i < rates.size(); ++i) EXPECT_GE(e->values[i], e->values[i - 1] - 1e-12);
    for (std::size_t i = 1; i + 1 < rates.size(); ++i)
      EXPECT_GE(e->values[i + 1] + e->values[i - 1] - 2 * e->values[i], -1e-9);
  }
}

TEST(Holder, PsiBelowPhi) {
  TestRng rng(4);
  std::uniform_real_distribution<double> u(0.0, 0.99);
  for (int trial = 0; trial < 100; ++trial) {
    const Channel w = testing::random_channel(rng, 3, 3, 0.1);
    const Dist p = testing::random_dist(rng, 3, 0.1);
    const double s = u(rng);
    EXPECT_LE(psi(s, w, p), phi(s, w, p) + 1e-12);
  }
}

TEST(ChordInequality, PhiConvexityRegimes) {
  TestRng rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Channel w = testing::random_channel(rng, 3, 4, 0.1);
    const Dist p1 = testing::random_dist(rng, 3);
    const Dist p2 = testing::random_dist(rng, 3);
    const double lambda = u(rng);
    const Dist pm = mix_like(p1, p2, lambda);
    const double neg = -u(rng);
    const double pos = 0.99 * u(rng);
    auto ephi = [&](double s, const Dist& p) { return std::exp(phi(s, w, p)); };
    EXPECT_LE(ephi(neg, pm), lambda * ephi(neg, p1) + (1 - lambda) * ephi(neg, p2) + 1e-10);
    EXPECT_GE(ephi(pos, pm), lambda * ephi(pos, p1) + (1 - lambda) * ephi(pos, p2) - 1e-10);
  }
}

// p -> e^{psi(s|W,p)} is not concave in general; this 3x4 instance breaks
// the chord inequality by about 2.7e-4 (confirmed in 50-digit arithmetic).
TEST(ChordInequality, PsiConcavityCounterexample) {
  const Channel w(Alphabet(3), Alphabet(4),
                  {0.30445878759747369, 0.58374911754708025, 0, 0.11179209485544607, 0.63693980061089817,
                   0.25812892724137237, 0.079713572008137418, 0.025217700139592032, 0.018381972381913962,
                   0.6337382666592164, 0.24067165840124877, 0.10720810255762091});
  const Dist p1 = make_dist(std::vector<double>{0.15754967970707257, 0.19944609760650212, 0.64300422268642532});
  const Dist p2 = make_dist(std::vector<double>{0.83434490505765513, 0.0070161057418146469, 0.15863898920053021});
  const double lambda = 0.42868938056710199, s = 0.76584455483363167;
  const double mixed = std::exp(psi(s, w, mix_like(p1, p2, lambda)));
  const double chord = lambda * std::exp(psi(s, w, p1)) + (1 - lambda) * std::exp(psi(s, w, p2));
  EXPECT_NEAR(mixed, 1.2089519597488721, 1e-12);
  EXPECT_NEAR(chord, 1.2092254890545183, 1e-12);
  EXPECT_LT(mixed, chord - 2e-4);
}

TEST(PaExponents, Examples) {
  const JointDist indep = product_joint(Dist::uniform(4), Dist::bernoulli(0.3));
  const PaExponents e = pa_exponents(indep, 0.5);
  EXPECT_NEAR(e.renyi, std::log(4.0) - 0.5, 1e-12);
  EXPECT_NEAR(e.renyi_s, 1.0, 1e-9);

  const JointDist bsc = join(Dist::uniform(2), Channel::bsc(0.2));
  const PaExponents f = pa_exponents(bsc, 0.3);
  EXPECT_GE(f.renyi, f.smooth);
  const PaExponents big = pa_exponents(bsc, 5.0);
  EXPECT_NEAR(big.renyi, 0.0, 1e-12);
  EXPECT_NEAR(big.smooth, 0.0, 1e-12);
}

TEST(PaExponents, RenyiAboveSmoothOnRandomJoints) {
  TestRng rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.5);
  for (int trial = 0; trial < 30; ++trial) {
    const JointDist j = testing::random_joint(rng, 4, 3, 0.1);
    const PaExponents e = pa_exponents(j, u(rng));
    EXPECT_GE(e.renyi, e.smooth - 1e-12);
  }
}

TEST(Taylor, Examples) {
  const TaylorCoeffs t = taylor_coeffs(Channel::bsc(0.2), Dist::uniform(2));
  EXPECT_NEAR(t.i1, 0.192745, 1e-6);
  const TaylorCoeffs z = taylor_coeffs(Channel::constant(3, Dist::bernoulli(0.4)), Dist::uniform(3));
  EXPECT_NEAR(z.i1, 0.0, 1e-15);
  EXPECT_NEAR(z.i2, 0.0, 1e-15);
  EXPECT_NEAR(z.i3, 0.0, 1e-15);
  EXPECT_NEAR(z.i3_tilde, 0.0, 1e-15);
  EXPECT_THROW(taylor_coeffs(Channel::identity(2), Dist::uniform(2)), Error);
}

TEST(Taylor, FourthOrderResidual) {
  TestRng rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    const Channel w = testing::random_channel(rng, 3, 3);
    const Dist p = testing::random_dist(rng, 3);
    const TaylorCoeffs t = taylor_coeffs(w, p);
    EXPECT_GE(t.i3_tilde, -1e-12);
    auto residual = [&](double s) {
      return std::abs(psi_sum_excess(s, w, p) - (t.i1 * s + t.i2 * s * s + t.i3 * s * s * s));
    };
    const double order = std::log(residual(1e-2) / residual(2.5e-3)) / std::log(4.0);
    EXPECT_GE(order, 3.7);
  }
}

TEST(AdditiveIdentities, Residuals) {
  const JointDist side(Alphabet(2), Alphabet(2), {0.5, 0.1, 0.15, 0.25});
  const AdditiveSpec general(Module::cyclic(2), side.row_marginal(), side);
  const AdditiveSpec z3(Module::cyclic(3), Dist(Alphabet(3), {0.7, 0.2, 0.1}));
  const AdditiveSpec flat(Module::cyclic(4), Dist::uniform(4));
  for (int i = 1; i <= 10; ++i) {
    const double s = 0.1 * i;
    for (const AdditiveSpec* spec : {&general, &z3}) {
      const AdditiveResiduals r = additive_identities(*spec, s);
      EXPECT_LT(r.psi, 1e-12);
      EXPECT_LT(r.phi, 1e-12);
    }
    const AdditiveResiduals b = additive_identities(bsc_spec(0.2), s);
    EXPECT_LT(b.psi, 1e-12);
    EXPECT_LT(b.phi, 1e-12);
    EXPECT_NEAR(psi(s, realize_additive(flat), Dist::uniform(4)), 0.0, 1e-15);
  }
  // The plain conditional does not make the phi identity exact when the
  // side-information marginal is skewed.
  EXPECT_GT(*additive_identities(general, 1.0).phi_plain_conditional, 1e-4);
}

TEST(Fig1, Constants) {
  const Fig1Data d = fig1(bsc_spec(0.2), rate_linspace(0.0, kLn2, 50));
  EXPECT_NEAR(d.threshold_psi, 0.192745, 1e-5);
  EXPECT_NEAR(d.threshold_phi, 0.192745, 1e-5);
  EXPECT_NEAR(d.threshold_psi2, kLn2 + std::log(0.68), 1e-9);
  EXPECT_NEAR(d.merge_threshold, 0.388457, 1e-6);
}

TEST(RateGrid, Inclusive) {
  const auto g = rate_grid(0.0, 0.5, 0.1);
  ASSERT_EQ(g.size(), 6u);
  EXPECT_NEAR(g.back(), 0.5, 1e-15);
  EXPECT_THROW(rate_grid(1.0, 0.0, 0.1), Error);
}

}  // namespace
}  // namespace rpa
