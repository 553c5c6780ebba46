#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rpa/entropy.hpp"
#include "rpa/error.hpp"
#include "rpa/privamp.hpp"

namespace rpa {
namespace {

using testing::TestRng;

// Average leakage from explicit Toeplitz tables, independent of HashFamily.
double toeplitz_avg_mi_direct(const JointDist& j, std::uint32_t q, std::size_t m, std::size_t k) {
  std::uint64_t seeds = 1, domain = 1, range = 1;
  for (std::size_t i = 0; i + 1 < m; ++i) seeds *= q;
  for (std::size_t i = 0; i < m; ++i) domain *= q;
  for (std::size_t i = 0; i < m - k; ++i) range *= q;
  double total = 0.0;
  for (std::uint64_t si = 0; si < seeds; ++si) {
    const ToeplitzSeed seed = ToeplitzSeed::from_index(q, m, k, si);
    std::vector<double> t(range * j.col_count(), 0.0);
    for (std::uint64_t a = 0; a < domain; ++a) {
      const std::uint64_t b = encode_vector(toeplitz_apply(seed, decode_vector(a, q, m)), q);
      for (std::size_t e = 0; e < j.col_count(); ++e) t[b * j.col_count() + e] += j.at(a, e);
    }
    total += testing::mutual_information_direct(t, range, j.col_count());
  }
  return total / static_cast<double>(seeds);
}

JointDist bsc_pair_joint() { return join(Dist::uniform(4), iid_power(Channel::bsc(0.2), 2)); }

TEST(Thm1Bound, Examples) {
  const JointDist indep = product_joint(Dist::uniform(4), Dist::bernoulli(0.3));
  EXPECT_NEAR(thm1_bound(indep, 2, 1.0), 0.5, 1e-14);
  const JointDist same = join(Dist::uniform(3), Channel::identity(3));
  EXPECT_NEAR(thm1_bound(same, 3, 1.0), 3.0, 1e-14);
  EXPECT_GT(thm1_bound(indep, 2, 1e-4), 1e3);
  EXPECT_THROW(thm1_bound(indep, 2, 0.0), Error);
  EXPECT_THROW(thm1_bound(indep, 2, 1.5), Error);
  EXPECT_NEAR(thm1_entropy_bound(indep, 2, 1.0), std::log(2.0) - 0.5, 1e-14);
}

TEST(Thm1Bound, BestIsInteriorMinimum) {
  const JointDist j = bsc_pair_joint();
  const BestBound best = thm1_best(j, 2);
  for (int i = 1; i <= 100; ++i) EXPECT_LE(best.value, thm1_bound(j, 2, 0.01 * i) + 1e-12);
  EXPECT_GT(best.s, 0.0);
}

TEST(ExactAvgLeakage, Examples) {
  TestRng rng(1);
  const JointDist prod = product_joint(testing::random_dist(rng, 4), testing::random_dist(rng, 3));
  EXPECT_NEAR(exact_avg_leakage(prod, permutation_family({0, 0, 1, 1}, 2)).avg_mi, 0.0, 1e-14);
  EXPECT_NEAR(exact_avg_leakage(prod, toeplitz_family(2, 2, 1)).avg_mi, 0.0, 1e-14);

  const JointDist same = join(Dist::uniform(4), Channel::identity(4));
  const Leakage full = exact_avg_leakage(same, permutation_family({0, 0, 1, 1}, 2));
  EXPECT_NEAR(full.avg_mi, std::log(2.0), 1e-14);
  EXPECT_TRUE(full.exact);
  EXPECT_EQ(full.members, 24u);

  const JointDist j = bsc_pair_joint();
  const Leakage l = exact_avg_leakage(j, toeplitz_family(2, 2, 1));
  EXPECT_NEAR(l.avg_mi, toeplitz_avg_mi_direct(j, 2, 2, 1), 1e-14);
  for (int i = 1; i <= 20; ++i) EXPECT_LE(l.avg_mi, thm1_bound(j, 2, 0.05 * i) + 1e-9);
}

TEST(ExactAvgLeakage, MatchesDirectEnumerationOnRandomJoints) {
  TestRng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const JointDist j = testing::random_joint(rng, 8, 3, 0.2);
    for (std::size_t k : {1u, 2u}) {
      const HashFamily f = toeplitz_family(2, 3, k);
      const Leakage l = exact_avg_leakage(j, f);
      EXPECT_NEAR(l.avg_mi, toeplitz_avg_mi_direct(j, 2, 3, k), 1e-13);
      const double m = static_cast<double>(f.range_size());
      for (int i = 1; i <= 20; ++i) {
        EXPECT_LE(l.avg_mi, thm1_bound(j, m, 0.05 * i) + 1e-9);
        EXPECT_GE(l.avg_cond_entropy, thm1_entropy_bound(j, m, 0.05 * i) - 1e-9);
      }
    }
  }
}

TEST(ExactAvgLeakage, SamplesWhenNotEnumerable) {
  const HashFamily f = toeplitz_family(2, 12, 4, 16);
  TestRng rng(3);
  std::vector<double> w(4096);
  for (auto& x : w) x = 1.0 + std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const Dist pa = make_dist(w);
  const JointDist j = join(pa, Channel::constant(4096, Dist::uniform(2)));
  const Leakage l = exact_avg_leakage(j, f, 64, 7);
  EXPECT_FALSE(l.exact);
  EXPECT_EQ(l.members, 64u);
  EXPECT_NEAR(l.avg_mi, 0.0, 1e-12);
  EXPECT_THROW(exact_avg_leakage(j, f, 0), Error);
}

TEST(CheckBound, Verdicts) {
  EXPECT_EQ(check_bound({0.1, 0, true, 1, 0, 0}, 0.2), BoundVerdict::holds);
  EXPECT_EQ(check_bound({0.3, 0, true, 1, 0, 0}, 0.2), BoundVerdict::violated);
  EXPECT_EQ(check_bound({0.1, 0, false, 10, 0.05, 0}, 0.2), BoundVerdict::inconclusive);
  EXPECT_EQ(check_bound({0.1, 0, false, 10, 0.001, 0}, 0.2), BoundVerdict::holds);
}

TEST(SmoothBound, Examples) {
  const JointDist same = join(Dist::uniform(4), Channel::identity(4));
  EXPECT_GE(smooth_bound(same, 2).value, 2.0);

  const JointDist indep = product_joint(Dist::uniform(8), Dist::bernoulli(0.4));
  const SmoothBound sb = smooth_bound(indep, 2);
  EXPECT_LE(sb.value, 2.0 / 8.0 + 2.0 * eta(2 * kSmoothEpsMin, std::log(16.0)).value + 1e-15);
  EXPECT_NEAR(sb.arg_eps, kSmoothEpsMin, 1e-18);
}

// Exhaustive eps search over a fine grid never beats the breakpoint search.
TEST(SmoothBound, BreakpointSearchIsExact) {
  TestRng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const JointDist j = testing::random_joint(rng, 4, 3, 0.1);
    const SmoothBound sb = smooth_bound(j, 2);
    const double a = std::log(8.0);
    for (double eps = kSmoothEpsMin; eps <= 0.5 / std::exp(1.0); eps += 1e-4) {
      const double v = 2.0 * std::exp(-smooth_min_entropy(j, eps)) + 2.0 * eta(2.0 * eps, a).value;
      EXPECT_GE(v, sb.value - 1e-12);
    }
  }
}

TEST(SmoothBound, RenyiBoundIsTighter) {
  TestRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const JointDist j = testing::random_joint(rng, 4, 3);
    EXPECT_GE(smooth_bound(j, 2).value, thm1_best(j, 2).value);
  }
}

TEST(ProofSteps, UniformToeplitz) {
  const ProofSteps p = thm1_proof_steps(Dist::uniform(4), toeplitz_family(2, 2, 1), 1.0);
  EXPECT_GE(p.worst_slack, -1e-12);
  const ProofSteps q = thm1_proof_steps(Dist::point_mass(4, 2), toeplitz_family(2, 2, 1), 0.5);
  EXPECT_GE(q.worst_slack, -1e-12);
  EXPECT_NEAR(q.jensen.slack, 0.0, 1e-15);
}

TEST(ProofSteps, RandomJointsAndFamilies) {
  TestRng rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const JointDist j4 = testing::random_joint(rng, 4, 3, 0.1);
    const JointDist j8 = testing::random_joint(rng, 8, 2, 0.1);
    for (double s : {0.1, 0.5, 1.0}) {
      EXPECT_GE(thm1_proof_steps(j4, permutation_family({0, 0, 1, 1}, 2), s).worst_slack, -1e-12);
      EXPECT_GE(thm1_proof_steps(j4, toeplitz_family(2, 2, 1), s).worst_slack, -1e-12);
      EXPECT_GE(thm1_proof_steps(j8, toeplitz_family(2, 3, 1), s).worst_slack, -1e-12);
    }
  }
}

TEST(ProofSteps, ConstantFamilyBreaksCollisionStep) {
  const HashFamily constant = HashFamily::explicit_list({{0, 0, 0, 0}}, 2);
  const ProofSteps p = thm1_proof_steps(Dist::uniform(4), constant, 1.0);
  EXPECT_LT(p.collision.slack, -0.2);
}

TEST(Watanabe, ClosedFormsMatchEnumeration) {
  const WatanabeReport w = watanabe_example(8, 0.25);
  const JointDist j = watanabe_joint(8, 0.25);
  const Dist mix = Dist::uniform(8);
  EXPECT_NEAR(w.d1, variational_distance(j, product_joint(mix, j.col_marginal())), 1e-15);
  EXPECT_NEAR(w.mi, testing::mutual_information_direct(j.table(), 8, 8), 1e-14);
  EXPECT_NEAR(w.d1_marginal, variational_distance(j.row_marginal(), mix), 1e-15);
}

TEST(Watanabe, LargeN) {
  const WatanabeReport w = watanabe_example_log2(16, 0.25);
  EXPECT_LE(w.d1, 0.5);
  EXPECT_NEAR(w.mi, 0.25 * 16 * std::log(2.0) - (0.5625 * std::log(0.75) + 0.4375 * std::log(1.75)), 1e-12);
  EXPECT_GE(w.mi_bits, 3.0);
  EXPECT_GE(w.mi, w.fano);
  EXPECT_GE(w.mi_bits, w.fano_bits);
  const WatanabeReport huge = watanabe_example_log2(64, 0.125);
  EXPECT_GT(huge.mi, 5.0);
  EXPECT_LE(huge.d1, 0.25);
}

TEST(Watanabe, SmallEpsVanishes) {
  const WatanabeReport w = watanabe_example_log2(40, std::ldexp(1.0, -30));
  EXPECT_LT(w.d1, 1e-8);
  EXPECT_LT(w.mi, 1e-7);
}

TEST(Watanabe, Errors) {
  EXPECT_THROW(watanabe_example(8, 0.3), Error);
  EXPECT_THROW(watanabe_example(8, 0.0), Error);
  EXPECT_THROW(watanabe_example_log2(65, 0.5), Error);
}

TEST(IidAdditivity, RenyiScalesWithBlockLength) {
  TestRng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const JointDist j = testing::random_joint(rng, 3, 2, 0.1);
    const JointDist j3 = iid_power(j, 3);
    for (double s : {0.2, 0.6, 1.0}) EXPECT_NEAR(cond_renyi_tilde(j3, s), 3.0 * cond_renyi_tilde(j, s), 1e-10);
  }
}

TEST(Pinsker, SquareRootReadingHolds) {
  TestRng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const PinskerChain c = pinsker_chain(testing::random_joint(rng, 4, 3, 0.1));
    EXPECT_LE(c.d1_target, c.rhs_sqrt + 1e-12);
  }
}

}  // namespace
}  // namespace rpa
