#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rpa/entropy.hpp"
#include "rpa/error.hpp"
#include "rpa/wiretap.hpp"

namespace rpa {
namespace {

std::vector<double> s_tenths() {
  std::vector<double> s;
  for (int i = 1; i <= 10; ++i) s.push_back(0.1 * i);
  return s;
}

std::vector<FqVector> identity_generator(std::size_t n) {
  return LinearCodePair::full_space(2, n, ToeplitzSeed::from_index(2, n, 0, 0)).generator;
}

// Hamming [7,4] in systematic form.
std::vector<FqVector> hamming_generator() {
  return {{1, 0, 0, 0, 1, 1, 0}, {0, 1, 0, 0, 1, 0, 1}, {0, 0, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}};
}

TEST(Thm3Bounds, DegenerateCode) {
  const Channel bob = Channel::bsc(0.05), eve = Channel::bsc(0.2);
  const Thm3Bounds b = thm3_bounds(1, 1, bob, eve, Dist::uniform(2));
  EXPECT_LE(b.eps_bound, 2.0);
  // psi'(1) < 1 here, so e^psi / s is still decreasing at s = 1.
  EXPECT_DOUBLE_EQ(b.ie_s, 1.0);
  EXPECT_NEAR(b.ie_bound, 2.0 * std::exp(psi(1.0, eve, Dist::uniform(2))), 1e-12);
}

TEST(Thm3Bounds, LeakageVanishesWithSacrifice) {
  const Channel eve = Channel::bsc(0.2);
  double prev = thm3_bounds(2, 1, eve, eve, Dist::uniform(2)).ie_bound;
  for (double l : {1e2, 1e4, 1e8}) {
    const double cur = thm3_bounds(2, l, eve, eve, Dist::uniform(2)).ie_bound;
    EXPECT_LT(cur, prev);
    prev = cur;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(Thm3Bounds, IidFormMatchesBlockChannel) {
  const Channel bob = Channel::bsc(0.05), eve = Channel::bsc(0.2);
  const Thm3Bounds block = thm3_bounds(4, 4, iid_power(bob, 8), iid_power(eve, 8), Dist::uniform(256));
  const Thm3Bounds iid = thm3_bounds_iid(4, 4, 8, bob, eve, Dist::uniform(2));
  EXPECT_NEAR(block.ie_bound, iid.ie_bound, 1e-10);
  EXPECT_NEAR(block.eps_bound, iid.eps_bound, 1e-10);
  EXPECT_TRUE(std::isfinite(iid.ie_bound));
}

TEST(LinearCodePair, RankAndSubcode) {
  EXPECT_EQ(generator_rank(2, hamming_generator()), 4u);
  EXPECT_EQ(generator_rank(3, {{1, 2, 0}, {2, 1, 0}}), 1u);
  const LinearCodePair bad{2, 3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, ToeplitzSeed::from_index(2, 3, 1, 0)};
  EXPECT_THROW(build_coset_code(bad, Channel::bsc(0.1)), Error);
  const LinearCodePair big = LinearCodePair::full_space(2, 15, ToeplitzSeed::from_index(2, 15, 1, 0));
  try {
    build_coset_code(big, Channel::bsc(0.1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}

TEST(BuildCosetCode, DegenerateSacrifice) {
  const Channel bob = Channel::bsc(0.1);
  const WiretapCode plain = build_coset_code(LinearCodePair::full_space(2, 3, ToeplitzSeed::from_index(2, 3, 0, 0)), bob);
  EXPECT_EQ(plain.messages, 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_DOUBLE_EQ(plain.encoders[i][i], 1.0);

  const WiretapCode one = build_coset_code(LinearCodePair::full_space(2, 3, ToeplitzSeed::from_index(2, 3, 3, 0)), bob);
  EXPECT_EQ(one.messages, 1u);
  for (std::size_t x = 0; x < 8; ++x) EXPECT_DOUBLE_EQ(one.encoders[0][x], 0.125);
}

TEST(BuildCosetCode, CosetsRoundTrip) {
  for (std::uint64_t si = 0; si < 4; ++si) {
    const ToeplitzSeed seed = ToeplitzSeed::from_index(2, 3, 1, si);
    const WiretapCode code = build_coset_code(LinearCodePair::full_space(2, 3, seed), Channel::identity(2));
    ASSERT_EQ(code.messages, 4u);
    std::vector<int> owner(8, -1);
    for (std::size_t i = 0; i < 4; ++i) {
      int size = 0;
      for (std::size_t x = 0; x < 8; ++x) {
        if (code.encoders[i][x] == 0.0) continue;
        EXPECT_DOUBLE_EQ(code.encoders[i][x], 0.5);
        EXPECT_EQ(owner[x], -1);
        owner[x] = static_cast<int>(i);
        ++size;
        EXPECT_EQ(encode_vector(toeplitz_apply(seed, decode_vector(x, 2, 3)), 2), i);
        EXPECT_EQ(code.decoder[x], i);
      }
      EXPECT_EQ(size, 2);
    }
  }
}

TEST(BuildCosetCode, NoiselessRecoveryWithProperSubcode) {
  for (std::uint64_t si = 0; si < 8; ++si) {
    const LinearCodePair pair{2, 7, hamming_generator(), ToeplitzSeed::from_index(2, 4, 2, si)};
    const WiretapCode code = build_coset_code(pair, Channel::identity(2));
    const CodePerformance perf = evaluate_code(code, iid_power(Channel::identity(2), 7), iid_power(Channel::bsc(0.3), 7));
    EXPECT_EQ(perf.eps_b, 0.0);
    EXPECT_LE(perf.ie, std::log(4.0));
  }
}

TEST(Decoders, SyndromeAgreesWithMlOnPerfectCode) {
  const LinearCodePair ml{2, 7, hamming_generator(), ToeplitzSeed::from_index(2, 4, 1, 5)};
  LinearCodePair syn = ml;
  syn.decoder = DecoderKind::syndrome;
  const Channel bob = Channel::bsc(0.1);
  EXPECT_EQ(build_coset_code(ml, bob).decoder, build_coset_code(syn, bob).decoder);
  const std::vector<std::uint64_t> not_linear{0, 1, 3};
  EXPECT_THROW(syndrome_decoder(2, not_linear), Error);
}

TEST(EvaluateCode, Trivial) {
  const LinearCodePair pair = LinearCodePair::full_space(2, 4, ToeplitzSeed::from_index(2, 4, 2, 3));
  const Channel bob = iid_power(Channel::bsc(0.05), 4);
  const WiretapCode code = build_coset_code(pair, bob);
  EXPECT_NEAR(evaluate_code(code, bob, Channel::constant(16, Dist::uniform(5))).ie, 0.0, 1e-15);

  const WiretapCode clean = build_coset_code(pair, Channel::identity(16));
  EXPECT_EQ(evaluate_code(clean, Channel::identity(16), bob).eps_b, 0.0);
}

TEST(EvaluateCode, MatchesMutualInformationOfMessageAndOutput) {
  const Channel bob = iid_power(Channel::bsc(0.05), 4), eve = iid_power(Channel::bsc(0.2), 4);
  const LinearCodePair pair = LinearCodePair::full_space(2, 4, ToeplitzSeed::from_index(2, 4, 2, 6));
  const WiretapCode code = build_coset_code(pair, bob);
  std::vector<double> t(4 * 16, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t x = 0; x < 16; ++x)
      for (std::size_t z = 0; z < 16; ++z) t[i * 16 + z] += 0.25 * code.encoders[i][x] * eve(x, z);
  const CodePerformance perf = evaluate_code(code, bob, eve);
  EXPECT_NEAR(perf.ie, testing::mutual_information_direct(t, 4, 16), 1e-14);
  EXPECT_GT(perf.eps_b, 0.0);
  EXPECT_LT(perf.eps_b, 0.25);
}

TEST(EvaluateCode, EveRelabelingInvariance) {
  const Channel bob = iid_power(Channel::bsc(0.05), 4), eve = iid_power(Channel::bsc(0.2), 4);
  const WiretapCode code = build_coset_code(LinearCodePair::full_space(2, 4, ToeplitzSeed::from_index(2, 4, 1, 2)), bob);
  std::vector<double> permuted(16 * 16);
  for (std::size_t x = 0; x < 16; ++x)
    for (std::size_t z = 0; z < 16; ++z) permuted[x * 16 + (z * 7 + 3) % 16] = eve(x, z);
  const Channel eve2(Alphabet(16), Alphabet(16), permuted);
  EXPECT_NEAR(evaluate_code(code, bob, eve).ie, evaluate_code(code, bob, eve2).ie, 1e-14);
}

TEST(CosetBound, Examples) {
  // Noiseless Eve with every symbol sacrificed: vacuous bound 1/s.
  const AdditiveSpec noiseless(Module::vector_space(2, 3), Dist::point_mass(8, 0));
  for (double s : s_tenths()) EXPECT_NEAR(coset_bound(noiseless, 8, s), 1.0 / s, 1e-12);
  EXPECT_NEAR(coset_bound_scan(noiseless, 8, s_tenths()).best, 1.0, 1e-12);
  const AdditiveSpec uniform_noise(Module::vector_space(2, 3), Dist::uniform(8));
  for (double s : s_tenths()) EXPECT_NEAR(coset_bound(uniform_noise, 8, s), std::pow(8.0, -s) / s, 1e-12);

  const AdditiveSpec eve4 = iid_power(AdditiveSpec(Module::cyclic(2), Dist::bernoulli(0.2)), 4);
  EXPECT_NEAR(coset_bound(eve4, 4, 1.0), 4.0 * std::pow(0.68, 4), 1e-12);
  EXPECT_NEAR(coset_bound(eve4, 4, 1.0), 0.8553, 1e-4);
  EXPECT_THROW(coset_bound(eve4, 4, 0.0), Error);
  EXPECT_THROW(coset_bound(eve4, 4, 1.1), Error);
}

TEST(CosetBound, GeneralFormMatchesAdditiveOnFullSpace) {
  const AdditiveSpec eve4 = iid_power(AdditiveSpec(Module::cyclic(2), Dist::bernoulli(0.2)), 4);
  const LinearCodePair pair = LinearCodePair::full_space(2, 4, ToeplitzSeed::from_index(2, 4, 2, 0));
  for (double s : s_tenths()) EXPECT_NEAR(coset_bound(pair, Channel::bsc(0.2), s), coset_bound(eve4, 4, s), 1e-12);
}

TEST(CosetBound, SubcodeNeverWorseThanFullSpace) {
  const Channel eve = iid_power(Channel::bsc(0.2), 7);
  const LinearCodePair pair{2, 7, hamming_generator(), ToeplitzSeed::from_index(2, 4, 2, 0)};
  const std::vector<FqVector> repetition{{1, 1, 1, 1, 1, 1, 1}};
  const std::vector<FqVector> parity{{1, 1, 0, 0, 0, 0, 0}, {0, 1, 1, 0, 0, 0, 0}};
  for (double s : s_tenths()) {
    const double full = psi(s, eve, Dist::uniform(128));
    for (const auto& g : {hamming_generator(), repetition, parity}) {
      std::vector<double> w(128, 0.0);
      const std::size_t m = g.size();
      const LinearCodePair c{2, 7, g, ToeplitzSeed::from_index(2, m, 0, 0)};
      for (std::uint64_t v = 0; v < (1u << m); ++v) w[c.codeword_index(decode_vector(v, 2, m))] = 1.0;
      EXPECT_LE(psi(s, eve, make_dist(w)), full + 1e-12);
    }
  }
}

// Average over all seeds for the 4-bit code, as in the end-to-end check.
TEST(EnsembleAverage, DominatedByCosetBoundAndMonotone) {
  const Channel bob = Channel::bsc(0.05), eve = Channel::bsc(0.2);
  const AdditiveSpec eve4 = iid_power(AdditiveSpec(Module::cyclic(2), Dist::bernoulli(0.2)), 4);
  double prev = std::log(16.0) + 1.0;
  for (std::size_t k = 0; k <= 3; ++k) {
    const EnsembleAverage avg = ensemble_average(2, 4, identity_generator(4), k, bob, eve);
    EXPECT_TRUE(avg.exhaustive);
    EXPECT_EQ(avg.seeds, 8u);
    for (double s : s_tenths()) EXPECT_LE(avg.ie, coset_bound(eve4, std::ldexp(1.0, static_cast<int>(k)), s) + 1e-9);
    EXPECT_LE(avg.ie, prev + 1e-12);
    prev = avg.ie;
  }
}

TEST(EnsembleAverage, SamplesBeyondCap) {
  const EnsembleAverage avg = ensemble_average(2, 4, identity_generator(4), 2, Channel::bsc(0.05), Channel::bsc(0.2), 4, 16, 3);
  EXPECT_FALSE(avg.exhaustive);
  EXPECT_EQ(avg.seeds, 16u);
  EXPECT_EQ(avg.ie_by_seed.size(), 16u);
}

TEST(RandomCoding, MarkovStepLeavesGoodCodes) {
  const Channel bob = iid_power(Channel::bsc(0.05), 3), eve = iid_power(Channel::bsc(0.2), 3);
  const RandomCodingDemo demo = random_coding_demo(2, 2, bob, eve, Dist::uniform(8), 200, 11);
  EXPECT_EQ(demo.codes, 200u);
  EXPECT_GT(demo.good_fraction, 0.0);
  EXPECT_GE(demo.mean_ie, 0.0);
  EXPECT_LE(demo.mean_eps_b, 1.0);
  EXPECT_TRUE(std::isfinite(demo.ie_bound));
}

}  // namespace
}  // namespace rpa
