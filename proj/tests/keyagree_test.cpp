#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rpa/entropy.hpp"
#include "rpa/error.hpp"
#include "rpa/exponents.hpp"
#include "rpa/keyagree.hpp"

namespace rpa {
namespace {

using testing::TestRng;

KeyAgreementInstance bit_instance() {
  return KeyAgreementInstance::from_channels(Dist::uniform(2), Channel::bsc(0.05), Channel::bsc(0.2), Module::cyclic(2));
}

double h2(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

TEST(KeyAgreementInstance, Validation) {
  const JointDist ab = join(Dist::uniform(2), Channel::bsc(0.1));
  const JointDist skew = join(Dist::bernoulli(0.3), Channel::bsc(0.1));
  EXPECT_THROW(KeyAgreementInstance(ab, skew, Module::cyclic(2)), Error);
  try {
    KeyAgreementInstance(ab, ab, Module::cyclic(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GroupLawMismatch);
  }
}

TEST(InducedChannels, StructureOnRandomJoints) {
  TestRng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    const Dist pa = testing::random_dist(rng, 3);
    const Channel wb = testing::random_channel(rng, 3, 2), we = testing::random_channel(rng, 3, 4);
    const KeyAgreementInstance inst = KeyAgreementInstance::from_channels(pa, wb, we, Module::cyclic(3));
    const InducedChannels w = induced_channels(inst);
    ASSERT_EQ(w.bob.output_count(), 6u);
    ASSERT_EQ(w.eve.output_count(), 12u);
    for (std::size_t x = 0; x < 3; ++x) {
      double total = 0.0;
      for (std::size_t xp = 0; xp < 3; ++xp) {
        const std::size_t a = (x + 3 - xp) % 3;
        for (std::size_t b = 0; b < 2; ++b) {
          EXPECT_DOUBLE_EQ(w.bob(x, b + 2 * xp), inst.ab.at(a, b));
          // Translating the input translates the public coordinate.
          EXPECT_DOUBLE_EQ(w.bob(x, b + 2 * xp), w.bob(0, b + 2 * ((xp + 3 - x) % 3)));
          total += w.bob(x, b + 2 * xp);
        }
      }
      EXPECT_NEAR(total, 1.0, 1e-15);
    }
  }
}

TEST(InducedChannels, Trivial) {
  const KeyAgreementInstance same =
      KeyAgreementInstance::from_channels(Dist::uniform(4), Channel::identity(4), Channel::identity(4), Module::cyclic(4));
  const InducedChannels w = induced_channels(same);
  for (std::size_t y = 0; y < w.bob.output_count(); ++y) {
    int hits = 0;
    for (std::size_t x = 0; x < 4; ++x) hits += w.bob(x, y) > 0.0;
    EXPECT_LE(hits, 1);
  }
  const KeyAgreementInstance blind = KeyAgreementInstance::from_channels(
      Dist::uniform(4), Channel::identity(4), Channel::constant(4, Dist::uniform(3)), Module::cyclic(4));
  EXPECT_NEAR(mutual_information(join(Dist::uniform(4), induced_channels(blind).eve)), 0.0, 1e-15);
}

TEST(KeyRate, Examples) {
  EXPECT_NEAR(key_rate(bit_instance()).rate, h2(0.2) - h2(0.05), 1e-12);
  EXPECT_NEAR(key_rate(bit_instance()).rate, 0.301887, 1e-6);

  const Dist pa = make_dist(std::vector<double>{0.5, 0.2, 0.2, 0.1});
  const KeyAgreementInstance open = KeyAgreementInstance::from_channels(
      pa, Channel::identity(4), Channel::constant(4, Dist::uniform(2)), Module::cyclic(4));
  EXPECT_NEAR(key_rate(open).rate, shannon(pa), 1e-12);
  const KeyAgreementInstance leaky =
      KeyAgreementInstance::from_channels(pa, Channel::constant(4, pa), Channel::identity(4), Module::cyclic(4));
  EXPECT_LE(key_rate(leaky).rate, 1e-12);
}

TEST(KeyRate, ShiftCovariance) {
  TestRng rng(2);
  const Dist pa = testing::random_dist(rng, 4);
  const Channel wb = testing::random_channel(rng, 4, 3), we = testing::random_channel(rng, 4, 2);
  const KeyAgreementInstance base = KeyAgreementInstance::from_channels(pa, wb, we, Module::cyclic(4));
  std::vector<double> ab(12), ae(8);
  for (std::size_t a = 0; a < 4; ++a) {
    const std::size_t t = (a + 1) % 4;
    for (std::size_t b = 0; b < 3; ++b) ab[t * 3 + b] = base.ab.at(a, b);
    for (std::size_t e = 0; e < 2; ++e) ae[t * 2 + e] = base.ae.at(a, e);
  }
  const KeyAgreementInstance moved(JointDist(Alphabet(4), Alphabet(3), ab), JointDist(Alphabet(4), Alphabet(2), ae),
                                   Module::cyclic(4));
  EXPECT_NEAR(key_rate(base).rate, key_rate(moved).rate, 1e-14);
  EXPECT_NEAR(keyagree_ie_bound(base, 2).value, keyagree_ie_bound(moved, 2).value, 1e-12);
  EXPECT_NEAR(keyagree_eps_bound(base, 2, 2).value, keyagree_eps_bound(moved, 2, 2).value, 1e-12);
}

TEST(KeyAgree, PhiIdentityForBob) {
  TestRng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const KeyAgreementInstance inst = KeyAgreementInstance::from_channels(
        testing::random_dist(rng, 4), testing::random_channel(rng, 4, 3), testing::random_channel(rng, 4, 2),
        Module::vector_space(2, 2));
    const Channel bob = induced_channels(inst).bob;
    for (int i = 1; i <= 10; ++i) {
      const double s = 0.1 * i;
      const double lhs = phi(-s, bob, Dist::uniform(4));
      const double rhs = -s * std::log(4.0) - (1.0 + s) * cond_renyi_tilde_gallager(inst.ab, -s / (1.0 + s));
      EXPECT_NEAR(lhs, rhs, 1e-10);
    }
  }
}

TEST(RunProtocol, NoiselessBob) {
  const KeyAgreementInstance inst = KeyAgreementInstance::from_channels(
      Dist::uniform(4), Channel::identity(4), iid_power(Channel::bsc(0.2), 2), Module::vector_space(2, 2));
  const LinearCodePair pair = LinearCodePair::full_space(2, 2, ToeplitzSeed::from_index(2, 2, 0, 0));
  const ProtocolReport r = run_protocol(inst, pair, 9);
  EXPECT_EQ(r.performance.eps_b, 0.0);
  EXPECT_EQ(r.transcript.decoded_key, r.transcript.true_key);
  EXPECT_LE(r.performance.ie, r.rhs_ie);
  EXPECT_NEAR(key_rate(inst).rate, conditional_shannon(inst.ae), 1e-12);
}

TEST(RunProtocol, EveSeesEverything) {
  const KeyAgreementInstance inst = KeyAgreementInstance::from_channels(
      Dist::uniform(4), Channel::identity(4), Channel::identity(4), Module::vector_space(2, 2));
  const ProtocolReport r = run_protocol(inst, LinearCodePair::full_space(2, 2, ToeplitzSeed::from_index(2, 2, 1, 1)), 1);
  EXPECT_NEAR(r.performance.ie, std::log(2.0), 1e-14);
  EXPECT_GE(r.rhs_ie, std::log(2.0));
}

TEST(RunProtocol, BitInstanceBoundAndReduction) {
  const KeyAgreementInstance inst = iid_power(bit_instance(), 4);
  for (std::uint64_t si = 0; si < 8; ++si) {
    const ProtocolReport r = run_protocol(inst, LinearCodePair::full_space(2, 4, ToeplitzSeed::from_index(2, 4, 2, si)), si);
    // Right-hand side from single-letter quantities.
    double best = 1e300;
    for (int i = 1; i <= 1000; ++i) {
      const double s = 0.001 * i;
      const double v = std::exp(4 * s * std::log(2.0) - 4 * cond_renyi_tilde(bit_instance().ae, s)) / (s * std::pow(4.0, s));
      best = std::min(best, 2.0 * v);
    }
    EXPECT_NEAR(r.rhs_ie, best, 1e-5);
    EXPECT_LE(r.performance.ie, r.rhs_ie);
    EXPECT_LE(r.performance.ie, std::log(4.0));
  }
  const ProtocolReport full = run_protocol(inst, LinearCodePair::full_space(2, 4, ToeplitzSeed::from_index(2, 4, 0, 0)), 0);
  EXPECT_NEAR(full.performance.ie, full.reduction_ie, 1e-9);
  EXPECT_NEAR(full.performance.ie, full.mutual_information_ae, 1e-9);
}

TEST(RunProtocol, ReductionIsLogAMinusConditionalEntropy) {
  const Dist pa = make_dist(std::vector<double>{0.4, 0.3, 0.2, 0.1});
  const KeyAgreementInstance inst =
      KeyAgreementInstance::from_channels(pa, Channel::identity(4), iid_power(Channel::bsc(0.1), 2), Module::vector_space(2, 2));
  const ProtocolReport r = run_protocol(inst, LinearCodePair::full_space(2, 2, ToeplitzSeed::from_index(2, 2, 0, 0)), 0);
  EXPECT_NEAR(r.performance.ie, r.reduction_ie, 1e-12);
  EXPECT_GT(r.performance.ie, r.mutual_information_ae + 1e-3);
}

TEST(RunProtocol, RejectsMismatchedCode) {
  EXPECT_THROW(run_protocol(bit_instance(), LinearCodePair::full_space(2, 2, ToeplitzSeed::from_index(2, 2, 1, 0)), 0), Error);
}

}  // namespace
}  // namespace rpa
