#pragma once

// Secret key agreement by one-way public discussion, reduced to a wiretap
// channel: Alice publishes x' = x - a for a codeword x, which turns her
// correlation with Bob and Eve into two general additive channels.

#include <cstdint>
#include <optional>

#include "rpa/prob.hpp"
#include "rpa/wiretap.hpp"

namespace rpa {

struct KeyAgreementInstance {
  /// Validates that both joints share the A-marginal and that the module
  /// has |A| elements.
  KeyAgreementInstance(JointDist ab, JointDist ae, Module group);

  /// Joints from a prior on A and channels A -> B, A -> E.
  static KeyAgreementInstance from_channels(const Dist& pa, const Channel& wb, const Channel& we, Module group);

  JointDist ab;
  JointDist ae;
  Module group;
};

KeyAgreementInstance iid_power(const KeyAgreementInstance& inst, std::size_t n);

struct InducedChannels {
  /// W^B_x(b, x') = P^{AB}(x - x', b); output index b + |B| x'.
  Channel bob;
  /// W^E_x(e, x') = P^{AE}(x - x', e); output index e + |E| x'.
  Channel eve;
};

InducedChannels induced_channels(const KeyAgreementInstance& inst);

struct KeyRate {
  /// H(A|E) - H(A|B)
  double rate;
  /// I(P_mix : W^B) - I(P_mix : W^E) through the induced channels.
  double via_channels;
};

/// Throws Inconsistent when the two computations differ by more than 1e-9.
KeyRate key_rate(const KeyAgreementInstance& inst);

/// 2 min_s (ML)^s |A|^{-s} e^{-(1+s) Ht_{1/(1+s)}(A|B)}, the order-below-one
/// quantity taken in Gallager form.
Optimum keyagree_eps_bound(const KeyAgreementInstance& inst, double m, double l);
/// 2 min_s |A|^s e^{-Ht_{1+s}(A|E)} / (s L^s).
Optimum keyagree_ie_bound(const KeyAgreementInstance& inst, double l);

struct Transcript {
  std::uint64_t seed;
  std::uint64_t x_prime;
  std::uint64_t decoded_key;
  std::uint64_t true_key;
};

struct ProtocolReport {
  CodePerformance performance;
  double rhs_eps;
  double rhs_ie;
  /// log|A| - H(A|E): Eve's information for the deterministic full code;
  /// equal to I(A:E) when P^A is uniform.
  double reduction_ie;
  double mutual_information_ae;
  Transcript transcript;
};

/// The pair must have q^n = |A| and the instance's module must be F_q^n.
ProtocolReport run_protocol(const KeyAgreementInstance& inst, const LinearCodePair& pair, std::uint64_t seed);

}  // namespace rpa
