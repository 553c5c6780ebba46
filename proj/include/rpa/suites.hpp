#pragma once

// Exhaustive and seeded invariant suites shared by the `verify` command and
// the acceptance driver. Each suite counts checks, records violations
// beyond its tolerance and keeps the instance with the smallest slack.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rpa/fixtures.hpp"
#include "rpa/hashfam.hpp"
#include "rpa/prob.hpp"

namespace rpa {

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;
  nlohmann::json worst;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const noexcept { return violations == 0; }
  /// Records one inequality check with slack = rhs - lhs.
  void record(double slack, double tol, const std::function<nlohmann::json()>& describe);
};

std::vector<double> s_grid(double step, double hi = 1.0);

/// verify_universal2, verify_balanced and exact kernel membership
/// q^{-(m-k)} for every vector with a nonzero first block.
SuiteResult universal2_suite(std::uint32_t q, std::size_t m, std::size_t k);

/// Built-in families on an A of the given size: every Toeplitz (2, m, k)
/// when |A| = 2^m, and the permutation family of {0,0,1,1} when |A| = 4.
std::vector<HashFamily> builtin_families(std::size_t domain);

/// Exact average leakage against thm1_bound at each s, slack >= -tol.
SuiteResult thm1_suite(const std::vector<Fixture>& fixtures,
                       const std::function<std::vector<HashFamily>(std::size_t)>& families,
                       const std::vector<double>& s_values, double tol = 1e-9);

/// The four chained proof inequalities on every fixture and family; the
/// details carry the collision slack of the constant family, which must be
/// negative.
SuiteResult proof_step_suite(const std::vector<Fixture>& fixtures, const std::vector<double>& s_values,
                             double tol = 1e-12);

/// psi <= phi on random (W, p, s).
SuiteResult holder_suite(std::size_t samples, std::uint64_t seed, double tol = 1e-12);

/// Chord inequalities in p: phi convex for s < 0, concave for 0 < s < 1,
/// and e^psi concave for 0 <= s <= 1. Details split the counts by regime.
SuiteResult lemma1_suite(std::size_t samples, std::uint64_t seed, double tol = 1e-10);

/// Seed-averaged exact I_E of the full-space coset code against the coset
/// bound for k = 0..n-1, plus monotonicity in k.
SuiteResult coset_suite(std::uint32_t q, std::size_t n, const Channel& bob, const Channel& eve,
                        const std::vector<double>& s_values, double tol = 1e-9);

/// Bit instance (B: BSC(0.05), E: BSC(0.2)): key rate, the leakage bound of
/// run_protocol at n = 4, k = 2 over every seed, and the reduction identity.
SuiteResult keyagree_suite(double tol = 1e-9);

}  // namespace rpa
