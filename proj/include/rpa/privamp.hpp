#pragma once

// Privacy amplification: leakage bounds after universal2 hashing, exact
// ensemble averages by enumeration, the smooth min-entropy bound, the
// proof-step inequalities of the Renyi bound, and the variational versus
// mutual-information criteria example.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rpa/hashfam.hpp"
#include "rpa/prob.hpp"

namespace rpa {

/// Compensated running sum.
class NeumaierSum {
 public:
  void add(double x);
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// M^s e^{-Ht_{1+s}(A|E)} / s, the bound on E_X I(f_X(A):E); 0 < s <= 1.
double thm1_bound(const JointDist& j, double m, double s);
/// log M - thm1_bound: the lower bound on E_X H(f_X(A)|E).
double thm1_entropy_bound(const JointDist& j, double m, double s);

struct BestBound {
  double value;
  double s;
};

/// min over s in (0, 1] of thm1_bound.
BestBound thm1_best(const JointDist& j, double m);

/// Pushes the A-coordinate of J through a hash table.
JointDist push_forward(const JointDist& j, std::span<const std::uint32_t> table, std::size_t range);

struct Leakage {
  double avg_mi;
  double avg_cond_entropy;
  bool exact;
  std::uint64_t members;
  /// 95% normal half-widths; zero when exact.
  double mi_half_width;
  double cond_entropy_half_width;
};

inline constexpr std::uint64_t kDefaultLeakageSamples = 4096;

/// Average of I(f(A):E) and H(f(A)|E) over the family. Enumerates when
/// possible, otherwise samples `samples` members from a generator seeded
/// with `seed`.
Leakage exact_avg_leakage(const JointDist& j, const HashFamily& f, std::uint64_t samples = kDefaultLeakageSamples,
                          std::uint64_t seed = 1);

enum class BoundVerdict { holds, violated, inconclusive };

/// Compares a leakage estimate with a bound. Sampled estimates whose
/// half-width exceeds 10% of the slack are inconclusive.
BoundVerdict check_bound(const Leakage& leak, double bound, double tol = 1e-9);

struct SmoothBound {
  /// min over eps of M e^{-H_min^eps} + 2 eta(2 eps, log(|A| M)).
  double value;
  double arg_eps;
  /// The R' form, when some admissible R' keeps 2 eta's argument <= 1/e.
  std::optional<double> r_prime_value;
  std::optional<double> arg_r_prime;
};

inline constexpr double kSmoothEpsMin = 1e-6;

SmoothBound smooth_bound(const JointDist& j, double m);

struct StepCheck {
  double lhs;
  double rhs;
  double slack;  // rhs - lhs, the worst case for per-point steps
};

struct ProofSteps {
  /// E_X e^{-Ht(f_X)} <= sum P (E_X collision mass)^s.
  StepCheck jensen;
  /// E_X collision mass <= P(a|e) + 1/M, worst (a, e).
  StepCheck collision;
  /// (P + 1/M)^s <= P^s + M^{-s}, worst (a, e).
  StepCheck subadditivity;
  /// E_X e^{-Ht_{1+s}(f_X(A)|E)} <= e^{-Ht_{1+s}(A|E)} + M^{-s}.
  StepCheck assembled;
  double worst_slack;
};

ProofSteps thm1_proof_steps(const Dist& p, const HashFamily& f, double s);
ProofSteps thm1_proof_steps(const JointDist& j, const HashFamily& f, double s);

struct LeakageReport {
  std::optional<Leakage> leakage;
  std::map<double, double> thm1_bounds;
  SmoothBound smooth;
  BestBound best;
  std::optional<double> entropy_after_hash;
  std::optional<BoundVerdict> verdict;
};

LeakageReport leakage_report(const JointDist& j, const HashFamily& f, const std::vector<double>& s_grid);

struct WatanabeReport {
  double n_log;  // ln N
  double eps;
  double d1;           // d1(P^{AE}, P^A_mix x P^E)
  double d1_marginal;  // d1(P^A, P^A_mix)
  double mi;           // I(A:E) in nats
  double mi_bits;
  double fano;       // eps ln N - 1
  double fano_bits;  // eps log2 N - 1
  double pinsker_sqrt;     // sqrt(2 I) + d1_marginal
  double pinsker_printed;  // I^2 + d1_marginal
};

/// Closed forms for the example with N = 2^log2_n, log2_n <= 64.
WatanabeReport watanabe_example_log2(unsigned log2_n, double eps);
WatanabeReport watanabe_example(std::uint64_t n, double eps);
/// The N x N joint itself: E uniform; A uniform given e in S, A = e otherwise.
JointDist watanabe_joint(std::uint64_t n, double eps);

struct PinskerChain {
  double d1_target;  // d1(P^{AE}, P^A_mix x P^E)
  double mi;
  double d1_marginal;
  double rhs_sqrt;
  double rhs_printed;
};

PinskerChain pinsker_chain(const JointDist& j);

}  // namespace rpa
