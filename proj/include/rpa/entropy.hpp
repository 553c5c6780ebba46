#pragma once

// Entropy and divergence functionals. All values are in nats.

#include <utility>

#include "rpa/prob.hpp"

namespace rpa {

enum class EntropyKind {
  shannon,
  renyiTilde,
  renyi,
  condRenyiTilde,
  condRenyi,
  minEntropy,
  smoothMinEntropy,
};

struct EntropyValue {
  double value;
  EntropyKind kind;
};

double shannon(const Dist& p);
/// H(A|E) = H(A,E) - H(E).
double conditional_shannon(const JointDist& j);
double joint_shannon(const JointDist& j);

/// -log sum_x p(x)^{1+s}, for s in [0, 1].
double renyi_tilde(const Dist& p, double s);
/// Same power sum for any order 1+s > 0 (s > -1). Used where the
/// exponent optimizations leave [0, 1].
double renyi_tilde_general(const Dist& p, double s);
/// Renyi entropy of order 1+s, renyi_tilde / s; the Shannon entropy at s = 0.
double renyi(const Dist& p, double s);

/// -log sum_{a,e} P(a,e)^{1+s} P(e)^{-s}, for s in [0, 1].
double cond_renyi_tilde(const JointDist& j, double s);
double cond_renyi_tilde_general(const JointDist& j, double s);
double cond_renyi(const JointDist& j, double s);

/// Gallager-form conditional quantity of order 1+s, s > -1:
/// -(1+s) log sum_e (sum_a P(a,e)^{1+s})^{1/(1+s)}.
/// Coincides with cond_renyi_tilde when P(e) is uniform; it is the form that
/// makes the phi identities of general additive channels exact.
double cond_renyi_tilde_gallager(const JointDist& j, double s);

double min_entropy(const JointDist& j);

/// Exact smooth min-entropy: the best event set Omega with P(Omega) >= 1-eps
/// keeps everything but a prefix of the cells sorted by conditional
/// probability, so the greedy threshold rule is optimal.
double smooth_min_entropy(const JointDist& j, double eps);

/// Slack used when comparing removed mass against eps.
inline constexpr double kSmoothMassSlack = 1e-12;

double variational_distance(const Dist& p, const Dist& q);
double variational_distance(const JointDist& p, const JointDist& q);

struct Eta {
  double value;
  /// x > 1/e: outside the range where the entropy continuity bound applies.
  bool beyond_continuity;
};

/// eta(x, a) = -x log x + x a, for x in [0, 1] and a >= 0.
Eta eta(double x, double a);

struct Divergences {
  double kl;
  double ds;
};

/// (D(p||q), D_s(p||q)) with D_s(p||q) = sum_x p(x) (p(x)/q(x))^s.
Divergences kl_and_ds(const Dist& p, const Dist& q, double s);
double kl_divergence(const Dist& p, const Dist& q);

double mutual_information(const JointDist& j);

EntropyValue evaluate(EntropyKind kind, const Dist& p, double s = 0.0);
EntropyValue evaluate(EntropyKind kind, const JointDist& j, double s = 0.0, double eps = 0.0);

}  // namespace rpa
