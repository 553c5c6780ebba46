#pragma once

// Channel functionals psi and phi, the exponent maximizations built on them,
// and the small-s Taylor coefficients. Everything is in nats.

#include <functional>
#include <optional>
#include <vector>

#include "rpa/prob.hpp"

namespace rpa {

/// psi(s|W,p) = log sum_y (sum_x p(x) W_x(y)^{1+s}) W_p(y)^{-s}, s in [0, 1].
double psi(double s, const Channel& w, const Dist& p);
/// d psi / ds, same domain.
double psi_derivative(double s, const Channel& w, const Dist& p);
/// e^{psi(s)} - 1 evaluated without cancellation.
double psi_sum_excess(double s, const Channel& w, const Dist& p);

inline constexpr double kPhiUpperLimit = 1.0 - 1e-6;

/// phi(s|W,p) = log sum_y (sum_x p(x) W_x(y)^{1/(1-s)})^{1-s}, s in [-1, 1).
double phi(double s, const Channel& w, const Dist& p);

struct Optimum {
  double value;
  double arg;
};

/// Maximizes a concave function on [lo, hi] by ternary search, then checks
/// the result against the endpoints and a grid of spacing 1e-3. Throws
/// Inconsistent if the grid beats the search by more than 1e-8.
Optimum maximize_concave(const std::function<double(double)>& f, double lo, double hi);

/// min over s in [0,1] of (ML)^s e^{phi(-s|W,p)}; arg is the minimizing s.
Optimum gallager_error_bound(double m, double l, const Channel& w, const Dist& p);

/// max_{0<=s<=1} sR - psi(s); arg is the optimal s.
Optimum exponent_e_psi(double r, const Channel& w, const Dist& p);
/// max_{0<=t<=1/2} tR - phi(t); arg is the optimal t.
Optimum exponent_e_phi(double r, const Channel& w, const Dist& p);
/// (R - log|X|) + H_2 of the noise; raw, possibly negative.
double exponent_e_psi2(double r, const AdditiveSpec& spec);
/// Rate psi'(1) above which e_psi is attained at s = 1.
double psi2_merge_threshold(const Channel& w, const Dist& p);

/// Largest R with e(R) <= tol, located by bisection on [lo, hi].
double zero_crossing(const std::function<double(double)>& e, double lo, double hi, double tol = 1e-13);

struct PaExponents {
  double renyi;
  double renyi_s;
  double smooth;
  double smooth_s;
  /// The smooth maximizer sits at s_max.
  bool boundary_hit;
};

inline constexpr double kDefaultSmoothSMax = 32.0;

/// renyi = max_{0<=s<=1} Ht_{1+s}(A|E) - sR,
/// smooth = max_{0<=s<=s_max} (Ht_{1+s}(A|E) - sR)/(1+s).
PaExponents pa_exponents(const JointDist& j, double r, double s_max = kDefaultSmoothSMax);

struct TaylorCoeffs {
  double i1;
  double i2;
  double i3;
  double i3_tilde;
};

/// Coefficients of sum_{x,y} p W^{1+s} W_p^{-s} = 1 + I s + I2 s^2 + I3 s^3 + ...
/// and the extra third-order term I3~ of the phi sum.
TaylorCoeffs taylor_coeffs(const Channel& w, const Dist& p);

struct AdditiveResiduals {
  /// |psi(s) - (s log|X| - Ht_{1+s})|, noise or noise given side info.
  double psi;
  /// |phi(t) - (t log|X| - (1-t) G_{1+s})| at t = s/(1+s).
  double phi;
  /// Same phi residual with the plain conditional Ht_{1+s}(X|Z') in place of
  /// the Gallager form; set for general additive specs only.
  std::optional<double> phi_plain_conditional;
};

AdditiveResiduals additive_identities(const AdditiveSpec& spec, double s);

enum class ExponentKind { ePsi, ePhi, ePsi2, eRenyiPA, eSmoothPA };

struct ExponentCurve {
  ExponentKind kind;
  std::vector<double> rates;
  std::vector<double> values;
  /// Optimizing s (or t); empty for ePsi2.
  std::vector<double> argmax;
};

/// start, start+step, ... up to stop inclusive (within step/2).
std::vector<double> rate_grid(double start, double stop, double step);
/// `count` evenly spaced points from lo to hi inclusive.
std::vector<double> rate_linspace(double lo, double hi, std::size_t count);

ExponentCurve exponent_curve(ExponentKind kind, const std::vector<double>& rates, const AdditiveSpec& spec);
ExponentCurve exponent_curve(ExponentKind kind, const std::vector<double>& rates, const JointDist& j);

struct Fig1Data {
  ExponentCurve e_psi;
  ExponentCurve e_phi;
  ExponentCurve e_psi2;
  double threshold_psi;
  double threshold_phi;
  double threshold_psi2;
  double merge_threshold;
};

/// The three curves of the additive comparison plus their zero crossings
/// and the e_psi / e_psi2 merge rate, for a plain additive spec under the
/// uniform input.
Fig1Data fig1(const AdditiveSpec& spec, const std::vector<double>& rates);

}  // namespace rpa
