#include "rpa/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rpa/entropy.hpp"
#include "rpa/error.hpp"

namespace rpa {
namespace {

constexpr double kTernaryTolerance = 1e-10;
constexpr double kGridStep = 1e-3;
constexpr double kGridSlack = 1e-8;

struct Cell {
  double pw;     // p(x) W_x(y)
  double log_w;  // log W_x(y)
  double llr;    // log W_x(y) - log W_p(y)
};

void check_input(const Channel& w, const Dist& p) {
  if (p.size() != w.input_count()) throw Error(ErrorKind::AlphabetMismatch, "input distribution does not match the channel");
}

std::vector<Cell> support_cells(const Channel& w, const Dist& p) {
  check_input(w, p);
  std::vector<double> wp(w.output_count(), 0.0);
  for (std::size_t x = 0; x < w.input_count(); ++x)
    for (std::size_t y = 0; y < w.output_count(); ++y) wp[y] += p[x] * w(x, y);
  std::vector<Cell> cells;
  for (std::size_t x = 0; x < w.input_count(); ++x) {
    if (p[x] == 0.0) continue;
    for (std::size_t y = 0; y < w.output_count(); ++y) {
      const double wxy = w(x, y);
      if (wxy == 0.0) continue;
      cells.push_back({p[x] * wxy, std::log(wxy), std::log(wxy) - std::log(wp[y])});
    }
  }
  return cells;
}

double log_sum_exp(const std::vector<double>& v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(v.begin(), v.end());
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - m);
  return m + std::log(acc);
}

void check_s(double s, double lo, double hi, const char* what) {
  if (!(s >= lo && s <= hi)) throw Error(ErrorKind::SOutOfRange, what);
}

Dist uniform_input(const Channel& w) { return Dist::uniform(w.input_count()); }

// Splits a joint into its row marginal and the conditional channel.
std::pair<Dist, Channel> decompose(const JointDist& j) {
  const Dist pa = j.row_marginal();
  std::vector<double> rows;
  rows.reserve(j.row_count() * j.col_count());
  for (std::size_t a = 0; a < j.row_count(); ++a)
    for (std::size_t e = 0; e < j.col_count(); ++e)
      rows.push_back(pa[a] > 0.0 ? j.at(a, e) / pa[a] : 1.0 / static_cast<double>(j.col_count()));
  return {pa, Channel(Alphabet(j.row_count()), Alphabet(j.col_count()), std::move(rows))};
}

}  // namespace

double psi_sum_excess(double s, const Channel& w, const Dist& p) {
  check_s(s, 0.0, 1.0, "psi needs s in [0, 1]");
  double acc = 0.0;
  for (const Cell& c : support_cells(w, p)) acc += c.pw * std::expm1(s * c.llr);
  return acc;
}

double psi(double s, const Channel& w, const Dist& p) {
  if (s == 0.0) {
    check_input(w, p);
    return 0.0;
  }
  return std::log1p(psi_sum_excess(s, w, p));
}

double psi_derivative(double s, const Channel& w, const Dist& p) {
  check_s(s, 0.0, 1.0, "psi needs s in [0, 1]");
  double num = 0.0, den = 0.0;
  for (const Cell& c : support_cells(w, p)) {
    const double t = c.pw * std::exp(s * c.llr);
    num += t * c.llr;
    den += t;
  }
  return num / den;
}

double phi(double s, const Channel& w, const Dist& p) {
  check_s(s, -1.0, kPhiUpperLimit, "phi needs s in [-1, 1)");
  check_input(w, p);
  if (s == 0.0) return 0.0;
  const double power = 1.0 / (1.0 - s);
  std::vector<double> outer;
  std::vector<double> inner;
  for (std::size_t y = 0; y < w.output_count(); ++y) {
    inner.clear();
    for (std::size_t x = 0; x < w.input_count(); ++x) {
      const double wxy = w(x, y);
      if (p[x] > 0.0 && wxy > 0.0) inner.push_back(std::log(p[x]) + power * std::log(wxy));
    }
    if (!inner.empty()) outer.push_back((1.0 - s) * log_sum_exp(inner));
  }
  return log_sum_exp(outer);
}

Optimum maximize_concave(const std::function<double(double)>& f, double lo, double hi) {
  double a = lo, b = hi;
  while (b - a > kTernaryTolerance) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (f(m1) < f(m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  const double mid = 0.5 * (a + b);
  Optimum best{f(mid), mid};
  for (double x : {lo, hi}) {
    const double v = f(x);
    if (v > best.value) best = {v, x};
  }
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / kGridStep));
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = n == 0 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    if (f(x) > best.value + kGridSlack)
      throw Error(ErrorKind::Inconsistent, "grid check beats the ternary search; objective is not concave");
  }
  return best;
}

Optimum gallager_error_bound(double m, double l, const Channel& w, const Dist& p) {
  if (!(m >= 1.0 && l >= 1.0)) throw Error(ErrorKind::DimensionMismatch, "M and L must be at least 1");
  const double log_ml = std::log(m) + std::log(l);
  const Optimum o = maximize_concave([&](double s) { return -(s * log_ml + phi(-s, w, p)); }, 0.0, 1.0);
  return {std::exp(-o.value), o.arg};
}

Optimum exponent_e_psi(double r, const Channel& w, const Dist& p) {
  const auto cells = support_cells(w, p);
  return maximize_concave(
      [&](double s) {
        double acc = 0.0;
        for (const Cell& c : cells) acc += c.pw * std::expm1(s * c.llr);
        return s * r - std::log1p(acc);
      },
      0.0, 1.0);
}

Optimum exponent_e_phi(double r, const Channel& w, const Dist& p) {
  return maximize_concave([&](double t) { return t * r - phi(t, w, p); }, 0.0, 0.5);
}

double exponent_e_psi2(double r, const AdditiveSpec& spec) {
  if (spec.general()) throw Error(ErrorKind::NotAdditive, "e_psi2 needs a plain additive channel");
  return r - std::log(static_cast<double>(spec.module.order())) + renyi_tilde(spec.noise, 1.0);
}

double psi2_merge_threshold(const Channel& w, const Dist& p) { return psi_derivative(1.0, w, p); }

double zero_crossing(const std::function<double(double)>& e, double lo, double hi, double tol) {
  if (e(lo) > tol) return lo;
  if (e(hi) <= tol) return hi;
  while (hi - lo > 1e-13 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (e(mid) > tol) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PaExponents pa_exponents(const JointDist& j, double r, double s_max) {
  if (!(r >= 0.0)) throw Error(ErrorKind::XOutOfDomain, "rate must be non-negative");
  if (!(s_max > 0.0)) throw Error(ErrorKind::SOutOfRange, "s_max must be positive");
  const Optimum renyi = maximize_concave([&](double s) { return cond_renyi_tilde(j, s) - s * r; }, 0.0, 1.0);
  // (Ht - sR)/(1+s) is the perspective of a concave function, hence concave
  // in u = s/(1+s).
  const double u_max = s_max / (1.0 + s_max);
  const Optimum smooth = maximize_concave(
      [&](double u) {
        const double s = u / (1.0 - u);
        return (1.0 - u) * cond_renyi_tilde_general(j, s) - u * r;
      },
      0.0, u_max);
  return {renyi.value, renyi.arg, smooth.value, smooth.arg / (1.0 - smooth.arg), smooth.arg >= u_max - 1e-8};
}

TaylorCoeffs taylor_coeffs(const Channel& w, const Dist& p) {
  check_input(w, p);
  std::vector<double> wp(w.output_count(), 0.0);
  for (std::size_t x = 0; x < w.input_count(); ++x)
    for (std::size_t y = 0; y < w.output_count(); ++y) wp[y] += p[x] * w(x, y);
  for (std::size_t x = 0; x < w.input_count(); ++x)
    for (std::size_t y = 0; y < w.output_count(); ++y)
      if (p[x] > 0.0 && wp[y] > 0.0 && w(x, y) == 0.0)
        throw Error(ErrorKind::SupportViolation, "W_x(y) vanishes where W_p(y) > 0");

  TaylorCoeffs t{0.0, 0.0, 0.0, 0.0};
  for (const Cell& c : support_cells(w, p)) {
    t.i1 += c.pw * c.llr;
    t.i2 += c.pw * c.llr * c.llr;
    t.i3 += c.pw * c.llr * c.llr * c.llr;
  }
  t.i2 /= 2.0;
  t.i3 /= 6.0;
  for (std::size_t y = 0; y < w.output_count(); ++y) {
    if (wp[y] == 0.0) continue;
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t x = 0; x < w.input_count(); ++x) {
      if (p[x] == 0.0) continue;
      const double lw = std::log(w(x, y));
      m1 += p[x] * w(x, y) * lw;
      m2 += p[x] * w(x, y) * lw * lw;
    }
    t.i3_tilde += 0.5 * (m2 - m1 * m1 / wp[y]);
  }
  if (t.i3_tilde < -1e-12) throw Error(ErrorKind::Inconsistent, "I3~ is negative");
  return t;
}

AdditiveResiduals additive_identities(const AdditiveSpec& spec, double s) {
  check_s(s, 0.0, 1.0, "identity check needs s in [0, 1]");
  const Channel w = realize_additive(spec);
  const Dist pmix = uniform_input(w);
  const double log_x = std::log(static_cast<double>(spec.module.order()));
  const double t = s / (1.0 + s);
  const double psi_v = psi(s, w, pmix);
  const double phi_v = phi(t, w, pmix);

  AdditiveResiduals r{};
  if (spec.general()) {
    const JointDist& side = *spec.side_info;
    r.psi = std::abs(psi_v - (s * log_x - cond_renyi_tilde(side, s)));
    r.phi = std::abs(phi_v - (t * log_x - (1.0 - t) * cond_renyi_tilde_gallager(side, s)));
    r.phi_plain_conditional = std::abs(phi_v - (t * log_x - (1.0 - t) * cond_renyi_tilde(side, s)));
  } else {
    r.psi = std::abs(psi_v - (s * log_x - renyi_tilde(spec.noise, s)));
    r.phi = std::abs(phi_v - (t * log_x - (1.0 - t) * renyi_tilde_general(spec.noise, s)));
  }
  return r;
}

std::vector<double> rate_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw Error(ErrorKind::ParseError, "rate grid needs start <= stop and step > 0");
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5));
  for (std::size_t i = 0; i <= n; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

std::vector<double> rate_linspace(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

namespace {

ExponentCurve channel_curve(ExponentKind kind, const std::vector<double>& rates, const Channel& w, const Dist& p) {
  ExponentCurve c{kind, rates, {}, {}};
  for (double r : rates) {
    const Optimum o = kind == ExponentKind::ePsi ? exponent_e_psi(r, w, p) : exponent_e_phi(r, w, p);
    c.values.push_back(o.value);
    c.argmax.push_back(o.arg);
  }
  return c;
}

ExponentCurve pa_curve(ExponentKind kind, const std::vector<double>& rates, const JointDist& j) {
  ExponentCurve c{kind, rates, {}, {}};
  for (double r : rates) {
    const PaExponents e = pa_exponents(j, r);
    c.values.push_back(kind == ExponentKind::eRenyiPA ? e.renyi : e.smooth);
    c.argmax.push_back(kind == ExponentKind::eRenyiPA ? e.renyi_s : e.smooth_s);
  }
  return c;
}

}  // namespace

ExponentCurve exponent_curve(ExponentKind kind, const std::vector<double>& rates, const AdditiveSpec& spec) {
  const Channel w = realize_additive(spec);
  const Dist pmix = uniform_input(w);
  switch (kind) {
    case ExponentKind::ePsi:
    case ExponentKind::ePhi:
      return channel_curve(kind, rates, w, pmix);
    case ExponentKind::ePsi2: {
      ExponentCurve c{kind, rates, {}, {}};
      for (double r : rates) c.values.push_back(exponent_e_psi2(r, spec));
      return c;
    }
    case ExponentKind::eRenyiPA:
    case ExponentKind::eSmoothPA:
      return pa_curve(kind, rates, join(pmix, w));
  }
  throw Error(ErrorKind::Inconsistent, "unknown exponent kind");
}

ExponentCurve exponent_curve(ExponentKind kind, const std::vector<double>& rates, const JointDist& j) {
  switch (kind) {
    case ExponentKind::ePsi:
    case ExponentKind::ePhi: {
      const auto [p, w] = decompose(j);
      return channel_curve(kind, rates, w, p);
    }
    case ExponentKind::ePsi2:
      throw Error(ErrorKind::NotAdditive, "e_psi2 needs an additive channel");
    case ExponentKind::eRenyiPA:
    case ExponentKind::eSmoothPA:
      return pa_curve(kind, rates, j);
  }
  throw Error(ErrorKind::Inconsistent, "unknown exponent kind");
}

Fig1Data fig1(const AdditiveSpec& spec, const std::vector<double>& rates) {
  if (spec.general()) throw Error(ErrorKind::NotAdditive, "the comparison needs a plain additive channel");
  const Channel w = realize_additive(spec);
  const Dist pmix = uniform_input(w);
  const double log_x = std::log(static_cast<double>(spec.module.order()));
  Fig1Data d{exponent_curve(ExponentKind::ePsi, rates, spec),
             exponent_curve(ExponentKind::ePhi, rates, spec),
             exponent_curve(ExponentKind::ePsi2, rates, spec),
             0.0,
             0.0,
             0.0,
             psi2_merge_threshold(w, pmix)};
  d.threshold_psi = zero_crossing([&](double r) { return exponent_e_psi(r, w, pmix).value; }, 0.0, log_x);
  d.threshold_phi = zero_crossing([&](double r) { return exponent_e_phi(r, w, pmix).value; }, 0.0, log_x);
  d.threshold_psi2 = zero_crossing([&](double r) { return exponent_e_psi2(r, spec); }, 0.0, log_x);
  return d;
}

}  // namespace rpa
