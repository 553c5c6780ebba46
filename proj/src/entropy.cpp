#include "rpa/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "rpa/error.hpp"

namespace rpa {

namespace {

void require_s_unit(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorKind::SOutOfRange, "s must lie in [0,1], got " + std::to_string(s));
}

void require_s_general(double s) {
  if (!(s > -1.0) || !std::isfinite(s)) throw Error(ErrorKind::SOutOfRange, "order 1+s must be positive");
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// log sum exp over the provided exponents; -inf for an empty set.
double log_sum_exp(const std::vector<double>& terms) {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  const double hi = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - hi);
  return hi + std::log(acc);
}

}  // namespace

double shannon(const Dist& p) {
  double h = 0.0;
  for (double x : p.probs()) h -= xlogx(x);
  return h;
}

double joint_shannon(const JointDist& j) {
  double h = 0.0;
  for (double x : j.table()) h -= xlogx(x);
  return h;
}

double conditional_shannon(const JointDist& j) { return joint_shannon(j) - shannon(j.col_marginal()); }

double renyi_tilde_general(const Dist& p, double s) {
  require_s_general(s);
  if (s == 0.0) return 0.0;
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double x : p.probs()) {
    if (x > 0.0) terms.push_back((1.0 + s) * std::log(x));
  }
  return -log_sum_exp(terms);
}

double renyi_tilde(const Dist& p, double s) {
  require_s_unit(s);
  return renyi_tilde_general(p, s);
}

double renyi(const Dist& p, double s) {
  require_s_unit(s);
  if (s == 0.0) return shannon(p);
  return renyi_tilde(p, s) / s;
}

double cond_renyi_tilde_general(const JointDist& j, double s) {
  require_s_general(s);
  if (s == 0.0) return 0.0;
  const Dist pe = j.col_marginal();
  std::vector<double> terms;
  for (std::size_t a = 0; a < j.row_count(); ++a) {
    for (std::size_t e = 0; e < j.col_count(); ++e) {
      const double pae = j.at(a, e);
      if (pae <= 0.0 || pe[e] <= 0.0) continue;
      terms.push_back((1.0 + s) * std::log(pae) - s * std::log(pe[e]));
    }
  }
  return -log_sum_exp(terms);
}

double cond_renyi_tilde(const JointDist& j, double s) {
  require_s_unit(s);
  return cond_renyi_tilde_general(j, s);
}

double cond_renyi(const JointDist& j, double s) {
  require_s_unit(s);
  if (s == 0.0) return conditional_shannon(j);
  return cond_renyi_tilde(j, s) / s;
}

double cond_renyi_tilde_gallager(const JointDist& j, double s) {
  if (!(s > -1.0) || !std::isfinite(s)) throw Error(ErrorKind::SOutOfRange, "1+s must be positive");
  if (s == 0.0) return 0.0;
  std::vector<double> outer;
  for (std::size_t e = 0; e < j.col_count(); ++e) {
    std::vector<double> inner;
    for (std::size_t a = 0; a < j.row_count(); ++a) {
      const double pae = j.at(a, e);
      if (pae > 0.0) inner.push_back((1.0 + s) * std::log(pae));
    }
    if (!inner.empty()) outer.push_back(log_sum_exp(inner) / (1.0 + s));
  }
  return -(1.0 + s) * log_sum_exp(outer);
}

double min_entropy(const JointDist& j) {
  const Dist pe = j.col_marginal();
  double best = 0.0;
  for (std::size_t a = 0; a < j.row_count(); ++a) {
    for (std::size_t e = 0; e < j.col_count(); ++e) {
      const double pae = j.at(a, e);
      if (pae > 0.0 && pe[e] > 0.0) best = std::max(best, pae / pe[e]);
    }
  }
  return -std::log(best);
}

double smooth_min_entropy(const JointDist& j, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorKind::EpsOutOfRange, "eps must lie in [0,1)");
  const Dist pe = j.col_marginal();
  struct Cell {
    double cond;
    double mass;
    std::size_t index;
  };
  std::vector<Cell> cells;
  for (std::size_t a = 0; a < j.row_count(); ++a) {
    for (std::size_t e = 0; e < j.col_count(); ++e) {
      const double pae = j.at(a, e);
      if (pae > 0.0 && pe[e] > 0.0) cells.push_back({pae / pe[e], pae, a * j.col_count() + e});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
    if (x.cond != y.cond) return x.cond > y.cond;
    if (x.mass != y.mass) return x.mass > y.mass;
    return x.index < y.index;
  });
  double removed = 0.0;
  for (const Cell& c : cells) {
    if (removed + c.mass <= eps + kSmoothMassSlack) {
      removed += c.mass;
      continue;
    }
    return -std::log(c.cond);
  }
  throw Error(ErrorKind::AllMassRemovable, "eps allows removing the whole support");
}

double variational_distance(const Dist& p, const Dist& q) {
  if (!(p.alphabet() == q.alphabet())) throw Error(ErrorKind::AlphabetMismatch, "distributions over different alphabets");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) d += std::abs(p[i] - q[i]);
  return d;
}

double variational_distance(const JointDist& p, const JointDist& q) {
  if (!(p.rows() == q.rows()) || !(p.cols() == q.cols())) {
    throw Error(ErrorKind::AlphabetMismatch, "joints over different alphabets");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < p.table().size(); ++i) d += std::abs(p.table()[i] - q.table()[i]);
  return d;
}

Eta eta(double x, double a) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::XOutOfDomain, "eta needs x in [0,1]");
  if (!(a >= 0.0)) throw Error(ErrorKind::XOutOfDomain, "eta needs a >= 0");
  return {-xlogx(x) + x * a, x > 1.0 / std::exp(1.0)};
}

Divergences kl_and_ds(const Dist& p, const Dist& q, double s) {
  require_s_unit(s);
  if (!(p.alphabet() == q.alphabet())) throw Error(ErrorKind::AlphabetMismatch, "distributions over different alphabets");
  double kl = 0.0;
  double ds = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) throw Error(ErrorKind::SupportViolation, "support of p is not inside support of q");
    const double lr = std::log(p[i]) - std::log(q[i]);
    kl += p[i] * lr;
    ds += p[i] * std::exp(s * lr);
  }
  return {kl, ds};
}

double kl_divergence(const Dist& p, const Dist& q) { return kl_and_ds(p, q, 0.0).kl; }

double mutual_information(const JointDist& j) {
  const Dist pa = j.row_marginal();
  const Dist pe = j.col_marginal();
  const double mi = shannon(pa) + shannon(pe) - joint_shannon(j);

  // Same quantity as the prior-weighted divergence of each row to the
  // output marginal.
  double weighted = 0.0;
  for (std::size_t a = 0; a < j.row_count(); ++a) {
    if (pa[a] <= 0.0) continue;
    for (std::size_t e = 0; e < j.col_count(); ++e) {
      const double pae = j.at(a, e);
      if (pae > 0.0) weighted += pae * (std::log(pae / pa[a]) - std::log(pe[e]));
    }
  }
  if (std::abs(mi - weighted) > 1e-9) {
    throw Error(ErrorKind::Inconsistent, "mutual information routes disagree");
  }
  return std::max(mi, 0.0);
}

EntropyValue evaluate(EntropyKind kind, const Dist& p, double s) {
  switch (kind) {
    case EntropyKind::shannon: return {shannon(p), kind};
    case EntropyKind::renyiTilde: return {renyi_tilde(p, s), kind};
    case EntropyKind::renyi: return {renyi(p, s), kind};
    default: break;
  }
  throw Error(ErrorKind::DimensionMismatch, "this entropy kind needs a joint distribution");
}

EntropyValue evaluate(EntropyKind kind, const JointDist& j, double s, double eps) {
  switch (kind) {
    case EntropyKind::shannon: return {conditional_shannon(j), kind};
    case EntropyKind::renyiTilde:
    case EntropyKind::condRenyiTilde: return {cond_renyi_tilde(j, s), EntropyKind::condRenyiTilde};
    case EntropyKind::renyi:
    case EntropyKind::condRenyi: return {cond_renyi(j, s), EntropyKind::condRenyi};
    case EntropyKind::minEntropy: return {min_entropy(j), kind};
    case EntropyKind::smoothMinEntropy: return {smooth_min_entropy(j, eps), kind};
  }
  return {0.0, kind};
}

}  // namespace rpa
