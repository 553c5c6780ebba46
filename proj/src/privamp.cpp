#include "rpa/privamp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rpa/entropy.hpp"
#include "rpa/error.hpp"
#include "rpa/exponents.hpp"

namespace rpa {
namespace {

constexpr double kThm1SMin = 1e-6;
constexpr double kZ95 = 1.959963984540054;
constexpr std::size_t kSmoothGridPoints = 200;

void check_m(double m) {
  if (!(m >= 1.0) || !std::isfinite(m)) throw Error(ErrorKind::DimensionMismatch, "M must be at least 1");
}

void check_family_domain(const JointDist& j, const HashFamily& f) {
  if (f.domain_size() != j.row_count())
    throw Error(ErrorKind::DimensionMismatch, "family domain differs from |A|");
}

double log_thm1(const JointDist& j, double log_m, double s) {
  return s * log_m - cond_renyi_tilde(j, s) - std::log(s);
}

struct MemberStats {
  NeumaierSum mi, h, mi2, h2;
  std::uint64_t count = 0;

  void add(const JointDist& q) {
    const double mi_v = mutual_information(q);
    const double h_v = conditional_shannon(q);
    mi.add(mi_v);
    h.add(h_v);
    mi2.add(mi_v * mi_v);
    h2.add(h_v * h_v);
    ++count;
  }
};

double half_width(const NeumaierSum& sum, const NeumaierSum& sum2, std::uint64_t n) {
  if (n < 2) return std::numeric_limits<double>::infinity();
  const double nn = static_cast<double>(n);
  const double mean = sum.value() / nn;
  const double var = std::max(0.0, (sum2.value() - nn * mean * mean) / (nn - 1.0));
  return kZ95 * std::sqrt(var / nn);
}

struct WatanabeCore {
  double ln_n;
  double inv_n;
};

WatanabeReport watanabe_closed_form(WatanabeCore c, double eps) {
  WatanabeReport r{};
  r.n_log = c.ln_n;
  r.eps = eps;
  r.d1 = 2.0 * eps * (1.0 - c.inv_n);
  r.d1_marginal = 2.0 * eps * (1.0 - eps);
  const double a = 1.0 - eps;
  const double b = eps * (2.0 - eps);
  r.mi = a * a * (c.ln_n - std::log(a)) + b * (c.ln_n - std::log(2.0 - eps)) - a * c.ln_n;
  r.mi_bits = r.mi / std::log(2.0);
  r.fano = eps * c.ln_n - 1.0;
  r.fano_bits = eps * c.ln_n / std::log(2.0) - 1.0;
  r.pinsker_sqrt = std::sqrt(2.0 * r.mi) + r.d1_marginal;
  r.pinsker_printed = r.mi * r.mi + r.d1_marginal;
  return r;
}

void check_eps_realizable(double eps, double eps_n) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::EpsOutOfRange, "eps must lie in (0, 1)");
  if (std::abs(eps_n - std::round(eps_n)) > 1e-9 * std::max(1.0, eps_n))
    throw Error(ErrorKind::EpsNotRealizable, "eps * N must be an integer");
}

}  // namespace

void NeumaierSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

double thm1_bound(const JointDist& j, double m, double s) {
  check_m(m);
  if (!(s > 0.0 && s <= 1.0)) throw Error(ErrorKind::SOutOfRange, "the bound needs 0 < s <= 1");
  return std::exp(log_thm1(j, std::log(m), s));
}

double thm1_entropy_bound(const JointDist& j, double m, double s) { return std::log(m) - thm1_bound(j, m, s); }

BestBound thm1_best(const JointDist& j, double m) {
  check_m(m);
  const double log_m = std::log(m);
  const Optimum o = maximize_concave([&](double s) { return -log_thm1(j, log_m, s); }, kThm1SMin, 1.0);
  return {std::exp(-o.value), o.arg};
}

JointDist push_forward(const JointDist& j, std::span<const std::uint32_t> table, std::size_t range) {
  if (table.size() != j.row_count()) throw Error(ErrorKind::DimensionMismatch, "hash table size differs from |A|");
  const std::size_t ne = j.col_count();
  std::vector<double> q(range * ne, 0.0);
  for (std::size_t a = 0; a < j.row_count(); ++a) {
    if (table[a] >= range) throw Error(ErrorKind::DimensionMismatch, "hash value outside the range");
    for (std::size_t e = 0; e < ne; ++e) q[table[a] * ne + e] += j.at(a, e);
  }
  return JointDist(Alphabet(range), j.cols(), std::move(q));
}

Leakage exact_avg_leakage(const JointDist& j, const HashFamily& f, std::uint64_t samples, std::uint64_t seed) {
  check_family_domain(j, f);
  const std::size_t range = f.range_size();
  MemberStats st;
  if (f.enumerable()) {
    f.for_each_member([&](std::span<const std::uint32_t> t) { st.add(push_forward(j, t, range)); });
    const double n = static_cast<double>(st.count);
    return {st.mi.value() / n, st.h.value() / n, true, st.count, 0.0, 0.0};
  }
  if (samples == 0) throw Error(ErrorKind::NotEnumerable, "family is not enumerable and no samples were requested");
  Rng rng(seed);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const HashTable t = f.draw(rng);
    st.add(push_forward(j, t, range));
  }
  const double n = static_cast<double>(st.count);
  return {st.mi.value() / n,       st.h.value() / n, false, st.count, half_width(st.mi, st.mi2, st.count),
          half_width(st.h, st.h2, st.count)};
}

BoundVerdict check_bound(const Leakage& leak, double bound, double tol) {
  const double slack = bound - leak.avg_mi;
  if (leak.exact) return slack >= -tol ? BoundVerdict::holds : BoundVerdict::violated;
  if (leak.mi_half_width > 0.1 * std::abs(slack)) return BoundVerdict::inconclusive;
  return slack >= 0.0 ? BoundVerdict::holds : BoundVerdict::violated;
}

SmoothBound smooth_bound(const JointDist& j, double m) {
  check_m(m);
  const double a = std::log(static_cast<double>(j.row_count()) * m);
  const double eps_max = std::min(0.25, 0.5 / std::exp(1.0));

  // H_min^eps only changes where eps crosses a cumulative deleted mass of
  // the greedy order, and eta(2 eps, a) increases in eps on this range, so
  // the minimum sits on one of those breakpoints or at eps_min.
  const Dist pe = j.col_marginal();
  struct CellInfo {
    double cond;
    double mass;
    std::size_t index;
  };
  std::vector<CellInfo> cells;
  for (std::size_t r = 0; r < j.row_count(); ++r)
    for (std::size_t e = 0; e < j.col_count(); ++e)
      if (j.at(r, e) > 0.0) cells.push_back({j.at(r, e) / pe[e], j.at(r, e), r * j.col_count() + e});
  std::sort(cells.begin(), cells.end(), [](const CellInfo& x, const CellInfo& y) {
    if (x.cond != y.cond) return x.cond > y.cond;
    if (x.mass != y.mass) return x.mass > y.mass;
    return x.index < y.index;
  });

  std::vector<double> candidates{kSmoothEpsMin, eps_max};
  double cum = 0.0;
  for (const CellInfo& c : cells) {
    cum += c.mass;
    if (cum > eps_max) break;
    if (cum > kSmoothEpsMin) candidates.push_back(cum);
  }
  const double ratio = std::pow(eps_max / kSmoothEpsMin, 1.0 / static_cast<double>(kSmoothGridPoints - 1));
  for (std::size_t i = 0; i < kSmoothGridPoints; ++i)
    candidates.push_back(std::min(eps_max, kSmoothEpsMin * std::pow(ratio, static_cast<double>(i))));

  SmoothBound out{std::numeric_limits<double>::infinity(), kSmoothEpsMin, std::nullopt, std::nullopt};
  for (double eps : candidates) {
    const double v = m * std::exp(-smooth_min_entropy(j, eps)) + 2.0 * eta(2.0 * eps, a).value;
    if (v < out.value) out = {v, eps, std::nullopt, std::nullopt};
  }

  // R' form as printed: R' >= log(4|A|), mass of {P(a|e) >= e^{-R'}}.
  const double r0 = std::log(4.0 * static_cast<double>(j.row_count()));
  std::vector<double> levels;
  for (const CellInfo& c : cells) levels.push_back(-std::log(c.cond));
  auto mass_below = [&](double r, bool inclusive) {
    double acc = 0.0;
    for (const CellInfo& c : cells) {
      const double l = -std::log(c.cond);
      if (inclusive ? l <= r : l < r) acc += c.mass;
    }
    return acc;
  };
  auto consider = [&](double r, double mass) {
    if (2.0 * mass > 1.0 / std::exp(1.0)) return;
    const double v = m * std::exp(-r) + 2.0 * eta(2.0 * mass, a).value;
    if (!out.r_prime_value || v < *out.r_prime_value) {
      out.r_prime_value = v;
      out.arg_r_prime = r;
    }
  };
  consider(r0, mass_below(r0, true));
  for (double l : levels)
    if (l > r0) consider(l, mass_below(l, false));
  return out;
}

ProofSteps thm1_proof_steps(const JointDist& j, const HashFamily& f, double s) {
  check_family_domain(j, f);
  if (!(s > 0.0 && s <= 1.0)) throw Error(ErrorKind::SOutOfRange, "the proof steps need 0 < s <= 1");
  if (!f.enumerable()) throw Error(ErrorKind::NotEnumerable, "proof steps need an enumerable family");
  const std::size_t na = j.row_count(), ne = j.col_count(), range = f.range_size();
  const double inv_m = 1.0 / static_cast<double>(range);
  const Dist pe = j.col_marginal();

  std::vector<double> pow_sum(na * ne, 0.0), coll_sum(na * ne, 0.0), renyi_sum(ne, 0.0);
  std::uint64_t members = 0;
  std::vector<double> bins(range);
  f.for_each_member([&](std::span<const std::uint32_t> t) {
    ++members;
    for (std::size_t e = 0; e < ne; ++e) {
      if (pe[e] == 0.0) continue;
      std::fill(bins.begin(), bins.end(), 0.0);
      for (std::size_t a = 0; a < na; ++a) bins[t[a]] += j.at(a, e) / pe[e];
      for (double b : bins)
        if (b > 0.0) renyi_sum[e] += std::pow(b, 1.0 + s);
      for (std::size_t a = 0; a < na; ++a) {
        const double c = bins[t[a]];
        coll_sum[a * ne + e] += c;
        pow_sum[a * ne + e] += std::pow(c, s);
      }
    }
  });
  const double k = static_cast<double>(members);

  ProofSteps out{};
  out.collision.slack = std::numeric_limits<double>::infinity();
  out.subadditivity.slack = std::numeric_limits<double>::infinity();
  NeumaierSum jensen_lhs, jensen_rhs, assembled_lhs, assembled_rhs;
  for (std::size_t e = 0; e < ne; ++e) {
    if (pe[e] == 0.0) continue;
    assembled_lhs.add(pe[e] * renyi_sum[e] / k);
    for (std::size_t a = 0; a < na; ++a) {
      const double q = j.at(a, e) / pe[e];
      const double mean_coll = coll_sum[a * ne + e] / k;
      jensen_lhs.add(pe[e] * q * pow_sum[a * ne + e] / k);
      jensen_rhs.add(pe[e] * q * std::pow(mean_coll, s));
      assembled_rhs.add(pe[e] * std::pow(q, 1.0 + s));

      const double cs = q + inv_m - mean_coll;
      if (cs < out.collision.slack) out.collision = {mean_coll, q + inv_m, cs};
      const double lhs3 = std::pow(q + inv_m, s);
      const double rhs3 = std::pow(q, s) + std::pow(inv_m, s);
      if (rhs3 - lhs3 < out.subadditivity.slack) out.subadditivity = {lhs3, rhs3, rhs3 - lhs3};
    }
  }
  out.jensen = {jensen_lhs.value(), jensen_rhs.value(), jensen_rhs.value() - jensen_lhs.value()};
  const double rhs4 = assembled_rhs.value() + std::pow(inv_m, s);
  out.assembled = {assembled_lhs.value(), rhs4, rhs4 - assembled_lhs.value()};
  out.worst_slack = std::min({out.jensen.slack, out.collision.slack, out.subadditivity.slack, out.assembled.slack});
  return out;
}

ProofSteps thm1_proof_steps(const Dist& p, const HashFamily& f, double s) {
  return thm1_proof_steps(JointDist(p.alphabet(), Alphabet(1), {p.probs().begin(), p.probs().end()}), f, s);
}

LeakageReport leakage_report(const JointDist& j, const HashFamily& f, const std::vector<double>& s_grid) {
  LeakageReport r{std::nullopt, {}, smooth_bound(j, static_cast<double>(f.range_size())),
                  thm1_best(j, static_cast<double>(f.range_size())), std::nullopt, std::nullopt};
  for (double s : s_grid) r.thm1_bounds[s] = thm1_bound(j, static_cast<double>(f.range_size()), s);
  r.leakage = exact_avg_leakage(j, f);
  r.entropy_after_hash = r.leakage->avg_cond_entropy;
  r.verdict = check_bound(*r.leakage, r.best.value);
  return r;
}

WatanabeReport watanabe_example_log2(unsigned log2_n, double eps) {
  if (log2_n > 64) throw Error(ErrorKind::SizeCapExceeded, "log2 N is limited to 64");
  check_eps_realizable(eps, std::ldexp(eps, static_cast<int>(log2_n)));
  return watanabe_closed_form({static_cast<double>(log2_n) * std::log(2.0), std::ldexp(1.0, -static_cast<int>(log2_n))},
                              eps);
}

WatanabeReport watanabe_example(std::uint64_t n, double eps) {
  if (n == 0) throw Error(ErrorKind::EmptyAlphabet, "N must be positive");
  const double nd = static_cast<double>(n);
  check_eps_realizable(eps, eps * nd);
  return watanabe_closed_form({std::log(nd), 1.0 / nd}, eps);
}

JointDist watanabe_joint(std::uint64_t n, double eps) {
  if (n == 0) throw Error(ErrorKind::EmptyAlphabet, "N must be positive");
  if (n > 4096) throw Error(ErrorKind::SizeCapExceeded, "N too large to tabulate");
  const double nd = static_cast<double>(n);
  check_eps_realizable(eps, eps * nd);
  const auto sc = static_cast<std::size_t>(std::llround(eps * nd));
  const std::size_t s_size = n - sc;
  std::vector<double> t(n * n, 0.0);
  for (std::size_t e = 0; e < n; ++e) {
    if (e < s_size) {
      for (std::size_t a = 0; a < n; ++a) t[a * n + e] = 1.0 / (nd * nd);
    } else {
      t[e * n + e] = 1.0 / nd;
    }
  }
  return JointDist(Alphabet(n), Alphabet(n), std::move(t));
}

PinskerChain pinsker_chain(const JointDist& j) {
  const Dist pa = j.row_marginal();
  const Dist mix = Dist::uniform(j.rows());
  PinskerChain c{};
  c.d1_target = variational_distance(j, product_joint(mix, j.col_marginal()));
  c.mi = mutual_information(j);
  c.d1_marginal = variational_distance(pa, mix);
  c.rhs_sqrt = std::sqrt(2.0 * c.mi) + c.d1_marginal;
  c.rhs_printed = c.mi * c.mi + c.d1_marginal;
  return c;
}

}  // namespace rpa
