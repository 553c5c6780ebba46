#include "rpa/keyagree.hpp"

#include <algorithm>
#include <cmath>

#include "rpa/entropy.hpp"
#include "rpa/error.hpp"
#include "rpa/exponents.hpp"
#include "rpa/fixtures.hpp"

namespace rpa {
namespace {

constexpr double kMarginalTolerance = 1e-9;
constexpr double kRateTolerance = 1e-9;

Channel induced(const JointDist& j, const Module& group) {
  const std::size_t na = j.row_count(), nb = j.col_count();
  std::vector<double> rows(na * nb * na, 0.0);
  for (std::size_t x = 0; x < na; ++x) {
    for (std::size_t xp = 0; xp < na; ++xp) {
      const std::size_t a = group.sub(x, xp);
      for (std::size_t b = 0; b < nb; ++b) rows[x * nb * na + b + nb * xp] = j.at(a, b);
    }
  }
  return Channel(j.rows(), Alphabet::product(j.cols(), j.rows()), std::move(rows));
}

double mixture_information(const Channel& w) {
  return mutual_information(join(Dist::uniform(w.inputs()), w));
}

std::size_t sample_index(Rng& rng, std::span<const double> probs) {
  const double u = unit_uniform(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  // Rounding left u above the running total; take the last positive cell.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  return 0;
}

}  // namespace

KeyAgreementInstance::KeyAgreementInstance(JointDist ab_in, JointDist ae_in, Module group_in)
    : ab(std::move(ab_in)), ae(std::move(ae_in)), group(std::move(group_in)) {
  if (ab.row_count() != ae.row_count()) throw Error(ErrorKind::AlphabetMismatch, "P^{AB} and P^{AE} differ in |A|");
  if (group.order() != ab.row_count())
    throw Error(ErrorKind::GroupLawMismatch, "group order differs from |A|");
  const Dist pb = ab.row_marginal(), pe = ae.row_marginal();
  for (std::size_t a = 0; a < pb.size(); ++a) {
    if (std::abs(pb[a] - pe[a]) > kMarginalTolerance)
      throw Error(ErrorKind::AlphabetMismatch, "P^{AB} and P^{AE} disagree on the A-marginal");
  }
}

KeyAgreementInstance KeyAgreementInstance::from_channels(const Dist& pa, const Channel& wb, const Channel& we,
                                                         Module group) {
  return KeyAgreementInstance(join(pa, wb), join(pa, we), std::move(group));
}

KeyAgreementInstance iid_power(const KeyAgreementInstance& inst, std::size_t n) {
  return KeyAgreementInstance(iid_power(inst.ab, n), iid_power(inst.ae, n), inst.group.power(n));
}

InducedChannels induced_channels(const KeyAgreementInstance& inst) {
  return {induced(inst.ab, inst.group), induced(inst.ae, inst.group)};
}

KeyRate key_rate(const KeyAgreementInstance& inst) {
  const double rate = conditional_shannon(inst.ae) - conditional_shannon(inst.ab);
  const InducedChannels w = induced_channels(inst);
  const double via = mixture_information(w.bob) - mixture_information(w.eve);
  if (std::abs(rate - via) > kRateTolerance)
    throw Error(ErrorKind::Inconsistent, "key rate differs between the joint and the induced channels");
  return {rate, via};
}

Optimum keyagree_eps_bound(const KeyAgreementInstance& inst, double m, double l) {
  if (!(m >= 1.0 && l >= 1.0)) throw Error(ErrorKind::DimensionMismatch, "M and L must be at least 1");
  const double log_a = std::log(static_cast<double>(inst.ab.row_count()));
  const double log_ml = std::log(m) + std::log(l);
  const Optimum o = maximize_concave(
      [&](double s) {
        const double g = cond_renyi_tilde_gallager(inst.ab, -s / (1.0 + s));
        return -(s * log_ml - s * log_a - (1.0 + s) * g);
      },
      0.0, 1.0);
  return {2.0 * std::exp(-o.value), o.arg};
}

Optimum keyagree_ie_bound(const KeyAgreementInstance& inst, double l) {
  if (!(l >= 1.0)) throw Error(ErrorKind::DimensionMismatch, "L must be at least 1");
  const double log_a = std::log(static_cast<double>(inst.ae.row_count()));
  const double log_l = std::log(l);
  const Optimum o = maximize_concave(
      [&](double s) { return -(s * log_a - cond_renyi_tilde(inst.ae, s) - std::log(s) - s * log_l); }, 1e-6, 1.0);
  return {2.0 * std::exp(-o.value), o.arg};
}

ProtocolReport run_protocol(const KeyAgreementInstance& inst, const LinearCodePair& pair, std::uint64_t seed) {
  const std::size_t na = inst.ab.row_count();
  const auto field = inst.group.field_order();
  std::uint64_t qn = 1;
  for (std::size_t i = 0; i < pair.n; ++i) qn *= pair.q;
  if (!field || *field != pair.q || qn != na)
    throw Error(ErrorKind::GroupLawMismatch, "A must be F_q^n for the code pair");

  const InducedChannels w = induced_channels(inst);
  const WiretapCode code = build_coset_code(pair, w.bob);
  ProtocolReport out{};
  out.performance = evaluate_code(code, w.bob, w.eve);
  const double m = static_cast<double>(code.messages);
  const double l = std::pow(static_cast<double>(pair.q), static_cast<double>(pair.k()));
  out.rhs_eps = keyagree_eps_bound(inst, m, l).value;
  out.rhs_ie = keyagree_ie_bound(inst, l).value;
  out.performance.bound_eps_b = out.rhs_eps;
  out.performance.bound_ie = out.rhs_ie;
  out.reduction_ie = std::log(static_cast<double>(na)) - conditional_shannon(inst.ae);
  out.mutual_information_ae = mutual_information(inst.ae);

  // One sampled run for the audit trail; Eve's view stays exact above.
  Rng rng(seed);
  const std::uint64_t key = uniform_below(rng, code.messages);
  const std::size_t x = sample_index(rng, code.encoders[key].probs());
  const std::size_t cell = sample_index(rng, inst.ab.table());
  const std::size_t a = cell / inst.ab.col_count(), b = cell % inst.ab.col_count();
  const std::size_t x_prime = inst.group.sub(x, a);
  const std::size_t y = b + inst.ab.col_count() * x_prime;
  out.transcript = {seed, x_prime, code.decoder[y], key};
  return out;
}

}  // namespace rpa
