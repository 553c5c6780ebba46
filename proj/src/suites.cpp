#include "rpa/suites.hpp"

#include <cmath>
#include <limits>

#include "rpa/entropy.hpp"
#include "rpa/error.hpp"
#include "rpa/exponents.hpp"
#include "rpa/keyagree.hpp"
#include "rpa/privamp.hpp"
#include "rpa/wiretap.hpp"

namespace rpa {
namespace {

using nlohmann::json;

Dist mix(const Dist& a, const Dist& b, double lambda) {
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = lambda * a[i] + (1.0 - lambda) * b[i];
  return make_dist(v);
}

json to_json(const Dist& p) { return std::vector<double>(p.probs().begin(), p.probs().end()); }

json to_json(const Channel& w) {
  json rows = json::array();
  for (std::size_t x = 0; x < w.input_count(); ++x) rows.push_back(std::vector<double>(w.row(x).begin(), w.row(x).end()));
  return rows;
}

std::size_t log2_exact(std::size_t n) {
  std::size_t m = 0;
  while ((std::size_t{1} << m) < n) ++m;
  return (std::size_t{1} << m) == n ? m : 0;
}

}  // namespace

void SuiteResult::record(double slack, double tol, const std::function<json()>& describe) {
  if (checks == 0 || slack < worst_slack) {
    worst_slack = slack;
    worst = describe();
  }
  ++checks;
  if (slack < -tol) ++violations;
}

std::vector<double> s_grid(double step, double hi) {
  std::vector<double> out;
  const auto n = static_cast<int>(std::lround(hi / step));
  for (int i = 1; i <= n; ++i) out.push_back(step * i);
  return out;
}

SuiteResult universal2_suite(std::uint32_t q, std::size_t m, std::size_t k) {
  SuiteResult r;
  r.name = "universal2";
  const HashFamily f = toeplitz_family(q, m, k);
  const Universal2Report u = verify_universal2(f);
  r.record(u.bound - u.max_collision_prob, 1e-12, [&] {
    return json{{"check", "universal2"}, {"q", q}, {"m", m}, {"k", k}, {"max_collision_prob", u.max_collision_prob},
                {"pair", {u.worst_a1, u.worst_a2}}};
  });
  const bool balanced = verify_balanced(f);
  r.record(balanced ? 0.0 : -1.0, 0.0, [&] { return json{{"check", "balanced"}, {"q", q}, {"m", m}, {"k", k}}; });

  const double target = std::pow(static_cast<double>(q), -static_cast<double>(m - k));
  std::uint64_t domain = 1;
  for (std::size_t i = 0; i < m; ++i) domain *= q;
  for (std::uint64_t idx = 0; idx < domain; ++idx) {
    const FqVector v = decode_vector(idx, q, m);
    bool first_nonzero = false;
    for (std::size_t i = 0; i < k; ++i) first_nonzero = first_nonzero || v[i] != 0;
    if (!first_nonzero) continue;
    const double p = kernel_membership_prob(q, m, k, v);
    // Equality: the count ratio must reproduce q^{-(m-k)} to rounding.
    r.record(-std::abs(p - target), 1e-15 * target, [&] {
      return json{{"check", "kernel"}, {"q", q}, {"m", m}, {"k", k}, {"v", v}, {"prob", p}, {"expected", target}};
    });
  }
  return r;
}

std::vector<HashFamily> builtin_families(std::size_t domain) {
  std::vector<HashFamily> out;
  if (const std::size_t m = log2_exact(domain); m >= 2) {
    for (std::size_t k = 1; k < m; ++k) out.push_back(toeplitz_family(2, m, k));
  }
  if (domain == 4) out.push_back(permutation_family({0, 0, 1, 1}, 2));
  return out;
}

SuiteResult thm1_suite(const std::vector<Fixture>& fixtures,
                       const std::function<std::vector<HashFamily>(std::size_t)>& families,
                       const std::vector<double>& s_values, double tol) {
  SuiteResult r;
  r.name = "thm1";
  std::size_t pairs = 0;
  for (const Fixture& fx : fixtures) {
    for (const HashFamily& f : families(fx.joint.row_count())) {
      const Leakage leak = exact_avg_leakage(fx.joint, f);
      if (!leak.exact) throw Error(ErrorKind::NotEnumerable, "thm1 suite needs enumerable families");
      ++pairs;
      const double m = static_cast<double>(f.range_size());
      for (double s : s_values) {
        const double bound = thm1_bound(fx.joint, m, s);
        r.record(bound - leak.avg_mi, tol, [&] {
          return json{{"fixture", fx.name}, {"family", f.description()}, {"s", s}, {"avg_mi", leak.avg_mi}, {"bound", bound}};
        });
      }
    }
  }
  r.details["fixture_family_pairs"] = pairs;
  return r;
}

SuiteResult proof_step_suite(const std::vector<Fixture>& fixtures, const std::vector<double>& s_values, double tol) {
  SuiteResult r;
  r.name = "proof_steps";
  for (const Fixture& fx : fixtures) {
    for (const HashFamily& f : builtin_families(fx.joint.row_count())) {
      for (double s : s_values) {
        const ProofSteps p = thm1_proof_steps(fx.joint, f, s);
        const std::pair<const char*, const StepCheck*> steps[] = {
            {"jensen", &p.jensen}, {"collision", &p.collision}, {"subadditivity", &p.subadditivity},
            {"assembled", &p.assembled}};
        for (const auto& [name, step] : steps) {
          r.record(step->slack, tol, [&] {
            return json{{"fixture", fx.name}, {"family", f.description()}, {"s", s}, {"step", name},
                        {"lhs", step->lhs}, {"rhs", step->rhs}};
          });
        }
      }
    }
  }
  // A constant map is not universal_2; the collision step must fail on it.
  const HashFamily constant = HashFamily::explicit_list({{0, 0, 0, 0}}, 2);
  const ProofSteps bad = thm1_proof_steps(Dist::uniform(4), constant, 1.0);
  r.details["constant_family_collision_slack"] = bad.collision.slack;
  r.details["constant_family_detected"] = bad.collision.slack < -tol;
  return r;
}

SuiteResult holder_suite(std::size_t samples, std::uint64_t seed, double tol) {
  SuiteResult r;
  r.name = "holder";
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const Channel w = random_channel(rng, 3, 3, 0.1);
    const Dist p = random_dist(rng, 3, 0.1);
    const double s = 0.99 * unit_uniform(rng);
    const double ps = psi(s, w, p), ph = phi(s, w, p);
    r.record(ph - ps, tol, [&] {
      return json{{"W", to_json(w)}, {"p", to_json(p)}, {"s", s}, {"psi", ps}, {"phi", ph}};
    });
  }
  return r;
}

SuiteResult lemma1_suite(std::size_t samples, std::uint64_t seed, double tol) {
  SuiteResult r;
  r.name = "lemma1";
  Rng rng(seed);
  std::size_t phi_neg = 0, phi_pos = 0, psi_concave = 0;
  double worst_psi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples; ++i) {
    const Channel w = random_channel(rng, 3, 4, 0.1);
    const Dist p1 = random_dist(rng, 3), p2 = random_dist(rng, 3);
    const double lambda = unit_uniform(rng);
    const double neg = -unit_uniform(rng), pos = 0.99 * unit_uniform(rng), sp = unit_uniform(rng);
    const Dist pm = mix(p1, p2, lambda);
    auto chord = [&](const std::function<double(const Dist&)>& f) { return lambda * f(p1) + (1 - lambda) * f(p2); };
    auto describe = [&](const char* regime, double s, double at_mix, double at_chord) {
      return [=, &w, &p1, &p2] {
        return json{{"regime", regime}, {"W", to_json(w)}, {"p1", to_json(p1)}, {"p2", to_json(p2)},
                    {"lambda", lambda}, {"s", s}, {"at_mixture", at_mix}, {"chord", at_chord}};
      };
    };

    const auto ephi_neg = [&](const Dist& p) { return std::exp(phi(neg, w, p)); };
    const double neg_mix = ephi_neg(pm), neg_chord = chord(ephi_neg);
    r.record(neg_chord - neg_mix, tol, describe("phi, s < 0 (convex)", neg, neg_mix, neg_chord));
    phi_neg += neg_chord - neg_mix < -tol;

    const auto ephi_pos = [&](const Dist& p) { return std::exp(phi(pos, w, p)); };
    const double pos_mix = ephi_pos(pm), pos_chord = chord(ephi_pos);
    r.record(pos_mix - pos_chord, tol, describe("phi, s > 0 (concave)", pos, pos_mix, pos_chord));
    phi_pos += pos_mix - pos_chord < -tol;

    const auto epsi = [&](const Dist& p) { return std::exp(psi(sp, w, p)); };
    const double psi_mix = epsi(pm), psi_chord = chord(epsi);
    r.record(psi_mix - psi_chord, tol, describe("psi (concave)", sp, psi_mix, psi_chord));
    psi_concave += psi_mix - psi_chord < -tol;
    worst_psi = std::min(worst_psi, psi_mix - psi_chord);
  }
  r.details["phi_convex_violations"] = phi_neg;
  r.details["phi_concave_violations"] = phi_pos;
  r.details["psi_concave_violations"] = psi_concave;
  r.details["psi_worst_slack"] = worst_psi;
  r.details["draws"] = samples;
  return r;
}

SuiteResult coset_suite(std::uint32_t q, std::size_t n, const Channel& bob, const Channel& eve,
                        const std::vector<double>& s_values, double tol) {
  SuiteResult r;
  r.name = "coset";
  const std::vector<FqVector> identity = LinearCodePair::full_space(q, n, ToeplitzSeed::from_index(q, n, 0, 0)).generator;
  json by_k = json::array();
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const EnsembleAverage avg = ensemble_average(q, n, identity, k, bob, eve);
    const LinearCodePair pair = LinearCodePair::full_space(q, n, ToeplitzSeed::from_index(q, n, k, 0));
    json bounds = json::object();
    for (double s : s_values) {
      const double b = coset_bound(pair, eve, s);
      bounds[std::to_string(s)] = b;
      r.record(b - avg.ie, tol, [&] { return json{{"k", k}, {"s", s}, {"avg_ie", avg.ie}, {"bound", b}}; });
    }
    if (k > 0) {
      r.record(prev - avg.ie, tol, [&] { return json{{"check", "monotone in k"}, {"k", k}, {"ie", avg.ie}, {"prev", prev}}; });
    }
    prev = avg.ie;
    by_k.push_back({{"k", k}, {"avg_ie", avg.ie}, {"avg_eps_b", avg.eps_b}, {"seeds", avg.seeds},
                    {"exhaustive", avg.exhaustive}, {"bound_by_s", bounds}});
  }
  r.details["by_k"] = by_k;
  return r;
}

SuiteResult keyagree_suite(double tol) {
  SuiteResult r;
  r.name = "keyagree";
  const KeyAgreementInstance bit =
      KeyAgreementInstance::from_channels(Dist::uniform(2), Channel::bsc(0.05), Channel::bsc(0.2), Module::cyclic(2));
  const KeyRate rate = key_rate(bit);
  r.details["key_rate"] = rate.rate;
  r.details["key_rate_via_channels"] = rate.via_channels;
  r.record(-std::abs(rate.rate - rate.via_channels), tol, [&] { return json{{"check", "key rate paths"}}; });

  const KeyAgreementInstance inst = iid_power(bit, 4);
  json runs = json::array();
  for (std::uint64_t si = 0; si < 8; ++si) {
    const ProtocolReport p = run_protocol(inst, LinearCodePair::full_space(2, 4, ToeplitzSeed::from_index(2, 4, 2, si)), si);
    r.record(p.rhs_ie - p.performance.ie, tol, [&] {
      return json{{"check", "leakage bound"}, {"seed", si}, {"ie", p.performance.ie}, {"rhs", p.rhs_ie}};
    });
    runs.push_back({{"seed", si}, {"eps_b", p.performance.eps_b}, {"ie", p.performance.ie}, {"rhs_eps", p.rhs_eps},
                    {"rhs_ie", p.rhs_ie}});
  }
  r.details["runs"] = runs;

  const ProtocolReport full = run_protocol(inst, LinearCodePair::full_space(2, 4, ToeplitzSeed::from_index(2, 4, 0, 0)), 0);
  const double gap = std::abs(full.performance.ie - full.reduction_ie);
  r.record(-gap, tol, [&] {
    return json{{"check", "reduction"}, {"ie", full.performance.ie}, {"log_a_minus_h", full.reduction_ie},
                {"mutual_information", full.mutual_information_ae}};
  });
  r.details["reduction_gap"] = gap;
  r.details["reduction_vs_mutual_information"] = std::abs(full.performance.ie - full.mutual_information_ae);
  return r;
}

}  // namespace rpa
