// rpa: command-line front end. Exit codes: 0 ok, 1 invariant violated,
// 2 usage or input error, 3 domain error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rpa/entropy.hpp"
#include "rpa/error.hpp"
#include "rpa/exponents.hpp"
#include "rpa/fixtures.hpp"
#include "rpa/io.hpp"
#include "rpa/keyagree.hpp"
#include "rpa/privamp.hpp"
#include "rpa/suites.hpp"
#include "rpa/wiretap.hpp"

namespace {

using nlohmann::json;
using namespace rpa;

constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

struct Output {
  int precision = 6;
  std::string path;

  std::string num(double x) const { return io::format_number(x, precision); }

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
    out << text;
  }

  void write_json(const json& j) const { write(dump(j) + "\n"); }

  // Fixed-precision JSON: numbers are emitted through format_number so the
  // text is locale independent and byte-stable across runs.
  std::string dump(const json& j, int indent = 0) const {
    const std::string pad(indent + 2, ' '), close(indent, ' ');
    if (j.is_number_float()) return num(j.get<double>());
    if (j.is_array()) {
      if (j.empty()) return "[]";
      bool flat = true;
      for (const auto& x : j) flat = flat && !x.is_structured();
      std::string s = "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) s += flat ? ", " : ",";
        s += flat ? dump(j[i], indent) : "\n" + pad + dump(j[i], indent + 2);
      }
      return s + (flat ? "]" : "\n" + close + "]");
    }
    if (j.is_object()) {
      if (j.empty()) return "{}";
      std::string s = "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        s += (first ? "\n" : ",\n") + pad + json(it.key()).dump() + ": " + dump(it.value(), indent + 2);
        first = false;
      }
      return s + "\n" + close + "}";
    }
    return j.dump();
  }
};

json leakage_json(const Leakage& l) {
  return {{"avg_mi", l.avg_mi},
          {"avg_cond_entropy", l.avg_cond_entropy},
          {"exact", l.exact},
          {"members", l.members},
          {"mi_half_width", l.mi_half_width},
          {"cond_entropy_half_width", l.cond_entropy_half_width}};
}

std::string verdict_name(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::holds: return "holds";
    case BoundVerdict::violated: return "violated";
    case BoundVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string s_key(double s, const Output& out) { return out.num(s); }

std::vector<double> grid_or(const std::string& spec, std::vector<double> fallback) {
  return spec.empty() ? fallback : io::parse_grid(spec);
}

// ---- entropy --------------------------------------------------------------

struct EntropyArgs {
  std::string dist, joint, kind = "shannon";
  double s = 0.0, eps = 0.0;
  std::string s_grid;
};

double entropy_value(const EntropyArgs& a, double s) {
  static const std::map<std::string, EntropyKind> kinds = {
      {"shannon", EntropyKind::shannon},         {"renyitilde", EntropyKind::renyiTilde},
      {"renyi", EntropyKind::renyi},             {"condrenyitilde", EntropyKind::condRenyiTilde},
      {"condrenyi", EntropyKind::condRenyi},     {"min", EntropyKind::minEntropy},
      {"smoothmin", EntropyKind::smoothMinEntropy}};
  if (!a.joint.empty()) {
    const JointDist j = io::parse_joint(a.joint);
    if (a.kind == "mi") return mutual_information(j);
    if (a.kind == "gallager") return cond_renyi_tilde_gallager(j, s);
    const auto it = kinds.find(a.kind);
    if (it == kinds.end()) throw Error(ErrorKind::ParseError, "unknown entropy kind '" + a.kind + "'");
    return evaluate(it->second, j, s, a.eps).value;
  }
  const auto it = kinds.find(a.kind);
  if (it == kinds.end()) throw Error(ErrorKind::ParseError, "unknown entropy kind '" + a.kind + "'");
  return evaluate(it->second, io::parse_dist(a.dist), s).value;
}

int cmd_entropy(const EntropyArgs& a, const Output& out) {
  if (a.dist.empty() == a.joint.empty()) throw Error(ErrorKind::ParseError, "give exactly one of --dist, --joint");
  if (a.s_grid.empty()) {
    out.write(out.num(entropy_value(a, a.s)) + "\n");
    return 0;
  }
  std::string text = "s,value\n";
  for (double s : io::parse_grid(a.s_grid)) text += out.num(s) + "," + out.num(entropy_value(a, s)) + "\n";
  out.write(text);
  return 0;
}

// ---- exponent -------------------------------------------------------------

struct ExponentArgs {
  std::string kind = "psi", channel, joint, rate_grid;
  double rate = 0.0;
  bool has_rate = false;
};

int cmd_exponent(const ExponentArgs& a, const Output& out) {
  static const std::map<std::string, ExponentKind> kinds = {{"psi", ExponentKind::ePsi},
                                                            {"phi", ExponentKind::ePhi},
                                                            {"psi2", ExponentKind::ePsi2},
                                                            {"renyi-pa", ExponentKind::eRenyiPA},
                                                            {"smooth-pa", ExponentKind::eSmoothPA}};
  const auto it = kinds.find(a.kind);
  if (it == kinds.end()) throw Error(ErrorKind::ParseError, "unknown exponent kind '" + a.kind + "'");
  const std::vector<double> rates = a.has_rate ? std::vector<double>{a.rate} : io::parse_grid(a.rate_grid);
  const bool pa = it->second == ExponentKind::eRenyiPA || it->second == ExponentKind::eSmoothPA;
  ExponentCurve c = pa ? (a.joint.empty() ? throw Error(ErrorKind::ParseError, "PA exponents need --joint")
                                          : exponent_curve(it->second, rates, io::parse_joint(a.joint)))
                       : (a.channel.empty() ? throw Error(ErrorKind::ParseError, "channel exponents need --channel")
                                            : exponent_curve(it->second, rates, io::parse_additive(a.channel)));
  std::string text = "R,value,argmax\n";
  for (std::size_t i = 0; i < c.rates.size(); ++i) {
    text += out.num(c.rates[i]) + "," + out.num(c.values[i]) + ",";
    text += (c.argmax.empty() ? std::string() : out.num(c.argmax[i])) + "\n";
  }
  out.write(text);
  return 0;
}

// ---- fig1 -----------------------------------------------------------------

struct Fig1Args {
  double p = 0.2;
  std::string rate_grid;
  std::size_t points = 400;
};

std::string fig1_csv(const Fig1Data& d, const Output& out, bool clamp) {
  auto v = [&](double x) { return out.num(clamp ? std::max(x, 0.0) : x); };
  std::string text = "R,e_psi,e_phi,e_psi2,argmax_s_psi,argmax_t_phi\n";
  for (std::size_t i = 0; i < d.e_psi.rates.size(); ++i) {
    text += out.num(d.e_psi.rates[i]) + "," + v(d.e_psi.values[i]) + "," + v(d.e_phi.values[i]) + "," +
            v(d.e_psi2.values[i]) + "," + out.num(d.e_psi.argmax[i]) + "," + out.num(d.e_phi.argmax[i]) + "\n";
  }
  return text;
}

std::string raw_sibling(const std::string& path) {
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ".raw";
  return path.substr(0, dot) + ".raw" + path.substr(dot);
}

int cmd_fig1(const Fig1Args& a, const Output& out) {
  if (!(a.p > 0.0 && a.p <= 0.5)) throw Error(ErrorKind::XOutOfDomain, "noise parameter must lie in (0, 1/2]");
  const std::vector<double> rates =
      a.rate_grid.empty() ? rate_linspace(0.0, std::log(2.0), a.points) : io::parse_grid(a.rate_grid);
  const Fig1Data d = fig1(AdditiveSpec(Module::cyclic(2), Dist::bernoulli(a.p)), rates);
  out.write(fig1_csv(d, out, true));
  if (!out.path.empty()) {
    Output raw = out;
    raw.path = raw_sibling(out.path);
    raw.write(fig1_csv(d, out, false));
    std::cerr << "zero crossing e_psi " << out.num(d.threshold_psi) << ", e_phi " << out.num(d.threshold_phi)
              << ", e_psi2 " << out.num(d.threshold_psi2) << "; merge rate " << out.num(d.merge_threshold) << "\n"
              << "raw values in " << raw.path << "\n";
  }
  return 0;
}

// ---- privamp --------------------------------------------------------------

struct PrivampArgs {
  std::string joint, family, s_grid = "0.05:1:0.05";
  std::uint64_t samples = kDefaultLeakageSamples, seed = 1;
  unsigned log2_n = 16;
  double eps = 0.25;
  double tol = 1e-9;
};

int cmd_privamp_verify(const PrivampArgs& a, const Output& out) {
  const JointDist j = io::parse_joint(a.joint);
  const HashFamily f = io::parse_family(a.family)(j.row_count());
  const Leakage leak = exact_avg_leakage(j, f, a.samples, a.seed);
  const double m = static_cast<double>(f.range_size());
  std::string text = "s,bound,exact,slack\n";
  bool violated = false;
  for (double s : io::parse_grid(a.s_grid)) {
    const double b = thm1_bound(j, m, s);
    violated = violated || check_bound(leak, b, a.tol) == BoundVerdict::violated;
    text += out.num(s) + "," + out.num(b) + "," + out.num(leak.avg_mi) + "," + out.num(b - leak.avg_mi) + "\n";
  }
  out.write(text);
  return violated ? kExitViolation : 0;
}

int cmd_privamp_leakage(const PrivampArgs& a, const Output& out) {
  const JointDist j = io::parse_joint(a.joint);
  const HashFamily f = io::parse_family(a.family)(j.row_count());
  const LeakageReport r = leakage_report(j, f, io::parse_grid(a.s_grid));
  json bounds = json::object();
  for (const auto& [s, b] : r.thm1_bounds) bounds[s_key(s, out)] = b;
  json smooth = {{"value", r.smooth.value}, {"arg_eps", r.smooth.arg_eps}};
  if (r.smooth.r_prime_value) {
    smooth["r_prime_value"] = *r.smooth.r_prime_value;
    smooth["arg_r_prime"] = *r.smooth.arg_r_prime;
  }
  json j_out = {{"thm1_bound_by_s", bounds},
                {"best_bound", {{"value", r.best.value}, {"s", r.best.s}}},
                {"smooth_bound", smooth}};
  if (r.leakage) j_out["leakage"] = leakage_json(*r.leakage);
  j_out["entropy_lower_bound"] = std::log(static_cast<double>(f.range_size())) - r.best.value;
  if (r.verdict) j_out["verdict"] = verdict_name(*r.verdict);
  out.write_json(j_out);
  return r.verdict == BoundVerdict::violated ? kExitViolation : 0;
}

int cmd_privamp_watanabe(const PrivampArgs& a, const Output& out) {
  const WatanabeReport w = watanabe_example_log2(a.log2_n, a.eps);
  out.write_json({{"log2_n", a.log2_n},
                  {"eps", w.eps},
                  {"d1", w.d1},
                  {"d1_marginal", w.d1_marginal},
                  {"mi_nats", w.mi},
                  {"mi_bits", w.mi_bits},
                  {"fano_nats", w.fano},
                  {"fano_bits", w.fano_bits},
                  {"pinsker_sqrt_rhs", w.pinsker_sqrt},
                  {"pinsker_printed_rhs", w.pinsker_printed}});
  return 0;
}

// ---- wiretap --------------------------------------------------------------

struct WiretapArgs {
  std::uint32_t q = 2;
  std::size_t n = 4, k = 2;
  std::string bob = "bsc:0.05", eve = "bsc:0.2", generator, decoder = "ml", s_grid = "0.1:1:0.1";
  std::optional<std::uint64_t> seed;
  bool all_seeds = false;
  double m = 4, l = 4;
};

std::vector<FqVector> generator_for(const WiretapArgs& a) {
  if (a.generator.empty()) {
    return LinearCodePair::full_space(a.q, a.n, ToeplitzSeed::from_index(a.q, a.n, 0, 0)).generator;
  }
  const json g = io::load_json(a.generator);
  std::vector<FqVector> rows;
  try {
    for (const auto& r : g) rows.push_back(r.get<FqVector>());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("generator: ") + e.what());
  }
  for (const auto& r : rows) {
    if (r.size() != a.n) throw Error(ErrorKind::DimensionMismatch, "generator rows must have length n");
  }
  return rows;
}

std::uint64_t power(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

int cmd_wiretap_simulate(const WiretapArgs& a, const Output& out) {
  if (power(a.q, a.n) > kWiretapInputCap)
    throw Error(ErrorKind::CapExceeded, "q^n exceeds the exact-evaluation cap of 2^14 inputs");
  const std::vector<FqVector> g = generator_for(a);
  const Channel bob = io::parse_channel(a.bob), eve = io::parse_channel(a.eve);
  const Channel bob_n = block_channel(bob, a.q, a.n), eve_n = block_channel(eve, a.q, a.n);
  const std::size_t m = g.size();
  if (a.k > m) throw Error(ErrorKind::DimensionMismatch, "k exceeds dim C1");
  const DecoderKind dk = a.decoder == "syndrome" ? DecoderKind::syndrome
                         : a.decoder == "ml"     ? DecoderKind::ml
                                                 : throw Error(ErrorKind::ParseError, "decoder must be ml or syndrome");

  const double l = static_cast<double>(power(a.q, a.k));
  const double messages = static_cast<double>(power(a.q, m - a.k));
  const LinearCodePair base{a.q, a.n, g, ToeplitzSeed::from_index(a.q, m, a.k, a.seed.value_or(0)), dk};

  json result;
  if (a.all_seeds || !a.seed) {
    const EnsembleAverage avg = ensemble_average(a.q, a.n, g, a.k, bob_n, eve_n);
    result["epsB"] = avg.eps_b;
    result["IE"] = avg.ie;
    result["seeds"] = avg.seeds;
    result["exhaustive"] = avg.exhaustive;
    result["IE_by_seed"] = avg.ie_by_seed;
  } else {
    const CodePerformance p = evaluate_code(build_coset_code(base, bob_n), bob_n, eve_n);
    result["epsB"] = p.eps_b;
    result["IE"] = p.ie;
    result["seed"] = *a.seed;
  }
  const CosetBoundScan scan = coset_bound_scan(base, eve_n, io::parse_grid(a.s_grid));
  json by_s = json::object();
  for (const auto& [s, b] : scan.by_s) by_s[s_key(s, out)] = b;
  result["boundIE_by_s"] = by_s;
  result["boundIE_best"] = {{"value", scan.best}, {"s", scan.best_s}};
  // Random-coding bound for the same M and L over the uniform input on F_q^n.
  const Thm3Bounds t = bob.input_count() == a.q ? thm3_bounds_iid(messages, l, a.n, bob, eve, Dist::uniform(a.q))
                                                : thm3_bounds(messages, l, bob_n, eve_n, Dist::uniform(bob_n.input_count()));
  result["boundEpsB"] = t.eps_bound;
  result["M"] = messages;
  result["L"] = l;
  out.write_json(result);
  return 0;
}

int cmd_wiretap_bounds(const WiretapArgs& a, const Output& out) {
  const Channel bob = io::parse_channel(a.bob), eve = io::parse_channel(a.eve);
  if (bob.input_count() != eve.input_count()) throw Error(ErrorKind::AlphabetMismatch, "Bob and Eve inputs differ");
  const Dist p = Dist::uniform(bob.input_count());
  const Thm3Bounds t = a.n == 1 ? thm3_bounds(a.m, a.l, bob, eve, p) : thm3_bounds_iid(a.m, a.l, a.n, bob, eve, p);
  out.write_json({{"epsB_bound", t.eps_bound}, {"epsB_s", t.eps_s}, {"IE_bound", t.ie_bound}, {"IE_s", t.ie_s}});
  return 0;
}

// ---- keyagree -------------------------------------------------------------

struct KeyagreeArgs {
  std::string ab = "bsc:0.05", ae = "bsc:0.2", code = "2,4,2";
  std::uint64_t seed = 0;
};

KeyAgreementInstance instance_for(const KeyagreeArgs& a, std::uint32_t q, std::size_t m) {
  const JointDist ab = io::parse_joint(a.ab), ae = io::parse_joint(a.ae);
  if (ab.row_count() == power(q, m)) return KeyAgreementInstance(ab, ae, Module::vector_space(q, m));
  if (ab.row_count() == q) return iid_power(KeyAgreementInstance(ab, ae, Module::vector_space(q, 1)), m);
  throw Error(ErrorKind::DimensionMismatch, "|A| must be q or q^m");
}

int cmd_keyagree_run(const KeyagreeArgs& a, const Output& out) {
  const auto c = io::parse_uints(a.code, 3);
  const auto q = static_cast<std::uint32_t>(c[0]);
  const std::size_t m = c[1], k = c[2];
  const KeyAgreementInstance inst = instance_for(a, q, m);
  const std::uint64_t hash_index = a.seed % power(q, m == 0 ? 0 : m - 1);
  const LinearCodePair pair = LinearCodePair::full_space(q, m, ToeplitzSeed::from_index(q, m, k, hash_index));
  const ProtocolReport r = run_protocol(inst, pair, a.seed);
  out.write_json({{"epsB", r.performance.eps_b},
                  {"IE", r.performance.ie},
                  {"boundEpsB", r.rhs_eps},
                  {"boundIE", r.rhs_ie},
                  {"logA_minus_H_A_given_E", r.reduction_ie},
                  {"I_A_E", r.mutual_information_ae},
                  {"key_rate_block", key_rate(inst).rate},
                  {"toeplitz_seed", hash_index},
                  {"transcript",
                   {{"seed", r.transcript.seed},
                    {"x_prime", r.transcript.x_prime},
                    {"decoded_key", r.transcript.decoded_key},
                    {"true_key", r.transcript.true_key},
                    {"agreed", r.transcript.decoded_key == r.transcript.true_key}}}});
  return 0;
}

int cmd_keyagree_rate(const KeyagreeArgs& a, const Output& out) {
  const JointDist ab = io::parse_joint(a.ab), ae = io::parse_joint(a.ae);
  std::vector<std::uint32_t> moduli{static_cast<std::uint32_t>(ab.row_count())};
  out.write(out.num(key_rate(KeyAgreementInstance(ab, ae, Module(moduli))).rate) + "\n");
  return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string suite, family, trials = "all", bob = "bsc:0.05", eve = "bsc:0.2", s_grid;
  std::uint32_t q = 2;
  std::size_t m = 6, k = 3, n = 4, samples = 100;
  std::uint64_t seed = 7;
};

int cmd_verify(const VerifyArgs& a, const Output& out) {
  SuiteResult r;
  if (a.suite == "universal2") {
    r = universal2_suite(a.q, a.m, a.k);
  } else if (a.suite == "thm1" || a.suite == "proofsteps") {
    std::vector<Fixture> fx;
    for (auto& f : fixture_joints()) {
      if (a.trials == "all" || (a.trials == "structured") == f.structured) fx.push_back(std::move(f));
    }
    if (a.trials != "all" && a.trials != "structured" && a.trials != "random")
      throw Error(ErrorKind::ParseError, "--trials must be structured, random or all");
    const std::vector<double> s = grid_or(a.s_grid, s_grid(0.05));
    if (a.suite == "proofsteps") {
      r = proof_step_suite(fx, s);
    } else if (a.family.empty()) {
      r = thm1_suite(fx, builtin_families, s);
    } else {
      const auto make = io::parse_family(a.family);
      r = thm1_suite(
          fx,
          [&](std::size_t domain) {
            try {
              return std::vector<HashFamily>{make(domain)};
            } catch (const Error&) {
              return std::vector<HashFamily>{};  // family does not fit this |A|
            }
          },
          s);
    }
  } else if (a.suite == "holder") {
    r = holder_suite(a.samples, a.seed);
  } else if (a.suite == "lemma1") {
    r = lemma1_suite(a.samples, a.seed);
  } else if (a.suite == "coset") {
    r = coset_suite(a.q, a.n, io::parse_channel(a.bob), io::parse_channel(a.eve), grid_or(a.s_grid, s_grid(0.1)));
  } else if (a.suite == "keyagree") {
    r = keyagree_suite();
  } else {
    std::cerr << "unknown suite '" << a.suite << "'\n";
    return kExitInput;
  }
  json report = {{"suite", r.name},     {"result", r.passed() ? "pass" : "fail"}, {"checks", r.checks},
                 {"violations", r.violations}, {"worst_slack", r.worst_slack},  {"worst", r.worst},
                 {"details", r.details}};
  out.write_json(report);
  if (!r.passed()) std::cerr << "FAIL " << r.name << ": worst instance " << out.dump(r.worst) << "\n";
  return r.passed() ? 0 : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy amplification, wiretap codes and their exponents"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("--precision", out.precision, "Digits after the decimal point")->check(CLI::Range(0, 17));
  app.add_option("--out", out.path, "Write to this file instead of stdout");
  std::function<int()> action;

  EntropyArgs ea;
  auto* ent = app.add_subcommand("entropy", "Entropy of a distribution or joint");
  ent->add_option("--dist", ea.dist, "bern:p, uniform:n or JSON file");
  ent->add_option("--joint", ea.joint, "bsc:p or JSON file");
  ent->add_option("--kind", ea.kind,
                  "shannon, renyitilde, renyi, condrenyitilde, condrenyi, gallager, min, smoothmin, mi");
  ent->add_option("--s", ea.s, "Order parameter, order = 1 + s");
  ent->add_option("--s-grid", ea.s_grid, "start:stop:step");
  ent->add_option("--eps", ea.eps, "Smoothing parameter");
  ent->callback([&] { action = [&] { return cmd_entropy(ea, out); }; });

  ExponentArgs xa;
  auto* exp = app.add_subcommand("exponent", "Exponent curves");
  exp->add_option("--kind", xa.kind, "psi, phi, psi2, renyi-pa, smooth-pa");
  exp->add_option("--channel", xa.channel, "bsc:p, additive:q,m,NOISE or JSON additive spec");
  exp->add_option("--joint", xa.joint, "Joint P^{A,E} for the PA exponents");
  auto* rate_opt = exp->add_option("--rate", xa.rate, "Single rate");
  exp->add_option("--rate-grid", xa.rate_grid, "start:stop:step")->excludes(rate_opt);
  exp->callback([&] {
    xa.has_rate = rate_opt->count() > 0;
    if (!xa.has_rate && xa.rate_grid.empty()) throw CLI::ValidationError("give --rate or --rate-grid");
    action = [&] { return cmd_exponent(xa, out); };
  });

  Fig1Args fa;
  auto* f1 = app.add_subcommand("fig1", "Exponent comparison for the binary additive channel");
  f1->add_option("--p", fa.p, "Noise parameter in (0, 1/2]");
  f1->add_option("--rate-grid", fa.rate_grid, "start:stop:step (default: 400 points on [0, ln 2])");
  f1->add_option("--points", fa.points, "Points on [0, ln 2] when no grid is given")->check(CLI::Range(2, 1000000));
  f1->callback([&] { action = [&] { return cmd_fig1(fa, out); }; });

  PrivampArgs pa;
  auto* pv = app.add_subcommand("privamp", "Privacy amplification");
  pv->require_subcommand(1);
  auto add_pa = [&](CLI::App* c) {
    c->add_option("--joint", pa.joint, "Joint P^{A,E}")->required();
    c->add_option("--family", pa.family, "toeplitz:q,m,k or permutation:M")->required();
    c->add_option("--s-grid", pa.s_grid, "start:stop:step");
    c->add_option("--samples", pa.samples, "Members sampled when the family is not enumerable");
    c->add_option("--seed", pa.seed, "Sampling seed");
  };
  auto* pv_verify = pv->add_subcommand("verify", "Per-s table of bound, exact leakage and slack");
  add_pa(pv_verify);
  pv_verify->add_option("--tol", pa.tol, "Slack tolerance");
  pv_verify->callback([&] { action = [&] { return cmd_privamp_verify(pa, out); }; });
  auto* pv_leak = pv->add_subcommand("leakage", "Leakage report as JSON");
  add_pa(pv_leak);
  pv_leak->callback([&] { action = [&] { return cmd_privamp_leakage(pa, out); }; });
  auto* pv_wat = pv->add_subcommand("watanabe", "Variational distance versus mutual information example");
  pv_wat->add_option("--log2n", pa.log2_n, "log2 N")->check(CLI::Range(1, 64));
  pv_wat->add_option("--eps", pa.eps, "eps");
  pv_wat->callback([&] { action = [&] { return cmd_privamp_watanabe(pa, out); }; });

  WiretapArgs wa;
  auto* wt = app.add_subcommand("wiretap", "Wiretap coset codes");
  wt->require_subcommand(1);
  auto* sim = wt->add_subcommand("simulate", "Exact Bob error and Eve information of a coset code");
  sim->add_option("--q", wa.q, "Field order");
  sim->add_option("--n", wa.n, "Block length");
  sim->add_option("--k", wa.k, "Sacrificed dimensions");
  sim->add_option("--bob", wa.bob, "Bob channel, single letter or block");
  sim->add_option("--eve", wa.eve, "Eve channel, single letter or block");
  sim->add_option("--generator", wa.generator, "JSON rows of the C1 generator (default: identity)");
  sim->add_option("--decoder", wa.decoder, "ml or syndrome");
  sim->add_option("--s-grid", wa.s_grid, "start:stop:step");
  auto* seed_opt = sim->add_option("--seed", wa.seed, "Toeplitz seed index");
  sim->add_flag("--all-seeds", wa.all_seeds, "Average over every Toeplitz seed")->excludes(seed_opt);
  sim->callback([&] { action = [&] { return cmd_wiretap_simulate(wa, out); }; });
  auto* bnd = wt->add_subcommand("bounds", "Random-coding bounds on Bob error and Eve information");
  bnd->add_option("--m", wa.m, "Messages M")->check(CLI::PositiveNumber);
  bnd->add_option("--l", wa.l, "Sacrifice L")->check(CLI::PositiveNumber);
  bnd->add_option("--n", wa.n, "Block length of the memoryless extension");
  bnd->add_option("--bob", wa.bob, "Bob channel");
  bnd->add_option("--eve", wa.eve, "Eve channel");
  bnd->callback([&] { action = [&] { return cmd_wiretap_bounds(wa, out); }; });

  KeyagreeArgs ka;
  auto* kg = app.add_subcommand("keyagree", "Secret key agreement by one-way discussion");
  kg->require_subcommand(1);
  auto* run = kg->add_subcommand("run", "Run the protocol with a coset code");
  run->add_option("--joint-ab", ka.ab, "P^{A,B}: bsc:p or JSON file");
  run->add_option("--joint-ae", ka.ae, "P^{A,E}: bsc:p or JSON file");
  run->add_option("--code", ka.code, "q,m,k");
  run->add_option("--seed", ka.seed, "Run seed; the Toeplitz seed is its residue mod q^(m-1)");
  run->callback([&] { action = [&] { return cmd_keyagree_run(ka, out); }; });
  auto* rate = kg->add_subcommand("rate", "H(A|E) - H(A|B)");
  rate->add_option("--joint-ab", ka.ab, "P^{A,B}");
  rate->add_option("--joint-ae", ka.ae, "P^{A,E}");
  rate->callback([&] { action = [&] { return cmd_keyagree_rate(ka, out); }; });

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run an invariant suite");
  ver->add_option("suite", va.suite, "universal2, thm1, proofsteps, holder, lemma1, coset, keyagree")->required();
  ver->add_option("--q", va.q, "Field order");
  ver->add_option("--m", va.m, "Toeplitz input dimension");
  ver->add_option("--k", va.k, "Toeplitz block width");
  ver->add_option("--n", va.n, "Block length (coset)");
  ver->add_option("--family", va.family, "Restrict thm1 to one family");
  ver->add_option("--trials", va.trials, "structured, random or all fixtures");
  ver->add_option("--samples", va.samples, "Random draws (holder, lemma1)");
  ver->add_option("--seed", va.seed, "Seed (holder, lemma1)");
  ver->add_option("--bob", va.bob, "Bob channel (coset)");
  ver->add_option("--eve", va.eve, "Eve channel (coset)");
  ver->add_option("--s-grid", va.s_grid, "start:stop:step");
  ver->callback([&] { action = [&] { return cmd_verify(va, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  try {
    return action();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kExitInput : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
