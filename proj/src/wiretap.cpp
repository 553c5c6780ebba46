#include "rpa/wiretap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "rpa/entropy.hpp"
#include "rpa/error.hpp"
#include "rpa/fixtures.hpp"
#include "rpa/privamp.hpp"

namespace rpa {
namespace {

constexpr double kLeakageSLow = 1e-6;

std::uint64_t checked_power(std::uint64_t q, std::size_t e, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (out > cap / q) throw Error(ErrorKind::CapExceeded, "alphabet exceeds the desk-scale cap");
    out *= q;
  }
  return out;
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t q) {
  std::uint64_t r = 1, base = a % q;
  for (std::uint32_t e = q - 2; e > 0; e >>= 1) {
    if (e & 1u) r = r * base % q;
    base = base * base % q;
  }
  return static_cast<std::uint32_t>(r);
}

void check_s(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw Error(ErrorKind::SOutOfRange, "s must lie in (0, 1]");
}

Optimum min_leakage(const std::function<double(double)>& log_num, double l) {
  const double log_l = std::log(l);
  const Optimum o = maximize_concave([&](double s) { return -(log_num(s) - s * log_l - std::log(s)); }, kLeakageSLow, 1.0);
  return {std::exp(-o.value), o.arg};
}

Dist uniform_on(const Alphabet& inputs, std::span<const std::uint64_t> support) {
  std::vector<double> w(inputs.size(), 0.0);
  for (auto x : support) w[x] += 1.0;
  for (auto& v : w) v /= static_cast<double>(support.size());
  return Dist(inputs, std::move(w));
}

void check_pair(const LinearCodePair& pair) {
  if (pair.seed.q() != pair.q || pair.seed.m() != pair.m())
    throw Error(ErrorKind::DimensionMismatch, "Toeplitz seed does not match the generator");
  for (const auto& row : pair.generator) {
    if (row.size() != pair.n) throw Error(ErrorKind::DimensionMismatch, "generator row length differs from n");
  }
  if (generator_rank(pair.q, pair.generator) != pair.m())
    throw Error(ErrorKind::NotSubcode, "generator is rank deficient; cosets would not partition C1");
}

std::vector<std::uint64_t> codebook_of(const LinearCodePair& pair, std::uint64_t cap) {
  const std::uint64_t size = checked_power(pair.q, pair.m(), cap);
  std::vector<std::uint64_t> book(size);
  for (std::uint64_t v = 0; v < size; ++v) book[v] = pair.codeword_index(decode_vector(v, pair.q, pair.m()));
  return book;
}

}  // namespace

Optimum leakage_bound(double l, const Channel& w, const Dist& p) {
  if (!(l >= 1.0)) throw Error(ErrorKind::DimensionMismatch, "L must be at least 1");
  return min_leakage([&](double s) { return psi(s, w, p); }, l);
}

Thm3Bounds thm3_bounds(double m, double l, const Channel& wb, const Channel& we, const Dist& p) {
  const Optimum eps = gallager_error_bound(m, l, wb, p);
  const Optimum ie = leakage_bound(l, we, p);
  return {2.0 * eps.value, eps.arg, 2.0 * ie.value, ie.arg};
}

Thm3Bounds thm3_bounds_iid(double m, double l, std::size_t n, const Channel& wb, const Channel& we, const Dist& p) {
  if (!(m >= 1.0 && l >= 1.0)) throw Error(ErrorKind::DimensionMismatch, "M and L must be at least 1");
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "block length must be positive");
  const double nn = static_cast<double>(n);
  const double log_ml = std::log(m) + std::log(l);
  const Optimum eps = maximize_concave([&](double s) { return -(s * log_ml + nn * phi(-s, wb, p)); }, 0.0, 1.0);
  const Optimum ie = min_leakage([&](double s) { return nn * psi(s, we, p); }, l);
  return {2.0 * std::exp(-eps.value), eps.arg, 2.0 * ie.value, ie.arg};
}

std::uint64_t LinearCodePair::codeword_index(std::span<const std::uint32_t> v) const {
  if (v.size() != m()) throw Error(ErrorKind::DimensionMismatch, "message vector length differs from m");
  FqVector c(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += std::uint64_t{v[i]} * generator[i][j];
    c[j] = static_cast<std::uint32_t>(acc % q);
  }
  return encode_vector(c, q);
}

LinearCodePair LinearCodePair::full_space(std::uint32_t q, std::size_t n, ToeplitzSeed seed) {
  std::vector<FqVector> g(n, FqVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) g[i][i] = 1;
  return LinearCodePair{q, n, std::move(g), std::move(seed)};
}

std::size_t generator_rank(std::uint32_t q, const std::vector<FqVector>& g) {
  std::vector<FqVector> a = g;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] % q == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const std::uint32_t inv = inverse_mod(a[rank][c] % q, q);
    for (auto& x : a[rank]) x = static_cast<std::uint32_t>(std::uint64_t{x} * inv % q);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] % q == 0) continue;
      const std::uint64_t f = a[r][c] % q;
      for (std::size_t j = 0; j < cols; ++j)
        a[r][j] = static_cast<std::uint32_t>((a[r][j] + (q - f) * a[rank][j]) % q);
    }
    ++rank;
  }
  return rank;
}

Channel block_channel(const Channel& w, std::uint32_t q, std::size_t n) {
  const std::uint64_t size = checked_power(q, n, kDefaultCellCap);
  if (w.input_count() == size) return w;
  if (w.input_count() == q) return iid_power(w, n);
  throw Error(ErrorKind::DimensionMismatch, "channel is neither single-letter over F_q nor a block channel on F_q^n");
}

std::vector<std::uint32_t> ml_decoder(const Channel& w, std::span<const std::uint64_t> codebook) {
  if (codebook.empty()) throw Error(ErrorKind::EmptyAlphabet, "empty codebook");
  for (auto c : codebook) {
    if (c >= w.input_count()) throw Error(ErrorKind::DimensionMismatch, "codeword outside the channel inputs");
  }
  std::vector<std::uint32_t> dec(w.output_count(), 0);
  for (std::size_t y = 0; y < w.output_count(); ++y) {
    double best = -1.0;
    for (std::size_t i = 0; i < codebook.size(); ++i) {
      const double v = w(codebook[i], y);
      if (v > best) {
        best = v;
        dec[y] = static_cast<std::uint32_t>(i);
      }
    }
  }
  return dec;
}

std::vector<std::uint32_t> syndrome_decoder(std::size_t n, std::span<const std::uint64_t> codebook) {
  if (n > 20) throw Error(ErrorKind::CapExceeded, "syndrome tables are limited to n <= 20");
  const std::uint64_t size = std::uint64_t{1} << n;
  constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dec(size, unset);
  std::size_t filled = 0;
  // Coset leaders in order of weight, then index.
  for (unsigned weight = 0; weight <= n && filled < size; ++weight) {
    for (std::uint64_t e = 0; e < size; ++e) {
      if (std::popcount(e) != static_cast<int>(weight) || dec[e] != unset) continue;
      for (std::size_t i = 0; i < codebook.size(); ++i) {
        const std::uint64_t y = e ^ codebook[i];
        if (dec[y] != unset) throw Error(ErrorKind::NotSubcode, "codebook is not a binary linear code");
        dec[y] = static_cast<std::uint32_t>(i);
        ++filled;
      }
    }
  }
  return dec;
}

WiretapCode build_coset_code(const LinearCodePair& pair, const Channel& wb, std::uint64_t cap) {
  check_pair(pair);
  checked_power(pair.q, pair.n, cap);
  const Channel bob = block_channel(wb, pair.q, pair.n);
  const auto book = codebook_of(pair, cap);
  const std::size_t m = pair.m(), k = pair.k();
  const std::uint64_t messages = checked_power(pair.q, m - k, cap);
  const std::uint64_t per_coset = checked_power(pair.q, k, cap);

  WiretapCode code{messages, {}, {}};
  code.encoders.reserve(messages);
  std::vector<std::uint64_t> coset(per_coset);
  for (std::uint64_t x = 0; x < messages; ++x) {
    const FqVector xv = decode_vector(x, pair.q, m - k);
    for (std::uint64_t b = 0; b < per_coset; ++b) {
      const FqVector v = toeplitz_coset_element(pair.seed, decode_vector(b, pair.q, k), xv);
      coset[b] = book[encode_vector(v, pair.q)];
    }
    code.encoders.push_back(uniform_on(bob.inputs(), coset));
  }

  std::vector<std::uint32_t> positions;
  if (pair.decoder == DecoderKind::syndrome) {
    if (pair.q != 2 || bob.output_count() != (std::uint64_t{1} << pair.n))
      throw Error(ErrorKind::DimensionMismatch, "syndrome decoding needs q = 2 and outputs F_2^n");
    positions = syndrome_decoder(pair.n, book);
  } else {
    positions = ml_decoder(bob, book);
  }
  code.decoder.resize(positions.size());
  for (std::size_t y = 0; y < positions.size(); ++y) {
    const FqVector v = decode_vector(positions[y], pair.q, m);
    code.decoder[y] = static_cast<std::uint32_t>(encode_vector(toeplitz_apply(pair.seed, v), pair.q));
  }
  return code;
}

CodePerformance evaluate_code(const WiretapCode& code, const Channel& wb, const Channel& we) {
  if (code.encoders.size() != code.messages || code.messages == 0)
    throw Error(ErrorKind::DimensionMismatch, "code needs one encoder per message");
  if (code.decoder.size() != wb.output_count())
    throw Error(ErrorKind::DimensionMismatch, "decoder does not cover Bob's outputs");
  const std::size_t inputs = wb.input_count();
  if (we.input_count() != inputs) throw Error(ErrorKind::AlphabetMismatch, "Bob and Eve see different inputs");
  if (inputs > kWiretapInputCap) throw Error(ErrorKind::CapExceeded, "input alphabet too large for exact evaluation");

  const double inv_m = 1.0 / static_cast<double>(code.messages);
  NeumaierSum err;
  std::vector<std::vector<double>> eve(code.messages, std::vector<double>(we.output_count(), 0.0));
  std::vector<double> mix(we.output_count(), 0.0);
  for (std::size_t i = 0; i < code.messages; ++i) {
    const Dist& q = code.encoders[i];
    if (q.size() != inputs) throw Error(ErrorKind::AlphabetMismatch, "encoder is not over the channel inputs");
    for (std::size_t x = 0; x < inputs; ++x) {
      const double qx = q[x];
      if (qx == 0.0) continue;
      const auto rb = wb.row(x);
      for (std::size_t y = 0; y < rb.size(); ++y) {
        if (code.decoder[y] != i) err.add(inv_m * qx * rb[y]);
      }
      const auto re = we.row(x);
      for (std::size_t z = 0; z < re.size(); ++z) eve[i][z] += qx * re[z];
    }
    for (std::size_t z = 0; z < mix.size(); ++z) mix[z] += inv_m * eve[i][z];
  }
  NeumaierSum ie;
  for (const auto& out : eve) {
    for (std::size_t z = 0; z < out.size(); ++z) {
      if (out[z] > 0.0) ie.add(inv_m * out[z] * std::log(out[z] / mix[z]));
    }
  }
  return {std::clamp(err.value(), 0.0, 1.0), std::max(0.0, ie.value()), std::nullopt, std::nullopt};
}

double coset_bound(const LinearCodePair& pair, const Channel& we, double s) {
  check_s(s);
  check_pair(pair);
  const Channel eve = block_channel(we, pair.q, pair.n);
  const auto book = codebook_of(pair, kDefaultCellCap);
  const double log_l = static_cast<double>(pair.k()) * std::log(static_cast<double>(pair.q));
  return std::exp(psi(s, eve, uniform_on(eve.inputs(), book)) - s * log_l - std::log(s));
}

double coset_bound(const AdditiveSpec& eve, double l, double s) {
  check_s(s);
  if (!(l >= 1.0)) throw Error(ErrorKind::DimensionMismatch, "L must be at least 1");
  const double h = eve.general() ? cond_renyi_tilde(*eve.side_info, s) : renyi_tilde(eve.noise, s);
  const double log_x = std::log(static_cast<double>(eve.module.order()));
  return std::exp(s * log_x - h - s * std::log(l) - std::log(s));
}

namespace {

CosetBoundScan scan(const std::function<double(double)>& bound, const std::vector<double>& s_grid) {
  if (s_grid.empty()) throw Error(ErrorKind::SOutOfRange, "empty s grid");
  CosetBoundScan out{{}, std::numeric_limits<double>::infinity(), 0.0};
  for (double s : s_grid) {
    const double v = bound(s);
    out.by_s[s] = v;
    if (v < out.best) {
      out.best = v;
      out.best_s = s;
    }
  }
  return out;
}

}  // namespace

CosetBoundScan coset_bound_scan(const AdditiveSpec& eve, double l, const std::vector<double>& s_grid) {
  return scan([&](double s) { return coset_bound(eve, l, s); }, s_grid);
}

CosetBoundScan coset_bound_scan(const LinearCodePair& pair, const Channel& we, const std::vector<double>& s_grid) {
  return scan([&](double s) { return coset_bound(pair, we, s); }, s_grid);
}

EnsembleAverage ensemble_average(std::uint32_t q, std::size_t n, const std::vector<FqVector>& generator, std::size_t k,
                                 const Channel& wb, const Channel& we, std::uint64_t seed_cap, std::uint64_t samples,
                                 std::uint64_t rng_seed) {
  const std::size_t m = generator.size();
  if (m == 0) throw Error(ErrorKind::DimensionMismatch, "empty generator");
  const Channel bob = block_channel(wb, q, n);
  const Channel eve = block_channel(we, q, n);

  std::uint64_t seeds = 1;
  bool exhaustive = true;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (seeds > seed_cap / q) {
      exhaustive = false;
      break;
    }
    seeds *= q;
  }
  if (!exhaustive) {
    if (samples == 0) throw Error(ErrorKind::NotEnumerable, "seed set too large and no samples requested");
    seeds = samples;
  }

  Rng rng(rng_seed);
  EnsembleAverage out{0.0, 0.0, seeds, exhaustive, {}};
  out.ie_by_seed.reserve(seeds);
  NeumaierSum eps, ie;
  for (std::uint64_t i = 0; i < seeds; ++i) {
    ToeplitzSeed seed = exhaustive ? ToeplitzSeed::from_index(q, m, k, i) : ToeplitzSeed::draw(q, m, k, rng);
    const LinearCodePair pair{q, n, generator, std::move(seed)};
    const CodePerformance perf = evaluate_code(build_coset_code(pair, bob), bob, eve);
    eps.add(perf.eps_b);
    ie.add(perf.ie);
    out.ie_by_seed.push_back(perf.ie);
  }
  out.eps_b = eps.value() / static_cast<double>(seeds);
  out.ie = ie.value() / static_cast<double>(seeds);
  return out;
}

RandomCodingDemo random_coding_demo(std::size_t m, std::size_t l, const Channel& wb, const Channel& we, const Dist& p,
                                    std::uint64_t codes, std::uint64_t seed) {
  if (m == 0 || l == 0) throw Error(ErrorKind::DimensionMismatch, "M and L must be at least 1");
  if (codes == 0) throw Error(ErrorKind::DimensionMismatch, "need at least one code");
  if (p.size() != wb.input_count() || we.input_count() != wb.input_count())
    throw Error(ErrorKind::AlphabetMismatch, "input distribution does not match the channels");

  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x) cdf[x] = (acc += p[x]);

  Rng rng(seed);
  std::vector<double> eps(codes), ie(codes);
  std::vector<std::uint64_t> book(m * l);
  for (std::uint64_t c = 0; c < codes; ++c) {
    for (auto& x : book) {
      const double u = unit_uniform(rng) * acc;
      x = static_cast<std::uint64_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      x = std::min<std::uint64_t>(x, p.size() - 1);
    }
    WiretapCode code{m, {}, {}};
    for (std::size_t i = 0; i < m; ++i)
      code.encoders.push_back(uniform_on(wb.inputs(), std::span<const std::uint64_t>(book).subspan(i * l, l)));
    code.decoder = ml_decoder(wb, book);
    for (auto& d : code.decoder) d = static_cast<std::uint32_t>(d / l);
    const CodePerformance perf = evaluate_code(code, wb, we);
    eps[c] = perf.eps_b;
    ie[c] = perf.ie;
  }

  RandomCodingDemo out{};
  out.codes = codes;
  NeumaierSum se, si;
  for (std::uint64_t c = 0; c < codes; ++c) {
    se.add(eps[c]);
    si.add(ie[c]);
  }
  out.mean_eps_b = se.value() / static_cast<double>(codes);
  out.mean_ie = si.value() / static_cast<double>(codes);
  std::uint64_t good = 0;
  for (std::uint64_t c = 0; c < codes; ++c) {
    if (eps[c] <= 2.0 * out.mean_eps_b && ie[c] <= 2.0 * out.mean_ie) ++good;
  }
  out.good_fraction = static_cast<double>(good) / static_cast<double>(codes);
  out.eps_bound = gallager_error_bound(static_cast<double>(m), static_cast<double>(l), wb, p).value;
  out.ie_bound = leakage_bound(static_cast<double>(l), we, p).value;
  return out;
}

}  // namespace rpa
