#pragma once

// Wiretap codes: the random-coding bounds, the linear code plus Toeplitz
// coset construction, exact evaluation of Bob's error and Eve's
// information at desk scale, and the coset bounds on Eve's information.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "rpa/exponents.hpp"
#include "rpa/hashfam.hpp"
#include "rpa/prob.hpp"

namespace rpa {

struct Thm3Bounds {
  /// 2 min_s (ML)^s e^{phi(-s|W^B,p)}
  double eps_bound;
  double eps_s;
  /// 2 min_s e^{psi(s|W^E,p)} / (L^s s)
  double ie_bound;
  double ie_s;
};

Thm3Bounds thm3_bounds(double m, double l, const Channel& wb, const Channel& we, const Dist& p);
/// Same bounds for the n-fold memoryless extension, using n psi and n phi
/// of the single-letter channels.
Thm3Bounds thm3_bounds_iid(double m, double l, std::size_t n, const Channel& wb, const Channel& we, const Dist& p);

/// min over s in (0, 1] of e^{psi(s|W,p)} / (L^s s), without the factor 2.
Optimum leakage_bound(double l, const Channel& w, const Dist& p);

struct WiretapCode {
  std::size_t messages;
  /// Q_i over the channel inputs.
  std::vector<Dist> encoders;
  /// Bob's output index -> decoded message.
  std::vector<std::uint32_t> decoder;
};

enum class DecoderKind { ml, syndrome };

/// C1 spanned by the rows of an m x n generator over F_q, with the
/// Toeplitz seed (q, m, k) whose kernel is C2.
struct LinearCodePair {
  std::uint32_t q;
  std::size_t n;
  std::vector<FqVector> generator;
  ToeplitzSeed seed;
  DecoderKind decoder = DecoderKind::ml;

  std::size_t m() const noexcept { return generator.size(); }
  std::size_t k() const noexcept { return seed.k(); }
  /// Codeword v G for v in F_q^m, as an index into F_q^n.
  std::uint64_t codeword_index(std::span<const std::uint32_t> v) const;

  /// C1 = F_q^n with the identity generator.
  static LinearCodePair full_space(std::uint32_t q, std::size_t n, ToeplitzSeed seed);
};

inline constexpr std::uint64_t kWiretapInputCap = std::uint64_t{1} << 14;

/// Rank of a generator over F_q.
std::size_t generator_rank(std::uint32_t q, const std::vector<FqVector>& g);

/// Bob's block channel: used as given when it has q^n inputs, raised to
/// the n-th power when it is single-letter.
Channel block_channel(const Channel& w, std::uint32_t q, std::size_t n);

WiretapCode build_coset_code(const LinearCodePair& pair, const Channel& wb, std::uint64_t cap = kWiretapInputCap);

/// ML decoder over an explicit codebook: output -> codeword position,
/// ties to the smallest position.
std::vector<std::uint32_t> ml_decoder(const Channel& w, std::span<const std::uint64_t> codebook);
/// Minimum-weight coset-leader decoder for binary codes, n <= 20; output
/// alphabet must be F_2^n. Returns output -> codeword position in
/// `codebook` (which must list the code).
std::vector<std::uint32_t> syndrome_decoder(std::size_t n, std::span<const std::uint64_t> codebook);

struct CodePerformance {
  double eps_b;
  double ie;
  std::optional<double> bound_eps_b;
  std::optional<double> bound_ie;
};

CodePerformance evaluate_code(const WiretapCode& code, const Channel& wb, const Channel& we);

/// e^{psi(s|W^E,P_mix,C1)} / (L^s s), the general form. W^E must be a
/// block channel on F_q^n.
double coset_bound(const LinearCodePair& pair, const Channel& we, double s);
/// |X|^s e^{-Ht_{1+s}(noise)} / (L^s s) for an additive Eve channel.
double coset_bound(const AdditiveSpec& eve, double l, double s);

struct CosetBoundScan {
  std::map<double, double> by_s;
  double best;
  double best_s;
};

CosetBoundScan coset_bound_scan(const AdditiveSpec& eve, double l, const std::vector<double>& s_grid);
CosetBoundScan coset_bound_scan(const LinearCodePair& pair, const Channel& we, const std::vector<double>& s_grid);

struct EnsembleAverage {
  double eps_b;
  double ie;
  std::uint64_t seeds;
  bool exhaustive;
  /// Per-seed values, in seed order.
  std::vector<double> ie_by_seed;
};

inline constexpr std::uint64_t kSeedEnumerationCap = std::uint64_t{1} << 10;

/// Average over Toeplitz seeds for C1 = span(generator). Exhaustive when
/// q^{m-1} <= seed_cap, otherwise `samples` seeds drawn from `rng_seed`.
EnsembleAverage ensemble_average(std::uint32_t q, std::size_t n, const std::vector<FqVector>& generator, std::size_t k,
                                 const Channel& wb, const Channel& we, std::uint64_t seed_cap = kSeedEnumerationCap,
                                 std::uint64_t samples = 256, std::uint64_t rng_seed = 1);

struct RandomCodingDemo {
  std::uint64_t codes;
  double mean_eps_b;
  double mean_ie;
  /// Fraction with eps_b <= 2 mean and ie <= 2 mean simultaneously.
  double good_fraction;
  /// Un-doubled ensemble bounds.
  double eps_bound;
  double ie_bound;
};

/// Samples random codebooks of M L codewords i.i.d. from p; message i is
/// sent uniformly over its L codewords, Bob decodes the codeword by ML and
/// keeps its message.
RandomCodingDemo random_coding_demo(std::size_t m, std::size_t l, const Channel& wb, const Channel& we, const Dist& p,
                                    std::uint64_t codes = 200, std::uint64_t seed = 1);

}  // namespace rpa
