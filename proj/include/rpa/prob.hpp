#pragma once

// Finite probability objects: distributions, joint tables, channels and
// additive-channel descriptions. Everything here is an immutable value.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rpa {

inline constexpr double kInputTolerance = 1e-9;
inline constexpr double kIdentityTolerance = 1e-12;
inline constexpr std::size_t kDefaultCellCap = std::size_t{1} << 24;

bool is_prime(std::uint32_t q);

/// Finite set of symbols. Symbols are indexed 0..size-1; names are optional
/// and default to the decimal index.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::size_t size);
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return size_; }
  bool has_names() const noexcept { return !names_.empty(); }
  std::string label(std::size_t i) const;
  std::vector<std::string> labels() const;

  /// Cartesian product; index of (i, j) is i + size() * j.
  static Alphabet product(const Alphabet& lo, const Alphabet& hi);
  Alphabet power(std::size_t n) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b);

 private:
  std::size_t size_ = 0;
  std::vector<std::string> names_;
};

class Dist {
 public:
  /// Strict constructor: probs must be non-negative and sum to 1 within
  /// kInputTolerance (then renormalized silently).
  Dist(Alphabet alphabet, std::vector<double> probs);

  static Dist uniform(std::size_t n);
  static Dist uniform(Alphabet alphabet);
  static Dist point_mass(std::size_t n, std::size_t at);
  static Dist bernoulli(double p);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](std::size_t i) const { return probs_[i]; }

  /// Set by make_dist when the supplied weights were off from unit mass by
  /// more than kInputTolerance.
  bool rescaled() const noexcept { return rescaled_; }

 private:
  friend Dist make_dist(std::vector<std::string> labels, std::span<const double> weights);
  Dist() = default;

  Alphabet alphabet_;
  std::vector<double> probs_;
  bool rescaled_ = false;
};

/// Normalizes arbitrary non-negative weights. An empty label list means
/// default numeric labels.
Dist make_dist(std::vector<std::string> labels, std::span<const double> weights);
Dist make_dist(std::span<const double> weights);

/// Joint table P(a, e), row-major over (rows, cols).
class JointDist {
 public:
  JointDist(Alphabet rows, Alphabet cols, std::vector<double> table);

  const Alphabet& rows() const noexcept { return rows_; }
  const Alphabet& cols() const noexcept { return cols_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t col_count() const noexcept { return cols_.size(); }
  double at(std::size_t a, std::size_t e) const { return table_[a * cols_.size() + e]; }
  std::span<const double> table() const noexcept { return table_; }

  Dist row_marginal() const;
  Dist col_marginal() const;
  /// Joint of (cols, rows).
  JointDist transposed() const;

 private:
  Alphabet rows_;
  Alphabet cols_;
  std::vector<double> table_;
};

/// Row-stochastic matrix: row x is the output distribution W_x.
class Channel {
 public:
  Channel(Alphabet inputs, Alphabet outputs, std::vector<double> rows);

  static Channel bsc(double p);
  static Channel identity(std::size_t n);
  /// Every row equal to `row`.
  static Channel constant(std::size_t inputs, const Dist& row);

  const Alphabet& inputs() const noexcept { return inputs_; }
  const Alphabet& outputs() const noexcept { return outputs_; }
  std::size_t input_count() const noexcept { return inputs_.size(); }
  std::size_t output_count() const noexcept { return outputs_.size(); }
  double operator()(std::size_t x, std::size_t y) const { return rows_[x * outputs_.size() + y]; }
  std::span<const double> row(std::size_t x) const {
    return std::span<const double>(rows_).subspan(x * outputs_.size(), outputs_.size());
  }
  std::span<const double> matrix() const noexcept { return rows_; }

 private:
  Alphabet inputs_;
  Alphabet outputs_;
  std::vector<double> rows_;
};

/// Finite abelian group Z_{d_0} x ... x Z_{d_{r-1}}; element index is the
/// little-endian mixed-radix encoding of its coordinates.
class Module {
 public:
  explicit Module(std::vector<std::uint32_t> moduli);
  static Module cyclic(std::uint32_t d);
  /// GF(q)^n as an additive group; q must be prime.
  static Module vector_space(std::uint32_t q, std::size_t n);

  std::span<const std::uint32_t> moduli() const noexcept { return moduli_; }
  std::size_t order() const noexcept { return order_; }
  /// Prime q when every modulus equals q (a vector space over F_q).
  std::optional<std::uint32_t> field_order() const;

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t sub(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const;
  Module power(std::size_t n) const;

  friend bool operator==(const Module&, const Module&) = default;

 private:
  std::vector<std::uint32_t> moduli_;
  std::size_t order_ = 1;
};

/// Noise description of an additive channel W_x(z) = P(z - x), or of a
/// general additive channel W_x(z, z') = P^{X,Z'}(z - x, z').
struct AdditiveSpec {
  AdditiveSpec(Module module, Dist noise, std::optional<JointDist> side_info = std::nullopt);

  Module module;
  Dist noise;
  std::optional<JointDist> side_info;

  bool general() const noexcept { return side_info.has_value(); }
  /// Marginal of the additive noise (the side-info row marginal for the
  /// general case).
  Dist noise_marginal() const;
};

Dist iid_power(const Dist& p, std::size_t n, std::size_t cap = kDefaultCellCap);
JointDist iid_power(const JointDist& j, std::size_t n, std::size_t cap = kDefaultCellCap);
Channel iid_power(const Channel& w, std::size_t n, std::size_t cap = kDefaultCellCap);
AdditiveSpec iid_power(const AdditiveSpec& spec, std::size_t n, std::size_t cap = kDefaultCellCap);

/// W_p(y) = sum_x p(x) W_x(y).
Dist channel_output(const Channel& w, const Dist& p);

/// table[a][e] = prior(a) W_a(e).
JointDist join(const Dist& prior, const Channel& w);

struct Conditionals {
  Dist row_marginal;
  Dist col_marginal;
  /// P^{A|E}(a|e) at [a * |E| + e]; zero where P^E(e) = 0.
  std::vector<double> row_given_col;
  /// P^{E|A}(e|a) at [a * |E| + e]; zero where P^A(a) = 0.
  std::vector<double> col_given_row;
  std::vector<bool> zero_cols;
  std::vector<bool> zero_rows;
};

Conditionals marginals_conditionals(const JointDist& j);

Channel realize_additive(const AdditiveSpec& spec);

/// Product joint P^A x P^E.
JointDist product_joint(const Dist& rows, const Dist& cols);

}  // namespace rpa
