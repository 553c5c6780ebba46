#include "rpa/prob.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "rpa/error.hpp"

namespace rpa {

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

namespace {

// Checks non-negativity and unit mass, then rescales by the exact sum.
void normalize_strict(std::vector<double>& probs, const char* what) {
  double total = 0.0;
  for (double p : probs) {
    if (std::isnan(p)) throw Error(ErrorKind::NotNormalized, std::string(what) + " contains NaN");
    if (p < 0.0) throw Error(ErrorKind::NegativeWeight, std::string(what) + " has a negative entry");
    total += p;
  }
  if (std::abs(total - 1.0) > kInputTolerance) {
    throw Error(ErrorKind::NotNormalized,
                std::string(what) + " sums to " + std::to_string(total) + ", not 1");
  }
  for (double& p : probs) p /= total;
}

std::size_t checked_pow(std::size_t base, std::size_t n, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (base != 0 && out > cap / base) {
      throw Error(ErrorKind::SizeCapExceeded, "i.i.d. power exceeds the cell cap");
    }
    out *= base;
  }
  if (out > cap) throw Error(ErrorKind::SizeCapExceeded, "i.i.d. power exceeds the cell cap");
  return out;
}

// n-fold Kronecker power of a rows x cols table of log-probabilities. Row
// and column indices of the result are little-endian in the coordinate
// order; the result is exponentiated once at the end.
std::vector<double> kron_power(std::span<const double> table, std::size_t rows, std::size_t cols,
                               std::size_t n, std::size_t cap) {
  checked_pow(rows * cols, n, cap);
  std::vector<double> base(table.size());
  std::transform(table.begin(), table.end(), base.begin(),
                 [](double p) { return p > 0.0 ? std::log(p) : -INFINITY; });

  std::vector<double> acc = base;
  std::size_t r = rows;
  std::size_t c = cols;
  for (std::size_t step = 1; step < n; ++step) {
    const std::size_t nr = r * rows;
    const std::size_t nc = c * cols;
    std::vector<double> next(nr * nc);
    for (std::size_t xd = 0; xd < rows; ++xd) {
      for (std::size_t xl = 0; xl < r; ++xl) {
        const std::size_t x = xl + r * xd;
        for (std::size_t yd = 0; yd < cols; ++yd) {
          const double b = base[xd * cols + yd];
          double* out = &next[x * nc + c * yd];
          const double* in = &acc[xl * c];
          for (std::size_t yl = 0; yl < c; ++yl) out[yl] = in[yl] + b;
        }
      }
    }
    acc = std::move(next);
    r = nr;
    c = nc;
  }
  for (double& v : acc) v = std::exp(v);
  return acc;
}

}  // namespace

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::size_t size) : size_(size) {}

Alphabet::Alphabet(std::vector<std::string> names) : size_(names.size()), names_(std::move(names)) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw Error(ErrorKind::DuplicateLabel, "label '" + n + "' repeated");
  }
}

std::string Alphabet::label(std::size_t i) const {
  return names_.empty() ? std::to_string(i) : names_.at(i);
}

std::vector<std::string> Alphabet::labels() const {
  std::vector<std::string> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) out.push_back(label(i));
  return out;
}

Alphabet Alphabet::product(const Alphabet& lo, const Alphabet& hi) {
  if (!lo.has_names() && !hi.has_names()) return Alphabet(lo.size() * hi.size());
  std::vector<std::string> names;
  names.reserve(lo.size() * hi.size());
  for (std::size_t j = 0; j < hi.size(); ++j) {
    for (std::size_t i = 0; i < lo.size(); ++i) names.push_back(lo.label(i) + "," + hi.label(j));
  }
  return Alphabet(std::move(names));
}

Alphabet Alphabet::power(std::size_t n) const {
  Alphabet out = *this;
  for (std::size_t i = 1; i < n; ++i) out = product(out, *this);
  return out;
}

bool operator==(const Alphabet& a, const Alphabet& b) {
  if (a.size_ != b.size_) return false;
  if (!a.has_names() && !b.has_names()) return true;
  for (std::size_t i = 0; i < a.size_; ++i) {
    if (a.label(i) != b.label(i)) return false;
  }
  return true;
}

// -------------------------------------------------------------------- Dist

Dist::Dist(Alphabet alphabet, std::vector<double> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
  if (probs_.empty()) throw Error(ErrorKind::EmptyAlphabet, "distribution over an empty alphabet");
  if (alphabet_.size() != probs_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "label count differs from probability count");
  }
  normalize_strict(probs_, "distribution");
}

Dist Dist::uniform(std::size_t n) { return uniform(Alphabet(n)); }

Dist Dist::uniform(Alphabet alphabet) {
  const std::size_t n = alphabet.size();
  if (n == 0) throw Error(ErrorKind::EmptyAlphabet, "uniform distribution over nothing");
  return Dist(std::move(alphabet), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Dist Dist::point_mass(std::size_t n, std::size_t at) {
  std::vector<double> p(n, 0.0);
  p.at(at) = 1.0;
  return Dist(Alphabet(n), std::move(p));
}

Dist Dist::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::NegativeWeight, "Bernoulli parameter outside [0,1]");
  return Dist(Alphabet(2), {1.0 - p, p});
}

Dist make_dist(std::vector<std::string> labels, std::span<const double> weights) {
  if (weights.empty()) throw Error(ErrorKind::EmptyAlphabet, "no weights");
  double total = 0.0;
  for (double w : weights) {
    if (std::isnan(w)) throw Error(ErrorKind::NegativeWeight, "weight is NaN");
    if (w < 0.0) throw Error(ErrorKind::NegativeWeight, "negative weight");
    total += w;
  }
  if (total <= 0.0) throw Error(ErrorKind::ZeroMass, "all weights are zero");

  Dist d;
  d.alphabet_ = labels.empty() ? Alphabet(weights.size()) : Alphabet(std::move(labels));
  if (d.alphabet_.size() != weights.size()) {
    throw Error(ErrorKind::DimensionMismatch, "label count differs from weight count");
  }
  d.probs_.assign(weights.begin(), weights.end());
  for (double& p : d.probs_) p /= total;
  d.rescaled_ = std::abs(total - 1.0) > kInputTolerance;
  return d;
}

Dist make_dist(std::span<const double> weights) { return make_dist({}, weights); }

// --------------------------------------------------------------- JointDist

JointDist::JointDist(Alphabet rows, Alphabet cols, std::vector<double> table)
    : rows_(std::move(rows)), cols_(std::move(cols)), table_(std::move(table)) {
  if (rows_.size() == 0 || cols_.size() == 0) throw Error(ErrorKind::EmptyAlphabet, "joint with an empty side");
  if (table_.size() != rows_.size() * cols_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "joint table size differs from |rows| * |cols|");
  }
  normalize_strict(table_, "joint table");
}

Dist JointDist::row_marginal() const {
  std::vector<double> m(rows_.size(), 0.0);
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    for (std::size_t e = 0; e < cols_.size(); ++e) m[a] += at(a, e);
  }
  return Dist(rows_, std::move(m));
}

Dist JointDist::col_marginal() const {
  std::vector<double> m(cols_.size(), 0.0);
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    for (std::size_t e = 0; e < cols_.size(); ++e) m[e] += at(a, e);
  }
  return Dist(cols_, std::move(m));
}

JointDist JointDist::transposed() const {
  std::vector<double> t(table_.size());
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    for (std::size_t e = 0; e < cols_.size(); ++e) t[e * rows_.size() + a] = at(a, e);
  }
  return JointDist(cols_, rows_, std::move(t));
}

// ----------------------------------------------------------------- Channel

Channel::Channel(Alphabet inputs, Alphabet outputs, std::vector<double> rows)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), rows_(std::move(rows)) {
  if (inputs_.size() == 0 || outputs_.size() == 0) throw Error(ErrorKind::EmptyAlphabet, "channel with an empty alphabet");
  if (rows_.size() != inputs_.size() * outputs_.size()) {
    throw Error(ErrorKind::DimensionMismatch, "channel matrix size differs from |inputs| * |outputs|");
  }
  const std::size_t ny = outputs_.size();
  for (std::size_t x = 0; x < inputs_.size(); ++x) {
    std::vector<double> r(rows_.begin() + static_cast<std::ptrdiff_t>(x * ny),
                          rows_.begin() + static_cast<std::ptrdiff_t>((x + 1) * ny));
    normalize_strict(r, "channel row");
    std::copy(r.begin(), r.end(), rows_.begin() + static_cast<std::ptrdiff_t>(x * ny));
  }
}

Channel Channel::bsc(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::NegativeWeight, "crossover probability outside [0,1]");
  return Channel(Alphabet(2), Alphabet(2), {1.0 - p, p, p, 1.0 - p});
}

Channel Channel::identity(std::size_t n) {
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
  return Channel(Alphabet(n), Alphabet(n), std::move(m));
}

Channel Channel::constant(std::size_t inputs, const Dist& row) {
  std::vector<double> m;
  m.reserve(inputs * row.size());
  for (std::size_t x = 0; x < inputs; ++x) m.insert(m.end(), row.probs().begin(), row.probs().end());
  return Channel(Alphabet(inputs), row.alphabet(), std::move(m));
}

// ------------------------------------------------------------------ Module

Module::Module(std::vector<std::uint32_t> moduli) : moduli_(std::move(moduli)) {
  if (moduli_.empty()) throw Error(ErrorKind::EmptyAlphabet, "module without coordinates");
  for (auto d : moduli_) {
    if (d == 0) throw Error(ErrorKind::ModuleMismatch, "modulus 0");
    order_ *= d;
  }
}

Module Module::cyclic(std::uint32_t d) { return Module({d}); }

Module Module::vector_space(std::uint32_t q, std::size_t n) {
  if (!is_prime(q)) throw Error(ErrorKind::ModuleMismatch, "field order " + std::to_string(q) + " is not prime");
  if (n == 0) throw Error(ErrorKind::EmptyAlphabet, "zero-dimensional vector space");
  return Module(std::vector<std::uint32_t>(n, q));
}

std::optional<std::uint32_t> Module::field_order() const {
  const auto q = moduli_.front();
  if (!is_prime(q)) return std::nullopt;
  for (auto d : moduli_) {
    if (d != q) return std::nullopt;
  }
  return q;
}

std::size_t Module::add(std::size_t a, std::size_t b) const {
  std::size_t out = 0;
  std::size_t place = 1;
  for (auto d : moduli_) {
    out += ((a % d + b % d) % d) * place;
    a /= d;
    b /= d;
    place *= d;
  }
  return out;
}

std::size_t Module::neg(std::size_t a) const {
  std::size_t out = 0;
  std::size_t place = 1;
  for (auto d : moduli_) {
    out += ((d - a % d) % d) * place;
    a /= d;
    place *= d;
  }
  return out;
}

std::size_t Module::sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

Module Module::power(std::size_t n) const {
  std::vector<std::uint32_t> m;
  for (std::size_t i = 0; i < n; ++i) m.insert(m.end(), moduli_.begin(), moduli_.end());
  return Module(std::move(m));
}

// ------------------------------------------------------------ AdditiveSpec

AdditiveSpec::AdditiveSpec(Module module_, Dist noise_, std::optional<JointDist> side_info_)
    : module(std::move(module_)), noise(std::move(noise_)), side_info(std::move(side_info_)) {
  if (noise.size() != module.order()) {
    throw Error(ErrorKind::ModuleMismatch, "noise alphabet size differs from the module order");
  }
  if (side_info) {
    if (side_info->row_count() != module.order()) {
      throw Error(ErrorKind::ModuleMismatch, "side-information rows differ from the module order");
    }
    const Dist marg = side_info->row_marginal();
    for (std::size_t i = 0; i < marg.size(); ++i) {
      if (std::abs(marg[i] - noise[i]) > kInputTolerance) {
        throw Error(ErrorKind::ModuleMismatch, "noise differs from the side-information marginal");
      }
    }
  }
}

Dist AdditiveSpec::noise_marginal() const { return side_info ? side_info->row_marginal() : noise; }

// -------------------------------------------------------------- iid powers

Dist iid_power(const Dist& p, std::size_t n, std::size_t cap) {
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "i.i.d. power n must be positive");
  if (n == 1) return p;
  auto probs = kron_power(p.probs(), p.size(), 1, n, cap);
  return Dist(p.alphabet().power(n), std::move(probs));
}

JointDist iid_power(const JointDist& j, std::size_t n, std::size_t cap) {
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "i.i.d. power n must be positive");
  if (n == 1) return j;
  auto table = kron_power(j.table(), j.row_count(), j.col_count(), n, cap);
  return JointDist(j.rows().power(n), j.cols().power(n), std::move(table));
}

Channel iid_power(const Channel& w, std::size_t n, std::size_t cap) {
  if (n == 0) throw Error(ErrorKind::DimensionMismatch, "i.i.d. power n must be positive");
  if (n == 1) return w;
  auto m = kron_power(w.matrix(), w.input_count(), w.output_count(), n, cap);
  return Channel(w.inputs().power(n), w.outputs().power(n), std::move(m));
}

AdditiveSpec iid_power(const AdditiveSpec& spec, std::size_t n, std::size_t cap) {
  std::optional<JointDist> side;
  if (spec.side_info) side = iid_power(*spec.side_info, n, cap);
  return AdditiveSpec(spec.module.power(n), iid_power(spec.noise, n, cap), std::move(side));
}

// -------------------------------------------------------------- operations

Dist channel_output(const Channel& w, const Dist& p) {
  if (!(p.alphabet() == w.inputs())) throw Error(ErrorKind::AlphabetMismatch, "input distribution does not match channel inputs");
  std::vector<double> out(w.output_count(), 0.0);
  for (std::size_t x = 0; x < w.input_count(); ++x) {
    const double px = p[x];
    if (px == 0.0) continue;
    const auto row = w.row(x);
    for (std::size_t y = 0; y < out.size(); ++y) out[y] += px * row[y];
  }
  return Dist(w.outputs(), std::move(out));
}

JointDist join(const Dist& prior, const Channel& w) {
  if (!(prior.alphabet() == w.inputs())) throw Error(ErrorKind::AlphabetMismatch, "prior does not match channel inputs");
  std::vector<double> t(w.input_count() * w.output_count());
  for (std::size_t a = 0; a < w.input_count(); ++a) {
    const auto row = w.row(a);
    for (std::size_t e = 0; e < w.output_count(); ++e) t[a * w.output_count() + e] = prior[a] * row[e];
  }
  return JointDist(w.inputs(), w.outputs(), std::move(t));
}

Conditionals marginals_conditionals(const JointDist& j) {
  Conditionals c{j.row_marginal(), j.col_marginal(), {}, {}, {}, {}};
  const std::size_t na = j.row_count();
  const std::size_t ne = j.col_count();
  c.row_given_col.assign(na * ne, 0.0);
  c.col_given_row.assign(na * ne, 0.0);
  c.zero_cols.assign(ne, false);
  c.zero_rows.assign(na, false);
  for (std::size_t e = 0; e < ne; ++e) c.zero_cols[e] = c.col_marginal[e] <= 0.0;
  for (std::size_t a = 0; a < na; ++a) c.zero_rows[a] = c.row_marginal[a] <= 0.0;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t e = 0; e < ne; ++e) {
      const double pae = j.at(a, e);
      if (!c.zero_cols[e]) c.row_given_col[a * ne + e] = pae / c.col_marginal[e];
      if (!c.zero_rows[a]) c.col_given_row[a * ne + e] = pae / c.row_marginal[a];
    }
  }
  return c;
}

Channel realize_additive(const AdditiveSpec& spec) {
  const Module& mod = spec.module;
  const std::size_t nx = mod.order();
  const Alphabet xs(nx);
  if (!spec.side_info) {
    std::vector<double> rows(nx * nx);
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t z = 0; z < nx; ++z) rows[x * nx + z] = spec.noise[mod.sub(z, x)];
    }
    return Channel(xs, xs, std::move(rows));
  }
  const JointDist& side = *spec.side_info;
  const std::size_t nz = side.col_count();
  const Alphabet outs = Alphabet::product(xs, side.cols());
  std::vector<double> rows(nx * nx * nz);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t zp = 0; zp < nz; ++zp) {
      for (std::size_t z = 0; z < nx; ++z) rows[x * nx * nz + z + nx * zp] = side.at(mod.sub(z, x), zp);
    }
  }
  return Channel(xs, outs, std::move(rows));
}

JointDist product_joint(const Dist& rows, const Dist& cols) {
  std::vector<double> t(rows.size() * cols.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t e = 0; e < cols.size(); ++e) t[a * cols.size() + e] = rows[a] * cols[e];
  }
  return JointDist(rows.alphabet(), cols.alphabet(), std::move(t));
}

}  // namespace rpa
