#include "rpa/hashfam.hpp"

#include <algorithm>
#include <numeric>

#include "rpa/error.hpp"
#include "rpa/prob.hpp"

namespace rpa {

namespace {

std::uint64_t pow_u64(std::uint64_t base, std::size_t e) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (out > (std::uint64_t{1} << 62) / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

constexpr std::uint64_t kTableCap = std::uint64_t{1} << 24;

// Whole lookup table of one Toeplitz member over F_q^m.
HashTable toeplitz_table(const ToeplitzSeed& seed) {
  const std::uint32_t q = seed.q();
  const std::size_t m = seed.m();
  const std::uint64_t n = pow_u64(q, m);
  HashTable table(n);
  FqVector v(m, 0);
  for (std::uint64_t a = 0; a < n; ++a) {
    const FqVector out = toeplitz_apply(seed, v);
    table[a] = static_cast<std::uint32_t>(encode_vector(out, q));
    // increment v in little-endian order
    for (std::size_t i = 0; i < m; ++i) {
      if (++v[i] < q) break;
      v[i] = 0;
    }
  }
  return table;
}

void check_balanced(const HashTable& f, std::size_t range) {
  if (range == 0 || f.size() % range != 0) {
    throw Error(ErrorKind::NotBalanced, "domain size is not a multiple of the range size");
  }
  std::vector<std::size_t> counts(range, 0);
  for (auto b : f) {
    if (b >= range) throw Error(ErrorKind::DimensionMismatch, "map value outside the range");
    ++counts[b];
  }
  const std::size_t want = f.size() / range;
  for (auto c : counts) {
    if (c != want) throw Error(ErrorKind::NotBalanced, "base map has unequal preimage sizes");
  }
}

}  // namespace

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// --------------------------------------------------------------- FieldElem

FieldElem::FieldElem(std::uint32_t value, std::uint32_t q) : value_(value), q_(q) {
  if (!is_prime(q)) throw Error(ErrorKind::ModuleMismatch, "field order must be prime");
  if (value >= q) throw Error(ErrorKind::DimensionMismatch, "field element out of range");
}

FieldElem FieldElem::operator+(FieldElem o) const {
  if (o.q_ != q_) throw Error(ErrorKind::ModuleMismatch, "mixing fields");
  return FieldElem((value_ + o.value_) % q_, q_);
}

FieldElem FieldElem::operator-(FieldElem o) const { return *this + (-o); }

FieldElem FieldElem::operator*(FieldElem o) const {
  if (o.q_ != q_) throw Error(ErrorKind::ModuleMismatch, "mixing fields");
  return FieldElem(static_cast<std::uint32_t>(std::uint64_t{value_} * o.value_ % q_), q_);
}

FieldElem FieldElem::operator-() const { return FieldElem((q_ - value_) % q_, q_); }

FieldElem FieldElem::inverse() const {
  if (value_ == 0) throw Error(ErrorKind::XOutOfDomain, "zero has no inverse");
  // Fermat: a^{q-2}
  std::uint64_t result = 1;
  std::uint64_t base = value_;
  std::uint32_t e = q_ - 2;
  while (e) {
    if (e & 1u) result = result * base % q_;
    base = base * base % q_;
    e >>= 1u;
  }
  return FieldElem(static_cast<std::uint32_t>(result), q_);
}

std::uint64_t encode_vector(std::span<const std::uint32_t> v, std::uint32_t q) {
  std::uint64_t out = 0;
  for (std::size_t i = v.size(); i-- > 0;) out = out * q + v[i];
  return out;
}

FqVector decode_vector(std::uint64_t index, std::uint32_t q, std::size_t len) {
  FqVector v(len);
  for (std::size_t i = 0; i < len; ++i) {
    v[i] = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
  return v;
}

// ------------------------------------------------------------ ToeplitzSeed

ToeplitzSeed::ToeplitzSeed(std::uint32_t q, std::size_t m, std::size_t k, FqVector symbols)
    : q_(q), m_(m), k_(k), symbols_(std::move(symbols)) {
  if (!is_prime(q)) throw Error(ErrorKind::ModuleMismatch, "Toeplitz field order must be prime");
  if (m < 1 || k > m) throw Error(ErrorKind::DimensionMismatch, "Toeplitz seed needs 0 <= k <= m, m >= 1");
  if (symbols_.size() != m - 1) throw Error(ErrorKind::DimensionMismatch, "Toeplitz seed needs m-1 symbols");
  for (auto s : symbols_) {
    if (s >= q) throw Error(ErrorKind::DimensionMismatch, "Toeplitz symbol outside F_q");
  }
}

ToeplitzSeed ToeplitzSeed::from_index(std::uint32_t q, std::size_t m, std::size_t k, std::uint64_t index) {
  if (m < 1) throw Error(ErrorKind::DimensionMismatch, "m must be positive");
  return ToeplitzSeed(q, m, k, decode_vector(index, q, m - 1));
}

ToeplitzSeed ToeplitzSeed::draw(std::uint32_t q, std::size_t m, std::size_t k, Rng& rng) {
  FqVector s(m > 0 ? m - 1 : 0);
  for (auto& x : s) x = static_cast<std::uint32_t>(uniform_below(rng, q));
  return ToeplitzSeed(q, m, k, std::move(s));
}

FqVector toeplitz_apply(const ToeplitzSeed& seed, std::span<const std::uint32_t> v) {
  const std::size_t m = seed.m();
  const std::size_t k = seed.k();
  const std::uint64_t q = seed.q();
  if (v.size() != m) throw Error(ErrorKind::DimensionMismatch, "vector length differs from m");
  FqVector out(m - k);
  for (std::size_t i = 0; i < m - k; ++i) {
    std::uint64_t acc = v[k + i];
    for (std::size_t j = 0; j < k; ++j) acc += std::uint64_t{seed.block(i, j)} * v[j];
    out[i] = static_cast<std::uint32_t>(acc % q);
  }
  return out;
}

FqVector toeplitz_coset_element(const ToeplitzSeed& seed, std::span<const std::uint32_t> b,
                                std::span<const std::uint32_t> x) {
  const std::size_t m = seed.m();
  const std::size_t k = seed.k();
  const std::uint64_t q = seed.q();
  if (b.size() != k || x.size() != m - k) throw Error(ErrorKind::DimensionMismatch, "coset element dimensions");
  FqVector v(m);
  std::copy(b.begin(), b.end(), v.begin());
  for (std::size_t i = 0; i < m - k; ++i) {
    std::uint64_t xb = 0;
    for (std::size_t j = 0; j < k; ++j) xb += std::uint64_t{seed.block(i, j)} * b[j];
    v[k + i] = static_cast<std::uint32_t>((x[i] + q - xb % q) % q);
  }
  return v;
}

// -------------------------------------------------------------- HashFamily

void HashFamily::for_each_member(const Visitor& visit) const {
  if (!enumerable()) throw Error(ErrorKind::NotEnumerable, description_ + " is too large to enumerate");
  enumerate_(visit);
}

HashTable HashFamily::draw(Rng& rng) const { return draw_(rng); }

HashFamily HashFamily::toeplitz(std::uint32_t q, std::size_t m, std::size_t k, std::uint64_t cap) {
  ToeplitzSeed::from_index(q, m, k, 0);  // validates q, m, k
  const std::uint64_t domain = pow_u64(q, m);
  if (domain > kTableCap) throw Error(ErrorKind::SizeCapExceeded, "Toeplitz domain too large to tabulate");

  HashFamily f;
  f.domain_ = domain;
  f.range_ = pow_u64(q, m - k);
  f.kind_ = Kind::toeplitz;
  f.description_ = "toeplitz(q=" + std::to_string(q) + ",m=" + std::to_string(m) + ",k=" + std::to_string(k) + ")";
  const std::uint64_t seeds = pow_u64(q, m - 1);
  if (seeds <= cap) f.member_count_ = seeds;
  f.enumerate_ = [q, m, k, seeds](const Visitor& visit) {
    for (std::uint64_t s = 0; s < seeds; ++s) visit(toeplitz_table(ToeplitzSeed::from_index(q, m, k, s)));
  };
  f.draw_ = [q, m, k](Rng& rng) { return toeplitz_table(ToeplitzSeed::draw(q, m, k, rng)); };
  return f;
}

HashFamily HashFamily::permutation(HashTable base_map, std::size_t range) {
  check_balanced(base_map, range);
  HashFamily f;
  const std::size_t n = base_map.size();
  f.domain_ = n;
  f.range_ = range;
  f.kind_ = Kind::permutation;
  f.description_ = "permutation(|A|=" + std::to_string(n) + ",M=" + std::to_string(range) + ")";
  if (n <= kPermutationEnumerationLimit) {
    std::uint64_t fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;
    f.member_count_ = fact;
  }
  auto base = std::make_shared<const HashTable>(std::move(base_map));
  f.enumerate_ = [base](const Visitor& visit) {
    const std::size_t n = base->size();
    std::vector<std::uint32_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0u);
    HashTable member(n);
    do {
      for (std::size_t a = 0; a < n; ++a) member[a] = (*base)[sigma[a]];
      visit(member);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  };
  f.draw_ = [base](Rng& rng) {
    const std::size_t n = base->size();
    std::vector<std::uint32_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0u);
    for (std::size_t i = n; i > 1; --i) std::swap(sigma[i - 1], sigma[uniform_below(rng, i)]);
    HashTable member(n);
    for (std::size_t a = 0; a < n; ++a) member[a] = (*base)[sigma[a]];
    return member;
  };
  return f;
}

HashFamily HashFamily::explicit_list(std::vector<HashTable> members, std::size_t range) {
  if (members.empty()) throw Error(ErrorKind::EmptyAlphabet, "explicit family without members");
  const std::size_t n = members.front().size();
  if (n == 0) throw Error(ErrorKind::EmptyAlphabet, "explicit family over an empty domain");
  for (const auto& m : members) {
    if (m.size() != n) throw Error(ErrorKind::DimensionMismatch, "members with different domains");
    for (auto b : m) {
      if (b >= range) throw Error(ErrorKind::DimensionMismatch, "member value outside the range");
    }
  }
  HashFamily f;
  f.domain_ = n;
  f.range_ = range;
  f.kind_ = Kind::explicitList;
  f.description_ = "explicit(" + std::to_string(members.size()) + " members)";
  f.member_count_ = members.size();
  auto list = std::make_shared<const std::vector<HashTable>>(std::move(members));
  f.enumerate_ = [list](const Visitor& visit) {
    for (const auto& m : *list) visit(m);
  };
  f.draw_ = [list](Rng& rng) { return (*list)[uniform_below(rng, list->size())]; };
  return f;
}

HashFamily toeplitz_family(std::uint32_t q, std::size_t m, std::size_t k, std::uint64_t cap) {
  return HashFamily::toeplitz(q, m, k, cap);
}

HashFamily permutation_family(HashTable base_map, std::size_t range) {
  return HashFamily::permutation(std::move(base_map), range);
}

// --------------------------------------------------------------- verifiers

Universal2Report verify_universal2(const HashFamily& f) {
  const std::size_t n = f.domain_size();
  if (n > kPairCheckDomainCap) throw Error(ErrorKind::CapExceeded, "domain too large for the pairwise check");
  if (n < 2) return {0.0, 0, 0, 1.0 / static_cast<double>(f.range_size()), true};

  // counts[tri(a1, a2)] for a1 < a2
  auto tri = [n](std::size_t a1, std::size_t a2) { return a1 * n - a1 * (a1 + 1) / 2 + (a2 - a1 - 1); };
  std::vector<std::uint32_t> counts(n * (n - 1) / 2, 0);
  std::vector<std::vector<std::uint32_t>> bins(f.range_size());
  std::uint64_t members = 0;
  f.for_each_member([&](std::span<const std::uint32_t> table) {
    for (auto& b : bins) b.clear();
    for (std::size_t a = 0; a < n; ++a) bins[table[a]].push_back(static_cast<std::uint32_t>(a));
    for (const auto& b : bins) {
      for (std::size_t i = 0; i < b.size(); ++i) {
        for (std::size_t j = i + 1; j < b.size(); ++j) ++counts[tri(b[i], b[j])];
      }
    }
    ++members;
  });

  Universal2Report r{0.0, 0, 1, 1.0 / static_cast<double>(f.range_size()), true};
  std::uint32_t worst = 0;
  for (std::size_t a1 = 0; a1 < n; ++a1) {
    for (std::size_t a2 = a1 + 1; a2 < n; ++a2) {
      const auto c = counts[tri(a1, a2)];
      if (c > worst) {
        worst = c;
        r.worst_a1 = a1;
        r.worst_a2 = a2;
      }
    }
  }
  r.max_collision_prob = static_cast<double>(worst) / static_cast<double>(members);
  r.passes = r.max_collision_prob <= r.bound + 1e-12;
  return r;
}

bool verify_balanced(const HashFamily& f) {
  const std::size_t n = f.domain_size();
  const std::size_t range = f.range_size();
  if (n % range != 0) return false;
  const std::size_t want = n / range;
  bool ok = true;
  std::vector<std::size_t> counts(range);
  f.for_each_member([&](std::span<const std::uint32_t> table) {
    if (!ok) return;
    std::fill(counts.begin(), counts.end(), 0);
    for (auto b : table) ++counts[b];
    ok = std::all_of(counts.begin(), counts.end(), [want](std::size_t c) { return c == want; });
  });
  return ok;
}

double kernel_membership_prob(std::uint32_t q, std::size_t m, std::size_t k, std::span<const std::uint32_t> v,
                              std::uint64_t cap) {
  ToeplitzSeed::from_index(q, m, k, 0);  // validates q, m, k
  if (v.size() != m) throw Error(ErrorKind::DimensionMismatch, "vector length differs from m");
  const std::uint64_t seeds = pow_u64(q, m - 1);
  if (seeds > cap) throw Error(ErrorKind::CapExceeded, "too many seeds to enumerate");
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    const FqVector out = toeplitz_apply(ToeplitzSeed::from_index(q, m, k, s), v);
    if (std::all_of(out.begin(), out.end(), [](std::uint32_t x) { return x == 0; })) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(seeds);
}

}  // namespace rpa
