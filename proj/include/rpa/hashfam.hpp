#pragma once

// Hash families A -> {0..M-1}: Toeplitz-concatenation over a prime field,
// permutation families, explicit lists, and exhaustive checkers for the
// universal_2, balance and kernel-membership properties.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace rpa {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection; platform independent.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

class FieldElem {
 public:
  FieldElem(std::uint32_t value, std::uint32_t q);

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t order() const noexcept { return q_; }

  FieldElem operator+(FieldElem o) const;
  FieldElem operator-(FieldElem o) const;
  FieldElem operator*(FieldElem o) const;
  FieldElem operator-() const;
  /// Multiplicative inverse; throws for zero.
  FieldElem inverse() const;

  friend bool operator==(FieldElem a, FieldElem b) { return a.q_ == b.q_ && a.value_ == b.value_; }

 private:
  std::uint32_t value_;
  std::uint32_t q_;
};

/// Vector over F_q as raw residues.
using FqVector = std::vector<std::uint32_t>;

/// Little-endian mixed-radix helpers for F_q^n.
std::uint64_t encode_vector(std::span<const std::uint32_t> v, std::uint32_t q);
FqVector decode_vector(std::uint64_t index, std::uint32_t q, std::size_t len);

/// m-1 field symbols defining the (m-k) x k Toeplitz block X' with
/// X'_{i,j} = X_{i+j-1}.
class ToeplitzSeed {
 public:
  ToeplitzSeed(std::uint32_t q, std::size_t m, std::size_t k, FqVector symbols);
  /// Seed whose symbols are the base-q digits of `index`.
  static ToeplitzSeed from_index(std::uint32_t q, std::size_t m, std::size_t k, std::uint64_t index);
  static ToeplitzSeed draw(std::uint32_t q, std::size_t m, std::size_t k, Rng& rng);

  std::uint32_t q() const noexcept { return q_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t k() const noexcept { return k_; }
  std::span<const std::uint32_t> symbols() const noexcept { return symbols_; }
  /// Entry X'_{i,j}, 0-based.
  std::uint32_t block(std::size_t i, std::size_t j) const { return symbols_[i + j]; }
  std::uint64_t index() const { return encode_vector(symbols_, q_); }

 private:
  std::uint32_t q_;
  std::size_t m_;
  std::size_t k_;
  FqVector symbols_;
};

/// v = (v1 in F_q^k, v2 in F_q^{m-k}) -> X' v1 + v2.
FqVector toeplitz_apply(const ToeplitzSeed& seed, std::span<const std::uint32_t> v);
/// (b, x - X' b): the coset element mapped to x by toeplitz_apply.
FqVector toeplitz_coset_element(const ToeplitzSeed& seed, std::span<const std::uint32_t> b,
                                std::span<const std::uint32_t> x);

inline constexpr std::uint64_t kFamilyEnumerationCap = std::uint64_t{1} << 16;
inline constexpr std::size_t kPermutationEnumerationLimit = 7;

/// Member of a family as a lookup table a -> bin.
using HashTable = std::vector<std::uint32_t>;

class HashFamily {
 public:
  enum class Kind { toeplitz, permutation, explicitList };

  using Visitor = std::function<void(std::span<const std::uint32_t>)>;

  std::size_t domain_size() const noexcept { return domain_; }
  std::size_t range_size() const noexcept { return range_; }
  Kind kind() const noexcept { return kind_; }
  const std::string& description() const noexcept { return description_; }

  bool enumerable() const noexcept { return member_count_.has_value(); }
  /// Number of members counted with multiplicity; absent when not enumerable.
  std::optional<std::uint64_t> member_count() const noexcept { return member_count_; }

  /// Visits every member, each with equal weight. Throws NotEnumerable.
  void for_each_member(const Visitor& visit) const;
  /// One uniformly drawn member.
  HashTable draw(Rng& rng) const;

  static HashFamily toeplitz(std::uint32_t q, std::size_t m, std::size_t k,
                             std::uint64_t cap = kFamilyEnumerationCap);
  /// {f o sigma : sigma in S_A} for a balanced base map f.
  static HashFamily permutation(HashTable base_map, std::size_t range);
  static HashFamily explicit_list(std::vector<HashTable> members, std::size_t range);

 private:
  HashFamily() = default;

  std::size_t domain_ = 0;
  std::size_t range_ = 0;
  Kind kind_ = Kind::explicitList;
  std::string description_;
  std::optional<std::uint64_t> member_count_;
  std::function<void(const Visitor&)> enumerate_;
  std::function<HashTable(Rng&)> draw_;
};

HashFamily toeplitz_family(std::uint32_t q, std::size_t m, std::size_t k,
                           std::uint64_t cap = kFamilyEnumerationCap);
HashFamily permutation_family(HashTable base_map, std::size_t range);

struct Universal2Report {
  double max_collision_prob;
  std::size_t worst_a1;
  std::size_t worst_a2;
  double bound;  // 1/M
  bool passes;
};

inline constexpr std::size_t kPairCheckDomainCap = 1 << 12;

Universal2Report verify_universal2(const HashFamily& f);
bool verify_balanced(const HashFamily& f);

/// Probability over all q^{m-1} seeds that toeplitz_apply(seed, v) = 0.
double kernel_membership_prob(std::uint32_t q, std::size_t m, std::size_t k, std::span<const std::uint32_t> v,
                              std::uint64_t cap = kFamilyEnumerationCap);

}  // namespace rpa
