#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coversys/space.hpp"

namespace coversys {

bool is_prime(std::uint64_t n);

/// All primes <= limit, by sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// N = prod p^gamma_p, kept in factored form. The empty map is N = 1.
class FactoredModulus {
 public:
  using FactorMap = std::map<std::uint64_t, std::uint32_t>;

  FactoredModulus() = default;
  explicit FactoredModulus(FactorMap factors);

  /// Factors n by trial division. Intended for desk-scale inputs.
  static FactoredModulus from_integer(std::uint64_t n);

  /// Parses "2^2*3", "12", "1". Non-prime bases are factored.
  static FactoredModulus parse(std::string_view text);

  const FactorMap& factors() const { return factors_; }
  std::uint32_t exponent(std::uint64_t p) const;
  bool is_one() const { return factors_.empty(); }

  /// The integer N, if it is at most 2^63.
  std::optional<std::uint64_t> value() const;
  std::uint64_t value_or_throw() const;

  bool divides(const FactoredModulus& other) const;
  FactoredModulus lcm(const FactoredModulus& other) const;

  /// |<N>| = sum of exponents.
  std::size_t index_count() const;

  std::string to_string() const;

  friend auto operator<=>(const FactoredModulus&, const FactoredModulus&) = default;

 private:
  FactorMap factors_;
};

/// (p, e): the e-th base-p digit slot of <N>.
struct IndexPair {
  std::uint64_t p = 0;
  std::uint32_t e = 0;
  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// <N> in canonical order: primes ascending, exponents ascending.
std::vector<IndexPair> index_set(const FactoredModulus& n);

/// <N>_delta = {(p,e) in <N> : p > 1/delta}.
std::vector<IndexPair> index_set_above(const FactoredModulus& n, double delta);

/// S_<N>: one coordinate of size p per (p, e), in canonical order.
ProductSpace index_space(const FactoredModulus& n);

/// Residue class a (mod d), a reduced into [0, d).
class Progression {
 public:
  Progression() = default;
  Progression(std::uint64_t a, FactoredModulus d);

  std::uint64_t residue() const { return a_; }
  const FactoredModulus& modulus() const { return d_; }
  std::uint64_t modulus_value() const { return d_.value_or_throw(); }
  bool contains(std::uint64_t x) const { return x % modulus_value() == a_; }

  /// Census order: by integer modulus, then residue.
  friend bool operator<(const Progression& x, const Progression& y);
  friend bool operator==(const Progression&, const Progression&) = default;

 private:
  std::uint64_t a_ = 0;
  FactoredModulus d_;
};

std::string to_string(const Progression& p);

/// y_(p,e) = coefficient of p^(e-1) in x mod p^gamma_p.
Point digit_map(std::uint64_t x, const FactoredModulus& n);

/// Inverse of digit_map.
std::uint64_t digit_unmap(std::span<const std::uint32_t> point, const FactoredModulus& n);

Hyperplane progression_to_hyperplane(const Progression& a, const FactoredModulus& n);

/// True iff, for every prime, the fixed slots (p,1..) form an initial segment.
bool is_arithmetic(const Hyperplane& h, const FactoredModulus& n);

Progression hyperplane_to_progression(const Hyperplane& h, const FactoredModulus& n);

FactoredModulus lcm_of(std::span<const Progression> system);

}  // namespace coversys
