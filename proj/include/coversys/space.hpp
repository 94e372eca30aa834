#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace coversys {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Raised when an operation would have to materialize a space larger than its
/// configured cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Point = std::vector<std::uint32_t>;

/// S_1 x ... x S_k with S_i = {0, ..., |S_i|-1}. k = 0 is the one-point space.
class ProductSpace {
 public:
  ProductSpace() = default;
  explicit ProductSpace(std::vector<std::uint32_t> sizes);

  std::size_t dim() const { return sizes_.size(); }
  std::uint32_t size(std::size_t i) const { return sizes_.at(i); }
  std::span<const std::uint32_t> sizes() const { return sizes_; }

  /// Number of points, or nullopt if it does not fit in 64 bits.
  std::optional<std::uint64_t> point_count() const;

  /// Mixed-radix stride of coordinate i (coordinate 0 varies fastest).
  std::vector<std::uint64_t> strides() const;

  friend bool operator==(const ProductSpace&, const ProductSpace&) = default;

 private:
  std::vector<std::uint32_t> sizes_;
};

/// Subset of coordinates, stored as a bitmask.
class CoordSet {
 public:
  static constexpr std::size_t kMaxCoords = 64;

  constexpr CoordSet() = default;
  constexpr explicit CoordSet(std::uint64_t bits) : bits_(bits) {}
  CoordSet(std::initializer_list<std::size_t> elems);

  static CoordSet all(std::size_t k);

  std::uint64_t bits() const { return bits_; }
  bool contains(std::size_t i) const { return i < kMaxCoords && ((bits_ >> i) & 1U); }
  void insert(std::size_t i);
  void erase(std::size_t i) {
    if (i < kMaxCoords) bits_ &= ~(std::uint64_t{1} << i);
  }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool empty() const { return bits_ == 0; }
  bool subset_of(CoordSet other) const { return (bits_ & ~other.bits_) == 0; }
  std::vector<std::size_t> elements() const;

  friend CoordSet operator|(CoordSet a, CoordSet b) { return CoordSet(a.bits_ | b.bits_); }
  friend CoordSet operator&(CoordSet a, CoordSet b) { return CoordSet(a.bits_ & b.bits_); }
  friend CoordSet operator-(CoordSet a, CoordSet b) { return CoordSet(a.bits_ & ~b.bits_); }
  friend auto operator<=>(const CoordSet&, const CoordSet&) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Product of per-coordinate constraints, each either a fixed value or free.
/// Ordering is lexicographic on the constraint sequence with free sorting
/// after every value; this is the canonical plane order used throughout.
class Hyperplane {
 public:
  static constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();

  Hyperplane() = default;
  explicit Hyperplane(std::vector<std::uint32_t> constraints)
      : c_(std::move(constraints)) {}
  static Hyperplane whole(std::size_t k) {
    return Hyperplane(std::vector<std::uint32_t>(k, kFree));
  }

  std::size_t dim() const { return c_.size(); }
  bool is_free(std::size_t i) const { return c_.at(i) == kFree; }
  bool is_fixed(std::size_t i) const { return c_.at(i) != kFree; }
  std::uint32_t value(std::size_t i) const { return c_.at(i); }
  std::span<const std::uint32_t> constraints() const { return c_; }

  /// F(H).
  CoordSet fixed_set() const;
  std::size_t fixed_count() const;

  void set(std::size_t i, std::uint32_t v) { c_.at(i) = v; }
  void set_free(std::size_t i) { c_.at(i) = kFree; }

  friend auto operator<=>(const Hyperplane&, const Hyperplane&) = default;

 private:
  std::vector<std::uint32_t> c_;
};

/// Throws std::invalid_argument unless h lives in `space`.
void validate(const ProductSpace& space, const Hyperplane& h);

bool contains(const Hyperplane& h, std::span<const std::uint32_t> x);

/// mu_I(H) as an exact rational together with its natural logarithm.
struct Measure {
  Rational value;
  double log = 0.0;
};

Measure measure(const ProductSpace& space, const Hyperplane& h, CoordSet coords);

/// log mu_I(H) without building the rational.
double log_measure(const ProductSpace& space, const Hyperplane& h, CoordSet coords);

/// H_I, the constraints at the coordinates of I in increasing order.
Hyperplane restrict(const Hyperplane& h, CoordSet coords);
ProductSpace restrict(const ProductSpace& space, CoordSet coords);

std::uint64_t point_index(const ProductSpace& space, std::span<const std::uint32_t> x);
Point point_at(const ProductSpace& space, std::uint64_t index);

/// Calls fn(index) for every point of h, using precomputed strides.
template <typename Fn>
void for_each_point(const ProductSpace& space, std::span<const std::uint64_t> strides,
                    const Hyperplane& h, Fn&& fn) {
  std::uint64_t base = 0;
  std::vector<std::size_t> free_coords;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    if (h.is_free(i)) {
      free_coords.push_back(i);
    } else {
      base += strides[i] * h.value(i);
    }
  }
  std::vector<std::uint32_t> digit(free_coords.size(), 0);
  std::uint64_t index = base;
  while (true) {
    fn(index);
    std::size_t j = 0;
    for (; j < free_coords.size(); ++j) {
      const std::size_t c = free_coords[j];
      if (++digit[j] < space.size(c)) {
        index += strides[c];
        break;
      }
      index -= strides[c] * (space.size(c) - 1);
      digit[j] = 0;
    }
    if (j == free_coords.size()) return;
  }
}

std::string to_string(const Hyperplane& h);

}  // namespace coversys
