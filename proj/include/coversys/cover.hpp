#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coversys/arith.hpp"
#include "coversys/space.hpp"

namespace coversys {

inline constexpr std::uint64_t kDefaultSieveCap = 100'000'000;

/// A finite set of hyperplanes in a product space. Planes are deduplicated and
/// stored in canonical order. The integer view additionally carries the
/// modulus N whose digit space hosts the planes.
class CoverSystem {
 public:
  CoverSystem() = default;
  CoverSystem(ProductSpace space, std::vector<Hyperplane> planes);

  /// Progressions over S_<N>, N = lcm of the moduli unless given explicitly.
  static CoverSystem from_progressions(std::span<const Progression> system,
                                       std::optional<FactoredModulus> n = std::nullopt);

  const ProductSpace& space() const { return space_; }
  std::span<const Hyperplane> planes() const { return planes_; }
  const Hyperplane& plane(std::size_t i) const { return planes_.at(i); }
  std::size_t size() const { return planes_.size(); }

  bool is_integer_view() const { return modulus_.has_value(); }
  const std::optional<FactoredModulus>& modulus() const { return modulus_; }

  /// Integer view only.
  std::vector<Progression> progressions() const;
  FactoredModulus lcm() const;

  /// F(A).
  CoordSet fixed_set() const;

  CoverSystem subsystem(std::span<const std::size_t> indices) const;

  friend bool operator==(const CoverSystem&, const CoverSystem&) = default;

 private:
  ProductSpace space_;
  std::vector<Hyperplane> planes_;
  std::optional<FactoredModulus> modulus_;
};

/// First uncovered point in index order, if any.
std::optional<Point> find_uncovered(const CoverSystem& c, std::uint64_t cap = kDefaultSieveCap);

bool is_cover(const CoverSystem& c, std::uint64_t cap = kDefaultSieveCap);

struct MinimalityReport {
  bool minimal = false;
  /// Per plane, a point covered by that plane alone.
  std::vector<std::optional<Point>> witnesses;
};

MinimalityReport minimality(const CoverSystem& c, std::uint64_t cap = kDefaultSieveCap);

bool is_minimal(const CoverSystem& c, std::uint64_t cap = kDefaultSieveCap);

/// Drops, in canonical order, every plane whose removal keeps coverage.
CoverSystem minimal_subcover(const CoverSystem& c, std::uint64_t cap = kDefaultSieveCap);

struct GreedyStep {
  std::size_t i = 0;
  std::size_t plane = 0;
  Rational density;
  bool meets_bound = false;
};

struct GreedyOrder {
  /// order[i-1] is the plane chosen as A_i.
  std::vector<std::size_t> order;
  /// Steps in selection order, i = n down to 1.
  std::vector<GreedyStep> steps;
  bool certified = false;
};

GreedyOrder greedy_order(const CoverSystem& c, std::uint64_t cap = kDefaultSieveCap);

/// sum gamma_i (p_i - 1) + 1.
std::uint64_t simpson_bound(const FactoredModulus& n);

/// sum_{i in coords} (|S_i| - 1) + 1.
std::uint64_t simpson_bound(const ProductSpace& space, CoordSet coords);

struct SimpsonReport {
  std::uint64_t bound = 1;
  std::uint64_t size = 0;
  bool tight = false;
  bool holds() const { return size >= bound; }
};

SimpsonReport simpson_check(const CoverSystem& c);

struct GeometricSimpsonReport {
  std::uint64_t count = 0;
  std::uint64_t bound = 0;
  bool holds = false;
};

/// |{H : F(H) not in I}| against sum_{F(A) \ I} (|S_i| - 1) + 1. Requires I to be
/// a proper subset of F(A).
GeometricSimpsonReport geometric_simpson_check(const CoverSystem& c, CoordSet coords);

/// All I strictly inside F(A).
bool geometric_simpson_all(const CoverSystem& c);

/// Integer represented by a point of S_<N> in the integer view.
std::uint64_t point_to_integer(const CoverSystem& c, std::span<const std::uint32_t> x);

}  // namespace coversys
