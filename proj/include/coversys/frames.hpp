#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coversys/arith.hpp"
#include "coversys/cover.hpp"
#include "coversys/space.hpp"

namespace coversys {

// ---------------------------------------------------------------------------
// Frames

/// Layers are indexed by coordinate. `order[t]` is the coordinate placed t-th;
/// an empty order means the identity.
struct SimpleFrame {
  ProductSpace space;
  Point axis;
  std::vector<std::vector<Hyperplane>> layers;
  std::vector<std::size_t> order;
};

struct FrameCheck {
  bool valid = false;
  std::string violation;
  /// Set when the space was small enough for the cover check.
  std::optional<bool> minimal_cover;
};

/// Layers plus the axis plane.
CoverSystem frame_cover(const SimpleFrame& f);

FrameCheck verify_simple_frame(const SimpleFrame& f,
                               std::uint64_t cover_check_cap = 1'000'000);

/// Optional fields are searched for when absent.
struct GeneralizedFrame {
  ProductSpace space;
  std::vector<std::vector<Hyperplane>> layers;
  double log_delta = 0.0;
  std::optional<std::vector<std::size_t>> order;
  std::optional<std::vector<CoordSet>> free_sets;
  /// anchors[i][j] = s_j(i), absent where j is in I(i) or j = i.
  std::optional<std::vector<std::vector<std::optional<std::uint32_t>>>> anchors;
};

struct GeneralizedFrameReport {
  bool valid = false;
  std::string violation;
  std::vector<std::size_t> order;
  std::vector<CoordSet> free_sets;
  std::vector<std::vector<std::optional<std::uint32_t>>> anchors;
  /// Disjointness whenever either side has at least 1/delta elements.
  bool strong_disjointness = false;
};

GeneralizedFrameReport verify_generalized_frame(const GeneralizedFrame& g);

inline constexpr std::size_t kFrameSearchMaxCoords = 12;

// ---------------------------------------------------------------------------
// Arithmetic orderings

double y_value(std::uint64_t p, std::uint32_t e);

class ArithOrdering {
 public:
  ArithOrdering() = default;
  /// Throws unless `order` is a permutation of <N> increasing in e per prime.
  ArithOrdering(FactoredModulus n, std::vector<IndexPair> order);

  const FactoredModulus& modulus() const { return n_; }
  const std::vector<IndexPair>& pairs() const { return order_; }
  /// Canonical coordinate index of the t-th pair.
  const std::vector<std::size_t>& coordinates() const { return coords_; }

 private:
  FactoredModulus n_;
  std::vector<IndexPair> order_;
  std::vector<std::size_t> coords_;
};

/// Sorted by y_(p,e), ties broken by (p,e).
ArithOrdering canonical_ordering(const FactoredModulus& n);

bool y_less(const IndexPair& a, const IndexPair& b);

// ---------------------------------------------------------------------------
// Counting quantities

struct TauValue {
  double value = 0.0;
  double error_bound = 0.0;
  std::uint64_t terms = 0;
};

/// sum_{t <= T} log(1 + 1/t)^2.
double tau_partial_sum(std::uint64_t terms);

/// Partial sum plus an integral bracket on the tail.
TauValue compute_tau(std::uint64_t terms = 1'000'000);

std::uint64_t n_of_x(double x);
FactoredModulus N_of_x(double x);

/// Pairs with y_(p,e) < x, in ascending y order.
std::vector<IndexPair> pairs_below(double x);

double q_value(const ArithOrdering& ord);
/// Any permutation of <N>, arithmetic or not.
double q_value(const FactoredModulus& n, std::span<const IndexPair> order);

/// Outer sum over <N>_delta; inner sum over every (q,f) up to and including (p,e).
double q_delta(const ArithOrdering& ord, double delta);

struct GValues {
  std::uint64_t g = 0;
  std::uint64_t g_delta = 0;
};

GValues g_values(const FactoredModulus& n, double delta);

struct AsymptoticRow {
  double x = 0.0;
  std::uint64_t n = 0;
  std::size_t pairs = 0;
  double q = 0.0;
  double ratio = 0.0;
};

/// r(x) = Q(N(x)) sqrt(log n(x)) / n(x)^(3/2) at x = x_min, x_min + step, ...
std::vector<AsymptoticRow> asymptotic_table(double x_min, double x_max, double step);

double lemma53_constant();

// ---------------------------------------------------------------------------
// Frame families

struct FrameSlot {
  IndexPair pair;
  std::size_t coordinate = 0;
  std::uint32_t s = 0;
  /// Other primes q with |J_q(p,e)| > 0, and those sizes.
  std::vector<std::uint64_t> primes;
  std::vector<std::uint32_t> segment_limits;
};

class FrameFamily {
 public:
  explicit FrameFamily(ArithOrdering ord);

  const ArithOrdering& ordering() const { return ord_; }
  const std::vector<FrameSlot>& slots() const { return slots_; }

  /// prod over slots and primes of (|J_q| + 1).
  BigInt size() const;

  /// Segment lengths, one vector per slot.
  CoverSystem system(const std::vector<std::vector<std::uint32_t>>& choice) const;

  /// Mixed-radix decoding of 0 <= index < size().
  CoverSystem system(const BigInt& index) const;

  std::vector<CoverSystem> enumerate(std::uint64_t limit = 1'000'000) const;

  Hyperplane slot_plane(const FrameSlot& slot, std::span<const std::uint32_t> lengths) const;

 private:
  ArithOrdering ord_;
  std::vector<FrameSlot> slots_;
};

/// Replaces 0 (mod N) by the dyadic chain of length t = target - |c|.
CoverSystem pad_to_size(const CoverSystem& c, std::size_t target);

// ---------------------------------------------------------------------------
// Bound evaluators (leading terms only, o(1) dropped)

double lemma63_leading(double m);
double lemma65_leading(double g_delta, double g, double delta);
double prop61_leading(double n, double c);
double lemma53_leading(double n);

struct SubgroupOptimum {
  std::uint64_t product = 1;
  double log_value = 0.0;
  /// Exponent per prime at an optimum.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> exponents;
};

/// max prod (gamma_p + 1) subject to sum gamma_p (p - 1) <= m.
SubgroupOptimum subgroup_dp(std::uint32_t m);

inline constexpr std::uint32_t kSubgroupDpMax = 60;

}  // namespace coversys
