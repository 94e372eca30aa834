#include "coversys/cover.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <stdexcept>

namespace coversys {

namespace {

std::uint64_t checked_point_count(const ProductSpace& space, std::uint64_t cap) {
  const auto count = space.point_count();
  if (!count || *count > cap) {
    throw CapacityError("product space exceeds the sieve cap of " + std::to_string(cap) +
                        " points");
  }
  return *count;
}

class Bitset {
 public:
  explicit Bitset(std::uint64_t n) : n_(n), words_((n + 63) / 64, 0) {}
  void set(std::uint64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::uint64_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  std::uint64_t count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }
  std::optional<std::uint64_t> first_unset() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != ~std::uint64_t{0}) {
        const std::uint64_t i = w * 64 + static_cast<std::uint64_t>(std::countr_one(words_[w]));
        if (i < n_) return i;
      }
    }
    return std::nullopt;
  }

 private:
  std::uint64_t n_;
  std::vector<std::uint64_t> words_;
};

}  // namespace

CoverSystem::CoverSystem(ProductSpace space, std::vector<Hyperplane> planes)
    : space_(std::move(space)), planes_(std::move(planes)) {
  for (const Hyperplane& h : planes_) validate(space_, h);
  std::sort(planes_.begin(), planes_.end());
  planes_.erase(std::unique(planes_.begin(), planes_.end()), planes_.end());
}

CoverSystem CoverSystem::from_progressions(std::span<const Progression> system,
                                           std::optional<FactoredModulus> n) {
  const FactoredModulus modulus = n ? *n : lcm_of(system);
  std::vector<Hyperplane> planes;
  planes.reserve(system.size());
  for (const Progression& a : system) planes.push_back(progression_to_hyperplane(a, modulus));
  CoverSystem out(index_space(modulus), std::move(planes));
  out.modulus_ = modulus;
  return out;
}

std::vector<Progression> CoverSystem::progressions() const {
  if (!modulus_) throw std::invalid_argument("system has no integer view");
  std::vector<Progression> out;
  out.reserve(planes_.size());
  for (const Hyperplane& h : planes_) out.push_back(hyperplane_to_progression(h, *modulus_));
  std::sort(out.begin(), out.end());
  return out;
}

FactoredModulus CoverSystem::lcm() const {
  const auto system = progressions();
  if (system.empty()) return FactoredModulus();
  return lcm_of(system);
}

CoordSet CoverSystem::fixed_set() const {
  CoordSet out;
  for (const Hyperplane& h : planes_) out = out | h.fixed_set();
  return out;
}

CoverSystem CoverSystem::subsystem(std::span<const std::size_t> indices) const {
  CoverSystem out = *this;
  out.planes_.clear();
  for (std::size_t i : indices) out.planes_.push_back(planes_.at(i));
  std::sort(out.planes_.begin(), out.planes_.end());
  out.planes_.erase(std::unique(out.planes_.begin(), out.planes_.end()), out.planes_.end());
  return out;
}

std::optional<Point> find_uncovered(const CoverSystem& c, std::uint64_t cap) {
  const std::uint64_t n = checked_point_count(c.space(), cap);
  const auto strides = c.space().strides();
  Bitset covered(n);
  for (const Hyperplane& h : c.planes()) {
    for_each_point(c.space(), strides, h, [&](std::uint64_t i) { covered.set(i); });
  }
  const auto hole = covered.first_unset();
  if (!hole) return std::nullopt;
  return point_at(c.space(), *hole);
}

bool is_cover(const CoverSystem& c, std::uint64_t cap) { return !find_uncovered(c, cap); }

MinimalityReport minimality(const CoverSystem& c, std::uint64_t cap) {
  const std::uint64_t n = checked_point_count(c.space(), cap);
  const auto strides = c.space().strides();
  std::vector<std::uint8_t> count(n, 0);
  for (const Hyperplane& h : c.planes()) {
    for_each_point(c.space(), strides, h, [&](std::uint64_t i) {
      if (count[i] < 2) ++count[i];
    });
  }
  if (std::find(count.begin(), count.end(), std::uint8_t{0}) != count.end()) {
    throw std::invalid_argument("system is not a cover");
  }
  MinimalityReport report;
  report.minimal = true;
  for (const Hyperplane& h : c.planes()) {
    std::optional<std::uint64_t> witness;
    for_each_point(c.space(), strides, h, [&](std::uint64_t i) {
      if (!witness && count[i] == 1) witness = i;
    });
    if (witness) {
      report.witnesses.push_back(point_at(c.space(), *witness));
    } else {
      report.witnesses.push_back(std::nullopt);
      report.minimal = false;
    }
  }
  return report;
}

bool is_minimal(const CoverSystem& c, std::uint64_t cap) { return minimality(c, cap).minimal; }

CoverSystem minimal_subcover(const CoverSystem& c, std::uint64_t cap) {
  if (c.size() >= std::numeric_limits<std::uint16_t>::max()) {
    throw CapacityError("too many planes for subcover extraction");
  }
  const std::uint64_t n = checked_point_count(c.space(), cap);
  const auto strides = c.space().strides();
  std::vector<std::uint16_t> count(n, 0);
  for (const Hyperplane& h : c.planes()) {
    for_each_point(c.space(), strides, h, [&](std::uint64_t i) { ++count[i]; });
  }
  if (std::find(count.begin(), count.end(), std::uint16_t{0}) != count.end()) {
    throw std::invalid_argument("system is not a cover");
  }
  // Counts only decrease, so a plane kept once stays necessary: one pass is stable.
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < c.size(); ++j) {
    bool removable = true;
    for_each_point(c.space(), strides, c.plane(j), [&](std::uint64_t i) {
      if (count[i] < 2) removable = false;
    });
    if (removable) {
      for_each_point(c.space(), strides, c.plane(j), [&](std::uint64_t i) { --count[i]; });
    } else {
      keep.push_back(j);
    }
  }
  return c.subsystem(keep);
}

GreedyOrder greedy_order(const CoverSystem& c, std::uint64_t cap) {
  if (!is_minimal(c, cap)) throw std::invalid_argument("system is not a minimal cover");
  const std::uint64_t n_points = checked_point_count(c.space(), cap);
  const auto strides = c.space().strides();
  const std::size_t n = c.size();
  Bitset remaining_points(n_points);
  for (std::uint64_t i = 0; i < n_points; ++i) remaining_points.set(i);
  std::uint64_t r_size = n_points;
  std::vector<bool> used(n, false);

  GreedyOrder out;
  out.order.assign(n, 0);
  out.certified = true;
  for (std::size_t i = n; i >= 1; --i) {
    if (r_size == 0) throw std::logic_error("greedy residual set emptied early");
    std::size_t best = n;
    std::uint64_t best_hits = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      std::uint64_t hits = 0;
      for_each_point(c.space(), strides, c.plane(j),
                     [&](std::uint64_t x) { hits += remaining_points.test(x); });
      if (best == n || hits > best_hits) {
        best = j;
        best_hits = hits;
      }
    }
    used[best] = true;
    for_each_point(c.space(), strides, c.plane(best), [&](std::uint64_t x) {
      if (remaining_points.test(x)) {
        remaining_points.reset(x);
        --r_size;
      }
    });
    GreedyStep step;
    step.i = i;
    step.plane = best;
    step.density = Rational(BigInt(best_hits), BigInt(r_size + best_hits));
    step.meets_bound = step.density * static_cast<unsigned>(i) >= 1;
    out.certified = out.certified && step.meets_bound;
    out.order[i - 1] = best;
    out.steps.push_back(std::move(step));
  }
  return out;
}

std::uint64_t simpson_bound(const FactoredModulus& n) {
  std::uint64_t bound = 1;
  for (const auto& [p, g] : n.factors()) bound += static_cast<std::uint64_t>(g) * (p - 1);
  return bound;
}

std::uint64_t simpson_bound(const ProductSpace& space, CoordSet coords) {
  std::uint64_t bound = 1;
  for (std::size_t i : coords.elements()) bound += space.size(i) - 1;
  return bound;
}

SimpsonReport simpson_check(const CoverSystem& c) {
  SimpsonReport r;
  r.bound = c.is_integer_view() ? simpson_bound(c.lcm()) : simpson_bound(c.space(), c.fixed_set());
  r.size = c.size();
  r.tight = r.size == r.bound;
  return r;
}

GeometricSimpsonReport geometric_simpson_check(const CoverSystem& c, CoordSet coords) {
  const CoordSet f = c.fixed_set();
  if (f.subset_of(coords)) {
    throw std::invalid_argument("coordinate set must be a proper subset of F(A)");
  }
  GeometricSimpsonReport r;
  for (const Hyperplane& h : c.planes()) {
    if (!h.fixed_set().subset_of(coords)) ++r.count;
  }
  r.bound = simpson_bound(c.space(), f - coords);
  r.holds = r.count >= r.bound;
  return r;
}

bool geometric_simpson_all(const CoverSystem& c) {
  const auto f = c.fixed_set().elements();
  if (f.size() >= 24) throw CapacityError("too many fixed coordinates for subset scan");
  const std::uint64_t subsets = std::uint64_t{1} << f.size();
  for (std::uint64_t mask = 0; mask + 1 < subsets; ++mask) {
    CoordSet coords;
    for (std::size_t b = 0; b < f.size(); ++b) {
      if ((mask >> b) & 1U) coords.insert(f[b]);
    }
    if (!geometric_simpson_check(c, coords).holds) return false;
  }
  return true;
}

std::uint64_t point_to_integer(const CoverSystem& c, std::span<const std::uint32_t> x) {
  if (!c.modulus()) throw std::invalid_argument("system has no integer view");
  return digit_unmap(x, *c.modulus());
}

}  // namespace coversys
