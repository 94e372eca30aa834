#include "coversys/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace coversys {

namespace {

// Neumaier summation in long double.
class Accumulator {
 public:
  void add(long double v) {
    const long double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  long double value() const { return sum_ + comp_; }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

long double log_ratio(std::uint32_t f) {
  return std::log1p(1.0L / static_cast<long double>(f));
}

std::vector<std::size_t> identity_order(std::size_t k) {
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = i;
  return out;
}

bool is_permutation_of_range(std::span<const std::size_t> order, std::size_t k) {
  if (order.size() != k) return false;
  std::vector<bool> seen(k, false);
  for (std::size_t c : order) {
    if (c >= k || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

std::string plane_text(const Hyperplane& h) { return to_string(h); }

}  // namespace

// ---------------------------------------------------------------------------
// Simple frames

CoverSystem frame_cover(const SimpleFrame& f) {
  std::vector<Hyperplane> planes;
  for (const auto& layer : f.layers) planes.insert(planes.end(), layer.begin(), layer.end());
  planes.emplace_back(std::vector<std::uint32_t>(f.axis.begin(), f.axis.end()));
  return CoverSystem(f.space, std::move(planes));
}

FrameCheck verify_simple_frame(const SimpleFrame& f, std::uint64_t cover_check_cap) {
  FrameCheck out;
  const std::size_t k = f.space.dim();
  auto fail = [&](std::string why) {
    out.valid = false;
    out.violation = std::move(why);
    return out;
  };
  if (f.layers.size() != k) return fail("expected one layer per coordinate");
  if (f.axis.size() != k) return fail("axis has the wrong dimension");
  for (std::size_t i = 0; i < k; ++i) {
    if (f.axis[i] >= f.space.size(i)) return fail("axis coordinate out of range");
  }
  const std::vector<std::size_t> order = f.order.empty() ? identity_order(k) : f.order;
  if (!is_permutation_of_range(order, k)) return fail("order is not a permutation");
  std::vector<std::size_t> pos(k);
  for (std::size_t t = 0; t < k; ++t) pos[order[t]] = t;

  for (std::size_t c = 0; c < k; ++c) {
    const auto& layer = f.layers[c];
    if (layer.size() != f.space.size(c) - 1) {
      return fail("layer " + std::to_string(c) + " must have |S_i| - 1 planes");
    }
    std::set<std::uint32_t> values;
    for (const Hyperplane& h : layer) {
      if (h.dim() != k) return fail("plane of the wrong dimension in layer " + std::to_string(c));
      try {
        validate(f.space, h);
      } catch (const std::invalid_argument& e) {
        return fail(e.what());
      }
      if (h.is_free(c) || h.value(c) == f.axis[c]) {
        return fail("plane " + plane_text(h) + " must fix coordinate " + std::to_string(c) +
                    " away from the axis");
      }
      if (!values.insert(h.value(c)).second) {
        return fail("repeated value in layer " + std::to_string(c));
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (j == c || h.is_free(j)) continue;
        if (pos[j] > pos[c]) {
          return fail("plane " + plane_text(h) + " fixes a later coordinate");
        }
        if (h.value(j) != f.axis[j]) {
          return fail("plane " + plane_text(h) + " leaves the axis at coordinate " +
                      std::to_string(j));
        }
      }
    }
  }
  out.valid = true;
  const auto points = f.space.point_count();
  if (points && *points <= cover_check_cap) {
    const CoverSystem c = frame_cover(f);
    const bool ok = is_cover(c) && is_minimal(c);
    out.minimal_cover = ok;
    if (!ok) return fail("layers and axis do not form a minimal cover");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generalized frames

namespace {

struct Placement {
  CoordSet free_set;
  std::vector<std::optional<std::uint32_t>> anchors;
};

// Smallest admissible I(c) given the coordinates placed before c, or nullopt.
std::optional<Placement> minimal_placement(const GeneralizedFrame& g, std::size_t c,
                                           CoordSet before) {
  const std::size_t k = g.space.dim();
  const auto& layer = g.layers[c];
  Placement p;
  p.anchors.assign(k, std::nullopt);
  p.free_set = CoordSet::all(k) - before;
  p.free_set.erase(c);
  for (std::size_t j : before.elements()) {
    std::optional<std::uint32_t> value;
    bool disagree = false;
    for (const Hyperplane& h : layer) {
      if (h.is_free(j)) continue;
      if (value && *value != h.value(j)) disagree = true;
      value = h.value(j);
    }
    if (disagree) {
      p.free_set.insert(j);
    } else {
      p.anchors[j] = value.value_or(0);
    }
  }
  for (const Hyperplane& h : layer) {
    if (!(log_measure(g.space, h, p.free_set) > g.log_delta)) return std::nullopt;
  }
  return p;
}

}  // namespace

GeneralizedFrameReport verify_generalized_frame(const GeneralizedFrame& g) {
  GeneralizedFrameReport out;
  const std::size_t k = g.space.dim();
  auto fail = [&](std::string why) {
    out.valid = false;
    out.violation = std::move(why);
    return out;
  };
  if (g.layers.size() != k) return fail("expected one layer per coordinate");
  for (std::size_t c = 0; c < k; ++c) {
    const auto& layer = g.layers[c];
    if (layer.size() > g.space.size(c) - 1) {
      return fail("layer " + std::to_string(c) + " has more than |S_i| - 1 planes");
    }
    std::set<Hyperplane> seen;
    for (const Hyperplane& h : layer) {
      try {
        validate(g.space, h);
      } catch (const std::invalid_argument& e) {
        return fail(e.what());
      }
      if (!seen.insert(h).second) return fail("repeated plane in layer " + std::to_string(c));
      if (h.is_free(c)) {
        return fail("plane " + plane_text(h) + " does not fix coordinate " + std::to_string(c));
      }
    }
  }

  // Ordering.
  if (g.order) {
    if (!is_permutation_of_range(*g.order, k)) return fail("order is not a permutation");
    out.order = *g.order;
  } else {
    if (k > kFrameSearchMaxCoords) return fail("order search is limited to 12 coordinates");
    // Placing a coordinate later only enlarges its admissible set, so the first
    // admissible coordinate at each step never blocks a completion.
    CoordSet placed;
    for (std::size_t t = 0; t < k; ++t) {
      bool found = false;
      for (std::size_t c = 0; c < k && !found; ++c) {
        if (placed.contains(c)) continue;
        if (minimal_placement(g, c, placed)) {
          out.order.push_back(c);
          placed.insert(c);
          found = true;
        }
      }
      if (!found) return fail("no admissible ordering exists");
    }
  }
  std::vector<std::size_t> pos(k);
  for (std::size_t t = 0; t < k; ++t) pos[out.order[t]] = t;

  // Free sets and anchors.
  out.free_sets.assign(k, CoordSet());
  out.anchors.assign(k, std::vector<std::optional<std::uint32_t>>(k));
  for (std::size_t c = 0; c < k; ++c) {
    CoordSet before;
    for (std::size_t t = 0; t < pos[c]; ++t) before.insert(out.order[t]);
    if (g.free_sets) {
      if (g.free_sets->size() != k) return fail("expected one free set per coordinate");
      out.free_sets[c] = (*g.free_sets)[c];
    } else {
      const auto p = minimal_placement(g, c, before);
      if (!p) {
        return fail("layer " + std::to_string(c) + " has a plane of measure at most delta");
      }
      out.free_sets[c] = p->free_set;
    }
    if (g.anchors) {
      if (g.anchors->size() != k || (*g.anchors)[c].size() != k) {
        return fail("anchor table has the wrong shape");
      }
      out.anchors[c] = (*g.anchors)[c];
    } else {
      for (std::size_t j = 0; j < k; ++j) {
        if (j == c || out.free_sets[c].contains(j)) continue;
        std::optional<std::uint32_t> value;
        for (const Hyperplane& h : g.layers[c]) {
          if (h.is_free(j)) continue;
          if (value && *value != h.value(j)) {
            return fail("layer " + std::to_string(c) + " has no anchor at coordinate " +
                        std::to_string(j));
          }
          value = h.value(j);
        }
        out.anchors[c][j] = value.value_or(0);
      }
    }
  }

  // The clauses themselves.
  for (std::size_t c = 0; c < k; ++c) {
    const CoordSet free_set = out.free_sets[c];
    for (std::size_t t = pos[c] + 1; t < k; ++t) {
      if (!free_set.contains(out.order[t])) {
        return fail("free set of coordinate " + std::to_string(c) +
                    " misses a later coordinate");
      }
    }
    for (const Hyperplane& h : g.layers[c]) {
      if (!(log_measure(g.space, h, free_set) > g.log_delta)) {
        return fail("plane " + plane_text(h) + " has measure at most delta on its free set");
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (j == c || free_set.contains(j) || h.is_free(j)) continue;
        const auto& anchor = out.anchors[c][j];
        if (!anchor || *anchor != h.value(j)) {
          return fail("plane " + plane_text(h) + " leaves its anchor at coordinate " +
                      std::to_string(j));
        }
      }
    }
  }
  const double big = -g.log_delta;
  bool weak_ok = true;
  out.strong_disjointness = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      bool overlap = false;
      for (const Hyperplane& h : g.layers[i]) {
        if (std::find(g.layers[j].begin(), g.layers[j].end(), h) != g.layers[j].end()) {
          overlap = true;
          break;
        }
      }
      if (!overlap) continue;
      const double li = std::log(static_cast<double>(g.space.size(i)));
      const double lj = std::log(static_cast<double>(g.space.size(j)));
      if (std::min(li, lj) >= big) weak_ok = false;
      if (std::max(li, lj) >= big) out.strong_disjointness = false;
    }
  }
  if (!weak_ok) return fail("layers of two large coordinates share a plane");
  out.valid = true;
  return out;
}

// ---------------------------------------------------------------------------
// Orderings

double y_value(std::uint64_t p, std::uint32_t e) {
  return static_cast<double>(static_cast<long double>(p - 1) / log_ratio(e));
}

bool y_less(const IndexPair& a, const IndexPair& b) {
  const long double ya = static_cast<long double>(a.p - 1) / log_ratio(a.e);
  const long double yb = static_cast<long double>(b.p - 1) / log_ratio(b.e);
  if (ya != yb) return ya < yb;
  return a < b;
}

ArithOrdering::ArithOrdering(FactoredModulus n, std::vector<IndexPair> order)
    : n_(std::move(n)), order_(std::move(order)) {
  const auto canonical = index_set(n_);
  if (order_.size() != canonical.size()) {
    throw std::invalid_argument("ordering must list every pair of <N> once");
  }
  std::map<IndexPair, std::size_t> index;
  for (std::size_t i = 0; i < canonical.size(); ++i) index[canonical[i]] = i;
  std::map<std::uint64_t, std::uint32_t> last;
  std::vector<bool> seen(canonical.size(), false);
  for (const IndexPair& pe : order_) {
    auto it = index.find(pe);
    if (it == index.end() || seen[it->second]) {
      throw std::invalid_argument("ordering must list every pair of <N> once");
    }
    seen[it->second] = true;
    if (pe.e != last[pe.p] + 1) {
      throw std::invalid_argument("ordering is not increasing in e for prime " +
                                  std::to_string(pe.p));
    }
    last[pe.p] = pe.e;
    coords_.push_back(it->second);
  }
}

ArithOrdering canonical_ordering(const FactoredModulus& n) {
  auto pairs = index_set(n);
  std::sort(pairs.begin(), pairs.end(), y_less);
  return ArithOrdering(n, std::move(pairs));
}

// ---------------------------------------------------------------------------
// tau

double tau_partial_sum(std::uint64_t terms) {
  Accumulator acc;
  for (std::uint64_t t = 1; t <= terms; ++t) {
    const long double v = std::log1p(1.0L / static_cast<long double>(t));
    acc.add(v * v);
  }
  return static_cast<double>(acc.value());
}

namespace {

// int_T^inf log(1 + 1/t)^2 dt = int_0^{1/T} (log(1 + u) / u)^2 du.
long double tail_integral(long double from) {
  auto g = [](long double u) {
    if (u == 0.0L) return 1.0L;
    const long double r = std::log1p(u) / u;
    return r * r;
  };
  return boost::math::quadrature::gauss_kronrod<long double, 31>::integrate(g, 0.0L,
                                                                           1.0L / from, 0, 0);
}

}  // namespace

TauValue compute_tau(std::uint64_t terms) {
  if (terms == 0) throw std::invalid_argument("tau needs at least one term");
  Accumulator acc;
  for (std::uint64_t t = 1; t <= terms; ++t) {
    const long double v = std::log1p(1.0L / static_cast<long double>(t));
    acc.add(v * v);
  }
  const long double upper = tail_integral(static_cast<long double>(terms));
  const long double lower = tail_integral(static_cast<long double>(terms) + 1.0L);
  TauValue out;
  out.terms = terms;
  out.value = static_cast<double>(acc.value() + (upper + lower) / 2.0L);
  const long double rounding =
      static_cast<long double>(terms) * 4.0L * std::numeric_limits<long double>::epsilon() +
      4.0L * std::numeric_limits<double>::epsilon();
  out.error_bound = static_cast<double>((upper - lower) / 2.0L + rounding);
  return out;
}

double lemma53_constant() {
  static const double c = 4.0 * std::sqrt(compute_tau().value) / 3.0;
  return c;
}

namespace {

double tau_cached() {
  static const double t = compute_tau().value;
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// n(x), N(x), Q

std::vector<IndexPair> pairs_below(double x) {
  std::vector<IndexPair> out;
  if (!(x > 0)) return out;
  const double limit = x * std::numbers::ln2 + 2.0;
  if (limit > 1e9) throw CapacityError("x too large for the prime sieve");
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(limit))) {
    for (std::uint32_t e = 1; y_value(p, e) < x; ++e) out.push_back({p, e});
  }
  std::sort(out.begin(), out.end(), y_less);
  return out;
}

std::uint64_t n_of_x(double x) {
  std::uint64_t n = 1;
  for (const IndexPair& pe : pairs_below(x)) n += pe.p - 1;
  return n;
}

FactoredModulus N_of_x(double x) {
  FactoredModulus::FactorMap f;
  for (const IndexPair& pe : pairs_below(x)) f[pe.p] = std::max(f[pe.p], pe.e);
  return FactoredModulus(std::move(f));
}

double q_value(const FactoredModulus& n, std::span<const IndexPair> order) {
  auto canonical = index_set(n);
  std::vector<IndexPair> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted != canonical) throw std::invalid_argument("order must list every pair of <N> once");
  Accumulator total;
  std::map<std::uint64_t, Accumulator> per_prime;
  Accumulator q;
  for (const IndexPair& pe : order) {
    const long double inner = total.value() - per_prime[pe.p].value();
    q.add(static_cast<long double>(pe.p - 1) * inner);
    total.add(log_ratio(pe.e));
    per_prime[pe.p].add(log_ratio(pe.e));
  }
  return static_cast<double>(q.value());
}

double q_value(const ArithOrdering& ord) { return q_value(ord.modulus(), ord.pairs()); }

double q_delta(const ArithOrdering& ord, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  Accumulator total;
  Accumulator q;
  for (const IndexPair& pe : ord.pairs()) {
    total.add(log_ratio(pe.e));
    if (static_cast<double>(pe.p) * delta > 1.0) {
      q.add(static_cast<long double>(pe.p - 1) * total.value());
    }
  }
  return static_cast<double>(q.value());
}

GValues g_values(const FactoredModulus& n, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  GValues out;
  for (const auto& [p, g] : n.factors()) {
    out.g += static_cast<std::uint64_t>(g) * (p - 1);
    if (static_cast<double>(p) * delta > 1.0) out.g_delta += static_cast<std::uint64_t>(g) * (p - 1);
  }
  return out;
}

std::vector<AsymptoticRow> asymptotic_table(double x_min, double x_max, double step) {
  if (!(step > 0) || !(x_min > 0) || x_max < x_min) {
    throw std::invalid_argument("need 0 < x_min <= x_max and step > 0");
  }
  const auto pairs = pairs_below(x_max + step);
  std::vector<AsymptoticRow> rows;
  Accumulator total;
  std::map<std::uint64_t, Accumulator> per_prime;
  Accumulator q;
  std::uint64_t n = 1;
  std::size_t used = 0;
  const auto count = static_cast<std::size_t>(std::floor((x_max - x_min) / step + 1e-9)) + 1;
  for (std::size_t r = 0; r < count; ++r) {
    const double x = x_min + static_cast<double>(r) * step;
    // N(x) is a prefix of the global y order, so each row extends the last.
    while (used < pairs.size() && y_value(pairs[used].p, pairs[used].e) < x) {
      const IndexPair& pe = pairs[used];
      q.add(static_cast<long double>(pe.p - 1) * (total.value() - per_prime[pe.p].value()));
      total.add(log_ratio(pe.e));
      per_prime[pe.p].add(log_ratio(pe.e));
      n += pe.p - 1;
      ++used;
    }
    AsymptoticRow row;
    row.x = x;
    row.n = n;
    row.pairs = used;
    row.q = static_cast<double>(q.value());
    const double nd = static_cast<double>(n);
    row.ratio = n > 1 ? row.q * std::sqrt(std::log(nd)) / std::pow(nd, 1.5) : 0.0;
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Frame families

FrameFamily::FrameFamily(ArithOrdering ord) : ord_(std::move(ord)) {
  const auto& pairs = ord_.pairs();
  for (std::size_t t = 0; t < pairs.size(); ++t) {
    std::map<std::uint64_t, std::uint32_t> before;
    for (std::size_t u = 0; u < t; ++u) {
      if (pairs[u].p != pairs[t].p) ++before[pairs[u].p];
    }
    for (std::uint32_t s = 1; s < pairs[t].p; ++s) {
      FrameSlot slot;
      slot.pair = pairs[t];
      slot.coordinate = ord_.coordinates()[t];
      slot.s = s;
      for (const auto& [q, count] : before) {
        slot.primes.push_back(q);
        slot.segment_limits.push_back(count);
      }
      slots_.push_back(std::move(slot));
    }
  }
}

BigInt FrameFamily::size() const {
  BigInt out = 1;
  for (const FrameSlot& slot : slots_) {
    for (std::uint32_t limit : slot.segment_limits) out *= limit + 1;
  }
  return out;
}

Hyperplane FrameFamily::slot_plane(const FrameSlot& slot,
                                   std::span<const std::uint32_t> lengths) const {
  if (lengths.size() != slot.primes.size()) throw std::invalid_argument("choice has wrong shape");
  const FactoredModulus& n = ord_.modulus();
  std::map<IndexPair, std::size_t> coord;
  const auto canonical = index_set(n);
  for (std::size_t i = 0; i < canonical.size(); ++i) coord[canonical[i]] = i;
  Hyperplane h = Hyperplane::whole(canonical.size());
  for (std::uint32_t f = 1; f < slot.pair.e; ++f) h.set(coord.at({slot.pair.p, f}), 0);
  h.set(slot.coordinate, slot.s);
  for (std::size_t q = 0; q < slot.primes.size(); ++q) {
    if (lengths[q] > slot.segment_limits[q]) throw std::invalid_argument("segment too long");
    for (std::uint32_t f = 1; f <= lengths[q]; ++f) h.set(coord.at({slot.primes[q], f}), 0);
  }
  return h;
}

CoverSystem FrameFamily::system(const std::vector<std::vector<std::uint32_t>>& choice) const {
  if (choice.size() != slots_.size()) throw std::invalid_argument("choice has wrong shape");
  const FactoredModulus& n = ord_.modulus();
  std::vector<Progression> system;
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    system.push_back(hyperplane_to_progression(slot_plane(slots_[i], choice[i]), n));
  }
  system.emplace_back(0, n);
  return CoverSystem::from_progressions(system, n);
}

CoverSystem FrameFamily::system(const BigInt& index) const {
  if (index < 0 || index >= size()) throw std::invalid_argument("family index out of range");
  BigInt rest = index;
  std::vector<std::vector<std::uint32_t>> choice;
  for (const FrameSlot& slot : slots_) {
    std::vector<std::uint32_t> lengths;
    for (std::uint32_t limit : slot.segment_limits) {
      const BigInt radix = limit + 1;
      lengths.push_back(static_cast<std::uint32_t>(rest % radix));
      rest /= radix;
    }
    choice.push_back(std::move(lengths));
  }
  return system(choice);
}

std::vector<CoverSystem> FrameFamily::enumerate(std::uint64_t limit) const {
  const BigInt total = size();
  if (total > limit) throw CapacityError("frame family larger than the enumeration limit");
  const auto count = static_cast<std::uint64_t>(total);
  std::vector<CoverSystem> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(system(BigInt(i)));
  return out;
}

CoverSystem pad_to_size(const CoverSystem& c, std::size_t target) {
  if (!c.is_integer_view()) throw std::invalid_argument("padding needs a system of progressions");
  if (target < c.size()) throw std::invalid_argument("target size below the system size");
  const FactoredModulus n = c.lcm();
  auto system = c.progressions();
  const Progression axis(0, n);
  auto it = std::find(system.begin(), system.end(), axis);
  if (it == system.end()) throw std::invalid_argument("system does not contain 0 (mod N)");
  const std::size_t t = target - c.size();
  if (t == 0) return c;
  system.erase(it);
  const std::uint64_t nv = n.value_or_throw();
  FactoredModulus::FactorMap f = n.factors();
  const std::uint32_t two = f[2];
  for (std::uint32_t l = 1; l <= t; ++l) {
    f[2] = two + l;
    const FactoredModulus d(f);
    const std::uint64_t a = (std::uint64_t{1} << (l - 1)) * nv;
    system.emplace_back(a, d);
  }
  const FactoredModulus top(f);
  system.emplace_back(0, top);
  return CoverSystem::from_progressions(system, top);
}

// ---------------------------------------------------------------------------
// Bound evaluators

double lemma63_leading(double m) {
  if (!(m > 1)) throw std::invalid_argument("M must exceed 1");
  return 2.0 * std::sqrt(tau_cached()) * std::sqrt(m / std::log(m));
}

double lemma65_leading(double g_delta, double g, double delta) {
  if (!(g_delta > 1) || !(g > 1) || !(delta > 0)) {
    throw std::invalid_argument("need G_delta > 1, G > 1, delta > 0");
  }
  return lemma63_leading(g_delta) + std::log(g) / delta;
}

double prop61_leading(double n, double c) {
  if (!(n > 1) || !(c > 0)) throw std::invalid_argument("need n > 1 and C > 0");
  return 2.0 * std::sqrt(tau_cached()) / std::sqrt(c) * std::pow(n, 1.5) / std::sqrt(std::log(n));
}

double lemma53_leading(double n) {
  if (!(n > 1)) throw std::invalid_argument("n must exceed 1");
  return 4.0 * std::sqrt(tau_cached()) / 3.0 * std::pow(n, 1.5) / std::sqrt(std::log(n));
}

SubgroupOptimum subgroup_dp(std::uint32_t m) {
  if (m > kSubgroupDpMax) throw CapacityError("subgroup DP is limited to M <= 60");
  const auto primes = primes_up_to(m + 1);
  // layers[i][b]: best product using the first i primes with budget b.
  std::vector<std::vector<std::uint64_t>> layers(primes.size() + 1,
                                                 std::vector<std::uint64_t>(m + 1, 1));
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::uint64_t w = primes[i] - 1;
    for (std::uint32_t b = 0; b <= m; ++b) {
      std::uint64_t best = layers[i][b];
      for (std::uint64_t g = 1; g * w <= b; ++g) {
        best = std::max(best, layers[i][b - g * w] * (g + 1));
      }
      layers[i + 1][b] = best;
    }
  }
  SubgroupOptimum out;
  out.product = layers[primes.size()][m];
  out.log_value = std::log(static_cast<double>(out.product));
  std::uint64_t b = m;
  for (std::size_t i = primes.size(); i-- > 0;) {
    const std::uint64_t w = primes[i] - 1;
    const std::uint64_t target = layers[i + 1][b];
    for (std::uint64_t g = 0; g * w <= b; ++g) {
      if (layers[i][b - g * w] * (g + 1) == target) {
        if (g > 0) out.exponents.emplace_back(primes[i], static_cast<std::uint32_t>(g));
        b -= g * w;
        break;
      }
    }
  }
  std::reverse(out.exponents.begin(), out.exponents.end());
  return out;
}

}  // namespace coversys
