#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "coversys/frames.hpp"

using namespace coversys;

namespace {

// Q by a direct double loop over the ordering.
double q_oracle(const std::vector<IndexPair>& order) {
  double q = 0.0;
  for (std::size_t t = 0; t < order.size(); ++t) {
    double inner = 0.0;
    for (std::size_t u = 0; u < t; ++u) {
      if (order[u].p != order[t].p) inner += std::log((order[u].e + 1.0) / order[u].e);
    }
    q += static_cast<double>(order[t].p - 1) * inner;
  }
  return q;
}

}  // namespace

TEST_CASE("y ordering of small pairs") {
  CHECK(y_value(2, 1) == doctest::Approx(1.0 / std::log(2.0)));
  const auto ord = canonical_ordering(FactoredModulus::from_integer(12));
  REQUIRE(ord.pairs().size() == 3);
  CHECK(ord.pairs()[0] == IndexPair{2, 1});
  CHECK(ord.pairs()[1] == IndexPair{2, 2});
  CHECK(ord.pairs()[2] == IndexPair{3, 1});
  CHECK_THROWS(ArithOrdering(FactoredModulus::from_integer(4), {{2, 2}, {2, 1}}));
}

TEST_CASE("Q values against the double-loop oracle") {
  CHECK(q_value(canonical_ordering(FactoredModulus::from_integer(6))) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
  CHECK(q_value(canonical_ordering(FactoredModulus::from_integer(12))) ==
        doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-14));
  CHECK(q_value(canonical_ordering(FactoredModulus::from_integer(7))) == 0.0);
  for (std::uint64_t n : {30, 60, 360, 2520, 30030}) {
    const FactoredModulus m = FactoredModulus::from_integer(n);
    auto pairs = index_set(m);
    CHECK(q_value(canonical_ordering(m)) == doctest::Approx(q_oracle(canonical_ordering(m).pairs())));
    // Any permutation, arithmetic or not.
    std::reverse(pairs.begin(), pairs.end());
    CHECK(q_value(m, pairs) == doctest::Approx(q_oracle(pairs)));
  }
}

TEST_CASE("Q_delta sums over large primes only") {
  const auto ord = canonical_ordering(FactoredModulus::from_integer(30));
  CHECK(q_delta(ord, 0.1) == 0.0);
  CHECK(q_delta(ord, 1.0) > q_value(ord));
  double oracle = 0.0;
  for (std::size_t t = 0; t < ord.pairs().size(); ++t) {
    const auto& pe = ord.pairs()[t];
    if (pe.p * 0.25 <= 1.0) continue;
    double inner = 0.0;
    for (std::size_t u = 0; u <= t; ++u) inner += std::log((ord.pairs()[u].e + 1.0) / ord.pairs()[u].e);
    oracle += (pe.p - 1) * inner;
  }
  CHECK(q_delta(ord, 0.25) == doctest::Approx(oracle));
  const GValues g = g_values(FactoredModulus::from_integer(360), 0.25);
  CHECK(g.g == 3 + 4 + 4);
  CHECK(g.g_delta == 4);
}

TEST_CASE("tau and its leading constants") {
  const TauValue t = compute_tau(100'000);
  CHECK(t.value == doctest::Approx(0.977189).epsilon(1e-5));
  CHECK(t.error_bound < 1e-9);
  CHECK(std::abs(tau_partial_sum(1) - std::log(2.0) * std::log(2.0)) < 1e-15);
  CHECK(lemma53_constant() == doctest::Approx(1.318).epsilon(1e-3));
  CHECK(lemma63_leading(1e6) == doctest::Approx(531.907).epsilon(1e-5));
}

TEST_CASE("n(x) and N(x) agree with the pair list") {
  const auto pairs = pairs_below(10.0);
  std::uint64_t n = 1;
  for (const auto& pe : pairs) {
    CHECK(y_value(pe.p, pe.e) < 10.0);
    n += pe.p - 1;
  }
  CHECK(n_of_x(10.0) == n);
  CHECK(simpson_bound(N_of_x(10.0)) == n);
  const auto rows = asymptotic_table(10.0, 40.0, 5.0);
  for (const auto& r : rows) {
    CHECK(r.q == doctest::Approx(q_value(canonical_ordering(N_of_x(r.x)))));
  }
}

TEST_CASE("frame family for N=12 has e^Q members") {
  const FrameFamily f(canonical_ordering(FactoredModulus::from_integer(12)));
  CHECK(f.size() == 9);
  std::set<std::vector<Progression>> distinct;
  for (const CoverSystem& c : f.enumerate()) {
    CHECK(c.size() == 5);
    CHECK(is_cover(c));
    CHECK(is_minimal(c));
    distinct.insert(c.progressions());
  }
  CHECK(distinct.size() == 9);
  CHECK_THROWS_AS(f.enumerate(8), CapacityError);
}

TEST_CASE("padding keeps a minimal cover") {
  const FrameFamily f(canonical_ordering(FactoredModulus::from_integer(6)));
  const CoverSystem p = pad_to_size(f.system(BigInt(0)), 7);
  CHECK(p.size() == 7);
  CHECK(is_cover(p));
  CHECK(is_minimal(p));
}

TEST_CASE("simple frame on a 3x3 grid") {
  SimpleFrame f;
  f.space = ProductSpace({3, 3});
  f.axis = {0, 0};
  const auto F = Hyperplane::kFree;
  f.layers = {{Hyperplane({1, F}), Hyperplane({2, F})}, {Hyperplane({0, 1}), Hyperplane({0, 2})}};
  const FrameCheck ok = verify_simple_frame(f);
  CHECK(ok.valid);
  CHECK(ok.minimal_cover == true);
  f.layers[1][0] = Hyperplane({1, 1});
  CHECK_FALSE(verify_simple_frame(f).valid);
}

TEST_CASE("generalized frame search finds an order") {
  GeneralizedFrame g;
  const auto F = Hyperplane::kFree;
  g.space = ProductSpace({3, 3});
  g.log_delta = std::log(1e-9);
  g.layers = {{Hyperplane({1, F}), Hyperplane({2, F})}, {Hyperplane({0, 1}), Hyperplane({0, 2})}};
  const GeneralizedFrameReport r = verify_generalized_frame(g);
  CHECK(r.valid);
  CHECK(r.order.size() == 2);
}

TEST_CASE("subgroup DP small values") {
  CHECK(subgroup_dp(1).product == 2);
  CHECK(subgroup_dp(2).product == 3);
  CHECK(subgroup_dp(2).log_value == doctest::Approx(std::log(3.0)));
  const SubgroupOptimum s = subgroup_dp(6);
  std::uint64_t prod = 1, used = 0;
  for (auto [p, g] : s.exponents) {
    prod *= g + 1;
    used += g * (p - 1);
  }
  CHECK(prod == s.product);
  CHECK(used <= 6);
  CHECK_THROWS_AS(subgroup_dp(61), CapacityError);
}
