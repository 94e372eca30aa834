#include <doctest.h>

#include <set>

#include "coversys/cover.hpp"

using namespace coversys;

namespace {

CoverSystem prog(std::initializer_list<std::pair<std::uint64_t, std::uint64_t>> ps) {
  std::vector<Progression> v;
  for (auto [a, d] : ps) v.emplace_back(a, FactoredModulus::from_integer(d));
  return CoverSystem::from_progressions(v);
}

}  // namespace

TEST_CASE("Z_12 system is a Simpson-tight minimal cover") {
  const CoverSystem c = prog({{0, 2}, {0, 3}, {1, 4}, {5, 6}, {7, 12}});
  CHECK(is_cover(c));
  const MinimalityReport r = minimality(c);
  CHECK(r.minimal);
  for (std::size_t i = 0; i < c.size(); ++i) {
    REQUIRE(r.witnesses[i]);
    for (std::size_t j = 0; j < c.size(); ++j) {
      CHECK(contains(c.plane(j), *r.witnesses[i]) == (i == j));
    }
  }
  const SimpsonReport s = simpson_check(c);
  CHECK(s.bound == 5);
  CHECK(s.tight);
  CHECK(geometric_simpson_all(c));
}

TEST_CASE("an uncovered integer is reported") {
  const CoverSystem c = prog({{0, 2}, {1, 4}});
  const auto hole = find_uncovered(c);
  REQUIRE(hole);
  CHECK(point_to_integer(c, *hole) == 3);
}

TEST_CASE("minimal subcover drops redundant planes") {
  const CoverSystem c = prog({{0, 2}, {1, 2}, {1, 4}, {0, 4}});
  const CoverSystem m = minimal_subcover(c);
  CHECK(is_minimal(m));
  CHECK(m.size() == 2);
  CHECK_THROWS(minimal_subcover(prog({{0, 2}})));
}

TEST_CASE("greedy order certifies density at least 1/i") {
  const CoverSystem c = prog({{0, 2}, {0, 3}, {1, 4}, {5, 6}, {7, 12}});
  const GreedyOrder g = greedy_order(c);
  CHECK(g.certified);
  std::set<std::size_t> used(g.order.begin(), g.order.end());
  CHECK(used.size() == c.size());
  CHECK(g.steps.front().i == 5);
  CHECK(g.steps.back().density == 1);
}

TEST_CASE("geometric Simpson on the parity cover") {
  const CoverSystem c = prog({{0, 2}, {1, 2}});
  const auto r = geometric_simpson_check(c, CoordSet{});
  CHECK(r.count == 2);
  CHECK(r.bound == 2);
  CHECK(r.holds);
  CHECK_THROWS(geometric_simpson_check(c, CoordSet{0}));
}

TEST_CASE("sieve cap is enforced") {
  const CoverSystem c = prog({{0, 2}, {1, 2}});
  CHECK_THROWS_AS(is_cover(c, 1), CapacityError);
}
