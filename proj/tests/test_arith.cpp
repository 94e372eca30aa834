#include <doctest.h>

#include "coversys/arith.hpp"

using namespace coversys;

TEST_CASE("factored moduli parse and print") {
  CHECK(FactoredModulus::parse("2^2*3").value_or_throw() == 12);
  CHECK(FactoredModulus::parse("12").to_string() == "2^2*3");
  CHECK(FactoredModulus::parse("4*6") == FactoredModulus::from_integer(24));
  CHECK(FactoredModulus::parse("1").is_one());
  CHECK_THROWS(FactoredModulus::parse("2^"));
  CHECK_THROWS(FactoredModulus::parse("x"));
  CHECK_FALSE(FactoredModulus::parse("2^64").value());
}

TEST_CASE("index set is ordered by prime then exponent") {
  const auto pairs = index_set(FactoredModulus::from_integer(12));
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == IndexPair{2, 1});
  CHECK(pairs[1] == IndexPair{2, 2});
  CHECK(pairs[2] == IndexPair{3, 1});
  CHECK(index_space(FactoredModulus::from_integer(12)) == ProductSpace({2, 2, 3}));
}

TEST_CASE("digit map is a bijection onto S_<N>") {
  const FactoredModulus n = FactoredModulus::from_integer(360);
  for (std::uint64_t x = 0; x < 360; ++x) CHECK(digit_unmap(digit_map(x, n), n) == x);
  const Point y = digit_map(11, FactoredModulus::from_integer(12));
  CHECK(y == Point{1, 1, 2});
}

TEST_CASE("progressions become arithmetic hyperplanes and back") {
  const FactoredModulus n = FactoredModulus::from_integer(36);
  for (std::uint64_t d : {1, 2, 3, 4, 6, 9, 12, 18, 36}) {
    for (std::uint64_t a = 0; a < d; ++a) {
      const Progression p(a, FactoredModulus::from_integer(d));
      const Hyperplane h = progression_to_hyperplane(p, n);
      CHECK(is_arithmetic(h, n));
      CHECK(hyperplane_to_progression(h, n) == p);
      for (std::uint64_t x = 0; x < 36; ++x) CHECK(contains(h, digit_map(x, n)) == p.contains(x));
    }
  }
  CHECK_FALSE(is_arithmetic(Hyperplane({Hyperplane::kFree, 1, Hyperplane::kFree}),
                            FactoredModulus::from_integer(12)));
  CHECK_THROWS(progression_to_hyperplane(Progression(0, FactoredModulus::from_integer(5)), n));
}
