#include <doctest.h>

#include <cmath>

#include "coversys/space.hpp"

using namespace coversys;

TEST_CASE("measure is the product of inverse sizes over fixed coordinates") {
  const ProductSpace s({2, 3, 5});
  const Hyperplane h({1, Hyperplane::kFree, 4});
  const Measure m = measure(s, h, CoordSet::all(3));
  CHECK(m.value == Rational(1, 10));
  CHECK(m.log == doctest::Approx(std::log(0.1)));
  CHECK(measure(s, h, CoordSet{1, 2}).value == Rational(1, 5));
  CHECK(log_measure(s, h, CoordSet{1}) == 0.0);
}

TEST_CASE("restriction keeps the chosen coordinates in order") {
  const Hyperplane h({1, Hyperplane::kFree, 4});
  CHECK(to_string(restrict(h, CoordSet{0, 2})) == "[1,4]");
  CHECK(to_string(restrict(h, CoordSet{1})) == "[*]");
  CHECK_THROWS(restrict(h, CoordSet{}));
  CHECK(restrict(ProductSpace({2, 3, 5}), CoordSet{2}) == ProductSpace({5}));
}

TEST_CASE("free sorts after every value") {
  CHECK(Hyperplane({0, 1}) < Hyperplane({0, Hyperplane::kFree}));
  CHECK(Hyperplane({1, 0}) < Hyperplane({Hyperplane::kFree, 0}));
}

TEST_CASE("point indexing round trips and the odometer visits every point once") {
  const ProductSpace s({2, 3, 4});
  for (std::uint64_t i = 0; i < 24; ++i) CHECK(point_index(s, point_at(s, i)) == i);
  const Hyperplane h({Hyperplane::kFree, 2, Hyperplane::kFree});
  std::vector<std::uint64_t> seen;
  for_each_point(s, s.strides(), h, [&](std::uint64_t i) { seen.push_back(i); });
  REQUIRE(seen.size() == 8);
  for (std::uint64_t i : seen) CHECK(contains(h, point_at(s, i)));
}

TEST_CASE("validation rejects out-of-range planes") {
  const ProductSpace s({2, 2});
  CHECK_THROWS_AS(validate(s, Hyperplane({2, 0})), std::invalid_argument);
  CHECK_THROWS_AS(validate(s, Hyperplane({0})), std::invalid_argument);
  CHECK_NOTHROW(validate(s, Hyperplane::whole(2)));
}
