#include <doctest.h>

#include <cmath>

#include "coversys/census.hpp"
#include "coversys/structure.hpp"

using namespace coversys;

namespace {

constexpr auto F = Hyperplane::kFree;

CoverSystem square() {
  return CoverSystem(ProductSpace({2, 2}), {Hyperplane({0, F}), Hyperplane({1, 0}), Hyperplane({1, 1})});
}

}  // namespace

TEST_CASE("strict parameters") {
  const StructureParams p = StructureParams::strict_params(4.0, 0.5);
  CHECK(p.lambda == doctest::Approx(1.0 / 128.0));
  CHECK(p.log_delta == doctest::Approx(-82.0 * std::log(2.0)));
  CHECK(p.explore_epsilon() == 0.25);
  // Half of the exploration threshold at (lambda, eps/2).
  CHECK(p.log_delta == doctest::Approx(exploration_log_delta_bound(p.lambda, 0.25) - std::log(2.0)));
  CHECK_THROWS(StructureParams::strict_params(4.0, 1.5));
}

TEST_CASE("one step on the square takes the first small-R coordinate") {
  const CoverSystem a = square();
  const auto params = StructureParams::strict_params(4.0, 0.5);
  const OneStepResult r = one_step(a.space(), a.planes(), CoordSet::all(2), params);
  CHECK(r.case_number == 1);
  CHECK(r.verdict == Verdict::Good);
  CHECK(r.i == 0);
  REQUIRE(r.branches.size() == 2);
  CHECK(r.branches[0].J.empty());
  CHECK(r.branches[1].J == CoordSet{1});
}

TEST_CASE("exploration tree of the square") {
  const auto params = StructureParams::strict_params(4.0, 0.5);
  const ExplorationTree t = build_exploration_tree(square(), params);
  REQUIRE(t.nodes.size() == 2);
  CHECK(t.nodes[1].I == CoordSet{1});
  CHECK(t.nodes[1].s == 1u);
  CHECK(validate_exploration_tree(t).valid);
  const TreeFrame f = extract_tree_frame(t);
  CHECK(f.pi == std::vector<std::size_t>{0, 1});
  CHECK(f.anchors[1][0] == 1u);
  CHECK(validate_tree_frame(t, f).valid);
  CHECK(verify_generalized_frame(tree_frame_to_generalized_frame(t, f)).valid);
}

TEST_CASE("a corrupted tree is rejected") {
  const auto params = StructureParams::strict_params(4.0, 0.5);
  ExplorationTree t = build_exploration_tree(square(), params);
  t.nodes[1].s = 0;
  CHECK_FALSE(validate_exploration_tree(t).valid);
}

TEST_CASE("non-minimal input is refused") {
  const CoverSystem a(ProductSpace({2, 2}),
                      {Hyperplane({0, F}), Hyperplane({1, F}), Hyperplane({1, 0})});
  CHECK_THROWS_AS(build_exploration_tree(a, StructureParams::strict_params(4.0, 0.5)),
                  std::invalid_argument);
}

TEST_CASE("free parameters can produce a bad vertex or a neither verdict") {
  // With delta close to 1 no plane is a witness and case 2 applies.
  const CoverSystem a(ProductSpace({2, 2}), {Hyperplane({0, 0}), Hyperplane({0, 1}),
                                              Hyperplane({1, 0}), Hyperplane({1, 1})});
  const auto bad = StructureParams::free_params(0.9, 1e6, 0.99);
  const OneStepResult r = one_step(a.space(), a.planes(), CoordSet::all(2), bad);
  CHECK(r.case_number == 2);
  CHECK(r.verdict == Verdict::Bad);
  CHECK(r.garbage.size() == 4);
  const auto neither = StructureParams::free_params(0.9, 1e-6, 0.99);
  CHECK(one_step(a.space(), a.planes(), CoordSet::all(2), neither).verdict == Verdict::Neither);
  CHECK_THROWS_AS(build_exploration_tree(a, neither), NeitherVerdict);
}

TEST_CASE("LLL report weights") {
  const ProductSpace s({2, 2});
  const std::vector<Hyperplane> planes = {Hyperplane({0, 0}), Hyperplane({1, F})};
  const std::vector<ValueSubset> r = {{true, true}, {true, true}};
  const LllReport rep = lll_inequality_report(s, planes, CoordSet::all(2), r, 0.5, 0.5);
  CHECK(rep.masses[0] == Rational(1, 4));
  CHECK(rep.masses[1] == Rational(1, 2));
  CHECK(rep.sums[0] == doctest::Approx(std::exp(2 * kEta) / 4 + std::exp(kEta) / 2));
  CHECK(rep.sums[1] == doctest::Approx(std::exp(2 * kEta) / 4));
  CHECK(rep.argmax == 0u);
}

TEST_CASE("random small-measure check holds") {
  const Lemma35Check c = lemma35_random_check(500, 7);
  CHECK(c.samples == 500);
  CHECK(c.failures == 0);
}

TEST_CASE("pipeline over every minimal cover of (2,2,2)") {
  const auto params = StructureParams::strict_params(4.0, 0.5);
  const auto covers = enumerate_minimal_hyperplane_covers(ProductSpace({2, 2, 2}), true, 12);
  CHECK(covers.size() > 10);
  for (const CoverSystem& a : covers) {
    const StructureReport r = analyze(a, params);
    CHECK(r.tree_check.valid);
    CHECK(r.frame_check.valid);
    CHECK(r.generalized_check.valid);
    CHECK(r.frame_bound);
  }
}
