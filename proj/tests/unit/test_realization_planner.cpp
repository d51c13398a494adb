#include <doctest.h>

#include <algorithm>
#include <string>

#include "reeb_forge/errors.hpp"
#include "reeb_forge/realization_planner.hpp"
#include "test_support.hpp"

using namespace reeb;
using namespace reeb::planner;
using reeb::testing::H;
using reeb::testing::ranks;
using reeb::testing::Zm;

namespace {

engine::ReebProfile profile(std::int64_t n, algebra::GradedModule h) {
  engine::ReebProfile p = engine::initial_profile(n);
  p.homology = std::move(h);
  return p;
}

bool mentions(const std::vector<std::string>& lines, const std::string& needle) {
  return std::any_of(lines.begin(), lines.end(), [&](const auto& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("plan_free_realization") {
  const auto r = plan_free_realization({3, {1, 1, 0, 2}, {}});
  CHECK(r.target_met);
  CHECK(r.script.ops.size() == 2);
  CHECK(r.script.ops[0].label() == engine::BubblingOp::normal(catalog::sphere(2)).label());
  CHECK(r.achieved == ranks({1, 1, 0, 2}));
  CHECK(engine::run_script(r.script).homology == r.achieved);

  const auto points = plan_free_realization({2, {1, 0, 3}, {}});
  CHECK(points.script.ops.size() == 3);
  CHECK(points.achieved == ranks({1, 0, 3}));

  try {
    plan_free_realization({3, {1, 2, 0, 1}, {}});
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(std::string(e.what()).find("sum_{j=1}^{n-1} g_j <= g_n") != std::string::npos);
  }
  CHECK_THROWS_AS(plan_free_realization({3, {1, 0, 0}, {}}), ValidationError);
  CHECK_THROWS_AS(plan_free_realization({3, {2, 0, 0, 1}, {}}), InfeasibleError);
  CHECK_THROWS_AS(plan_free_realization({3, {1, 0, 0, 1}, {{1, Zm(0, {2})}}}), InfeasibleError);

  const auto over_f2 = plan_free_realization({3, {1, 1, 0, 2}, {}}, algebra::Ring::prime_field(2));
  CHECK(over_f2.target_met);
}

TEST_CASE("plan_euler_target") {
  const auto r = plan_euler_target(4, -5);
  REQUIRE(r.script.ops.size() == 1);
  CHECK(r.script.ops[0].label() == engine::BubblingOp::normal(catalog::surface(4)).label());
  CHECK(algebra::euler_characteristic(r.achieved) == -5);
  CHECK(plan_euler_target(5, 1).script.ops.empty());
  const auto odd = plan_euler_target(5, 7);
  CHECK(odd.script.ops.size() == 1);
  CHECK(algebra::euler_characteristic(odd.achieved) == 7);
  for (std::int64_t n = 3; n <= 6; ++n) {
    for (std::int64_t t = -20; t <= 20; ++t) {
      const auto p = plan_euler_target(n, t);
      CHECK(algebra::euler_characteristic(engine::run_script(p.script).homology) == t);
      CHECK(verify_necessary_conditions(profile(n, p.achieved)).passed);
    }
  }
  CHECK_THROWS_AS(plan_euler_target(2, 0), InfeasibleError);
}

TEST_CASE("plan_torsion_free_wedge") {
  const auto r = plan_torsion_free_wedge({3, {1, 2, 1, 2}, {}});
  CHECK(r.achieved == ranks({1, 2, 1, 2}));
  REQUIRE(r.script.ops.size() == 2);
  const auto& first = std::get<engine::WedgeOp>(r.script.ops[0].variant).bouquet;
  CHECK(first.summands.size() == 3);

  CHECK(plan_torsion_free_wedge({2, {1, 0, 1}, {}}).script.ops.size() == 1);

  const auto big = plan_torsion_free_wedge({4, {1, 3, 0, 0, 1}, {}});
  CHECK(big.achieved == ranks({1, 3, 0, 0, 1}));
  CHECK(big.script.ops.size() == 1);
  CHECK_THROWS_AS(plan_free_realization({4, {1, 3, 0, 0, 1}, {}}), InfeasibleError);
}

TEST_CASE("wedge and normal plans differ only at the top") {
  const auto wedge = plan_torsion_free_wedge({4, {1, 1, 1, 0, 2}, {}});
  const auto normal = plan_free_realization({4, {1, 1, 1, 0, 2}, {}});
  for (std::int64_t i = 1; i < 4; ++i) CHECK(wedge.achieved.at(i) == normal.achieved.at(i));
  CHECK(wedge.achieved.at(4).rank() == static_cast<std::int64_t>(wedge.script.ops.size()));
  CHECK(normal.achieved.at(4).rank() == static_cast<std::int64_t>(normal.script.ops.size()));
}

TEST_CASE("plan_finite_torsion_products") {
  const std::vector<std::int64_t> gs{1};
  const std::vector<algebra::FGModule> groups{Zm(0, {3})};
  const auto r = plan_finite_torsion_products(7, gs, groups);
  CHECK(r.target_met);
  CHECK(r.script.ops.size() == 2);
  CHECK(r.achieved == H({Zm(1), Zm(2), Zm(0, {3}), Zm(0), Zm(2), Zm(0, {3}), Zm(0), Zm(2)}));

  const std::vector<std::int64_t> none{-1};
  const std::vector<algebra::FGModule> trivial{Zm(0)};
  const auto empty = plan_finite_torsion_products(7, none, trivial);
  CHECK(empty.script.ops.empty());
  CHECK(empty.achieved == engine::initial_profile(7).homology);

  const std::vector<std::int64_t> gs8{0, -1};
  const std::vector<algebra::FGModule> groups8{Zm(0, {2}), Zm(0)};
  const auto r8 = plan_finite_torsion_products(8, gs8, groups8);
  CHECK(r8.script.ops.size() == 1);
  CHECK(r8.achieved.at(2) == Zm(0, {2}));
  CHECK(r8.target_met);

  CHECK_THROWS_AS(plan_finite_torsion_products(6, gs, groups), ValidationError);
  const std::vector<std::int64_t> bad{-2};
  CHECK_THROWS_AS(plan_finite_torsion_products(7, bad, groups), ValidationError);
  const std::vector<algebra::FGModule> infinite{Zm(1)};
  CHECK_THROWS_AS(plan_finite_torsion_products(7, gs, infinite), ValidationError);
}

TEST_CASE("plan_bundle_bubbling") {
  const auto r = plan_bundle_bubbling(6, 4, 0, catalog::surface(1));
  CHECK(r.target_met);
  CHECK(r.achieved == ranks({1, 1, 2, 1, 1, 2, 1}));
  CHECK(mentions(r.notes, "flag:"));

  const auto circle = plan_bundle_bubbling(5, 3, 1, catalog::sphere(2));
  CHECK(circle.target_met);
  CHECK(circle.script.ops.size() == 1);
  CHECK_THROWS_AS(plan_bundle_bubbling(5, 3, 2, catalog::sphere(2)), ValidationError);
  CHECK_THROWS_AS(plan_bundle_bubbling(6, 3, 0, catalog::sphere(2)), ValidationError);
}

TEST_CASE("verify_necessary_conditions") {
  CHECK(verify_necessary_conditions(engine::run_script(plan_free_realization({3, {1, 1, 0, 2}, {}}).script)).passed);

  const auto torsion_first = verify_necessary_conditions(profile(3, H({Zm(1), Zm(0, {2}), Zm(0), Zm(1)})));
  CHECK_FALSE(torsion_first.passed);
  CHECK(mentions(torsion_first.failures, "first nonzero degree"));

  const auto rank_bound = verify_necessary_conditions(profile(3, ranks({1, 2, 0, 1})));
  CHECK_FALSE(rank_bound.passed);
  CHECK(mentions(rank_bound.failures, "rank H_1 = 2 <= rank H_n = 1"));

  CHECK_FALSE(verify_necessary_conditions(profile(3, H({Zm(1), Zm(0), Zm(0), Zm(1, {2})}))).passed);
  CHECK_FALSE(verify_necessary_conditions(profile(2, ranks({2, 0, 1}))).passed);
}

TEST_CASE("check_torsion_gap") {
  const auto torsion_example = profile(7, H({Zm(1), Zm(2), Zm(0, {3}), Zm(0), Zm(2), Zm(0, {3}), Zm(0), Zm(2)}));
  const auto r = check_torsion_gap(torsion_example, 1, Direction::Below);
  CHECK(r.holds);
  CHECK(r.witnesses.size() == 2);
  CHECK(r.longest_finite_run == 1);

  CHECK(check_torsion_gap(profile(3, ranks({1, 2, 0, 4})), 1, Direction::Below).holds);
  CHECK(check_torsion_gap(profile(3, ranks({1, 2, 0, 4})), 3, Direction::Above).holds);

  const auto bad = check_torsion_gap(profile(4, H({Zm(1), Zm(0), Zm(0, {2}), Zm(0), Zm(1)})), 1, Direction::Below);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witnesses.size() == 1);
  CHECK(bad.witnesses[0].degree == 2);
  CHECK_FALSE(bad.witnesses[0].offset.has_value());
  CHECK(check_torsion_gap(profile(4, H({Zm(1), Zm(0), Zm(0, {2}), Zm(0), Zm(1)})), 2, Direction::Below).holds);

  const auto run = check_torsion_gap(profile(5, H({Zm(1), Zm(1), Zm(0, {2}), Zm(0, {2}), Zm(0), Zm(1)})), 1,
                                     Direction::Below);
  CHECK(run.longest_finite_run == 2);
  CHECK_FALSE(run.run_within_bound);
  CHECK_THROWS_AS(check_torsion_gap(torsion_example, 0, Direction::Below), ValidationError);
}

TEST_CASE("single_op_feasibility") {
  const auto sphere_target = engine::run_script({3, {engine::BubblingOp::normal(catalog::sphere(2))}}).homology;
  const auto r = single_op_feasibility(3, sphere_target);
  CHECK(r.feasible);
  CHECK(r.feasible_dims == std::vector<std::int64_t>{2});
  const auto it = std::find_if(r.candidates.begin(), r.candidates.end(), [](const auto& c) { return c.dim == 2; });
  REQUIRE(it != r.candidates.end());
  REQUIRE(it->required);
  CHECK(*it->required == ranks({1, 0, 1}));

  const auto torsion = single_op_feasibility(3, H({Zm(1), Zm(0), Zm(0, {2}), Zm(1)}));
  CHECK_FALSE(torsion.feasible);

  const auto pt = single_op_feasibility(3, ranks({1, 0, 0, 1}));
  CHECK(pt.feasible);
  CHECK(std::find(pt.feasible_dims.begin(), pt.feasible_dims.end(), 0) != pt.feasible_dims.end());

  CHECK_THROWS_AS(single_op_feasibility(3, ranks({1, 0, 0, 2})), InfeasibleError);
}
