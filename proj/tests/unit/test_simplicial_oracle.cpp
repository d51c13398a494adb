#include <doctest.h>

#include "reeb_forge/errors.hpp"
#include "reeb_forge/simplicial_oracle.hpp"
#include "test_support.hpp"

using namespace reeb;
using namespace reeb::oracle;
using reeb::testing::H;
using reeb::testing::ranks;
using reeb::testing::Zm;

TEST_CASE("cell models") {
  const auto s3 = build_model(SpaceSpec::sphere(3));
  CHECK(s3.cell_counts == std::vector<std::size_t>{1, 0, 0, 1});
  for (const auto& b : s3.boundaries) CHECK(b.is_zero());

  const auto lens = build_model(SpaceSpec::lens(3, 1));
  REQUIRE(lens.boundaries.size() == 3);
  CHECK(lens.boundaries[1] == algebra::IntMatrix{{3}});
  CHECK(oracle_homology(lens) == H({Zm(1), Zm(0, {3}), Zm(0), Zm(1)}));

  const auto torus = build_model(SpaceSpec::product({SpaceSpec::sphere(1), SpaceSpec::sphere(1)}));
  CHECK(torus.cell_counts == std::vector<std::size_t>{1, 2, 1});
  CHECK(oracle_homology(torus) == ranks({1, 2, 1}));
}

TEST_CASE("oracle homology") {
  CHECK(oracle_homology(build_model(SpaceSpec::point())) == ranks({1}));
  CHECK(oracle_homology(build_model(SpaceSpec::sphere(2))) == ranks({1, 0, 1}));
  CHECK(oracle_homology(build_model(SpaceSpec::sphere(0))) == ranks({2}));
  CHECK(oracle_homology(build_model(SpaceSpec::wedge({SpaceSpec::sphere(1), SpaceSpec::sphere(2)}))) ==
        ranks({1, 1, 1}));
  CHECK(oracle_homology(build_model(SpaceSpec::product({SpaceSpec::lens(2, 1), SpaceSpec::sphere(1)}))) ==
        H({Zm(1), Zm(1, {2}), Zm(0, {2}), Zm(1), Zm(1)}));
  CHECK(oracle_homology(build_model(SpaceSpec::surface(2))) == ranks({1, 4, 1}));
  // Wedge of a lens space keeps its torsion.
  CHECK(oracle_homology(build_model(SpaceSpec::wedge({SpaceSpec::lens(4, 1), SpaceSpec::surface(1)}))) ==
        H({Zm(1), Zm(2, {4}), Zm(1), Zm(1)}));
  CHECK_THROWS_AS(build_model(SpaceSpec::lens(4, 2)), ValidationError);
}

TEST_CASE("product boundaries square to zero") {
  // homology_of_complex rejects d d != 0, so this exercises the sign rule.
  const auto m = build_model(
      SpaceSpec::product({SpaceSpec::lens(3, 1), SpaceSpec::lens(2, 1), SpaceSpec::sphere(1)}));
  CHECK_NOTHROW(oracle_homology(m));
}

TEST_CASE("validate_catalog_entry") {
  using Outcome = ValidationReport::Outcome;
  CHECK(validate_catalog_entry(catalog::sphere(4)).outcome == Outcome::Pass);

  const auto r = validate_catalog_entry(catalog::product(catalog::lens(3, 1), catalog::sphere(3)));
  CHECK(r.outcome == Outcome::Pass);
  const auto expected = H({Zm(1), Zm(0, {3}), Zm(0), Zm(2), Zm(0, {3}), Zm(0), Zm(1)});
  CHECK(r.formula == expected);
  REQUIRE(r.oracle);
  CHECK(*r.oracle == expected);

  const auto cs = catalog::connected_sum({catalog::lens(2, 1), catalog::lens(3, 1)});
  CHECK(validate_catalog_entry(cs).outcome == Outcome::NotOracleExpressible);
  CHECK(validate_catalog_entry(catalog::homology_sphere(5)).outcome == Outcome::NotOracleExpressible);

  const auto b = catalog::make_bouquet({catalog::sphere(2), catalog::lens(5, 2)});
  CHECK(validate_catalog_entry(catalog::GeneratingSpace{b}).outcome == Outcome::Pass);
}

TEST_CASE("a corrupted formula is caught") {
  auto m = catalog::lens(5, 1);
  m.homology.set(1, Zm(0, {7}));
  const auto r = validate_catalog_entry(m);
  CHECK(r.outcome == ValidationReport::Outcome::Fail);
  CHECK(r.degree_matches == std::vector<bool>{true, false, true, true});
}

TEST_CASE("catalog grid passes") {
  const auto grid = catalog_grid();
  CHECK(grid.size() > 100);
  for (const auto& entry : grid) {
    const auto r = validate_catalog_entry(entry);
    INFO(r.label);
    CHECK(r.outcome == ValidationReport::Outcome::Pass);
  }
}
