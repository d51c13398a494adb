#include <doctest.h>

#include "reeb_forge/bubbling_engine.hpp"
#include "reeb_forge/errors.hpp"
#include "test_support.hpp"

using namespace reeb;
using namespace reeb::engine;
using catalog::lens;
using catalog::make_bouquet;
using catalog::point;
using catalog::sphere;
using catalog::surface;
using reeb::testing::H;
using reeb::testing::ranks;
using reeb::testing::Zm;

TEST_CASE("initial_profile") {
  CHECK(initial_profile(4).homology == ranks({1, 0, 0, 0, 0}));
  CHECK(initial_profile(1).homology == ranks({1, 0}));
  CHECK_THROWS_AS(initial_profile(0), ValidationError);
}

TEST_CASE("normal bubbling") {
  CHECK(apply_normal_bubbling(initial_profile(2), point()).homology == ranks({1, 0, 1}));
  ReebProfile p = initial_profile(5);
  for (int i = 0; i < 3; ++i) p = apply_normal_bubbling(p, point());
  CHECK(p.homology == ranks({1, 0, 0, 0, 0, 3}));
  CHECK(apply_normal_bubbling(initial_profile(5), lens(2, 1)).homology ==
        H({Zm(1), Zm(0), Zm(1), Zm(0, {2}), Zm(0), Zm(1)}));
  CHECK(p.history.ops.size() == 3);
}

TEST_CASE("wedge bubbling") {
  CHECK(apply_s_bubbling(initial_profile(4), make_bouquet({sphere(1), sphere(2)})).homology ==
        ranks({1, 0, 1, 1, 1}));
  const auto wedge = apply_s_bubbling(initial_profile(4), make_bouquet({sphere(2), sphere(2)}));
  CHECK(wedge.homology == ranks({1, 0, 2, 0, 1}));
  auto normal = apply_normal_bubbling(initial_profile(4), sphere(2));
  normal = apply_normal_bubbling(normal, sphere(2));
  CHECK(normal.homology == ranks({1, 0, 2, 0, 2}));
}

TEST_CASE("run_script") {
  CHECK(run_script({3, {}}).homology == initial_profile(3).homology);
  const BubblingScript s{3, {BubblingOp::normal(sphere(2)), BubblingOp::normal(point())}};
  CHECK(run_script(s).homology == ranks({1, 1, 0, 2}));

  const auto l3s3 = catalog::product(lens(3, 1), sphere(3));
  const auto h6 = catalog::with_trusted_embedding(catalog::homology_sphere(6), 7);
  const BubblingScript torsion_example{7, {BubblingOp::normal(catalog::with_trusted_embedding(l3s3, 7)), BubblingOp::normal(h6)}};
  CHECK(run_script(torsion_example).homology ==
        H({Zm(1), Zm(2), Zm(0, {3}), Zm(0), Zm(2), Zm(0, {3}), Zm(0), Zm(2)}));
}

TEST_CASE("run_script reports the failing op") {
  const BubblingScript s{3, {BubblingOp::normal(point()), BubblingOp::normal(sphere(3))}};
  try {
    run_script(s);
    FAIL("expected ScriptError");
  } catch (const ScriptError& e) {
    CHECK(e.op_index() == 1);
  }
  // Not embeddable: lens spaces need R^5.
  CHECK_THROWS_AS(run_script({4, {BubblingOp::normal(lens(3, 1))}}), ScriptError);
  CHECK_NOTHROW(run_script({5, {BubblingOp::normal(lens(3, 1))}}));
}

TEST_CASE("euler_delta examples") {
  CHECK(euler_delta(1, BubblingOp::normal(point())) == -1);
  CHECK(euler_delta(4, BubblingOp::normal(point())) == 1);
  CHECK(euler_delta(3, BubblingOp::normal(surface(2))) == 2);
}

TEST_CASE("euler_delta equals the change in alternating rank") {
  auto g = reeb::testing::rng(3);
  const std::vector<catalog::ManifoldDesc> pool{point(), sphere(1), sphere(2), sphere(3), surface(0), surface(2),
                                                lens(2, 1), lens(5, 2), catalog::product(sphere(1), sphere(2))};
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t n = reeb::testing::uniform(g, 1, 8);
    ReebProfile p = initial_profile(n);
    for (int i = 0; i < 4; ++i) {
      std::vector<catalog::ManifoldDesc> fits;
      for (const auto& m : pool) {
        if (m.dim < n && m.embed_dim <= n) fits.push_back(m);
      }
      BubblingOp op = BubblingOp::normal(fits[reeb::testing::uniform(g, 0, fits.size() - 1)]);
      if (reeb::testing::uniform(g, 0, 1) == 1) {
        std::vector<catalog::ManifoldDesc> parts;
        for (int j = 0, m = reeb::testing::uniform(g, 1, 3); j < m; ++j) {
          parts.push_back(fits[reeb::testing::uniform(g, 0, fits.size() - 1)]);
        }
        op = BubblingOp::wedge(make_bouquet(parts));
      }
      const auto before = algebra::euler_characteristic(p.homology);
      p = apply_op(p, op);
      CHECK(algebra::euler_characteristic(p.homology) - before == euler_delta(n, op));
    }
  }
}

TEST_CASE("trivial flag is carried but inert") {
  BubblingOp op = BubblingOp::normal(sphere(1));
  op.trivial_flag = true;
  const auto flagged = apply_op(initial_profile(3), op);
  CHECK(flagged.history.ops.back().trivial_flag == std::optional<bool>(true));
  CHECK(flagged.homology == apply_op(initial_profile(3), BubblingOp::normal(sphere(1))).homology);
}

TEST_CASE("infer_source_homology") {
  ReebProfile p = initial_profile(4);
  p.homology = ranks({1, 0, 1, 0, 1});
  const auto src = infer_source_homology(p, 10);
  CHECK(H(src.degrees) == ranks({1, 0, 1, 0, 1, 0}));
  CHECK(src.degrees.size() == 6);
  CHECK_FALSE(src.assumptions.empty());

  const auto one = infer_source_homology(p, 5);
  CHECK(one.degrees.size() == 1);
  CHECK(one.degrees[0] == Zm(1));

  const auto half = infer_source_homology(p, 8);
  CHECK(half.degrees.size() == 4);
  CHECK_THROWS_AS(infer_source_homology(p, 4), ValidationError);
}
