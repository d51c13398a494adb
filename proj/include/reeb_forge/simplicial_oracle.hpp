#pragma once

// Brute-force homology from explicit cell chain complexes. Kept independent
// of the closed-form formulas in the catalog so the two can check each other.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reeb_forge/manifold_catalog.hpp"
#include "reeb_forge/pid_algebra.hpp"

namespace reeb::oracle {

struct SpaceSpec {
  enum class Kind { Point, Sphere, Surface, Lens, Wedge, Product };

  Kind kind = Kind::Point;
  std::int64_t a = 0;  // Sphere k, Surface g, Lens p
  std::int64_t b = 0;  // Lens q
  std::vector<SpaceSpec> parts;

  static SpaceSpec point() { return {}; }
  static SpaceSpec sphere(std::int64_t k) { return {Kind::Sphere, k, 0, {}}; }
  static SpaceSpec surface(std::int64_t g) { return {Kind::Surface, g, 0, {}}; }
  static SpaceSpec lens(std::int64_t p, std::int64_t q) { return {Kind::Lens, p, q, {}}; }
  static SpaceSpec wedge(std::vector<SpaceSpec> parts) { return {Kind::Wedge, 0, 0, std::move(parts)}; }
  static SpaceSpec product(std::vector<SpaceSpec> parts) { return {Kind::Product, 0, 0, std::move(parts)}; }

  std::string label() const;
};

struct ChainModel {
  std::string label;
  /// boundaries[i] is d_{i+1}: C_{i+1} -> C_i.
  std::vector<algebra::IntMatrix> boundaries;
  std::vector<std::size_t> cell_counts;
};

ChainModel build_model(const SpaceSpec& spec);
algebra::GradedModule oracle_homology(const ChainModel& m);

struct ValidationReport {
  enum class Outcome { Pass, Fail, NotOracleExpressible };

  std::string label;
  Outcome outcome = Outcome::NotOracleExpressible;
  algebra::GradedModule formula;
  std::optional<algebra::GradedModule> oracle;
  std::vector<bool> degree_matches;
};

/// The oracle-side space for a catalog entry, if it has a cell model
/// (points, spheres, surfaces, lens spaces and products of those).
std::optional<SpaceSpec> to_space_spec(const catalog::ManifoldSpec& spec);

ValidationReport validate_catalog_entry(const catalog::ManifoldDesc& m);
ValidationReport validate_catalog_entry(const catalog::BouquetDesc& b);
ValidationReport validate_catalog_entry(const catalog::GeneratingSpace& g);

/// Every oracle-expressible catalog entry up to the standard size limits:
/// spheres S^1..S^6, surfaces of genus <= 4, lens spaces L(p,q) with p <= 7,
/// products of two atoms of total dimension <= 6, wedges of <= 4 spheres.
std::vector<catalog::GeneratingSpace> catalog_grid();

}  // namespace reeb::oracle
