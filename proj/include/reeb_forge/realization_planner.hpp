#pragma once

// Script synthesis for target Reeb-space homology and Euler characteristic,
// and checks of the necessary conditions every bubbling result satisfies.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reeb_forge/bubbling_engine.hpp"
#include "reeb_forge/manifold_catalog.hpp"
#include "reeb_forge/pid_algebra.hpp"

namespace reeb::planner {

struct TargetSpec {
  std::int64_t ambient = 1;
  /// g_0 .. g_n, one entry per degree.
  std::vector<std::int64_t> ranks;
  std::map<std::int64_t, algebra::FGModule> torsion_targets;
};

struct PlanReport {
  engine::BubblingScript script;
  algebra::GradedModule achieved;
  bool target_met = false;
  std::vector<std::string> notes;
};

/// Spheres S^{n-j} (g_j of each) plus g_n - sum g_j points.
/// Throws InfeasibleError when sum_{0<j<n} g_j > g_n, g_n = 0 or g_0 != 1.
PlanReport plan_free_realization(const TargetSpec& t, algebra::Ring ring = algebra::Ring::integers());

/// Surfaces of genus >= 2 and points reaching Euler characteristic `target`.
/// Throws InfeasibleError for n < 3.
PlanReport plan_euler_target(std::int64_t n, std::int64_t target);

/// g_n wedge operations carrying g_{n-k} spheres S^k in total.
PlanReport plan_torsion_free_wedge(const TargetSpec& t);

/// gs[j], groups[j] for 0 <= j <= n-7: products (3-manifold with H_1 = G_j) x
/// S^{n-j-4} plus g_j homology spheres of dimension n-j-1.
PlanReport plan_finite_torsion_products(std::int64_t n, std::span<const std::int64_t> gs,
                                        std::span<const algebra::FGModule> groups);

/// One normal operation on the total space of an S^{k-l-1}-bundle over s.
PlanReport plan_bundle_bubbling(std::int64_t n, std::int64_t k, std::int64_t l, const catalog::ManifoldDesc& s);

struct ConditionReport {
  bool passed = true;
  std::vector<std::string> checked;
  std::vector<std::string> failures;
};

ConditionReport verify_necessary_conditions(const engine::ReebProfile& p);

enum class Direction { Below, Above };

struct TorsionWitness {
  std::int64_t degree = 0;
  /// Offset a in [1, i0] to an infinite group, if any.
  std::optional<std::int64_t> offset;
};

struct TorsionGapReport {
  bool holds = true;
  std::vector<TorsionWitness> witnesses;
  /// Longest run of consecutive degrees with finite nontrivial homology.
  std::int64_t longest_finite_run = 0;
  bool run_within_bound = true;
};

TorsionGapReport check_torsion_gap(const engine::ReebProfile& p, std::int64_t i0, Direction direction);

struct FeasibilityCandidate {
  std::int64_t dim = 0;
  bool feasible = false;
  std::optional<algebra::GradedModule> required;
  std::string reason;
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<std::int64_t> feasible_dims;
  std::vector<FeasibilityCandidate> candidates;
};

/// Which generating dimensions could produce `target` from the point-like
/// base in one normal operation, judged by necessary duality conditions only.
FeasibilityReport single_op_feasibility(std::int64_t n, const algebra::GradedModule& target);

}  // namespace reeb::planner
