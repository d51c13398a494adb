#pragma once

// Homology of Reeb spaces under normal and wedge bubbling operations.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reeb_forge/manifold_catalog.hpp"
#include "reeb_forge/pid_algebra.hpp"

namespace reeb::engine {

struct NormalOp {
  catalog::ManifoldDesc manifold;
};

struct WedgeOp {
  catalog::BouquetDesc bouquet;
};

struct BubblingOp {
  std::variant<NormalOp, WedgeOp> variant;
  /// Inert metadata: whether the operation was declared (strongly) trivial.
  std::optional<bool> trivial_flag;

  static BubblingOp normal(catalog::ManifoldDesc m) { return {NormalOp{std::move(m)}, std::nullopt}; }
  static BubblingOp wedge(catalog::BouquetDesc b) { return {WedgeOp{std::move(b)}, std::nullopt}; }

  bool is_normal() const { return std::holds_alternative<NormalOp>(variant); }
  std::string label() const;
};

struct BubblingScript {
  std::int64_t ambient = 1;
  std::vector<BubblingOp> ops;
};

struct ReebProfile {
  std::int64_t ambient = 1;
  algebra::GradedModule homology;
  BubblingScript history;
};

/// Thrown by run_script; carries the index of the op that failed.
class ScriptError : public std::invalid_argument {
 public:
  ScriptError(std::size_t op_index, const std::string& what)
      : std::invalid_argument("op " + std::to_string(op_index) + ": " + what), op_index_(op_index) {}
  std::size_t op_index() const { return op_index_; }

 private:
  std::size_t op_index_;
};

/// Throws ValidationError naming the first violated constraint.
void validate_op(std::int64_t ambient, const BubblingOp& op);

/// Point-like homology (Z in degree 0) in ambient dimension n >= 1.
ReebProfile initial_profile(std::int64_t n);
ReebProfile apply_normal_bubbling(const ReebProfile& p, const catalog::ManifoldDesc& s);
ReebProfile apply_s_bubbling(const ReebProfile& p, const catalog::BouquetDesc& b);
ReebProfile apply_op(const ReebProfile& p, const BubblingOp& op);
ReebProfile run_script(const BubblingScript& script);

/// Change of Euler characteristic caused by `op` in ambient dimension n.
std::int64_t euler_delta(std::int64_t n, const BubblingOp& op);

struct SourceHomology {
  /// H_j(M; Z) for 0 <= j <= m-n-1.
  std::vector<algebra::FGModule> degrees;
  /// Hypotheses the identification relies on; callers must be able to vouch
  /// for them.
  std::vector<std::string> assumptions;
};

SourceHomology infer_source_homology(const ReebProfile& p, std::int64_t m);

}  // namespace reeb::engine
