#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "reeb_forge/realization_planner.hpp"

namespace reeb::cli {

enum class Verb {
  PlanFree,
  PlanEuler,
  PlanWedge,
  PlanTorsion,
  PlanBundle,
  Apply,
  Verify,
  TorsionGap,
  Catalog,
  OracleCheck,
  InferSource,
};

struct Command {
  Verb verb = Verb::Catalog;
  std::int64_t ambient = 0;
  std::vector<std::int64_t> ranks;
  std::int64_t target = 0;
  std::vector<std::int64_t> gs;
  std::string groups;
  std::int64_t k = 0;
  std::int64_t l = 0;
  std::string base;
  std::string ring = "Z";
  std::string space;
  std::int64_t m = 0;
  bool thm5 = false;
  std::int64_t i0 = 1;
  planner::Direction direction = planner::Direction::Below;
  bool validate = false;
  std::string input;
  std::string output;
};

/// Bad command line. exit_code is 2, or 0 when help was requested (the
/// message is then the help text).
class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& message, int exit_code = 2) : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

/// argv without the program name.
Command parse_args(std::span<const std::string> args);

/// Runs the command. Returns 0 on success, 1 on theorem infeasibility or a
/// failed verification, 2 on input errors.
int execute(const Command& c, std::ostream& out, std::ostream& err);

/// parse_args + execute with usage errors mapped to exit codes.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace reeb::cli
