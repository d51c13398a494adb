#include "reeb_forge/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "reeb_forge/bubbling_engine.hpp"
#include "reeb_forge/errors.hpp"
#include "reeb_forge/serialization.hpp"
#include "reeb_forge/simplicial_oracle.hpp"

namespace reeb::cli {

using algebra::FGModule;
using algebra::GradedModule;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kInputError = 2;

std::string torsion_text(const FGModule& m) {
  if (m.torsion().empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < m.torsion().size(); ++i) {
    if (i != 0) out += " + ";
    out += "Z/" + std::to_string(m.torsion()[i]);
  }
  return out;
}

void print_table(std::ostream& out, const GradedModule& h) {
  out << std::setw(6) << "degree" << std::setw(6) << "rank" << "  torsion\n";
  for (std::size_t i = 0; i <= h.top(); ++i) {
    const auto& m = h.degrees()[i];
    out << std::setw(6) << i << std::setw(6) << m.rank() << "  " << torsion_text(m) << "\n";
  }
  out << "chi = " << algebra::euler_characteristic(h) << "\n";
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("malformed JSON in " + path + ": " + e.what());
  }
}

void write_json(const Command& c, const json& value, std::ostream& out) {
  if (c.output.empty()) return;
  std::ofstream file(c.output);
  if (!file) throw ValidationError("cannot write " + c.output);
  file << value.dump(2) << "\n";
  out << "wrote " << c.output << "\n";
}

algebra::Ring parse_ring(const std::string& text) {
  if (text == "Z") return algebra::Ring::integers();
  if (text == "Q") return algebra::Ring::rationals();
  if (text.size() > 1 && text.front() == 'F') {
    try {
      return algebra::Ring::prime_field(std::stoll(text.substr(1)));
    } catch (const std::logic_error&) {
      // fall through to the error below
    }
  }
  throw ValidationError("unknown ring '" + text + "' (expected Z, Q or F<p>)");
}

std::vector<FGModule> parse_groups(const std::string& text) {
  std::vector<FGModule> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = text.find(';', pos);
    out.push_back(io::parse_module(text.substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

int report_plan(const Command& c, const planner::PlanReport& report, std::ostream& out) {
  out << "script: " << report.script.ops.size() << " op(s) in ambient dimension " << report.script.ambient << "\n";
  for (std::size_t i = 0; i < report.script.ops.size(); ++i) {
    out << "  [" << i << "] " << report.script.ops[i].label() << "\n";
  }
  print_table(out, report.achieved);
  for (const auto& note : report.notes) out << "note: " << note << "\n";
  out << "target met: " << (report.target_met ? "yes" : "no") << "\n";
  write_json(c, io::plan_report_to_json(report), out);
  return report.target_met ? kOk : kFailed;
}

planner::TargetSpec target_from(const Command& c) {
  return planner::TargetSpec{c.ambient, c.ranks, {}};
}

int run_verify(const Command& c, std::ostream& out) {
  const engine::ReebProfile profile = io::profile_from_json(read_json_file(c.input));
  print_table(out, profile.homology);
  if (!c.thm5) {
    const planner::ConditionReport r = planner::verify_necessary_conditions(profile);
    for (const auto& item : r.checked) {
      const bool failed = std::find(r.failures.begin(), r.failures.end(), item) != r.failures.end();
      out << (failed ? "FAIL " : "ok   ") << item << "\n";
    }
    write_json(c, json{{"passed", r.passed}, {"checked", r.checked}, {"failures", r.failures}}, out);
    return r.passed ? kOk : kFailed;
  }
  const planner::TorsionGapReport r = planner::check_torsion_gap(profile, c.i0, c.direction);
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    out << "finite H_" << w.degree << ": ";
    if (w.offset) {
      const std::int64_t other = c.direction == planner::Direction::Below ? w.degree - *w.offset : w.degree + *w.offset;
      out << "infinite H_" << other << " at offset " << *w.offset << "\n";
    } else {
      out << "no infinite group within " << c.i0 << " degree(s)\n";
    }
    witnesses.push_back(json{{"degree", w.degree}, {"offset", w.offset ? json(*w.offset) : json(nullptr)}});
  }
  out << "longest finite run d = " << r.longest_finite_run << (r.run_within_bound ? " <= " : " > ") << "i0 = " << c.i0
      << "\n";
  out << "torsion gap holds: " << (r.holds ? "yes" : "no") << "\n";
  write_json(c,
             json{{"holds", r.holds},
                  {"witnesses", witnesses},
                  {"longest_finite_run", r.longest_finite_run},
                  {"run_within_bound", r.run_within_bound}},
             out);
  return r.holds ? kOk : kFailed;
}

std::string outcome_name(oracle::ValidationReport::Outcome o) {
  switch (o) {
    case oracle::ValidationReport::Outcome::Pass: return "pass";
    case oracle::ValidationReport::Outcome::Fail: return "fail";
    case oracle::ValidationReport::Outcome::NotOracleExpressible: return "not-oracle-expressible";
  }
  return "?";
}

int run_catalog(const Command& c, std::ostream& out) {
  json entries = json::array();
  bool all_pass = true;
  for (const auto& entry : oracle::catalog_grid()) {
    const GradedModule& h = std::visit([](const auto& v) -> const GradedModule& { return v.homology; }, entry);
    const std::string label =
        std::visit([](const auto& v) -> std::string {
          if constexpr (std::is_same_v<std::decay_t<decltype(v)>, catalog::ManifoldDesc>) {
            return v.label;
          } else {
            return v.label();
          }
        }, entry);
    json item{{"label", label}, {"homology", io::graded_to_json(h)}, {"euler", algebra::euler_characteristic(h)}};
    if (const auto* m = std::get_if<catalog::ManifoldDesc>(&entry)) item["embed_dim"] = m->embed_dim;
    out << std::left << std::setw(36) << label << std::right << " " << io::format_graded(h);
    if (c.validate) {
      const auto report = oracle::validate_catalog_entry(entry);
      all_pass = all_pass && report.outcome == oracle::ValidationReport::Outcome::Pass;
      item["oracle"] = outcome_name(report.outcome);
      out << "  " << outcome_name(report.outcome);
    }
    out << "\n";
    entries.push_back(std::move(item));
  }
  write_json(c, entries, out);
  return all_pass ? kOk : kFailed;
}

int run_oracle_check(const Command& c, std::ostream& out) {
  const auto report = oracle::validate_catalog_entry(io::parse_space(c.space));
  out << "entry:   " << report.label << "\n";
  out << "formula: " << io::format_graded(report.formula) << "\n";
  out << "oracle:  " << (report.oracle ? io::format_graded(*report.oracle) : std::string("n/a")) << "\n";
  out << "outcome: " << outcome_name(report.outcome) << "\n";
  json value{{"label", report.label},
             {"formula", io::graded_to_json(report.formula)},
             {"oracle", report.oracle ? io::graded_to_json(*report.oracle) : json(nullptr)},
             {"outcome", outcome_name(report.outcome)}};
  write_json(c, value, out);
  return report.outcome == oracle::ValidationReport::Outcome::Pass ? kOk : kFailed;
}

int run_infer_source(const Command& c, std::ostream& out) {
  const engine::ReebProfile profile = io::profile_from_json(read_json_file(c.input));
  const engine::SourceHomology src = engine::infer_source_homology(profile, c.m);
  json degrees = json::array();
  for (std::size_t j = 0; j < src.degrees.size(); ++j) {
    out << "H_" << j << "(M) = " << io::format_module(src.degrees[j]) << "\n";
    degrees.push_back(io::module_to_json(src.degrees[j]));
  }
  for (const auto& a : src.assumptions) out << "assumes: " << a << "\n";
  write_json(c, json{{"m", c.m}, {"degrees", degrees}, {"assumptions", src.assumptions}}, out);
  return kOk;
}

int dispatch(const Command& c, std::ostream& out) {
  switch (c.verb) {
    case Verb::PlanFree:
      return report_plan(c, planner::plan_free_realization(target_from(c), parse_ring(c.ring)), out);
    case Verb::PlanEuler:
      return report_plan(c, planner::plan_euler_target(c.ambient, c.target), out);
    case Verb::PlanWedge:
      return report_plan(c, planner::plan_torsion_free_wedge(target_from(c)), out);
    case Verb::PlanTorsion: {
      const auto groups = parse_groups(c.groups);
      return report_plan(c, planner::plan_finite_torsion_products(c.ambient, c.gs, groups), out);
    }
    case Verb::PlanBundle: {
      std::string text = c.base;
      if (!text.empty() && text.front() != '{' && std::filesystem::exists(text)) text = read_json_file(text).dump();
      const auto space = io::parse_space(text);
      const auto* base = std::get_if<catalog::ManifoldDesc>(&space);
      if (!base) throw ValidationError("bundle base must be a manifold, not a bouquet");
      return report_plan(c, planner::plan_bundle_bubbling(c.ambient, c.k, c.l, *base), out);
    }
    case Verb::Apply: {
      const engine::ReebProfile p = engine::run_script(io::script_from_json(read_json_file(c.input)));
      print_table(out, p.homology);
      write_json(c, io::profile_to_json(p), out);
      return kOk;
    }
    case Verb::Verify:
    case Verb::TorsionGap:
      return run_verify(c, out);
    case Verb::Catalog:
      return run_catalog(c, out);
    case Verb::OracleCheck:
      return run_oracle_check(c, out);
    case Verb::InferSource:
      return run_infer_source(c, out);
  }
  return kInputError;
}

}  // namespace

Command parse_args(std::span<const std::string> args) {
  CLI::App app{"Reeb-space homology under bubbling operations", "reeb-forge"};
  app.require_subcommand(1);
  Command c;
  std::string direction = "below";
  bool structure = false;

  auto add_output = [&c](CLI::App* sub) { sub->add_option("-o,--output", c.output, "write JSON result here"); };

  auto* plan_free = app.add_subcommand("plan-free", "normal-bubbling script for free target ranks");
  plan_free->add_option("--ambient", c.ambient)->required();
  plan_free->add_option("--ranks", c.ranks, "g_0,...,g_n")->required()->delimiter(',');
  plan_free->add_option("--ring", c.ring, "coefficient ring for the rank check: Z, Q or F<p>");
  add_output(plan_free);

  auto* plan_euler = app.add_subcommand("plan-euler", "script reaching a target Euler characteristic");
  plan_euler->add_option("--ambient", c.ambient)->required();
  plan_euler->add_option("--target", c.target)->required()->allow_extra_args(false);
  add_output(plan_euler);

  auto* plan_wedge = app.add_subcommand("plan-wedge", "wedge-bubbling script for torsion-free target ranks");
  plan_wedge->add_option("--ambient", c.ambient)->required();
  plan_wedge->add_option("--ranks", c.ranks, "g_0,...,g_n")->required()->delimiter(',');
  add_output(plan_wedge);

  auto* plan_torsion = app.add_subcommand("plan-torsion", "products of 3-manifolds and spheres for finite torsion");
  plan_torsion->add_option("--ambient", c.ambient)->required();
  plan_torsion->add_option("--gs", c.gs, "g_0,...,g_{n-7}, each >= -1")->required()->delimiter(',');
  plan_torsion->add_option("--groups", c.groups, "G_0;G_1;... e.g. \"Z/3;0;Z/2+Z/4\"")->required();
  add_output(plan_torsion);

  auto* plan_bundle = app.add_subcommand("plan-bundle", "one normal operation on a sphere-bundle total space");
  plan_bundle->add_option("--ambient", c.ambient)->required();
  plan_bundle->add_option("--k", c.k)->required();
  plan_bundle->add_option("--l", c.l)->required();
  plan_bundle->add_option("--base", c.base, "base manifold: JSON spec, JSON file or short form")->required();
  add_output(plan_bundle);

  auto* apply = app.add_subcommand("apply", "run a script JSON file");
  apply->add_option("script", c.input)->required()->check(CLI::ExistingFile);
  add_output(apply);

  auto* verify = app.add_subcommand("verify", "check a profile JSON file");
  auto* structure_flag = verify->add_flag("--structure", structure, "necessary structural conditions (default)");
  auto* thm5_flag = verify->add_flag("--thm5", c.thm5, "torsion-gap condition");
  structure_flag->excludes(thm5_flag);
  verify->add_option("--i0", c.i0)->check(CLI::PositiveNumber);
  verify->add_option("--direction", direction)->check(CLI::IsMember({"below", "above"}));
  verify->add_option("profile", c.input)->required()->check(CLI::ExistingFile);
  add_output(verify);

  auto* gap = app.add_subcommand("torsion-gap", "torsion-gap condition on a profile JSON file");
  gap->add_option("--i0", c.i0)->required()->check(CLI::PositiveNumber);
  gap->add_option("--direction", direction)->check(CLI::IsMember({"below", "above"}));
  gap->add_option("profile", c.input)->required()->check(CLI::ExistingFile);
  add_output(gap);

  auto* cat = app.add_subcommand("catalog", "list the oracle-expressible catalog grid");
  cat->add_flag("--validate", c.validate, "cross-check every entry against the chain-complex oracle");
  add_output(cat);

  auto* oracle_check = app.add_subcommand("oracle-check", "compare formula and chain-complex homology");
  oracle_check->add_option("--space", c.space, "e.g. \"lens:3,1\", \"sphere:2 x surface:1\", \"sphere:1 v sphere:2\"")
      ->required();
  add_output(oracle_check);

  auto* infer = app.add_subcommand("infer-source", "low-degree homology of the source manifold");
  infer->add_option("--m", c.m, "source dimension")->required();
  infer->add_option("profile", c.input)->required()->check(CLI::ExistingFile);
  add_output(infer);

  std::vector<const char*> argv{"reeb-forge"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw UsageError(app.help(), 0);
  } catch (const CLI::ParseError& e) {
    std::string message = e.what();
    const auto subs = app.get_subcommands();
    throw UsageError(message + "\n" + (subs.empty() ? app.help() : subs.front()->help()), 2);
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  if (verb == "plan-free") c.verb = Verb::PlanFree;
  else if (verb == "plan-euler") c.verb = Verb::PlanEuler;
  else if (verb == "plan-wedge") c.verb = Verb::PlanWedge;
  else if (verb == "plan-torsion") c.verb = Verb::PlanTorsion;
  else if (verb == "plan-bundle") c.verb = Verb::PlanBundle;
  else if (verb == "apply") c.verb = Verb::Apply;
  else if (verb == "verify") c.verb = Verb::Verify;
  else if (verb == "torsion-gap") c.verb = Verb::TorsionGap;
  else if (verb == "catalog") c.verb = Verb::Catalog;
  else if (verb == "oracle-check") c.verb = Verb::OracleCheck;
  else c.verb = Verb::InferSource;

  if (c.verb == Verb::TorsionGap) c.thm5 = true;
  c.direction = direction == "above" ? planner::Direction::Above : planner::Direction::Below;
  return c;
}

int execute(const Command& c, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(c, out);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kFailed;
  } catch (const engine::ScriptError& e) {
    err << "invalid script: " << e.what() << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInputError;
  }
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Command c;
  try {
    c = parse_args(args);
  } catch (const UsageError& e) {
    (e.exit_code() == 0 ? out : err) << e.what() << "\n";
    return e.exit_code();
  }
  return execute(c, out, err);
}

}  // namespace reeb::cli
