#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "reeb_forge/cli.hpp"
#include "reeb_forge/errors.hpp"
#include "reeb_forge/realization_planner.hpp"
#include "reeb_forge/serialization.hpp"
#include "reeb_forge/simplicial_oracle.hpp"

namespace py = pybind11;
using namespace reeb;
using io::json;

// Values cross the boundary as JSON text; the Python package decodes them.

namespace {

std::vector<algebra::FGModule> parse_groups(const std::vector<std::string>& groups) {
  std::vector<algebra::FGModule> out;
  for (const auto& g : groups) out.push_back(io::parse_module(g));
  return out;
}

std::string oracle_check(const std::string& space) {
  const auto r = oracle::validate_catalog_entry(io::parse_space(space));
  const char* outcome = r.outcome == oracle::ValidationReport::Outcome::Pass   ? "pass"
                        : r.outcome == oracle::ValidationReport::Outcome::Fail ? "fail"
                                                                               : "not-oracle-expressible";
  return json{{"label", r.label},
              {"formula", io::graded_to_json(r.formula)},
              {"oracle", r.oracle ? io::graded_to_json(*r.oracle) : json(nullptr)},
              {"outcome", outcome}}
      .dump();
}

std::string homology_of_complex(const std::vector<std::vector<std::vector<long>>>& boundaries,
                                const std::vector<std::size_t>& cell_counts) {
  std::vector<algebra::IntMatrix> mats;
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    const auto& b = boundaries[i];
    const std::size_t rows = i < cell_counts.size() ? cell_counts[i] : b.size();
    const std::size_t cols = i + 1 < cell_counts.size() ? cell_counts[i + 1] : (b.empty() ? 0 : b.front().size());
    algebra::IntMatrix m(rows, cols);
    if (b.size() != rows) throw ValidationError("boundary " + std::to_string(i + 1) + " has the wrong row count");
    for (std::size_t r = 0; r < rows; ++r) {
      if (b[r].size() != cols) throw ValidationError("boundary " + std::to_string(i + 1) + " has a ragged row");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = b[r][c];
    }
    mats.push_back(std::move(m));
  }
  if (cell_counts.empty()) return io::graded_to_json(algebra::homology_of_complex(mats)).dump();
  return io::graded_to_json(algebra::homology_of_complex(mats, cell_counts)).dump();
}

std::vector<std::string> smith_normal_form(const std::vector<std::vector<std::string>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  algebra::IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ValidationError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = mpz_class(rows[r][c]);
  }
  std::vector<std::string> out;
  for (const auto& d : algebra::smith_normal_form(m)) out.push_back(d.get_str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reeb-space homology under bubbling operations";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);

  m.def("smith_normal_form", &smith_normal_form, py::arg("rows"),
        "Nonzero invariant factors; entries are decimal strings so big integers survive.");
  m.def("homology_of_complex", &homology_of_complex, py::arg("boundaries"), py::arg("cell_counts"));
  m.def("normalize_module", [](const std::string& text) { return io::format_module(io::parse_module(text)); });

  m.def("plan_free", [](std::int64_t n, const std::vector<std::int64_t>& ranks) {
    return io::plan_report_to_json(planner::plan_free_realization({n, ranks, {}})).dump();
  });
  m.def("plan_euler", [](std::int64_t n, std::int64_t target) {
    return io::plan_report_to_json(planner::plan_euler_target(n, target)).dump();
  });
  m.def("plan_wedge", [](std::int64_t n, const std::vector<std::int64_t>& ranks) {
    return io::plan_report_to_json(planner::plan_torsion_free_wedge({n, ranks, {}})).dump();
  });
  m.def("plan_torsion", [](std::int64_t n, const std::vector<std::int64_t>& gs, const std::vector<std::string>& groups) {
    return io::plan_report_to_json(planner::plan_finite_torsion_products(n, gs, parse_groups(groups))).dump();
  });
  m.def("plan_bundle", [](std::int64_t n, std::int64_t k, std::int64_t l, const std::string& base) {
    const auto space = io::parse_space(base);
    const auto* s = std::get_if<catalog::ManifoldDesc>(&space);
    if (!s) throw ValidationError("bundle base must be a manifold");
    return io::plan_report_to_json(planner::plan_bundle_bubbling(n, k, l, *s)).dump();
  });

  m.def("run_script", [](const std::string& script) {
    return io::profile_to_json(engine::run_script(io::script_from_json(json::parse(script)))).dump();
  });
  m.def("verify", [](const std::string& profile) {
    const auto r = planner::verify_necessary_conditions(io::profile_from_json(json::parse(profile)));
    return json{{"passed", r.passed}, {"checked", r.checked}, {"failures", r.failures}}.dump();
  });
  m.def("torsion_gap", [](const std::string& profile, std::int64_t i0, bool above) {
    const auto r = planner::check_torsion_gap(io::profile_from_json(json::parse(profile)), i0,
                                              above ? planner::Direction::Above : planner::Direction::Below);
    json witnesses = json::array();
    for (const auto& w : r.witnesses) {
      witnesses.push_back({{"degree", w.degree}, {"offset", w.offset ? json(*w.offset) : json(nullptr)}});
    }
    return json{{"holds", r.holds}, {"witnesses", witnesses}, {"longest_finite_run", r.longest_finite_run}}.dump();
  });
  m.def("oracle_check", &oracle_check, py::arg("space"));
  m.def("euler_characteristic", [](const std::string& homology) {
    return algebra::euler_characteristic(io::graded_from_json(json::parse(homology)));
  });

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
