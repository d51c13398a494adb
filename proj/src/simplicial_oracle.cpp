#include "reeb_forge/simplicial_oracle.hpp"

#include <algorithm>
#include <numeric>

#include "reeb_forge/errors.hpp"

namespace reeb::oracle {

using algebra::IntMatrix;

namespace {

ChainModel zero_boundary_model(std::string label, std::vector<std::size_t> counts) {
  ChainModel m;
  m.label = std::move(label);
  for (std::size_t i = 0; i + 1 < counts.size(); ++i) m.boundaries.push_back(IntMatrix::zeros(counts[i], counts[i + 1]));
  m.cell_counts = std::move(counts);
  return m;
}

std::size_t count_at(const ChainModel& m, std::size_t degree) {
  return degree < m.cell_counts.size() ? m.cell_counts[degree] : 0;
}

std::size_t top_of(const ChainModel& m) { return m.cell_counts.size() - 1; }

/// One-point union: the first 0-cell of every part is identified.
ChainModel wedge_models(const std::vector<ChainModel>& parts, std::string label) {
  std::size_t top = 0;
  for (const auto& p : parts) top = std::max(top, top_of(p));

  // offsets[part][degree] = first global index of that part's cells.
  std::vector<std::vector<std::size_t>> offsets(parts.size(), std::vector<std::size_t>(top + 1, 0));
  std::vector<std::size_t> counts(top + 1, 0);
  counts[0] = 1;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    for (std::size_t d = 0; d <= top; ++d) {
      if (d == 0) {
        offsets[k][0] = counts[0];
        counts[0] += count_at(parts[k], 0) - 1;
      } else {
        offsets[k][d] = counts[d];
        counts[d] += count_at(parts[k], d);
      }
    }
  }
  auto global = [&](std::size_t part, std::size_t degree, std::size_t local) {
    if (degree == 0) return local == 0 ? std::size_t{0} : offsets[part][0] + local - 1;
    return offsets[part][degree] + local;
  };

  ChainModel out;
  out.label = std::move(label);
  out.cell_counts = counts;
  for (std::size_t d = 1; d <= top; ++d) {
    IntMatrix bd(counts[d - 1], counts[d]);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (d > top_of(parts[k])) continue;
      const IntMatrix& local = parts[k].boundaries[d - 1];
      for (std::size_t r = 0; r < local.rows(); ++r) {
        for (std::size_t c = 0; c < local.cols(); ++c) {
          if (local(r, c) != 0) bd(global(k, d - 1, r), global(k, d, c)) += local(r, c);
        }
      }
    }
    out.boundaries.push_back(std::move(bd));
  }
  return out;
}

/// Cellular tensor product with d(a x b) = da x b + (-1)^|a| a x db.
ChainModel tensor_models(const ChainModel& x, const ChainModel& y, std::string label) {
  const std::size_t top = top_of(x) + top_of(y);
  // offset[d][p]: start of the (p, d-p) block inside degree d.
  std::vector<std::vector<std::size_t>> offset(top + 1, std::vector<std::size_t>(top_of(x) + 1, 0));
  std::vector<std::size_t> counts(top + 1, 0);
  for (std::size_t d = 0; d <= top; ++d) {
    for (std::size_t p = 0; p <= top_of(x); ++p) {
      offset[d][p] = counts[d];
      if (d < p || d - p > top_of(y)) continue;
      counts[d] += count_at(x, p) * count_at(y, d - p);
    }
  }
  auto index = [&](std::size_t p, std::size_t a, std::size_t q, std::size_t b) {
    return offset[p + q][p] + a * count_at(y, q) + b;
  };

  ChainModel out;
  out.label = std::move(label);
  out.cell_counts = counts;
  for (std::size_t d = 1; d <= top; ++d) {
    IntMatrix bd(counts[d - 1], counts[d]);
    for (std::size_t p = 0; p <= std::min(d, top_of(x)); ++p) {
      const std::size_t q = d - p;
      if (q > top_of(y)) continue;
      for (std::size_t a = 0; a < count_at(x, p); ++a) {
        for (std::size_t b = 0; b < count_at(y, q); ++b) {
          const std::size_t col = index(p, a, q, b);
          if (p >= 1) {
            const IntMatrix& dx = x.boundaries[p - 1];
            for (std::size_t a2 = 0; a2 < dx.rows(); ++a2) {
              if (dx(a2, a) != 0) bd(index(p - 1, a2, q, b), col) += dx(a2, a);
            }
          }
          if (q >= 1) {
            const IntMatrix& dy = y.boundaries[q - 1];
            const long sign = p % 2 == 0 ? 1 : -1;
            for (std::size_t b2 = 0; b2 < dy.rows(); ++b2) {
              if (dy(b2, b) != 0) bd(index(p, a, q - 1, b2), col) += sign * dy(b2, b);
            }
          }
        }
      }
    }
    out.boundaries.push_back(std::move(bd));
  }
  return out;
}

}  // namespace

std::string SpaceSpec::label() const {
  auto join = [this](const char* sep) {
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i != 0) out += sep;
      out += parts[i].label();
    }
    return out + ")";
  };
  switch (kind) {
    case Kind::Point: return "point";
    case Kind::Sphere: return "sphere(" + std::to_string(a) + ")";
    case Kind::Surface: return "surface(" + std::to_string(a) + ")";
    case Kind::Lens: return "lens(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case Kind::Wedge: return join(" v ");
    case Kind::Product: return join(" x ");
  }
  return "?";
}

ChainModel build_model(const SpaceSpec& spec) {
  switch (spec.kind) {
    case SpaceSpec::Kind::Point:
      return zero_boundary_model(spec.label(), {1});
    case SpaceSpec::Kind::Sphere: {
      if (spec.a < 0) throw ValidationError("sphere dimension must be >= 0");
      if (spec.a == 0) return zero_boundary_model(spec.label(), {2});
      std::vector<std::size_t> counts(static_cast<std::size_t>(spec.a) + 1, 0);
      counts.front() = 1;
      counts.back() = 1;
      return zero_boundary_model(spec.label(), std::move(counts));
    }
    case SpaceSpec::Kind::Surface: {
      if (spec.a < 0) throw ValidationError("surface genus must be >= 0");
      return zero_boundary_model(spec.label(), {1, static_cast<std::size_t>(2 * spec.a), 1});
    }
    case SpaceSpec::Kind::Lens: {
      if (spec.a < 2 || std::gcd(spec.a, spec.b) != 1) {
        throw ValidationError("lens space needs p >= 2 and gcd(p,q) = 1");
      }
      ChainModel m;
      m.label = spec.label();
      m.cell_counts = {1, 1, 1, 1};
      m.boundaries = {IntMatrix{{0}}, IntMatrix{{static_cast<long>(spec.a)}}, IntMatrix{{0}}};
      return m;
    }
    case SpaceSpec::Kind::Wedge: {
      if (spec.parts.empty()) throw ValidationError("wedge needs at least one part");
      std::vector<ChainModel> parts;
      for (const auto& p : spec.parts) parts.push_back(build_model(p));
      return wedge_models(parts, spec.label());
    }
    case SpaceSpec::Kind::Product: {
      if (spec.parts.empty()) throw ValidationError("product needs at least one factor");
      ChainModel acc = build_model(spec.parts.front());
      for (std::size_t i = 1; i < spec.parts.size(); ++i) {
        acc = tensor_models(acc, build_model(spec.parts[i]), spec.label());
      }
      acc.label = spec.label();
      return acc;
    }
  }
  throw ValidationError("unknown space kind");
}

algebra::GradedModule oracle_homology(const ChainModel& m) {
  return algebra::homology_of_complex(m.boundaries, m.cell_counts);
}

std::optional<SpaceSpec> to_space_spec(const catalog::ManifoldSpec& spec) {
  using Kind = catalog::ManifoldSpec::Kind;
  switch (spec.kind) {
    case Kind::Point: return SpaceSpec::point();
    case Kind::Sphere: return SpaceSpec::sphere(spec.dim);
    case Kind::Surface: return SpaceSpec::surface(spec.genus);
    case Kind::Lens: return SpaceSpec::lens(spec.p, spec.q);
    case Kind::Product: {
      std::vector<SpaceSpec> factors;
      for (const auto& c : spec.children) {
        auto s = to_space_spec(c);
        if (!s) return std::nullopt;
        factors.push_back(std::move(*s));
      }
      return SpaceSpec::product(std::move(factors));
    }
    case Kind::HomologySphere:
    case Kind::ConnectedSum:
    case Kind::BundleTotal:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

ValidationReport compare(std::string label, const algebra::GradedModule& formula, const std::optional<SpaceSpec>& space) {
  ValidationReport report;
  report.label = std::move(label);
  report.formula = formula;
  if (!space) {
    report.outcome = ValidationReport::Outcome::NotOracleExpressible;
    return report;
  }
  report.oracle = oracle_homology(build_model(*space));
  const auto top = static_cast<std::int64_t>(std::max(formula.top(), report.oracle->top()));
  bool all = true;
  for (std::int64_t i = 0; i <= top; ++i) {
    const bool ok = formula.at(i) == report.oracle->at(i);
    report.degree_matches.push_back(ok);
    all = all && ok;
  }
  report.outcome = all ? ValidationReport::Outcome::Pass : ValidationReport::Outcome::Fail;
  return report;
}

}  // namespace

ValidationReport validate_catalog_entry(const catalog::ManifoldDesc& m) {
  return compare(m.label, m.homology, to_space_spec(m.spec));
}

ValidationReport validate_catalog_entry(const catalog::BouquetDesc& b) {
  std::vector<SpaceSpec> parts;
  for (const auto& s : b.summands) {
    auto space = to_space_spec(s.spec);
    if (!space) return compare(b.label(), b.homology, std::nullopt);
    parts.push_back(std::move(*space));
  }
  return compare(b.label(), b.homology, SpaceSpec::wedge(std::move(parts)));
}

ValidationReport validate_catalog_entry(const catalog::GeneratingSpace& g) {
  return std::visit([](const auto& v) { return validate_catalog_entry(v); }, g);
}

std::vector<catalog::GeneratingSpace> catalog_grid() {
  std::vector<catalog::ManifoldDesc> atoms;
  for (std::int64_t k = 1; k <= 6; ++k) atoms.push_back(catalog::sphere(k));
  for (std::int64_t g = 0; g <= 4; ++g) atoms.push_back(catalog::surface(g));
  for (std::int64_t p = 2; p <= 7; ++p) {
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) == 1) atoms.push_back(catalog::lens(p, q));
    }
  }

  std::vector<catalog::GeneratingSpace> grid;
  grid.emplace_back(catalog::point());
  for (const auto& a : atoms) grid.emplace_back(a);
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i; j < atoms.size(); ++j) {
      if (atoms[i].dim + atoms[j].dim <= 6) grid.emplace_back(catalog::product(atoms[i], atoms[j]));
    }
  }
  // Multisets of 1..4 sphere dimensions, nondecreasing.
  std::vector<std::int64_t> dims;
  auto extend = [&](auto&& self, std::int64_t from) -> void {
    if (!dims.empty()) {
      std::vector<catalog::ManifoldDesc> parts;
      for (std::int64_t d : dims) parts.push_back(catalog::sphere(d));
      grid.emplace_back(catalog::make_bouquet(parts));
    }
    if (dims.size() == 4) return;
    for (std::int64_t d = from; d <= 6; ++d) {
      dims.push_back(d);
      self(self, d);
      dims.pop_back();
    }
  };
  extend(extend, 1);
  return grid;
}

}  // namespace reeb::oracle
