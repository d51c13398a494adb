#include "reeb_forge/serialization.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

#include "reeb_forge/errors.hpp"

namespace reeb::io {

using algebra::FGModule;
using algebra::GradedModule;
using algebra::Ring;
using catalog::ManifoldSpec;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, std::string_view sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + sep.size();
  }
  return out;
}

std::int64_t parse_int(std::string_view s, std::string_view what) {
  s = trim(s);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError("expected an integer for " + std::string(what) + ", got '" + std::string(s) + "'");
  }
  return v;
}

// Reads an integer field; nlohmann's get<> would silently truncate floats.
std::int64_t int_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ValidationError(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

const json& array_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
    throw ValidationError(std::string("missing array field '") + key + "'");
  }
  return j.at(key);
}

std::string kind_name(ManifoldSpec::Kind k) {
  switch (k) {
    case ManifoldSpec::Kind::Point: return "point";
    case ManifoldSpec::Kind::Sphere: return "sphere";
    case ManifoldSpec::Kind::Surface: return "surface";
    case ManifoldSpec::Kind::Lens: return "lens";
    case ManifoldSpec::Kind::HomologySphere: return "homology_sphere";
    case ManifoldSpec::Kind::Product: return "product";
    case ManifoldSpec::Kind::ConnectedSum: return "connected_sum";
    case ManifoldSpec::Kind::BundleTotal: return "bundle_total";
  }
  return "?";
}

catalog::ManifoldDesc parse_atom(std::string_view text) {
  text = trim(text);
  const std::size_t colon = text.find(':');
  const std::string_view name = trim(text.substr(0, colon));
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (name == "point") return catalog::point();
  if (name == "sphere") return catalog::sphere(parse_int(args, "sphere dimension"));
  if (name == "surface") return catalog::surface(parse_int(args, "surface genus"));
  if (name == "hsphere") return catalog::homology_sphere(parse_int(args, "homology sphere dimension"));
  if (name == "lens") {
    const auto pq = split(args, ",");
    if (pq.size() != 2) throw ValidationError("lens expects 'lens:p,q'");
    return catalog::lens(parse_int(pq[0], "lens p"), parse_int(pq[1], "lens q"));
  }
  throw ValidationError("unknown space '" + std::string(text) + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Module text

std::string format_module(const FGModule& m) {
  if (m.is_zero()) return "0";
  std::vector<std::string> terms;
  if (m.rank() > 0) {
    std::string base = m.ring().name();
    terms.push_back(m.rank() == 1 ? base : base + "^" + std::to_string(m.rank()));
  }
  for (std::int64_t d : m.torsion()) terms.push_back("Z/" + std::to_string(d));
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i != 0) out += " + ";
    out += terms[i];
  }
  return out;
}

std::string format_graded(const GradedModule& g) {
  std::string out = "(";
  for (std::size_t i = 0; i <= g.top(); ++i) {
    if (i != 0) out += ", ";
    out += format_module(g.degrees()[i]);
  }
  return out + ")";
}

FGModule parse_module(std::string_view text, Ring fallback) {
  text = trim(text);
  if (text.empty()) throw ValidationError("empty module text");
  if (text == "0") return FGModule::zero(fallback);

  std::optional<Ring> ring;
  std::int64_t rank = 0;
  std::vector<std::int64_t> torsion;
  auto set_ring = [&](Ring r) {
    if (ring && *ring != r) throw ValidationError("module text mixes rings: '" + std::string(text) + "'");
    ring = r;
  };
  for (std::string_view term : split(text, "+")) {
    term = trim(term);
    if (term == "0") continue;
    if (term.starts_with("Z/")) {
      set_ring(Ring::integers());
      torsion.push_back(parse_int(term.substr(2), "torsion divisor"));
      continue;
    }
    const std::size_t caret = term.find('^');
    const std::string_view base = trim(term.substr(0, caret));
    const std::int64_t r = caret == std::string_view::npos ? 1 : parse_int(term.substr(caret + 1), "rank");
    if (base == "Z") {
      set_ring(Ring::integers());
    } else if (base == "Q") {
      set_ring(Ring::rationals());
    } else if (base.size() > 1 && base.front() == 'F') {
      set_ring(Ring::prime_field(parse_int(base.substr(1), "field characteristic")));
    } else {
      throw ValidationError("cannot parse module term '" + std::string(term) + "'");
    }
    rank += r;
  }
  return algebra::normalize_module(ring.value_or(fallback), rank, torsion);
}

// ---------------------------------------------------------------------------
// Module JSON

json module_to_json(const FGModule& m) {
  return json{{"rank", m.rank()}, {"torsion", std::vector<std::int64_t>(m.torsion().begin(), m.torsion().end())}};
}

FGModule module_from_json(const json& j) {
  if (j.is_string()) return parse_module(j.get<std::string>());
  std::vector<std::int64_t> torsion;
  if (j.contains("torsion")) {
    for (const auto& d : array_field(j, "torsion")) {
      if (!d.is_number_integer()) throw ValidationError("torsion entries must be integers");
      torsion.push_back(d.get<std::int64_t>());
    }
  }
  return algebra::normalize_module(Ring::integers(), int_field(j, "rank"), torsion);
}

json graded_to_json(const GradedModule& g) {
  json out = json::array();
  for (const auto& m : g.degrees()) out.push_back(module_to_json(m));
  return out;
}

GradedModule graded_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("graded module must be a nonempty array");
  std::vector<FGModule> degrees;
  for (const auto& m : j) degrees.push_back(module_from_json(m));
  return GradedModule(Ring::integers(), std::move(degrees));
}

// ---------------------------------------------------------------------------
// Manifold specs

json manifold_spec_to_json(const ManifoldSpec& spec) {
  json out{{"kind", kind_name(spec.kind)}};
  auto children = [&spec] {
    json arr = json::array();
    for (const auto& c : spec.children) arr.push_back(manifold_spec_to_json(c));
    return arr;
  };
  switch (spec.kind) {
    case ManifoldSpec::Kind::Point: break;
    case ManifoldSpec::Kind::Sphere:
    case ManifoldSpec::Kind::HomologySphere: out["dim"] = spec.dim; break;
    case ManifoldSpec::Kind::Surface: out["genus"] = spec.genus; break;
    case ManifoldSpec::Kind::Lens:
      out["p"] = spec.p;
      out["q"] = spec.q;
      break;
    case ManifoldSpec::Kind::Product: out["factors"] = children(); break;
    case ManifoldSpec::Kind::ConnectedSum: out["parts"] = children(); break;
    case ManifoldSpec::Kind::BundleTotal:
      out["base"] = manifold_spec_to_json(spec.children.at(0));
      out["n"] = spec.n;
      out["k"] = spec.k;
      out["l"] = spec.l;
      break;
  }
  if (spec.trusted_embed_dim) out["trusted_embed_dim"] = *spec.trusted_embed_dim;
  return out;
}

ManifoldSpec manifold_spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ValidationError("manifold spec needs a string 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  ManifoldSpec spec;
  auto children = [&j](const char* key) {
    std::vector<ManifoldSpec> out;
    for (const auto& c : array_field(j, key)) out.push_back(manifold_spec_from_json(c));
    return out;
  };
  if (kind == "point") {
    spec.kind = ManifoldSpec::Kind::Point;
  } else if (kind == "sphere") {
    spec.kind = ManifoldSpec::Kind::Sphere;
    spec.dim = int_field(j, "dim");
  } else if (kind == "homology_sphere") {
    spec.kind = ManifoldSpec::Kind::HomologySphere;
    spec.dim = int_field(j, "dim");
  } else if (kind == "surface") {
    spec.kind = ManifoldSpec::Kind::Surface;
    spec.genus = int_field(j, "genus");
  } else if (kind == "lens") {
    spec.kind = ManifoldSpec::Kind::Lens;
    spec.p = int_field(j, "p");
    spec.q = int_field(j, "q");
  } else if (kind == "product") {
    spec.kind = ManifoldSpec::Kind::Product;
    spec.children = children("factors");
  } else if (kind == "connected_sum") {
    spec.kind = ManifoldSpec::Kind::ConnectedSum;
    spec.children = children("parts");
  } else if (kind == "bundle_total") {
    spec.kind = ManifoldSpec::Kind::BundleTotal;
    if (!j.contains("base")) throw ValidationError("bundle_total needs a 'base'");
    spec.children = {manifold_spec_from_json(j.at("base"))};
    spec.n = int_field(j, "n");
    spec.k = int_field(j, "k");
    spec.l = int_field(j, "l");
  } else {
    throw ValidationError("unknown manifold kind '" + kind + "'");
  }
  if (j.contains("trusted_embed_dim")) spec.trusted_embed_dim = int_field(j, "trusted_embed_dim");
  return spec;
}

json generating_to_json(const GeneratingSpace& g) {
  if (const auto* m = std::get_if<catalog::ManifoldDesc>(&g)) return manifold_spec_to_json(m->spec);
  json summands = json::array();
  for (const auto& s : std::get<catalog::BouquetDesc>(g).summands) summands.push_back(manifold_spec_to_json(s.spec));
  return json{{"kind", "bouquet"}, {"summands", summands}};
}

GeneratingSpace generating_from_json(const json& j) {
  if (j.is_object() && j.value("kind", "") == "bouquet") {
    std::vector<catalog::ManifoldDesc> parts;
    for (const auto& s : array_field(j, "summands")) parts.push_back(catalog::realize(manifold_spec_from_json(s)));
    return catalog::make_bouquet(parts);
  }
  return catalog::realize(manifold_spec_from_json(j));
}

GeneratingSpace parse_space(std::string_view text) {
  text = trim(text);
  if (text.starts_with("{")) {
    try {
      return generating_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw ValidationError(std::string("malformed space JSON: ") + e.what());
    }
  }
  const auto summands = split(text, " v ");
  std::vector<catalog::ManifoldDesc> parts;
  for (std::string_view s : summands) {
    const auto factors = split(s, " x ");
    catalog::ManifoldDesc m = parse_atom(factors.front());
    for (std::size_t i = 1; i < factors.size(); ++i) m = catalog::product(m, parse_atom(factors[i]));
    parts.push_back(std::move(m));
  }
  if (parts.size() == 1) return parts.front();
  return catalog::make_bouquet(parts);
}

// ---------------------------------------------------------------------------
// Scripts and profiles

json op_to_json(const engine::BubblingOp& op) {
  json out;
  if (const auto* n = std::get_if<engine::NormalOp>(&op.variant)) {
    out = json{{"type", "normal"}, {"manifold", manifold_spec_to_json(n->manifold.spec)}};
  } else {
    json summands = json::array();
    for (const auto& s : std::get<engine::WedgeOp>(op.variant).bouquet.summands) {
      summands.push_back(manifold_spec_to_json(s.spec));
    }
    out = json{{"type", "wedge"}, {"summands", summands}};
  }
  if (op.trivial_flag) out["trivial"] = *op.trivial_flag;
  return out;
}

engine::BubblingOp op_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ValidationError("op needs a string 'type'");
  }
  const std::string type = j.at("type").get<std::string>();
  engine::BubblingOp op;
  if (type == "normal") {
    if (!j.contains("manifold")) throw ValidationError("normal op needs a 'manifold'");
    op = engine::BubblingOp::normal(catalog::realize(manifold_spec_from_json(j.at("manifold"))));
  } else if (type == "wedge") {
    std::vector<catalog::ManifoldDesc> parts;
    for (const auto& s : array_field(j, "summands")) parts.push_back(catalog::realize(manifold_spec_from_json(s)));
    op = engine::BubblingOp::wedge(catalog::make_bouquet(parts));
  } else {
    throw ValidationError("unknown op type '" + type + "'");
  }
  if (j.contains("trivial")) {
    if (!j.at("trivial").is_boolean()) throw ValidationError("'trivial' must be a boolean");
    op.trivial_flag = j.at("trivial").get<bool>();
  }
  return op;
}

json script_to_json(const engine::BubblingScript& s) {
  json ops = json::array();
  for (const auto& op : s.ops) ops.push_back(op_to_json(op));
  return json{{"ambient", s.ambient}, {"ops", ops}};
}

engine::BubblingScript script_from_json(const json& j) {
  engine::BubblingScript s;
  s.ambient = int_field(j, "ambient");
  for (const auto& op : array_field(j, "ops")) s.ops.push_back(op_from_json(op));
  return s;
}

json profile_to_json(const engine::ReebProfile& p) {
  json out{{"ambient", p.ambient}, {"homology", graded_to_json(p.homology)}};
  if (!p.history.ops.empty()) out["history"] = script_to_json(p.history)["ops"];
  return out;
}

engine::ReebProfile profile_from_json(const json& j) {
  engine::ReebProfile p;
  p.ambient = int_field(j, "ambient");
  if (p.ambient < 1) throw ValidationError("profile ambient must be >= 1");
  if (!j.contains("homology")) throw ValidationError("profile needs 'homology'");
  p.homology = graded_from_json(j.at("homology"));
  if (p.homology.top() < static_cast<std::size_t>(p.ambient)) {
    p.homology.set(static_cast<std::size_t>(p.ambient), FGModule::zero(Ring::integers()));
  }
  p.history.ambient = p.ambient;
  if (j.contains("history")) {
    for (const auto& op : array_field(j, "history")) p.history.ops.push_back(op_from_json(op));
  }
  return p;
}

json plan_report_to_json(const planner::PlanReport& r) {
  return json{{"script", script_to_json(r.script)},
              {"achieved", graded_to_json(r.achieved)},
              {"target_met", r.target_met},
              {"notes", r.notes}};
}

}  // namespace reeb::io
