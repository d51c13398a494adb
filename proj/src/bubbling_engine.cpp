#include "reeb_forge/bubbling_engine.hpp"

#include "reeb_forge/errors.hpp"

namespace reeb::engine {

using algebra::FGModule;
using algebra::GradedModule;
using algebra::Ring;

namespace {

std::int64_t sign(std::int64_t e) { return e % 2 == 0 ? 1 : -1; }

void validate_generating_manifold(std::int64_t ambient, const catalog::ManifoldDesc& m) {
  if (!m.closed) throw ValidationError("generating manifold must be closed: " + m.label);
  if (!m.connected) throw ValidationError("generating manifold must be connected: " + m.label);
  if (!m.orientable) throw ValidationError("generating manifold must be orientable: " + m.label);
  if (m.dim >= ambient) {
    throw ValidationError("generating manifold " + m.label + " has dimension " + std::to_string(m.dim) +
                          ", must be < ambient " + std::to_string(ambient));
  }
  if (!catalog::check_embeddable(m, ambient)) {
    throw ValidationError("generating manifold " + m.label + " is not certified to embed in R^" +
                          std::to_string(ambient) + " (embedding dimension " + std::to_string(m.embed_dim) + ")");
  }
}

// H_i += H_{i - shift}(s) for every 0 <= i <= last.
void add_shifted(GradedModule& h, const GradedModule& s, std::int64_t shift, std::int64_t last) {
  for (std::int64_t i = 0; i <= last; ++i) {
    const FGModule& extra = s.at(i - shift);
    if (!extra.is_zero()) h.set(static_cast<std::size_t>(i), direct_sum(h.at(i), extra));
  }
}

}  // namespace

std::string BubblingOp::label() const {
  if (const auto* n = std::get_if<NormalOp>(&variant)) return "normal[" + n->manifold.label + "]";
  return "wedge[" + std::get<WedgeOp>(variant).bouquet.label() + "]";
}

void validate_op(std::int64_t ambient, const BubblingOp& op) {
  if (const auto* n = std::get_if<NormalOp>(&op.variant)) {
    validate_generating_manifold(ambient, n->manifold);
    return;
  }
  const auto& b = std::get<WedgeOp>(op.variant).bouquet;
  if (b.summands.empty()) throw ValidationError("bouquet has no summands");
  for (const auto& s : b.summands) validate_generating_manifold(ambient, s);
}

ReebProfile initial_profile(std::int64_t n) {
  if (n < 1) throw ValidationError("ambient dimension must be >= 1, got " + std::to_string(n));
  ReebProfile p;
  p.ambient = n;
  p.homology = GradedModule(Ring::integers(), static_cast<std::size_t>(n));
  p.homology.set(0, FGModule::free(Ring::integers(), 1));
  p.history.ambient = n;
  return p;
}

ReebProfile apply_normal_bubbling(const ReebProfile& p, const catalog::ManifoldDesc& s) {
  validate_generating_manifold(p.ambient, s);
  ReebProfile out = p;
  add_shifted(out.homology, s.homology, p.ambient - s.dim, p.ambient);
  out.history.ops.push_back(BubblingOp::normal(s));
  return out;
}

ReebProfile apply_s_bubbling(const ReebProfile& p, const catalog::BouquetDesc& b) {
  const BubblingOp op = BubblingOp::wedge(b);
  validate_op(p.ambient, op);
  ReebProfile out = p;
  const std::int64_t n = p.ambient;
  for (const auto& s : b.summands) add_shifted(out.homology, s.homology, n - s.dim, n - 1);
  out.homology.set(static_cast<std::size_t>(n), direct_sum(out.homology.at(n), FGModule::free(Ring::integers(), 1)));
  out.history.ops.push_back(op);
  return out;
}

ReebProfile apply_op(const ReebProfile& p, const BubblingOp& op) {
  ReebProfile out = op.is_normal() ? apply_normal_bubbling(p, std::get<NormalOp>(op.variant).manifold)
                                   : apply_s_bubbling(p, std::get<WedgeOp>(op.variant).bouquet);
  out.history.ops.back().trivial_flag = op.trivial_flag;
  return out;
}

ReebProfile run_script(const BubblingScript& script) {
  ReebProfile p = initial_profile(script.ambient);
  for (std::size_t i = 0; i < script.ops.size(); ++i) {
    try {
      p = apply_op(p, script.ops[i]);
    } catch (const ValidationError& e) {
      throw ScriptError(i, e.what());
    }
  }
  return p;
}

std::int64_t euler_delta(std::int64_t n, const BubblingOp& op) {
  validate_op(n, op);
  if (const auto* normal = std::get_if<NormalOp>(&op.variant)) {
    const auto& s = normal->manifold;
    return sign(n - s.dim) * algebra::euler_characteristic(s.homology);
  }
  // Wedge: each summand contributes its shifted homology below degree n,
  // i.e. everything except its top class; degree n gains a single Z.
  std::int64_t delta = sign(n);
  for (const auto& s : std::get<WedgeOp>(op.variant).bouquet.summands) {
    const std::int64_t top_rank = s.homology.at(s.dim).rank();
    delta += sign(n - s.dim) * algebra::euler_characteristic(s.homology) - sign(n) * top_rank;
  }
  return delta;
}

SourceHomology infer_source_homology(const ReebProfile& p, std::int64_t m) {
  if (m <= p.ambient) {
    throw ValidationError("source dimension m=" + std::to_string(m) + " must exceed ambient n=" +
                          std::to_string(p.ambient));
  }
  SourceHomology out;
  for (std::int64_t j = 0; j <= m - p.ambient - 1; ++j) out.degrees.push_back(p.homology.at(j));
  out.assumptions = {
      "M is closed, connected and orientable of dimension m",
      "f is a simple fold map",
      "inverse images of regular values are disjoint unions of almost-spheres",
      "indices of singular points are 0 or 1",
  };
  if (m - p.ambient == 1) out.assumptions.emplace_back("m - n = 1: M must additionally be orientable");
  return out;
}

}  // namespace reeb::engine
