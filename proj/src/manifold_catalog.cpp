#include "reeb_forge/manifold_catalog.hpp"

#include <algorithm>
#include <numeric>

#include "reeb_forge/errors.hpp"

namespace reeb::catalog {

using algebra::FGModule;
using algebra::GradedModule;
using algebra::Ring;

namespace {

const Ring kZ = Ring::integers();

GradedModule sphere_homology(std::int64_t d) {
  GradedModule h(kZ, static_cast<std::size_t>(d));
  h.set(0, FGModule::free(kZ, 1));
  if (d > 0) h.set(static_cast<std::size_t>(d), FGModule::free(kZ, 1));
  return h;
}

std::string join_labels(const std::vector<ManifoldDesc>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += sep;
    out += parts[i].label;
  }
  return out;
}

}  // namespace

std::string BouquetDesc::label() const { return join_labels(summands, " v "); }

std::int64_t BouquetDesc::dim() const {
  std::int64_t d = 0;
  for (const auto& s : summands) d = std::max(d, s.dim);
  return d;
}

ManifoldDesc point() {
  ManifoldDesc m;
  m.label = "point";
  m.dim = 0;
  m.homology = sphere_homology(0);
  m.embed_dim = 1;
  m.spec.kind = ManifoldSpec::Kind::Point;
  return m;
}

ManifoldDesc sphere(std::int64_t k) {
  // S^0 is disconnected, so it is not an admissible generating manifold.
  if (k < 1) throw ValidationError("sphere dimension must be >= 1 (S^0 is not connected), got " + std::to_string(k));
  ManifoldDesc m;
  m.label = "sphere(" + std::to_string(k) + ")";
  m.dim = k;
  m.homology = sphere_homology(k);
  m.embed_dim = k + 1;
  m.spec.kind = ManifoldSpec::Kind::Sphere;
  m.spec.dim = k;
  return m;
}

ManifoldDesc surface(std::int64_t genus) {
  if (genus < 0) throw ValidationError("surface genus must be >= 0, got " + std::to_string(genus));
  ManifoldDesc m;
  m.label = "surface(" + std::to_string(genus) + ")";
  m.dim = 2;
  m.homology = GradedModule(kZ, {FGModule::free(kZ, 1), FGModule::free(kZ, 2 * genus), FGModule::free(kZ, 1)});
  m.embed_dim = 3;
  m.spec.kind = ManifoldSpec::Kind::Surface;
  m.spec.genus = genus;
  return m;
}

ManifoldDesc lens(std::int64_t p, std::int64_t q) {
  if (p < 2) throw ValidationError("lens space needs p >= 2, got " + std::to_string(p));
  if (std::gcd(p, q) != 1) {
    throw ValidationError("lens space needs gcd(p,q) = 1, got p=" + std::to_string(p) + " q=" + std::to_string(q));
  }
  ManifoldDesc m;
  m.label = "lens(" + std::to_string(p) + "," + std::to_string(q) + ")";
  m.dim = 3;
  m.homology = GradedModule(kZ, {FGModule::free(kZ, 1), algebra::normalize_module(kZ, 0, {p}), FGModule::zero(kZ),
                                 FGModule::free(kZ, 1)});
  m.embed_dim = 5;
  m.spec.kind = ManifoldSpec::Kind::Lens;
  m.spec.p = p;
  m.spec.q = q;
  return m;
}

ManifoldDesc homology_sphere(std::int64_t d) {
  if (d < 1) throw ValidationError("homology sphere dimension must be >= 1, got " + std::to_string(d));
  ManifoldDesc m;
  m.label = "hsphere(" + std::to_string(d) + ")";
  m.dim = d;
  m.homology = sphere_homology(d);
  m.embed_dim = d + 2;
  m.spec.kind = ManifoldSpec::Kind::HomologySphere;
  m.spec.dim = d;
  return m;
}

ManifoldDesc product(const ManifoldDesc& a, const ManifoldDesc& b) {
  if (a.spec.kind == ManifoldSpec::Kind::Point) return b;
  if (b.spec.kind == ManifoldSpec::Kind::Point) return a;
  ManifoldDesc m;
  m.label = a.label + " x " + b.label;
  m.dim = a.dim + b.dim;
  m.orientable = a.orientable && b.orientable;
  m.homology = algebra::kunneth(a.homology, b.homology);
  m.embed_dim = a.embed_dim + b.embed_dim;
  m.spec.kind = ManifoldSpec::Kind::Product;
  m.spec.children = {a.spec, b.spec};
  return m;
}

ManifoldDesc connected_sum(const std::vector<ManifoldDesc>& parts) {
  if (parts.empty()) throw ValidationError("connected sum needs at least one part");
  if (parts.size() == 1) return parts.front();
  const std::int64_t d = parts.front().dim;
  if (d < 2) throw ValidationError("connected sum needs dimension >= 2, got " + std::to_string(d));
  for (const auto& part : parts) {
    if (part.dim != d) throw ValidationError("connected sum parts must share a dimension: " + part.label);
    if (!part.orientable) throw ValidationError("connected sum part is not orientable: " + part.label);
  }

  GradedModule h(kZ, static_cast<std::size_t>(d));
  h.set(0, FGModule::free(kZ, 1));
  h.set(static_cast<std::size_t>(d), FGModule::free(kZ, 1));
  for (std::int64_t i = 1; i < d; ++i) {
    FGModule acc = FGModule::zero(kZ);
    for (const auto& part : parts) acc = direct_sum(acc, part.homology.at(i));
    h.set(static_cast<std::size_t>(i), acc);
  }

  ManifoldDesc m;
  m.label = join_labels(parts, " # ");
  m.dim = d;
  m.homology = std::move(h);
  m.embed_dim = 0;
  for (const auto& part : parts) m.embed_dim = std::max(m.embed_dim, part.embed_dim);
  m.spec.kind = ManifoldSpec::Kind::ConnectedSum;
  for (const auto& part : parts) m.spec.children.push_back(part.spec);
  return m;
}

ManifoldDesc realize_finite_abelian_H1(const FGModule& g) {
  if (g.ring().kind() != Ring::Kind::Integers) throw ValidationError("H_1 realization expects an integral group");
  if (g.rank() != 0) {
    throw ValidationError("H_1 realization needs a finite group, got free rank " + std::to_string(g.rank()));
  }
  if (g.torsion().empty()) return sphere(3);
  std::vector<ManifoldDesc> parts;
  for (std::int64_t d : g.torsion()) parts.push_back(lens(d, 1));
  return connected_sum(parts);
}

ManifoldDesc bundle_total_space(const ManifoldDesc& s, std::int64_t n, std::int64_t k, std::int64_t l) {
  if (l < 0) throw ValidationError("bundle: requires l >= 0, got l=" + std::to_string(l));
  if (!(l + 1 < k)) throw ValidationError("bundle: requires l+1 < k, got l=" + std::to_string(l) + " k=" + std::to_string(k));
  if (!(k < n)) throw ValidationError("bundle: requires k < n, got k=" + std::to_string(k) + " n=" + std::to_string(n));
  if (s.dim != n - k) {
    throw ValidationError("bundle: base dimension must be n-k=" + std::to_string(n - k) + ", got " +
                          std::to_string(s.dim));
  }
  if (!s.orientable) throw ValidationError("bundle: base must be orientable");
  if (s.embed_dim > n - l) {
    throw ValidationError("bundle: base must embed in R^(n-l)=R^" + std::to_string(n - l) +
                          ", certified embedding dimension is " + std::to_string(s.embed_dim));
  }

  const std::int64_t fiber = k - l - 1;
  const std::int64_t total_dim = n - l - 1;
  GradedModule h(kZ, static_cast<std::size_t>(total_dim));
  for (std::int64_t j = 0; j <= total_dim; ++j) {
    h.set(static_cast<std::size_t>(j), direct_sum(s.homology.at(j), s.homology.at(j - fiber)));
  }

  ManifoldDesc m;
  m.label = "bundle(" + s.label + "; n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",l=" + std::to_string(l) + ")";
  m.dim = total_dim;
  m.homology = std::move(h);
  m.embed_dim = n;
  m.spec.kind = ManifoldSpec::Kind::BundleTotal;
  m.spec.n = n;
  m.spec.k = k;
  m.spec.l = l;
  m.spec.children = {s.spec};
  return m;
}

BouquetDesc make_bouquet(const std::vector<ManifoldDesc>& parts) {
  if (parts.empty()) throw ValidationError("bouquet needs at least one summand");
  BouquetDesc b;
  b.summands = parts;
  std::int64_t top = 0;
  for (const auto& part : parts) {
    if (!part.connected || !part.closed || !part.orientable) {
      throw ValidationError("bouquet summand must be closed, connected and orientable: " + part.label);
    }
    top = std::max(top, part.dim);
  }
  GradedModule h(kZ, static_cast<std::size_t>(top));
  h.set(0, FGModule::free(kZ, 1));
  for (const auto& part : parts) {
    for (std::int64_t i = 1; i <= part.dim; ++i) {
      h.set(static_cast<std::size_t>(i), direct_sum(h.at(i), part.homology.at(i)));
    }
  }
  b.homology = std::move(h);
  return b;
}

ManifoldDesc with_trusted_embedding(ManifoldDesc m, std::int64_t ambient) {
  m.embed_dim = ambient;
  m.spec.trusted_embed_dim = ambient;
  return m;
}

bool check_poincare_duality(const ManifoldDesc& m) {
  const std::int64_t d = m.dim;
  for (std::int64_t i = 0; i <= d; ++i) {
    if (m.homology.at(i).rank() != m.homology.at(d - i).rank()) return false;
    if (m.homology.at(i).torsion_part() != m.homology.at(d - i - 1).torsion_part()) return false;
  }
  return true;
}

bool check_embeddable(const ManifoldDesc& m, std::int64_t ambient) {
  if (ambient < 1) throw ValidationError("ambient dimension must be >= 1");
  return m.embed_dim <= ambient;
}

ManifoldDesc realize(const ManifoldSpec& spec) {
  using Kind = ManifoldSpec::Kind;
  ManifoldDesc m;
  switch (spec.kind) {
    case Kind::Point: m = point(); break;
    case Kind::Sphere: m = sphere(spec.dim); break;
    case Kind::Surface: m = surface(spec.genus); break;
    case Kind::Lens: m = lens(spec.p, spec.q); break;
    case Kind::HomologySphere: m = homology_sphere(spec.dim); break;
    case Kind::Product: {
      if (spec.children.empty()) throw ValidationError("product needs at least one factor");
      m = realize(spec.children.front());
      for (std::size_t i = 1; i < spec.children.size(); ++i) m = product(m, realize(spec.children[i]));
      break;
    }
    case Kind::ConnectedSum: {
      std::vector<ManifoldDesc> parts;
      for (const auto& c : spec.children) parts.push_back(realize(c));
      m = connected_sum(parts);
      break;
    }
    case Kind::BundleTotal: {
      if (spec.children.size() != 1) throw ValidationError("bundle total space needs exactly one base");
      m = bundle_total_space(realize(spec.children.front()), spec.n, spec.k, spec.l);
      break;
    }
  }
  if (spec.trusted_embed_dim) m = with_trusted_embedding(std::move(m), *spec.trusted_embed_dim);
  return m;
}

}  // namespace reeb::catalog
