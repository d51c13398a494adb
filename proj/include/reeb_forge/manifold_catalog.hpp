#pragma once

// Closed, connected, orientable generating manifolds described by their
// integral homology, plus the bouquets used by wedge bubbling.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reeb_forge/pid_algebra.hpp"

namespace reeb::catalog {

/// How a catalog manifold was built. Mirrors the JSON manifold spec and is
/// what the oracle inspects to decide whether a cell model exists.
struct ManifoldSpec {
  enum class Kind { Point, Sphere, Surface, Lens, HomologySphere, Product, ConnectedSum, BundleTotal };

  Kind kind = Kind::Point;
  std::int64_t dim = 0;    // Sphere, HomologySphere
  std::int64_t genus = 0;  // Surface
  std::int64_t p = 0;      // Lens
  std::int64_t q = 0;      // Lens
  std::int64_t n = 0;      // BundleTotal
  std::int64_t k = 0;      // BundleTotal
  std::int64_t l = 0;      // BundleTotal
  std::vector<ManifoldSpec> children;  // Product factors, ConnectedSum parts, BundleTotal base
  /// Embedding dimension granted by a realization theorem rather than
  /// certified by the catalog bounds.
  std::optional<std::int64_t> trusted_embed_dim;

  bool operator==(const ManifoldSpec&) const = default;
};

struct ManifoldDesc {
  std::string label;
  std::int64_t dim = 0;
  bool closed = true;
  bool connected = true;
  bool orientable = true;
  algebra::GradedModule homology;
  /// Certified upper bound on the smallest Euclidean dimension it embeds in.
  std::int64_t embed_dim = 1;
  ManifoldSpec spec;
};

struct BouquetDesc {
  std::vector<ManifoldDesc> summands;
  algebra::GradedModule homology;

  std::string label() const;
  std::int64_t dim() const;
};

/// What a bubbling operation is performed along: a manifold or a bouquet.
using GeneratingSpace = std::variant<ManifoldDesc, BouquetDesc>;

// Atomic constructors. All throw ValidationError on bad parameters.
ManifoldDesc point();
ManifoldDesc sphere(std::int64_t k);
ManifoldDesc surface(std::int64_t genus);
ManifoldDesc lens(std::int64_t p, std::int64_t q);
/// A manifold with the integral homology of S^d; existence is assumed.
ManifoldDesc homology_sphere(std::int64_t d);

ManifoldDesc product(const ManifoldDesc& a, const ManifoldDesc& b);
ManifoldDesc connected_sum(const std::vector<ManifoldDesc>& parts);
/// Connected sum of L(d_i, 1) over the invariant factors of a finite group
/// (S^3 for the trivial group): a 3-manifold with H_1 = g and H_2 = 0.
ManifoldDesc realize_finite_abelian_H1(const algebra::FGModule& g);
/// Total space of an oriented linear S^{k-l-1}-bundle over s with vanishing
/// Euler class, modelled by the split (product) homology
/// H_j(S') = H_j(S) + H_{j-(k-l-1)}(S).
ManifoldDesc bundle_total_space(const ManifoldDesc& s, std::int64_t n, std::int64_t k, std::int64_t l);
BouquetDesc make_bouquet(const std::vector<ManifoldDesc>& parts);

/// Returns a copy whose embedding dimension is `ambient`, marked as granted
/// by a construction rather than derived from the catalog bounds.
ManifoldDesc with_trusted_embedding(ManifoldDesc m, std::int64_t ambient);

bool check_poincare_duality(const ManifoldDesc& m);
bool check_embeddable(const ManifoldDesc& m, std::int64_t ambient);

/// Rebuilds a descriptor from its construction spec.
ManifoldDesc realize(const ManifoldSpec& spec);

}  // namespace reeb::catalog
