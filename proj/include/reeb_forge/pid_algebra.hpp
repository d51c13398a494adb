#pragma once

// Finitely generated modules over the integers, the rationals and prime
// fields, plus the homological algebra the rest of the library is built on:
// Smith normal form, chain-complex homology, tensor/Tor, Kunneth and
// universal coefficients.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace reeb::algebra {

class Ring {
 public:
  enum class Kind { Integers, Rationals, PrimeField };

  static Ring integers() { return Ring(Kind::Integers, 0); }
  static Ring rationals() { return Ring(Kind::Rationals, 0); }
  /// Throws ValidationError unless p is prime.
  static Ring prime_field(std::int64_t p);

  Kind kind() const { return kind_; }
  /// p for F_p, 0 otherwise.
  std::int64_t characteristic() const { return p_; }
  bool is_field() const { return kind_ != Kind::Integers; }

  std::string name() const;

  bool operator==(const Ring&) const = default;

 private:
  Ring(Kind kind, std::int64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::int64_t p_;
};

/// Free rank plus an invariant-factor chain d_1 | d_2 | ... | d_t, d_i >= 2.
/// Always stored in canonical form, so structural equality is isomorphism.
class FGModule {
 public:
  /// Zero module over the integers.
  FGModule() : ring_(Ring::integers()) {}

  static FGModule zero(Ring ring) { return FGModule(ring, 0, {}); }
  static FGModule free(Ring ring, std::int64_t rank);

  const Ring& ring() const { return ring_; }
  std::int64_t rank() const { return rank_; }
  std::span<const std::int64_t> torsion() const { return torsion_; }

  bool is_zero() const { return rank_ == 0 && torsion_.empty(); }
  bool is_free() const { return torsion_.empty(); }
  /// Nontrivial and finite, i.e. rank 0 with some torsion.
  bool is_finite_nontrivial() const { return rank_ == 0 && !torsion_.empty(); }

  FGModule free_part() const { return free(ring_, rank_); }
  FGModule torsion_part() const { return FGModule(ring_, 0, torsion_); }

  bool operator==(const FGModule&) const = default;

 private:
  friend FGModule normalize_module(Ring, std::int64_t, std::span<const std::int64_t>);

  FGModule(Ring ring, std::int64_t rank, std::vector<std::int64_t> torsion)
      : ring_(ring), rank_(rank), torsion_(std::move(torsion)) {}

  Ring ring_;
  std::int64_t rank_ = 0;
  std::vector<std::int64_t> torsion_;
};

/// Degree-indexed homology H_0 .. H_top. Degrees outside [0, top] read as 0.
class GradedModule {
 public:
  GradedModule() : GradedModule(Ring::integers(), 0) {}
  /// Zero in every degree 0..top.
  GradedModule(Ring ring, std::size_t top);
  GradedModule(Ring ring, std::vector<FGModule> degrees);

  const Ring& ring() const { return ring_; }
  std::size_t top() const { return degrees_.size() - 1; }
  std::span<const FGModule> degrees() const { return degrees_; }

  /// The module in degree i; zero for i < 0 or i > top.
  const FGModule& at(std::int64_t i) const;
  void set(std::size_t i, FGModule m);

  bool operator==(const GradedModule&) const = default;

 private:
  Ring ring_;
  std::vector<FGModule> degrees_;
  FGModule zero_;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  /// A rows x cols matrix with zero rows or zero columns is allowed.
  static IntMatrix zeros(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool is_zero() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> entries_;
};

// ---------------------------------------------------------------------------
// Module arithmetic

/// Canonicalizes Z^rank + sum Z/d over `ring` (divisors in any order, each
/// >= 2). Over a field the torsion is dropped.
FGModule normalize_module(Ring ring, std::int64_t rank, std::span<const std::int64_t> divisors);
inline FGModule normalize_module(Ring ring, std::int64_t rank, std::initializer_list<std::int64_t> divisors) {
  return normalize_module(ring, rank, std::span<const std::int64_t>(divisors.begin(), divisors.size()));
}

FGModule direct_sum(const FGModule& a, const FGModule& b);
FGModule tensor_product(const FGModule& a, const FGModule& b);
FGModule torsion_product(const FGModule& a, const FGModule& b);
bool is_isomorphic(const FGModule& a, const FGModule& b);

/// Degreewise direct sum; the result's top is the larger of the two tops.
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);
/// Degreewise isomorphism, treating degrees beyond either top as zero.
bool is_isomorphic(const GradedModule& a, const GradedModule& b);

// ---------------------------------------------------------------------------
// Matrices and chain complexes

/// Nonzero diagonal of the Smith normal form, d_1 | d_2 | ..., each >= 1.
std::vector<mpz_class> smith_normal_form(const IntMatrix& m);

/// Integral homology of C_top -> ... -> C_0, where boundaries[i] maps degree
/// i+1 chains to degree i chains (rows = #cells in degree i). Cell counts are
/// read off the matrix shapes; an empty list is the zero complex.
GradedModule homology_of_complex(std::span<const IntMatrix> boundaries);
/// Same, with explicit cell counts (needed when there are no boundaries,
/// e.g. a point). Requires cell_counts.size() == boundaries.size() + 1.
GradedModule homology_of_complex(std::span<const IntMatrix> boundaries,
                                 std::span<const std::size_t> cell_counts);

// ---------------------------------------------------------------------------
// Graded operations

GradedModule kunneth(const GradedModule& x, const GradedModule& y);
GradedModule change_coefficients(const GradedModule& x, Ring ring);
GradedModule cohomology_uct(const GradedModule& x);
std::int64_t euler_characteristic(const GradedModule& x);

}  // namespace reeb::algebra
