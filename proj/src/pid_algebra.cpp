#include "reeb_forge/pid_algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <utility>

#include "reeb_forge/errors.hpp"

namespace reeb::algebra {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw ValidationError("invariant factor exceeds the 64-bit range");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw ValidationError("module rank exceeds the 64-bit range");
  }
  return out;
}

// prime -> list of prime powers p^e occurring in the decomposition.
using PrimaryParts = std::map<std::int64_t, std::vector<std::int64_t>>;

void add_primary_parts(std::int64_t d, PrimaryParts& parts) {
  for (std::int64_t p = 2; p <= d / p; ++p) {
    if (d % p != 0) continue;
    std::int64_t power = 1;
    while (d % p == 0) {
      d /= p;
      power *= p;
    }
    parts[p].push_back(power);
  }
  if (d > 1) parts[d].push_back(d);
}

void require_integers(const FGModule& a, const FGModule& b, const char* op) {
  if (a.ring().kind() != Ring::Kind::Integers || b.ring().kind() != Ring::Kind::Integers) {
    throw UnsupportedRingError(std::string(op) + " is only supported over the integers");
  }
}

void require_same_ring(const Ring& a, const Ring& b) {
  if (a != b) {
    throw ValidationError("ring mismatch: " + a.name() + " vs " + b.name());
  }
}

std::int64_t to_int64(const mpz_class& v) {
  if (!v.fits_slong_p()) throw ValidationError("invariant factor exceeds the 64-bit range");
  return v.get_si();
}

std::int64_t count_divisible(std::span<const std::int64_t> torsion, std::int64_t p) {
  return std::count_if(torsion.begin(), torsion.end(), [p](std::int64_t d) { return d % p == 0; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Ring

Ring Ring::prime_field(std::int64_t p) {
  if (p < 2) throw ValidationError("prime field characteristic must be a prime >= 2, got " + std::to_string(p));
  for (std::int64_t q = 2; q <= p / q; ++q) {
    if (p % q == 0) throw ValidationError("prime field characteristic must be prime, got " + std::to_string(p));
  }
  return Ring(Kind::PrimeField, p);
}

std::string Ring::name() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "F" + std::to_string(p_);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// FGModule / GradedModule / IntMatrix

FGModule FGModule::free(Ring ring, std::int64_t rank) {
  if (rank < 0) throw ValidationError("module rank must be nonnegative");
  return FGModule(ring, rank, {});
}

GradedModule::GradedModule(Ring ring, std::size_t top)
    : ring_(ring), degrees_(top + 1, FGModule::zero(ring)), zero_(FGModule::zero(ring)) {}

GradedModule::GradedModule(Ring ring, std::vector<FGModule> degrees)
    : ring_(ring), degrees_(std::move(degrees)), zero_(FGModule::zero(ring)) {
  if (degrees_.empty()) degrees_.push_back(zero_);
  for (const auto& m : degrees_) require_same_ring(ring_, m.ring());
}

const FGModule& GradedModule::at(std::int64_t i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= degrees_.size()) return zero_;
  return degrees_[static_cast<std::size_t>(i)];
}

void GradedModule::set(std::size_t i, FGModule m) {
  require_same_ring(ring_, m.ring());
  if (i >= degrees_.size()) degrees_.resize(i + 1, zero_);
  degrees_[i] = std::move(m);
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ValidationError("ragged matrix literal");
    for (long v : row) entries_.emplace_back(v);
  }
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const mpz_class& v) { return v == 0; });
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ValidationError("matrix product shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Module arithmetic

FGModule normalize_module(Ring ring, std::int64_t rank, std::span<const std::int64_t> divisors) {
  if (rank < 0) throw ValidationError("module rank must be nonnegative, got " + std::to_string(rank));
  for (std::int64_t d : divisors) {
    if (d < 2) throw ValidationError("torsion divisors must be >= 2, got " + std::to_string(d));
  }
  if (ring.is_field()) return FGModule(ring, rank, {});

  PrimaryParts parts;
  for (std::int64_t d : divisors) add_primary_parts(d, parts);

  // The k-th largest invariant factor collects the k-th largest power of
  // every prime.
  std::size_t length = 0;
  for (auto& [p, powers] : parts) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    length = std::max(length, powers.size());
  }
  std::vector<std::int64_t> chain(length, 1);
  for (const auto& [p, powers] : parts) {
    for (std::size_t k = 0; k < powers.size(); ++k) chain[k] = checked_mul(chain[k], powers[k]);
  }
  std::reverse(chain.begin(), chain.end());
  return FGModule(ring, rank, std::move(chain));
}

FGModule direct_sum(const FGModule& a, const FGModule& b) {
  require_same_ring(a.ring(), b.ring());
  std::vector<std::int64_t> torsion(a.torsion().begin(), a.torsion().end());
  torsion.insert(torsion.end(), b.torsion().begin(), b.torsion().end());
  return normalize_module(a.ring(), checked_add(a.rank(), b.rank()), torsion);
}

FGModule tensor_product(const FGModule& a, const FGModule& b) {
  require_integers(a, b, "tensor product");
  std::vector<std::int64_t> torsion;
  for (std::int64_t i = 0; i < a.rank(); ++i) torsion.insert(torsion.end(), b.torsion().begin(), b.torsion().end());
  for (std::int64_t i = 0; i < b.rank(); ++i) torsion.insert(torsion.end(), a.torsion().begin(), a.torsion().end());
  for (std::int64_t x : a.torsion()) {
    for (std::int64_t y : b.torsion()) {
      if (std::int64_t g = std::gcd(x, y); g > 1) torsion.push_back(g);
    }
  }
  return normalize_module(a.ring(), checked_mul(a.rank(), b.rank()), torsion);
}

FGModule torsion_product(const FGModule& a, const FGModule& b) {
  require_integers(a, b, "torsion product");
  std::vector<std::int64_t> torsion;
  for (std::int64_t x : a.torsion()) {
    for (std::int64_t y : b.torsion()) {
      if (std::int64_t g = std::gcd(x, y); g > 1) torsion.push_back(g);
    }
  }
  return normalize_module(a.ring(), 0, torsion);
}

bool is_isomorphic(const FGModule& a, const FGModule& b) {
  require_same_ring(a.ring(), b.ring());
  return a == b;
}

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  require_same_ring(a.ring(), b.ring());
  const std::size_t top = std::max(a.top(), b.top());
  GradedModule out(a.ring(), top);
  for (std::size_t i = 0; i <= top; ++i) {
    const auto d = static_cast<std::int64_t>(i);
    out.set(i, direct_sum(a.at(d), b.at(d)));
  }
  return out;
}

bool is_isomorphic(const GradedModule& a, const GradedModule& b) {
  require_same_ring(a.ring(), b.ring());
  const auto top = static_cast<std::int64_t>(std::max(a.top(), b.top()));
  for (std::int64_t i = 0; i <= top; ++i) {
    if (!is_isomorphic(a.at(i), b.at(i))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Smith normal form

std::vector<mpz_class> smith_normal_form(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<mpz_class> diagonal;

  auto swap_rows = [&](std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    for (std::size_t c = 0; c < cols; ++c) std::swap(a(r1, c), a(r2, c));
  };
  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t r = 0; r < rows; ++r) std::swap(a(r, c1), a(r, c2));
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Pivot: smallest nonzero |entry| in the trailing block.
      std::size_t pr = rows;
      std::size_t pc = cols;
      for (std::size_t r = t; r < rows; ++r) {
        for (std::size_t c = t; c < cols; ++c) {
          if (a(r, c) == 0) continue;
          if (pr == rows || abs(a(r, c)) < abs(a(pr, pc))) {
            pr = r;
            pc = c;
          }
        }
      }
      if (pr == rows) return diagonal;
      swap_rows(t, pr);
      swap_cols(t, pc);

      bool clean = true;
      mpz_class q;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a(r, t) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(r, t).get_mpz_t(), a(t, t).get_mpz_t());
        for (std::size_t c = t; c < cols; ++c) a(r, c) -= q * a(t, c);
        if (a(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a(t, c) == 0) continue;
        mpz_tdiv_q(q.get_mpz_t(), a(t, c).get_mpz_t(), a(t, t).get_mpz_t());
        for (std::size_t r = t; r < rows; ++r) a(r, c) -= q * a(r, t);
        if (a(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Row and column are clear; enforce divisibility of the remainder.
      bool divides_all = true;
      for (std::size_t r = t + 1; r < rows && divides_all; ++r) {
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (a(r, c) != 0 && !mpz_divisible_p(a(r, c).get_mpz_t(), a(t, t).get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) a(t, k) += a(r, k);
            divides_all = false;
            break;
          }
        }
      }
      if (divides_all) break;
    }
    diagonal.push_back(abs(a(t, t)));
  }
  return diagonal;
}

// ---------------------------------------------------------------------------
// Chain complexes

GradedModule homology_of_complex(std::span<const IntMatrix> boundaries) {
  if (boundaries.empty()) return GradedModule(Ring::integers(), 0);
  std::vector<std::size_t> counts;
  counts.reserve(boundaries.size() + 1);
  for (const auto& b : boundaries) counts.push_back(b.rows());
  counts.push_back(boundaries.back().cols());
  return homology_of_complex(boundaries, counts);
}

GradedModule homology_of_complex(std::span<const IntMatrix> boundaries, std::span<const std::size_t> cell_counts) {
  if (cell_counts.size() != boundaries.size() + 1) {
    throw ChainComplexError("expected " + std::to_string(boundaries.size() + 1) + " cell counts, got " +
                            std::to_string(cell_counts.size()));
  }
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i].rows() != cell_counts[i] || boundaries[i].cols() != cell_counts[i + 1]) {
      throw ChainComplexError("boundary " + std::to_string(i + 1) + " has shape " +
                              std::to_string(boundaries[i].rows()) + "x" + std::to_string(boundaries[i].cols()) +
                              ", expected " + std::to_string(cell_counts[i]) + "x" +
                              std::to_string(cell_counts[i + 1]));
    }
  }
  for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
    if (!(boundaries[i] * boundaries[i + 1]).is_zero()) {
      throw ChainComplexError("boundary composite d" + std::to_string(i + 1) + " o d" + std::to_string(i + 2) +
                              " is nonzero");
    }
  }

  std::vector<std::vector<mpz_class>> snf;
  snf.reserve(boundaries.size());
  for (const auto& b : boundaries) snf.push_back(smith_normal_form(b));

  const Ring z = Ring::integers();
  std::vector<FGModule> degrees;
  for (std::size_t i = 0; i < cell_counts.size(); ++i) {
    const std::size_t rank_out = i == 0 ? 0 : snf[i - 1].size();
    const std::size_t rank_in = i < snf.size() ? snf[i].size() : 0;
    const auto free_rank = static_cast<std::int64_t>(cell_counts[i] - rank_out - rank_in);
    std::vector<std::int64_t> torsion;
    if (i < snf.size()) {
      for (const auto& d : snf[i]) {
        if (d > 1) torsion.push_back(to_int64(d));
      }
    }
    degrees.push_back(normalize_module(z, free_rank, torsion));
  }
  return GradedModule(z, std::move(degrees));
}

// ---------------------------------------------------------------------------
// Graded operations

GradedModule kunneth(const GradedModule& x, const GradedModule& y) {
  if (x.ring().kind() != Ring::Kind::Integers || y.ring().kind() != Ring::Kind::Integers) {
    throw UnsupportedRingError("Kunneth formula is only supported over the integers");
  }
  const std::size_t top = x.top() + y.top();
  GradedModule out(Ring::integers(), top);
  for (std::size_t p = 0; p <= x.top(); ++p) {
    for (std::size_t q = 0; q <= y.top(); ++q) {
      const auto& a = x.degrees()[p];
      const auto& b = y.degrees()[q];
      out.set(p + q, direct_sum(out.degrees()[p + q], tensor_product(a, b)));
      if (p + q + 1 <= top) {
        out.set(p + q + 1, direct_sum(out.degrees()[p + q + 1], torsion_product(a, b)));
      }
    }
  }
  return out;
}

GradedModule change_coefficients(const GradedModule& x, Ring ring) {
  if (x.ring().kind() != Ring::Kind::Integers) {
    throw ValidationError("change of coefficients expects integral homology");
  }
  if (ring.kind() == Ring::Kind::Integers) return x;

  const auto top = static_cast<std::int64_t>(x.top());
  const std::int64_t p = ring.characteristic();
  std::vector<FGModule> degrees;
  for (std::int64_t i = 0; i <= top + 1; ++i) {
    std::int64_t rank = x.at(i).rank();
    if (ring.kind() == Ring::Kind::PrimeField) {
      rank += count_divisible(x.at(i).torsion(), p) + count_divisible(x.at(i - 1).torsion(), p);
    }
    if (i == top + 1 && rank == 0) break;
    degrees.push_back(FGModule::free(ring, rank));
  }
  return GradedModule(ring, std::move(degrees));
}

GradedModule cohomology_uct(const GradedModule& x) {
  if (x.ring().kind() != Ring::Kind::Integers) {
    throw ValidationError("cohomology via universal coefficients expects integral homology");
  }
  const auto top = static_cast<std::int64_t>(x.top());
  std::vector<FGModule> degrees;
  for (std::int64_t i = 0; i <= top + 1; ++i) {
    FGModule m = direct_sum(x.at(i).free_part(), x.at(i - 1).torsion_part());
    if (i == top + 1 && m.is_zero()) break;
    degrees.push_back(std::move(m));
  }
  return GradedModule(Ring::integers(), std::move(degrees));
}

std::int64_t euler_characteristic(const GradedModule& x) {
  std::int64_t chi = 0;
  for (std::size_t i = 0; i <= x.top(); ++i) {
    const std::int64_t r = x.degrees()[i].rank();
    chi += (i % 2 == 0) ? r : -r;
  }
  return chi;
}

}  // namespace reeb::algebra
