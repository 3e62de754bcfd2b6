#pragma once

// Exact integer and rational linear algebra over free abelian groups.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace sphan {

using Integer = mpz_class;
using Rational = mpq_class;

/// Element of N (or of any lattice ℤⁿ).
using LatticePoint = std::vector<Integer>;
/// Integral covector on N, i.e. an element of the dual lattice.
using LatticeFunctional = std::vector<Integer>;
/// Element of N_ℚ.
using RationalPoint = std::vector<Rational>;
/// Rational covector on N_ℚ.
using RationalFunctional = std::vector<Rational>;

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// gcd of all entries; 0 for the zero vector.
Integer content(const LatticePoint& v);
/// v divided by its content. The zero vector is returned unchanged.
LatticePoint primitive(const LatticePoint& v);
bool isZero(const LatticePoint& v);
bool isZero(const RationalPoint& v);

RationalPoint toRational(const LatticePoint& v);
/// Integral vector if every entry has denominator 1.
std::optional<LatticePoint> toIntegral(const RationalPoint& v);
/// Smallest positive integer k with k·v integral.
Integer commonDenominator(const RationalPoint& v);
/// The primitive integral vector on the ray through v (v ≠ 0).
LatticePoint primitiveOnRay(const RationalPoint& v);

Integer dot(const LatticeFunctional& f, const LatticePoint& v);
Rational dot(const LatticeFunctional& f, const RationalPoint& v);
Rational dot(const RationalFunctional& f, const RationalPoint& v);

LatticePoint add(const LatticePoint& a, const LatticePoint& b);
LatticePoint sub(const LatticePoint& a, const LatticePoint& b);
LatticePoint scale(const Integer& k, const LatticePoint& v);
RationalPoint scale(const Rational& k, const RationalPoint& v);
LatticePoint negate(const LatticePoint& v);

std::string toString(const LatticePoint& v);
std::string toString(const RationalPoint& v);
/// Exact rational as "p/q" (integers as "p/1").
std::string ratString(const Rational& q);
/// Parses "p/q" or "p"; rejects decimals. Throws Error(InvalidInput).
Rational parseRational(const std::string& text);

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix fromRows(const std::vector<LatticePoint>& rows, std::size_t cols);
  static IntMatrix fromColumns(const std::vector<LatticePoint>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  LatticePoint row(std::size_t i) const;
  LatticePoint column(std::size_t j) const;
  IntMatrix transposed() const;
  LatticePoint apply(const LatticePoint& v) const;
  RationalPoint apply(const RationalPoint& v) const;

  void swapRows(std::size_t a, std::size_t b);
  /// row[target] += k·row[source]
  void addRowMultiple(std::size_t target, std::size_t source, const Integer& k);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  /// Lexicographic on (rows, cols, column-major entries).
  friend bool operator<(const IntMatrix& a, const IntMatrix& b);

  std::string toString() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Integer determinant(const IntMatrix& m);

struct HermiteForm {
  IntMatrix h;  ///< row-style Hermite normal form
  IntMatrix u;  ///< unimodular transform with h = u·m
};

/// Row-style HNF: echelon rows with positive pivots, entries above each pivot
/// reduced into [0, pivot), zero rows at the bottom.
HermiteForm hermiteNormalForm(const IntMatrix& m);

/// Nonzero invariant factors d₁ | d₂ | … of the Smith normal form.
std::vector<Integer> smithInvariants(const IntMatrix& m);

/// True iff m maps ℤ^cols onto ℤ^rows.
bool isSurjectiveLatticeMap(const IntMatrix& m);

/// Saturated basis of {x ∈ ℤ^cols : m·x = 0}, in Hermite form.
std::vector<LatticePoint> integerKernel(const IntMatrix& m);

/// Element of GL(n, ℤ).
class UnimodularMap {
 public:
  explicit UnimodularMap(IntMatrix matrix);  // throws unless det = ±1
  static UnimodularMap identity(std::size_t n);

  const IntMatrix& matrix() const { return matrix_; }
  std::size_t rank() const { return matrix_.rows(); }
  LatticePoint apply(const LatticePoint& v) const { return matrix_.apply(v); }
  RationalPoint apply(const RationalPoint& v) const { return matrix_.apply(v); }
  UnimodularMap inverse() const;
  UnimodularMap compose(const UnimodularMap& after) const;  ///< after ∘ this

 private:
  IntMatrix matrix_;
};

/// Surjective lattice homomorphism π: N → Ñ₁ together with a basis of ker π.
class QuotientMap {
 public:
  explicit QuotientMap(IntMatrix matrix);  // throws unless surjective

  const IntMatrix& matrix() const { return matrix_; }
  std::size_t sourceRank() const { return matrix_.cols(); }
  std::size_t targetRank() const { return matrix_.rows(); }
  const std::vector<LatticePoint>& kernelBasis() const { return kernel_; }
  LatticePoint apply(const LatticePoint& v) const { return matrix_.apply(v); }
  RationalPoint apply(const RationalPoint& v) const { return matrix_.apply(v); }

 private:
  IntMatrix matrix_;
  std::vector<LatticePoint> kernel_;
};

/// g ∈ Aut(N, π): g preserves ker π and induces the identity on Ñ₁.
bool autNPiMembership(const UnimodularMap& g, const QuotientMap& pi);

// Rational linear algebra on row lists.

/// Rank of the rational span of the rows.
std::size_t rationalRank(const std::vector<RationalPoint>& rows);
std::size_t rationalRank(const std::vector<LatticePoint>& rows);
/// Basis of {x : row·x = 0 for every row}, as primitive integral vectors.
std::vector<LatticePoint> nullspace(const std::vector<LatticePoint>& rows, std::size_t dim);
/// Some solution of A·x = b (rows of A given), or nullopt if inconsistent.
std::optional<RationalPoint> solveLinear(const std::vector<RationalPoint>& rows,
                                         const RationalPoint& rhs, std::size_t dim);
/// Some integral solution of A·x = b, or nullopt if none exists.
std::optional<LatticePoint> solveIntegral(const std::vector<LatticePoint>& rows,
                                          const RationalPoint& rhs, std::size_t dim);

}  // namespace sphan
