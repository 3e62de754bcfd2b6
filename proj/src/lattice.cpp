#include "sphan/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "sphan/errors.hpp"

namespace sphan {

std::string_view errorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotQGorenstein: return "NotQGorenstein";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NotFano: return "NotFano";
    case ErrorKind::NotAmpleCondition1: return "NotAmple(condition 1)";
    case ErrorKind::NotAmpleCondition2: return "NotAmple(condition 2)";
    case ErrorKind::DegenerateQ: return "DegenerateQ";
    case ErrorKind::UnboundedBody: return "UnboundedBody";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::NotFullDimensional: return "NotFullDimensional";
    case ErrorKind::NotLatticePolytope: return "NotLatticePolytope";
    case ErrorKind::InvalidColoredFan: return "InvalidColoredFan";
    case ErrorKind::IncompleteCoefficients: return "IncompleteCoefficients";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::RankTooLarge: return "RankTooLarge";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Integer content(const LatticePoint& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

LatticePoint primitive(const LatticePoint& v) {
  Integer g = content(v);
  if (g == 0 || g == 1) return v;
  LatticePoint out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

bool isZero(const LatticePoint& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool isZero(const RationalPoint& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

RationalPoint toRational(const LatticePoint& v) {
  return RationalPoint(v.begin(), v.end());
}

std::optional<LatticePoint> toIntegral(const RationalPoint& v) {
  LatticePoint out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) return std::nullopt;
    out[i] = v[i].get_num();
  }
  return out;
}

Integer commonDenominator(const RationalPoint& v) {
  Integer d = 1;
  for (const auto& x : v) d = lcm(d, x.get_den());
  return d;
}

LatticePoint primitiveOnRay(const RationalPoint& v) {
  Integer d = commonDenominator(v);
  LatticePoint out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i] * d).get_num();
  return primitive(out);
}

Integer dot(const LatticeFunctional& f, const LatticePoint& v) {
  Integer s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * v[i];
  return s;
}

Rational dot(const LatticeFunctional& f, const RationalPoint& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * v[i];
  return s;
}

Rational dot(const RationalFunctional& f, const RationalPoint& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * v[i];
  return s;
}

LatticePoint add(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

LatticePoint sub(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

LatticePoint scale(const Integer& k, const LatticePoint& v) {
  LatticePoint out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = k * v[i];
  return out;
}

RationalPoint scale(const Rational& k, const RationalPoint& v) {
  RationalPoint out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = k * v[i];
  return out;
}

LatticePoint negate(const LatticePoint& v) {
  LatticePoint out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

std::string toString(const LatticePoint& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string toString(const RationalPoint& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

std::string ratString(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parseRational(const std::string& text) {
  auto isIntegerText = [](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(start), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (num.size() > 1 && num[0] == '+') num = num.substr(1);
  if (!isIntegerText(num) || !isIntegerText(den) || den[0] == '-' || den[0] == '+') {
    fail(ErrorKind::InvalidInput, "not an exact rational \"p/q\": '" + text + "'");
  }
  Integer d(den);
  if (d == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorKind::InvalidInput, "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::fromRows(const std::vector<LatticePoint>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) fail(ErrorKind::InvalidInput, "row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::fromColumns(const std::vector<LatticePoint>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) fail(ErrorKind::InvalidInput, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

LatticePoint IntMatrix::row(std::size_t i) const {
  return LatticePoint(data_.begin() + static_cast<long>(i * cols_),
                      data_.begin() + static_cast<long>((i + 1) * cols_));
}

LatticePoint IntMatrix::column(std::size_t j) const {
  LatticePoint c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

LatticePoint IntMatrix::apply(const LatticePoint& v) const {
  LatticePoint out(rows_, Integer(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

RationalPoint IntMatrix::apply(const RationalPoint& v) const {
  RationalPoint out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

void IntMatrix::swapRows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::addRowMultiple(std::size_t target, std::size_t source, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += k * (*this)(source, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::InvalidInput, "matrix shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

bool operator<(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  for (std::size_t j = 0; j < a.cols_; ++j)
    for (std::size_t i = 0; i < a.rows_; ++i) {
      int c = cmp(a(i, j), b(i, j));
      if (c != 0) return c < 0;
    }
  return false;
}

std::string IntMatrix::toString() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ",";
    os << sphan::toString(row(i));
  }
  os << "]";
  return os.str();
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorKind::InvalidInput, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swapRows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

HermiteForm hermiteNormalForm(const IntMatrix& m) {
  HermiteForm out{m, IntMatrix::identity(m.rows())};
  IntMatrix& h = out.h;
  IntMatrix& u = out.u;
  std::size_t pivotRow = 0;
  for (std::size_t col = 0; col < h.cols() && pivotRow < h.rows(); ++col) {
    // Euclid on column `col` among rows pivotRow.. until one nonzero remains.
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = pivotRow; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        if (best == h.rows() || abs(h(i, col)) < abs(h(best, col))) best = i;
      }
      if (best == h.rows()) break;
      h.swapRows(pivotRow, best);
      u.swapRows(pivotRow, best);
      bool done = true;
      for (std::size_t i = pivotRow + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(pivotRow, col).get_mpz_t());
        h.addRowMultiple(i, pivotRow, -q);
        u.addRowMultiple(i, pivotRow, -q);
        if (h(i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (h(pivotRow, col) == 0) continue;
    if (h(pivotRow, col) < 0) {
      h.addRowMultiple(pivotRow, pivotRow, Integer(-2));
      u.addRowMultiple(pivotRow, pivotRow, Integer(-2));
    }
    for (std::size_t i = 0; i < pivotRow; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(pivotRow, col).get_mpz_t());
      h.addRowMultiple(i, pivotRow, -q);
      u.addRowMultiple(i, pivotRow, -q);
    }
    ++pivotRow;
  }
  return out;
}

std::vector<Integer> smithInvariants(const IntMatrix& m) {
  // Alternate row and column Hermite reductions until the matrix is diagonal.
  IntMatrix a = m;
  auto isDiagonal = [](const IntMatrix& x) {
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j)
        if (i != j && x(i, j) != 0) return false;
    return true;
  };
  bool transposed = false;
  while (!isDiagonal(a)) {
    a = hermiteNormalForm(a).h.transposed();
    transposed = !transposed;
  }
  std::vector<Integer> diag;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (a(i, i) != 0) diag.push_back(abs(a(i, i)));
  // Enforce divisibility d_i | d_{i+1}.
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      Integer g = gcd(diag[i], diag[j]);
      Integer l = lcm(diag[i], diag[j]);
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

bool isSurjectiveLatticeMap(const IntMatrix& m) {
  if (m.rows() == 0) return true;
  auto inv = smithInvariants(m);
  if (inv.size() != m.rows()) return false;
  return std::all_of(inv.begin(), inv.end(), [](const Integer& d) { return d == 1; });
}

std::vector<LatticePoint> integerKernel(const IntMatrix& m) {
  // Rows of U with U·mᵀ having a zero row span the kernel; they are part of a
  // ℤ-basis, hence the kernel basis is saturated.
  const std::size_t n = m.cols();
  if (m.rows() == 0) {
    std::vector<LatticePoint> basis;
    for (std::size_t i = 0; i < n; ++i) basis.push_back(IntMatrix::identity(n).row(i));
    return basis;
  }
  HermiteForm hf = hermiteNormalForm(m.transposed());
  std::vector<LatticePoint> basis;
  for (std::size_t i = 0; i < hf.h.rows(); ++i)
    if (isZero(hf.h.row(i))) basis.push_back(hf.u.row(i));
  if (basis.empty()) return basis;
  HermiteForm reduced = hermiteNormalForm(IntMatrix::fromRows(basis, n));
  std::vector<LatticePoint> out;
  for (std::size_t i = 0; i < reduced.h.rows(); ++i)
    if (!isZero(reduced.h.row(i))) out.push_back(reduced.h.row(i));
  return out;
}

// ------------------------------------------------------------ UnimodularMap

UnimodularMap::UnimodularMap(IntMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols())
    fail(ErrorKind::InvalidInput, "unimodular map must be square");
  Integer d = determinant(matrix_);
  if (d != 1 && d != -1)
    fail(ErrorKind::InvalidInput, "matrix is not unimodular (det " + d.get_str() + ")");
}

UnimodularMap UnimodularMap::identity(std::size_t n) {
  return UnimodularMap(IntMatrix::identity(n));
}

UnimodularMap UnimodularMap::inverse() const {
  // The Hermite form of a unimodular matrix is the identity, so u = m⁻¹.
  return UnimodularMap(hermiteNormalForm(matrix_).u);
}

UnimodularMap UnimodularMap::compose(const UnimodularMap& after) const {
  return UnimodularMap(after.matrix_ * matrix_);
}

// -------------------------------------------------------------- QuotientMap

QuotientMap::QuotientMap(IntMatrix matrix) : matrix_(std::move(matrix)) {
  if (!isSurjectiveLatticeMap(matrix_))
    fail(ErrorKind::InvalidInput, "quotient map " + matrix_.toString() + " is not surjective");
  kernel_ = integerKernel(matrix_);
}

bool autNPiMembership(const UnimodularMap& g, const QuotientMap& pi) {
  if (g.rank() != pi.sourceRank()) fail(ErrorKind::InvalidInput, "rank mismatch");
  if (!(pi.matrix() * g.matrix() == pi.matrix())) return false;
  UnimodularMap inv = g.inverse();
  for (const auto& k : pi.kernelBasis()) {
    if (!isZero(pi.apply(g.apply(k)))) return false;
    if (!isZero(pi.apply(inv.apply(k)))) return false;
  }
  return true;
}

// --------------------------------------------------- rational linear algebra

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RationalPoint>& rows, std::size_t dim) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational k = rows[i][c];
      for (std::size_t j = c; j < dim; ++j) rows[i][j] -= k * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

std::size_t rationalRank(const std::vector<RationalPoint>& rows) {
  if (rows.empty()) return 0;
  auto copy = rows;
  return rref(copy, rows.front().size()).size();
}

std::size_t rationalRank(const std::vector<LatticePoint>& rows) {
  std::vector<RationalPoint> r;
  r.reserve(rows.size());
  for (const auto& v : rows) r.push_back(toRational(v));
  return rationalRank(r);
}

std::vector<LatticePoint> nullspace(const std::vector<LatticePoint>& rows, std::size_t dim) {
  std::vector<RationalPoint> r;
  for (const auto& v : rows) r.push_back(toRational(v));
  auto pivots = rref(r, dim);
  std::vector<bool> isPivot(dim, false);
  for (auto p : pivots) isPivot[p] = true;
  std::vector<LatticePoint> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (isPivot[free]) continue;
    RationalPoint x(dim, Rational(0));
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -r[i][free];
    basis.push_back(primitiveOnRay(x));
  }
  return basis;
}

std::optional<RationalPoint> solveLinear(const std::vector<RationalPoint>& rows,
                                         const RationalPoint& rhs, std::size_t dim) {
  // Augmented elimination; returns the solution lying in the row space so the
  // answer does not depend on the choice of free variables.
  std::vector<RationalPoint> aug;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RationalPoint r = rows[i];
    r.push_back(rhs[i]);
    aug.push_back(std::move(r));
  }
  auto pivots = rref(aug, dim + 1);
  if (!pivots.empty() && pivots.back() == dim) return std::nullopt;
  // Independent rows (in reduced form) span the row space; solve G·y = b.
  const std::size_t k = aug.size();
  if (k == 0) return RationalPoint(dim, Rational(0));
  std::vector<RationalPoint> gram;
  for (std::size_t i = 0; i < k; ++i) {
    RationalPoint g(k + 1);
    for (std::size_t j = 0; j < k; ++j) {
      Rational s = 0;
      for (std::size_t c = 0; c < dim; ++c) s += aug[i][c] * aug[j][c];
      g[j] = s;
    }
    g[k] = aug[i][dim];
    gram.push_back(std::move(g));
  }
  rref(gram, k + 1);
  RationalPoint x(dim, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < dim; ++c) x[c] += gram[i][k] * aug[i][c];
  return x;
}

std::optional<LatticePoint> solveIntegral(const std::vector<LatticePoint>& rows,
                                          const RationalPoint& rhs, std::size_t dim) {
  // With H = U·Aᵀ in Hermite form, A·Uᵀ = Hᵀ; solve Hᵀ·y = b by substitution
  // along the pivots of H and return x = Uᵀ·y.
  LatticePoint b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rhs[i].get_den() != 1) return std::nullopt;
    b[i] = rhs[i].get_num();
  }
  if (rows.empty()) return LatticePoint(dim, Integer(0));
  HermiteForm hf = hermiteNormalForm(IntMatrix::fromRows(rows, dim).transposed());
  const IntMatrix& h = hf.h;  // dim × k
  LatticePoint y(dim, Integer(0));
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t pivot = h.cols();
    for (std::size_t c = 0; c < h.cols(); ++c)
      if (h(i, c) != 0) {
        pivot = c;
        break;
      }
    if (pivot == h.cols()) break;
    Integer residual = b[pivot];
    for (std::size_t j = 0; j < i; ++j) residual -= y[j] * h(j, pivot);
    if (residual % h(i, pivot) != 0) return std::nullopt;
    y[i] = residual / h(i, pivot);
  }
  for (std::size_t c = 0; c < h.cols(); ++c) {
    Integer s = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) s += y[i] * h(i, c);
    if (s != b[c]) return std::nullopt;
  }
  return hf.u.transposed().apply(y);
}

}  // namespace sphan
