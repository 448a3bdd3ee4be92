#pragma once

#include <edifice/scalar.hpp>

#include <optional>

namespace edifice {

using QVec = std::vector<Rat>;
using IVec = std::vector<Int>;

/// Dense rational matrix, row-major.
class QMat {
 public:
  QMat() : rows_(0), cols_(0) {}
  QMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
  static QMat identity(size_t n);
  static QMat from_rows(const std::vector<QVec>& rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rat& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  QVec row(size_t i) const;
  QVec col(size_t j) const;
  QMat transpose() const;
  bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  size_t rows_, cols_;
  std::vector<Rat> a_;
};

QMat operator*(const QMat& a, const QMat& b);
QMat operator+(const QMat& a, const QMat& b);
QMat operator-(const QMat& a, const QMat& b);
QMat operator*(const Rat& c, const QMat& a);
QVec operator*(const QMat& a, const QVec& v);
QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const Rat& c, const QVec& v);
Rat dot(const QVec& a, const QVec& b);
bool is_zero(const QVec& v);

/// Reduced row echelon form in place; returns pivot column indices.
std::vector<size_t> rref(QMat& m);
size_t rank(QMat m);
Rat det(QMat m);
std::optional<QMat> inverse(const QMat& m);
/// Basis of {x : m x = 0}, one QVec per basis vector.
std::vector<QVec> kernel(const QMat& m);
/// One solution of m x = b, if any.
std::optional<QVec> solve(const QMat& m, const QVec& b);
/// Intersection of row spaces interpreted as subspaces: basis of span(a) ∩ span(b),
/// where the rows of each matrix span a subspace of Q^n.
std::vector<QVec> subspace_intersection(const std::vector<QVec>& a, const std::vector<QVec>& b);
/// Canonical (RREF) basis of the span of the given vectors.
std::vector<QVec> canonical_basis(const std::vector<QVec>& vectors);
bool in_span(const std::vector<QVec>& basis, const QVec& v);

/// Dense integer matrix, row-major.
class IMat {
 public:
  IMat() : rows_(0), cols_(0) {}
  IMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}
  static IMat identity(size_t n);
  static IMat from_rows(const std::vector<IVec>& rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Int& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }
  IVec row(size_t i) const;
  IMat transpose() const;
  QMat to_rational() const;
  bool operator==(const IMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator<(const IMat& o) const { return a_ < o.a_; }

 private:
  size_t rows_, cols_;
  std::vector<Int> a_;
};

IMat operator*(const IMat& a, const IMat& b);
IVec operator*(const IMat& a, const IVec& v);
SVec operator*(const IMat& a, const SVec& v);
/// Row-covector acting on a column vector.
Int dot(const IVec& a, const IVec& b);
Scalar pair_scalar(const SVec& lambda, const IVec& chi);
/// chi . m, the pullback of the covector chi along the lattice map m.
IVec covector_times(const IVec& chi, const IMat& m);
bool is_unimodular(const IMat& m);

/// Z-basis of {x in Z^r : m x = 0} (a saturated sublattice), via row HNF of
/// [m^T | I].
std::vector<IVec> integer_kernel(const IMat& m);

/// Smith normal form: returns (U, S, V) with U m V = S diagonal, U and V
/// unimodular.
struct SmithResult {
  IMat u, s, v;
};
SmithResult smith_normal_form(const IMat& m);

/// Clears denominators and divides by the content: the primitive integer
/// vector on the ray of v.  Requires v != 0 unless allow_zero.
IVec primitive_integer(const QVec& v, bool allow_zero = false);
IVec primitive(IVec v);
QVec to_rational(const IVec& v);

/// Symmetric positive-definite rational form.
struct SPDForm {
  QMat m;
  explicit SPDForm(QMat form);
  size_t dim() const { return m.rows(); }
  Rat eval(const QVec& x) const;               // x^T m x
  Scalar eval(const SVec& x) const;            // over a quadratic field
  Rat inner(const QVec& x, const QVec& y) const;
};

bool is_symmetric(const QMat& m);
/// Sylvester test: all leading principal minors positive.
bool is_positive_definite(const QMat& m);
/// All principal minors nonnegative (exponential; dimension capped at 12).
bool is_positive_semidefinite(const QMat& m);

}  // namespace edifice
