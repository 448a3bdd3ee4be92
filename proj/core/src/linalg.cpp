#include <edifice/linalg.hpp>

#include <algorithm>

namespace edifice {

QMat QMat::identity(size_t n) {
  QMat m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat QMat::from_rows(const std::vector<QVec>& rows) {
  if (rows.empty()) return QMat();
  QMat m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged rows");
    for (size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QVec QMat::row(size_t i) const {
  QVec r(cols_);
  for (size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

QVec QMat::col(size_t j) const {
  QVec c(rows_);
  for (size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

QMat QMat::transpose() const {
  QMat t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMat operator*(const QMat& a, const QMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  QMat c(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

QMat operator+(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum shape mismatch");
  QMat c(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

QMat operator-(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix diff shape mismatch");
  QMat c(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

QMat operator*(const Rat& c, const QMat& a) {
  QMat r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r(i, j) = c * a(i, j);
  return r;
}

QVec operator*(const QMat& a, const QVec& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix*vector shape mismatch");
  QVec r(a.rows(), Rat(0));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

QVec operator+(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector sum size mismatch");
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec operator-(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector diff size mismatch");
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec operator*(const Rat& c, const QVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot size mismatch");
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

std::vector<size_t> rref(QMat& m) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rat inv = 1 / m(r, c);
    for (size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t rank(QMat m) { return rref(m).size(); }

Rat det(QMat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  size_t n = m.rows();
  Rat d(1);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    Rat inv = 1 / m(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rat f = m(i, c) * inv;
      for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

std::optional<QMat> inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  size_t n = m.rows();
  QMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() != n || piv.back() != n - 1) return std::nullopt;
  QMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<QVec> kernel(const QMat& m) {
  QMat r = m;
  auto pivots = rref(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    QVec v(m.cols(), Rat(0));
    v[c] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve(const QMat& m, const QVec& b) {
  if (m.rows() != b.size()) throw std::invalid_argument("solve shape mismatch");
  QMat aug(m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;  // inconsistent
  QVec x(m.cols(), Rat(0));
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug(i, m.cols());
  return x;
}

std::vector<QVec> canonical_basis(const std::vector<QVec>& vectors) {
  if (vectors.empty()) return {};
  QMat m = QMat::from_rows(vectors);
  auto piv = rref(m);
  std::vector<QVec> basis;
  for (size_t i = 0; i < piv.size(); ++i) basis.push_back(m.row(i));
  return basis;
}

bool in_span(const std::vector<QVec>& basis, const QVec& v) {
  if (is_zero(v)) return true;
  auto all = basis;
  all.push_back(v);
  return canonical_basis(all).size() == canonical_basis(basis).size();
}

std::vector<QVec> subspace_intersection(const std::vector<QVec>& a, const std::vector<QVec>& b) {
  // span(a) ∩ span(b) via the kernel of the stacked coefficient matrix:
  // x = sum s_i a_i = sum t_j b_j.
  if (a.empty() || b.empty()) return {};
  size_t n = a[0].size();
  QMat m(n, a.size() + b.size());
  for (size_t j = 0; j < a.size(); ++j)
    for (size_t i = 0; i < n; ++i) m(i, j) = a[j][i];
  for (size_t j = 0; j < b.size(); ++j)
    for (size_t i = 0; i < n; ++i) m(i, a.size() + j) = -b[j][i];
  std::vector<QVec> result;
  for (const auto& k : kernel(m)) {
    QVec x(n, Rat(0));
    for (size_t j = 0; j < a.size(); ++j)
      for (size_t i = 0; i < n; ++i) x[i] += k[j] * a[j][i];
    if (!is_zero(x)) result.push_back(std::move(x));
  }
  return canonical_basis(result);
}

IMat IMat::identity(size_t n) {
  IMat m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IMat IMat::from_rows(const std::vector<IVec>& rows) {
  if (rows.empty()) return IMat();
  IMat m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged rows");
    for (size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IVec IMat::row(size_t i) const {
  IVec r(cols_);
  for (size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
  return r;
}

IMat IMat::transpose() const {
  IMat t(cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMat IMat::to_rational() const {
  QMat q(rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) q(i, j) = Rat((*this)(i, j));
  return q;
}

IMat operator*(const IMat& a, const IMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  IMat c(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IVec operator*(const IMat& a, const IVec& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix*vector shape mismatch");
  IVec r(a.rows(), Int(0));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

SVec operator*(const IMat& a, const SVec& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix*vector shape mismatch");
  SVec r(a.rows(), Scalar(0));
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r[i] += Scalar(Rat(a(i, j))) * v[j];
  return r;
}

Int dot(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot size mismatch");
  Int s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Scalar pair_scalar(const SVec& lambda, const IVec& chi) {
  if (lambda.size() != chi.size()) throw std::invalid_argument("pairing dimension mismatch");
  Scalar s(0);
  for (size_t i = 0; i < lambda.size(); ++i) s += lambda[i] * Scalar(Rat(chi[i]));
  return s;
}

IVec covector_times(const IVec& chi, const IMat& m) {
  if (chi.size() != m.rows()) throw std::invalid_argument("covector pullback shape mismatch");
  IVec r(m.cols(), Int(0));
  for (size_t j = 0; j < m.cols(); ++j)
    for (size_t i = 0; i < m.rows(); ++i) r[j] += chi[i] * m(i, j);
  return r;
}

bool is_unimodular(const IMat& m) {
  if (m.rows() != m.cols()) return false;
  Rat d = det(m.to_rational());
  return d == 1 || d == -1;
}

namespace {

// In-place integer row HNF-style elimination (Euclidean, no pivoting
// normalization beyond sign); returns the row-rank profile.
void hnf_rows(IMat& m) {
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    // gcd all rows >= r at column c into row r
    while (true) {
      size_t p = r;
      Int best(0);
      for (size_t i = r; i < m.rows(); ++i) {
        if (m(i, c) != 0 && (best == 0 || abs(m(i, c)) < abs(best))) {
          best = m(i, c);
          p = i;
        }
      }
      if (best == 0) break;
      if (p != r)
        for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
      bool done = true;
      for (size_t i = r + 1; i < m.rows(); ++i) {
        if (m(i, c) == 0) continue;
        Int q = m(i, c) / m(r, c);
        for (size_t j = 0; j < m.cols(); ++j) m(i, j) -= q * m(r, j);
        if (m(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (m(r, c) != 0) ++r;
  }
}

}  // namespace

std::vector<IVec> integer_kernel(const IMat& m) {
  size_t r = m.cols(), k = m.rows();
  // rows of [m^T | I]; unimodular row ops; rows whose m^T-part vanishes give
  // kernel generators in the identity part.
  IMat aug(r, k + r);
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < k; ++j) aug(i, j) = m(j, i);
    aug(i, k + i) = 1;
  }
  hnf_rows(aug);
  std::vector<IVec> basis;
  for (size_t i = 0; i < r; ++i) {
    bool zero = true;
    for (size_t j = 0; j < k; ++j)
      if (aug(i, j) != 0) zero = false;
    if (!zero) continue;
    IVec v(r);
    for (size_t j = 0; j < r; ++j) v[j] = aug(i, k + j);
    basis.push_back(std::move(v));
  }
  return basis;
}

SmithResult smith_normal_form(const IMat& m) {
  SmithResult res{IMat::identity(m.rows()), m, IMat::identity(m.cols())};
  IMat& s = res.s;
  size_t n = std::min(s.rows(), s.cols());
  for (size_t t = 0; t < n; ++t) {
    while (true) {
      // find the smallest nonzero entry in the remaining block
      size_t bi = t, bj = t;
      Int best(0);
      for (size_t i = t; i < s.rows(); ++i)
        for (size_t j = t; j < s.cols(); ++j)
          if (s(i, j) != 0 && (best == 0 || abs(s(i, j)) < abs(best))) {
            best = s(i, j);
            bi = i;
            bj = j;
          }
      if (best == 0) return res;
      if (bi != t) {
        for (size_t j = 0; j < s.cols(); ++j) std::swap(s(bi, j), s(t, j));
        for (size_t j = 0; j < res.u.cols(); ++j) std::swap(res.u(bi, j), res.u(t, j));
      }
      if (bj != t) {
        for (size_t i = 0; i < s.rows(); ++i) std::swap(s(i, bj), s(i, t));
        for (size_t i = 0; i < res.v.rows(); ++i) std::swap(res.v(i, bj), res.v(i, t));
      }
      bool clean = true;
      for (size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) == 0) continue;
        Int q = s(i, t) / s(t, t);
        for (size_t j = 0; j < s.cols(); ++j) s(i, j) -= q * s(t, j);
        for (size_t j = 0; j < res.u.cols(); ++j) res.u(i, j) -= q * res.u(t, j);
        if (s(i, t) != 0) clean = false;
      }
      for (size_t j = t + 1; j < s.cols(); ++j) {
        if (s(t, j) == 0) continue;
        Int q = s(t, j) / s(t, t);
        for (size_t i = 0; i < s.rows(); ++i) s(i, j) -= q * s(i, t);
        for (size_t i = 0; i < res.v.rows(); ++i) res.v(i, j) -= q * res.v(i, t);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      if (s(t, t) < 0) {
        for (size_t j = 0; j < s.cols(); ++j) s(t, j) = -s(t, j);
        for (size_t j = 0; j < res.u.cols(); ++j) res.u(t, j) = -res.u(t, j);
      }
      break;
    }
  }
  return res;
}

IVec primitive_integer(const QVec& v, bool allow_zero) {
  Int l(1);
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  IVec w(v.size());
  Int g(0);
  for (size_t i = 0; i < v.size(); ++i) {
    Rat scaled = Rat(l) * v[i];
    w[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w[i].get_mpz_t());
  }
  if (g == 0) {
    if (!allow_zero) throw std::invalid_argument("primitive_integer of zero vector");
    return w;
  }
  for (auto& x : w) x /= g;
  return w;
}

IVec primitive(IVec v) {
  Int g(0);
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) return v;
  for (auto& x : v) x /= g;
  return v;
}

QVec to_rational(const IVec& v) {
  QVec q(v.size());
  for (size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
  return q;
}

SPDForm::SPDForm(QMat form) : m(std::move(form)) {
  if (!is_symmetric(m)) throw std::invalid_argument("form is not symmetric");
  if (!is_positive_definite(m)) throw std::invalid_argument("form is not positive definite");
}

Rat SPDForm::eval(const QVec& x) const { return dot(x, m * x); }

Scalar SPDForm::eval(const SVec& x) const {
  if (x.size() != dim()) throw std::invalid_argument("form dimension mismatch");
  Scalar s(0);
  for (size_t i = 0; i < dim(); ++i)
    for (size_t j = 0; j < dim(); ++j) s += x[i] * x[j] * Scalar(m(i, j));
  return s;
}

Rat SPDForm::inner(const QVec& x, const QVec& y) const { return dot(x, m * y); }

bool is_symmetric(const QMat& m) {
  if (m.rows() != m.cols()) return false;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

namespace {

Rat principal_minor(const QMat& m, const std::vector<size_t>& idx) {
  QMat sub(idx.size(), idx.size());
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < idx.size(); ++j) sub(i, j) = m(idx[i], idx[j]);
  return det(sub);
}

}  // namespace

bool is_positive_definite(const QMat& m) {
  if (!is_symmetric(m)) return false;
  std::vector<size_t> idx;
  for (size_t k = 0; k < m.rows(); ++k) {
    idx.push_back(k);
    if (principal_minor(m, idx) <= 0) return false;
  }
  return true;
}

bool is_positive_semidefinite(const QMat& m) {
  if (!is_symmetric(m)) return false;
  size_t n = m.rows();
  if (n > 12) throw std::invalid_argument("PSD check capped at dimension 12");
  for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
    std::vector<size_t> idx;
    for (size_t k = 0; k < n; ++k)
      if (mask & (size_t{1} << k)) idx.push_back(k);
    if (principal_minor(m, idx) < 0) return false;
  }
  return true;
}

}  // namespace edifice
