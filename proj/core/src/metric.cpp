#include <edifice/metric.hpp>

namespace edifice {

namespace {

bool weyl_invariant(const QMat& form, const ApartmentData& a) {
  for (const auto& g : a.weyl_generators()) {
    QMat gq = g.to_rational();
    if (!(gq.transpose() * form * gq == form)) return false;
  }
  return true;
}

}  // namespace

AdmissibleMetric weyl_average(const QMat& form, const ApartmentData& a) {
  if (form.rows() != a.rank() || form.cols() != a.rank())
    throw std::invalid_argument("form dimension does not match the apartment rank");
  if (!is_symmetric(form)) throw std::invalid_argument("form is not symmetric");
  QMat sum(a.rank(), a.rank());
  for (const auto& w : a.weyl_closure()) {
    QMat wq = w.to_rational();
    sum = sum + wq.transpose() * form * wq;
  }
  QMat avg = rat(1, static_cast<long>(a.weyl_closure().size())) * sum;
  if (!weyl_invariant(avg, a)) throw std::logic_error("Weyl average is not invariant");
  return AdmissibleMetric{SPDForm(avg), {"weyl_average(" + a.name() + ")"}};
}

AdmissibleMetric standard_metric(const ApartmentData& a) {
  return weyl_average(QMat::identity(a.rank()), a);
}

AdmissibleMetric pullback(const AdmissibleMetric& ambient, const IMat& f) {
  if (f.rows() != ambient.dim()) throw std::invalid_argument("lattice map target mismatch");
  QMat fq = f.to_rational();
  if (rank(fq) != f.cols())
    throw std::invalid_argument("pullback along a map that is not injective over Q");
  AdmissibleMetric m{SPDForm(fq.transpose() * ambient.form.m * fq), ambient.provenance};
  m.provenance.push_back("pullback");
  return m;
}

AdmissibleMetric product_metric(const AdmissibleMetric& d1, const AdmissibleMetric& d2) {
  size_t n1 = d1.dim(), n2 = d2.dim();
  QMat block(n1 + n2, n1 + n2);
  for (size_t i = 0; i < n1; ++i)
    for (size_t j = 0; j < n1; ++j) block(i, j) = d1.form.m(i, j);
  for (size_t i = 0; i < n2; ++i)
    for (size_t j = 0; j < n2; ++j) block(n1 + i, n1 + j) = d2.form.m(i, j);
  AdmissibleMetric m{SPDForm(std::move(block)), {}};
  m.provenance = d1.provenance;
  m.provenance.insert(m.provenance.end(), d2.provenance.begin(), d2.provenance.end());
  m.provenance.push_back("product");
  return m;
}

CentralSplit central_split(const AdmissibleMetric& metric, const ApartmentData& a) {
  if (metric.dim() != a.rank()) throw std::invalid_argument("metric rank mismatch");
  size_t n = a.rank();
  CentralSplit split;
  auto z_int = central_cochars(a);
  for (const auto& z : z_int) split.z_basis.push_back(to_rational(z));

  if (split.z_basis.empty()) {
    split.proj_z = QMat(n, n);  // zero map
    split.proj_perp = QMat::identity(n);
    for (size_t i = 0; i < n; ++i) split.perp_basis.push_back(QMat::identity(n).row(i));
    return split;
  }

  // form-orthogonal projection onto span(Z): P = Z (Z^T F Z)^{-1} Z^T F
  size_t k = split.z_basis.size();
  QMat z(n, k);
  for (size_t j = 0; j < k; ++j)
    for (size_t i = 0; i < n; ++i) z(i, j) = split.z_basis[j][i];
  QMat gram = z.transpose() * metric.form.m * z;
  auto gram_inv = inverse(gram);
  if (!gram_inv) throw std::logic_error("central Gram matrix singular for an SPD form");
  split.proj_z = z * *gram_inv * z.transpose() * metric.form.m;
  split.proj_perp = QMat::identity(n) - split.proj_z;

  // basis of the orthogonal complement: kernel of Z^T F
  QMat zf = z.transpose() * metric.form.m;
  split.perp_basis = kernel(zf);

  for (size_t j = 0; j < k; ++j) {
    QVec zb = split.z_basis[j];
    if (!(split.proj_z * zb == zb)) throw std::logic_error("central projector not the identity on Z");
  }
  return split;
}

std::pair<Rat, Rat> bilipschitz(const AdmissibleMetric& d1, const AdmissibleMetric& d2) {
  if (d1.dim() != d2.dim()) throw std::invalid_argument("metric dimension mismatch");
  return gen_eig_bounds(d1.form, d2.form);
}

Scalar dist2(const AdmissibleMetric& metric, const SVec& x, const SVec& y) {
  if (x.size() != metric.dim() || y.size() != metric.dim())
    throw std::invalid_argument("point dimension mismatch");
  SVec diff(x.size());
  for (size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  return metric.form.eval(diff);
}

Rat dist2(const AdmissibleMetric& metric, const QVec& x, const QVec& y) {
  if (x.size() != metric.dim() || y.size() != metric.dim())
    throw std::invalid_argument("point dimension mismatch");
  return metric.form.eval(x - y);
}

Scalar spherical_dist2(const AdmissibleMetric& metric, const QVec& x, const QVec& y) {
  if (is_zero(x) || is_zero(y)) throw std::invalid_argument("spherical distance of the zero point");
  Rat nx = metric.form.eval(x), ny = metric.form.eval(y);
  Rat p = metric.form.inner(x, y);
  // 2 - 2 p / sqrt(q) with q = |x|^2 |y|^2: write sqrt(q) = s sqrt(d) / den(q)
  Rat q = nx * ny;
  Int big = q.get_num() * q.get_den();
  auto [s, d] = squarefree_split(big);
  if (d == 1) {
    // q is a perfect rational square
    Rat sq = rat(s, q.get_den());
    return Scalar(Rat(2) - 2 * p / sq);
  }
  // 1/sqrt(q) = den(q) / (s sqrt(d)) = den(q) sqrt(d) / (s d)
  Rat b = -2 * p * rat(q.get_den(), s * d);
  if (!d.fits_ulong_p()) throw std::invalid_argument("radicand too large for exact representation");
  return Scalar(Rat(2), b, d.get_ui());
}

Rat type_gap2(const AdmissibleMetric& metric, const ApartmentData& a, const QVec& lambda) {
  SVec l(lambda.begin(), lambda.end());
  auto orbit = weyl_orbit(a, l);
  Rat best(0);
  bool found = false;
  for (const auto& pt : orbit) {
    QVec q(pt.size());
    for (size_t i = 0; i < pt.size(); ++i) q[i] = pt[i].rational();
    if (q == lambda) continue;
    Rat d = dist2(metric, q, lambda);
    if (!found || d < best) {
      best = d;
      found = true;
    }
  }
  return found ? best : Rat(0);
}

}  // namespace edifice
