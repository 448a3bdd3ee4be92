#pragma once

#include <edifice/apartment.hpp>
#include <edifice/qp.hpp>

namespace edifice {

/// Weyl-invariant positive-definite form on a reference apartment together
/// with the chain of constructions that produced it.  All distances are kept
/// squared so every comparison stays rational.
struct AdmissibleMetric {
  SPDForm form;
  std::vector<std::string> provenance;

  size_t dim() const { return form.dim(); }
};

/// (1/|W|) sum over w of w^T form w; exact, Weyl-invariant, SPD.
AdmissibleMetric weyl_average(const QMat& form, const ApartmentData& a);

/// Identity form averaged over the Weyl group of a.
AdmissibleMetric standard_metric(const ApartmentData& a);

/// f^T form' f along an injective-over-Q lattice map.
AdmissibleMetric pullback(const AdmissibleMetric& ambient, const IMat& f);

/// Block-diagonal form on the product apartment.
AdmissibleMetric product_metric(const AdmissibleMetric& d1, const AdmissibleMetric& d2);

/// Form-orthogonal decomposition along the central cocharacter sublattice:
/// x = x_Z + x_perp with the two parts orthogonal for the metric.
struct CentralSplit {
  std::vector<QVec> z_basis;
  std::vector<QVec> perp_basis;
  QMat proj_z, proj_perp;
};

CentralSplit central_split(const AdmissibleMetric& metric, const ApartmentData& a);

/// Certified (c, C) with c * d2^2 <= d1^2 <= C * d2^2 pointwise.
std::pair<Rat, Rat> bilipschitz(const AdmissibleMetric& d1, const AdmissibleMetric& d2);

/// Squared distance (x-y)^T form (x-y); exact over quadratic extensions.
Scalar dist2(const AdmissibleMetric& metric, const SVec& x, const SVec& y);
Rat dist2(const AdmissibleMetric& metric, const QVec& x, const QVec& y);

/// Squared chordal distance between the rays of x and y:
/// 2 - 2 <x,y> / sqrt(|x|^2 |y|^2), exact in a quadratic extension.
/// Rational coordinates only; zero inputs are rejected.
Scalar spherical_dist2(const AdmissibleMetric& metric, const QVec& x, const QVec& y);

/// Smallest positive squared distance between distinct points of the Weyl
/// orbit of lambda: the same-type separation gap inside one apartment.
/// Zero when the orbit is a single point.
Rat type_gap2(const AdmissibleMetric& metric, const ApartmentData& a, const QVec& lambda);

}  // namespace edifice
