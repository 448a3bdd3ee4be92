#pragma once

#include <edifice/apartment.hpp>
#include <edifice/metric.hpp>

namespace edifice {

/// Linear action of a split group presented through one apartment: the
/// weights of the torus on the module.
struct LinearAction {
  ApartmentData apartment;
};

/// Module point recorded through its support: the weights with nonzero
/// coordinate, and those coordinates.
struct StatePoint {
  std::vector<size_t> support;  // indices into the apartment's weight list
  SVec coords;                  // one nonzero scalar per support index

  StatePoint() = default;
  StatePoint(std::vector<size_t> support_, SVec coords_);
};

/// Cone {v : <v, chi> >= 0 for chi in the support}: inequality description
/// plus a lineality basis and the extreme rays of the pointed quotient.
struct DestabCone {
  std::vector<IVec> inequalities;
  std::vector<IVec> lineality;
  std::vector<IVec> rays;  // primitive, deterministic order
  size_t rank = 0;

  bool contains(const QVec& v) const;
};

bool destabilizes(const LinearAction& a, const StatePoint& x, const SVec& lambda);
std::optional<StatePoint> limit_point(const LinearAction& a, const StatePoint& x,
                                      const SVec& lambda);

/// Exact orbit membership for the split torus: equal supports and every
/// coordinate ratio realized by a rational torus point (an s-th power
/// condition along the Smith form of the support characters).  Rational
/// coordinates only.
bool torus_orbit_member(const LinearAction& a, const StatePoint& x, const StatePoint& y);

/// The limit exists and leaves the torus orbit.
bool properly_destabilizes_torus(const LinearAction& a, const StatePoint& x, const SVec& lambda);

DestabCone destab_cone(const LinearAction& a, const StatePoint& x);

/// C = -C, decided on extreme rays (the lineality part is symmetric by
/// construction).
bool is_cr_cone(const DestabCone& c);

struct KempfResult {
  IVec lambda_opt;   // primitive integer point on the optimal ray
  Rat value_sq;      // squared optimal value  min<lambda,chi>^2 / |lambda|^2
  QVec minimizer;    // the rational QP minimizer itself
  QVec multipliers;  // KKT certificate
};

/// Optimal destabilising direction: maximizes min <lambda,chi>/|lambda| over
/// the support via the dual min-norm program; nullopt means semistable.
std::optional<KempfResult> kempf_optimal(const LinearAction& a, const StatePoint& x,
                                         const AdmissibleMetric& metric);

struct OptimalParabolic {
  ParabolicKey key;
  bool unopposed;  // -lambda_opt outside the destabilising cone
};

OptimalParabolic optimal_parabolic(const LinearAction& a, const StatePoint& x,
                                   const IVec& lambda_opt);

}  // namespace edifice
