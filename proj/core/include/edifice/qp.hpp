#pragma once

#include <edifice/linalg.hpp>

namespace edifice {

struct QPSolution {
  QVec minimizer;        // exact rational optimum
  QVec multipliers;      // one KKT multiplier per input constraint (0 off the active set)
  std::vector<size_t> active;  // indices of the reported active set
  Rat value;             // minimizer^T form minimizer
};

/// Exact minimizer of x^T F x subject to <x, c_i> >= 1 for every row c_i.
/// Active-set enumeration over linearly independent constraint subsets with
/// full KKT verification; nullopt when the polyhedron is empty.  Unique by
/// strict convexity.
std::optional<QPSolution> min_norm_qp(const std::vector<IVec>& constraints, const SPDForm& form);

/// Certified rational constants with c * v^T B v <= v^T A v <= C * v^T B v
/// for all v.  Exact on rational pencil eigenvalues of moderate height;
/// otherwise returns certified outer bounds.  Certification is a positive
/// semidefiniteness test of A - cB and CB - A.
std::pair<Rat, Rat> gen_eig_bounds(const SPDForm& a, const SPDForm& b);

}  // namespace edifice
