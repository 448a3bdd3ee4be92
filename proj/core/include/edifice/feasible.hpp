#pragma once

#include <edifice/linalg.hpp>

namespace edifice {

/// Homogeneous linear sign system: find an integer vector v with
///   <v, chi> > 0  for chi in strict,
///   <v, chi> >= 0 for chi in nonneg,
///   <v, chi> = 0  for chi in zero.
/// Returns the witness (primitive, possibly zero when strict is empty) or
/// nullopt when the system is infeasible.  Exact rational Fourier-Motzkin
/// elimination with back-substitution; the witness is re-checked against
/// every constraint before it is returned.
std::optional<IVec> strict_feasible(const std::vector<IVec>& strict,
                                    const std::vector<IVec>& nonneg,
                                    const std::vector<IVec>& zero, size_t rank);

/// One homogeneous inequality c.y > 0 (strict) or c.y >= 0.
struct HalfSpace {
  QVec c;
  bool strict;
};

/// Rational point satisfying every half-space, or nullopt.
std::optional<QVec> feasible_point(std::vector<HalfSpace> constraints, size_t dim);

}  // namespace edifice
