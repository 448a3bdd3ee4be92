#pragma once

#include <edifice/blockgroup.hpp>
#include <edifice/metric.hpp>

#include <functional>

namespace edifice {

/// One-parameter subgroup g . diag(a^{w_1}, ..., a^{w_n}) . g^{-1}.
/// Rational weights stand for the primitive integer rescaling.
struct Cocharacter {
  QMat conjugator;
  QVec weights;

  size_t n() const { return conjugator.rows(); }
  /// Value at a rational parameter (integer-rescaled weights).
  QMat evaluate(const Rat& a) const;
  /// Eigencolumn span for one weight.
  std::vector<QVec> eigenspace(const Rat& w) const;
  std::vector<Rat> distinct_weights_desc() const;
};

/// Whether the cocharacter lands in H: conjugator membership, or the graded
/// components of the pattern plus sampled determinant checks.
bool cochar_in_group(const BlockGroupSpec& h, const Cocharacter& c);

struct FlagLevel {
  Rat weight;
  std::vector<QVec> basis;  // canonical (RREF) basis of the cumulative space
};

/// Point of the vector edifice of a block subgroup H of GL_n: a weighted
/// flag of Q^n, strictly decreasing weights, strictly growing subspaces
/// ending at the whole space.  The flag data is a complete invariant for
/// GL_n; for proper H equality defers to equal_points.  A defining
/// cocharacter is carried as a witness (not part of the identity).
struct EdificePoint {
  std::vector<FlagLevel> levels;
  GroupPtr group;
  std::optional<Cocharacter> rep;

  size_t n() const { return group->n(); }
  bool is_origin() const {
    return levels.size() == 1 && levels[0].weight == 0;
  }
  std::vector<Rat> weight_multiset() const;  // one weight per dimension, descending
  /// Literal canonical-form equality (complete for GL_n and SL_n).
  bool same_flag(const EdificePoint& o) const;
};

EdificePoint point_from_cochar(const GroupPtr& h, const Cocharacter& c);

/// Decides x ~ y in V_H(Q): for linear-type H by canonical flags, otherwise
/// by solving the parabolic conjugation system inside H's pattern.
bool equal_points(const EdificePoint& x, const EdificePoint& y);

enum class StabKind { Parabolic, Levi, Unipotent };

/// Membership predicate of P_lambda(H), L_lambda(H) or U_lambda(H).
struct FlagStabilizer {
  StabKind kind;
  GroupPtr group;
  Cocharacter lambda;
  std::vector<FlagLevel> flag;
  bool member(const QMat& g) const;
};

FlagStabilizer parabolic_of(const GroupPtr& h, const Cocharacter& c);
FlagStabilizer levi_of(const GroupPtr& h, const Cocharacter& c);
FlagStabilizer unip_of(const GroupPtr& h, const Cocharacter& c);

/// Zero-weight graded part of g when the negative parts vanish; nullopt when
/// the limit does not exist.
std::optional<QMat> limit_map(const GroupPtr& h, const Cocharacter& c, const QMat& g);

struct BigCellFactors {
  QMat p;        // in P_lambda(H)
  QMat u_minus;  // in U_{-lambda}(H)
};

/// Unique factorization g = p . u_minus when g lies in the big cell of H.
std::optional<BigCellFactors> big_cell_factor(const GroupPtr& h, const Cocharacter& c,
                                              const QMat& g);

EdificePoint act(const QMat& g, const EdificePoint& x);

/// Thrown by the point operations that need two points in one apartment.
struct NoCommonApartment : std::runtime_error {
  NoCommonApartment() : std::runtime_error("points do not lie in a common apartment") {}
};

struct NotOpposite : std::runtime_error {
  NotOpposite() : std::runtime_error("points are not opposite") {}
};

/// Basis of Q^n splitting both flags (columns), or nullopt when no maximal
/// split torus of H lies in P_x intersect P_y.  Supported kinds: linear
/// (GL/SL), block-diagonal Levis and tori, and upper-triangular solvable
/// patterns; anything else is rejected with an exception.
std::optional<QMat> common_apartment(const EdificePoint& x, const EdificePoint& y);

/// Weight of each basis column under x (columns must split x's flag).
QVec weights_in_basis(const EdificePoint& x, const QMat& basis);

EdificePoint add(const EdificePoint& x, const EdificePoint& y);
EdificePoint scale(const Rat& a, const EdificePoint& x);
EdificePoint opposite(const EdificePoint& x, const QMat& basis);
bool is_opposite(const EdificePoint& x, const EdificePoint& y);
/// The unique lambda with x = phi(lambda), y = phi(-lambda); throws unless
/// the points are opposite.
Cocharacter recover_lambda(const EdificePoint& x, const EdificePoint& y);
EdificePoint geodesic(const EdificePoint& x, const EdificePoint& y, const Rat& t);

/// Reinterprets the flag over a larger block group (pattern containment is
/// verified).
EdificePoint include_map(const EdificePoint& x, const GroupPtr& super);

/// Preimage of x under the inclusion V_sub -> V_super: a representative
/// cocharacter of x valued in sub, when the catalogued torus search finds
/// one.
std::optional<EdificePoint> include_preimage(const GroupPtr& sub, const EdificePoint& x);

/// Image under the unipotent quotient catalogued in x's group spec.
EdificePoint quotient_map(const EdificePoint& x);
/// n in N(Q) with x2 = n . x1, when the images under quotient_map agree.
std::optional<QMat> quotient_fiber_witness(const EdificePoint& x1, const EdificePoint& x2);

/// Projection V_G -> V_L for G reductive linear type, P = P_lambda and
/// L = L_lambda with lambda diagonal in the standard basis; levi_spec is the
/// block-diagonal spec of L.
EdificePoint levi_projection(const Cocharacter& lambda, const GroupPtr& levi_spec,
                             const EdificePoint& x);

/// The unique u in U_lambda(H)(Q) with L_mu = u L_lambda u^{-1}; requires
/// P_lambda = P_mu and U_lambda = U_mu.
QMat levi_transporter(const GroupPtr& h, const Cocharacter& lambda, const Cocharacter& mu);

/// Squared distance between points over subgroups of GL_n, computed in a
/// common apartment of the ambient GL_n with an S_n-invariant form on the
/// weight coordinates (identity when form is null).
Rat point_dist2(const EdificePoint& x, const EdificePoint& y, const SPDForm* form = nullptr);

}  // namespace edifice
