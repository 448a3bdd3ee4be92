#pragma once

#include <edifice/feasible.hpp>

#include <map>
#include <string>

namespace edifice {

/// Sign data of one cocharacter against the weight multiset: one of {+1,0,-1}
/// per weight index.  Duplicate weights always carry identical signs.
struct SignPattern {
  std::vector<int> signs;  // indexed like the weight list

  std::vector<size_t> plus() const;
  std::vector<size_t> zero() const;
  std::vector<size_t> minus() const;
  bool operator==(const SignPattern&) const = default;
};

/// Identifies (P_lambda, L_lambda) inside one apartment: the sets of
/// deduplicated weight classes pairing >= 0 and = 0 with lambda.  The
/// parabolic subgroup itself is determined by geq0 alone; zero pins the
/// R-Levi of the defining cocharacter.
struct ParabolicKey {
  std::vector<size_t> geq0;  // sorted weight-class ids
  std::vector<size_t> zero;  // sorted, subset of geq0

  bool operator==(const ParabolicKey&) const = default;
  bool operator<(const ParabolicKey& o) const {
    return geq0 != o.geq0 ? geq0 < o.geq0 : zero < o.zero;
  }
  bool same_parabolic(const ParabolicKey& o) const { return geq0 == o.geq0; }
};

/// Split group presented combinatorially through one apartment: the weight
/// multiset of an equivariant embedding module plus generators of the
/// relative Weyl group acting on the cocharacter lattice.
class ApartmentData {
 public:
  ApartmentData(std::string name, size_t rank, std::vector<IVec> weights,
                std::vector<IMat> weyl_gens, std::vector<IVec> roots = {},
                size_t weyl_order_bound = 10080);

  const std::string& name() const { return name_; }
  size_t rank() const { return rank_; }
  const std::vector<IVec>& weights() const { return weights_; }
  const std::vector<IVec>& weight_classes() const { return classes_; }
  size_t class_of(size_t weight_index) const { return class_of_[weight_index]; }
  const std::vector<IMat>& weyl_generators() const { return gens_; }
  const std::vector<IMat>& weyl_closure() const { return closure_; }
  const std::vector<size_t>& root_indices() const { return roots_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Class permutation induced by generator g: weight chi maps to chi.g^{-1}.
  const std::vector<size_t>& class_permutation(size_t gen) const { return perms_[gen]; }

  /// Optional display names for parabolic keys, keyed by geq0 class set.
  void set_label(const std::vector<size_t>& geq0_classes, std::string label);
  std::optional<std::string> label_of(const ParabolicKey& key) const;
  const std::map<std::vector<size_t>, std::string>& labels() const { return labels_; }

 private:
  std::string name_;
  size_t rank_;
  std::vector<IVec> weights_;
  std::vector<IMat> gens_;
  std::vector<size_t> roots_;
  std::vector<IVec> classes_;        // sorted unique weights
  std::vector<size_t> class_of_;     // weight index -> class id
  std::vector<IMat> closure_;        // full Weyl group, identity first
  std::vector<std::vector<size_t>> perms_;
  std::map<std::vector<size_t>, std::string> labels_;
  std::vector<std::string> warnings_;
};

SignPattern sign_partition(const ApartmentData& a, const SVec& lambda);
SignPattern sign_partition(const ApartmentData& a, const QVec& lambda);
ParabolicKey parabolic_key(const ApartmentData& a, const SVec& lambda);
ParabolicKey parabolic_key(const ApartmentData& a, const QVec& lambda);
ParabolicKey key_of_pattern(const ApartmentData& a, const SignPattern& s);

/// Integer witness realizing the sign pattern exactly, or nullopt.
std::optional<IVec> realize_pattern(const ApartmentData& a, const SignPattern& s);

/// Integer cocharacter with the same sign partition as lambda.  For rational
/// input this is the primitive rescaling; otherwise a witness of lambda's own
/// pattern (always feasible, lambda itself being a witness).
IVec cochar_approx(const ApartmentData& a, const SVec& lambda);

struct FanCell {
  SignPattern pattern;
  IVec witness;
};

struct FanRegion {
  ParabolicKey key;            // geq0 of the region; zero of its generic cell
  std::vector<size_t> cells;   // indices into ConeFan::cells
};

/// All realizable sign patterns of the arrangement, grouped by parabolic.
struct ConeFan {
  std::vector<FanCell> cells;      // sorted canonically (+ < 0 < - per class)
  std::vector<FanRegion> regions;  // sorted by geq0 class set
};

ConeFan enumerate_fan(const ApartmentData& a, size_t max_rank = 6);

/// Poset of the distinct R-parabolic keys of one apartment under reverse
/// inclusion of geq0 sets.  minimal_below lists, per node, the minimal
/// nonempty faces (vertices) lying below it; the node for the whole group
/// has none.
struct ApartmentPoset {
  std::vector<FanRegion> nodes;
  std::vector<std::vector<size_t>> minimal_below;
  std::vector<std::pair<size_t, size_t>> hasse;  // (lower, upper) covers
  size_t full_group_node;                        // node with geq0 = everything

  /// sigma_Q <= sigma_P iff geq0(P) is contained in geq0(Q).
  bool leq(size_t i, size_t j) const;
};

ApartmentPoset parabolic_poset(const ApartmentData& a, const ConeFan& fan);

/// Two distinct proper nodes containing the same minimal elements, if any —
/// a witness that the poset is not a simplicial complex.
std::optional<std::pair<size_t, size_t>> simplicial_witness(const ApartmentPoset& p);

std::vector<SVec> weyl_orbit(const ApartmentData& a, const SVec& lambda);

/// Induced map on cocharacter coordinates; when a pullback table is supplied
/// (one expected covector per target weight), the compatibility
/// chi' . f == table[chi'] is verified first.
SVec apply_map(const IMat& f, const ApartmentData& source, const ApartmentData& target,
               const SVec& lambda,
               const std::vector<IVec>* pullback_table = nullptr);

ApartmentData product(const ApartmentData& a1, const ApartmentData& a2);

/// Z-basis of the central cocharacters {v : <v, chi> = 0 for all chi}.
std::vector<IVec> central_cochars(const ApartmentData& a);

}  // namespace edifice
