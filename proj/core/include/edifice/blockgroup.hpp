#pragma once

#include <edifice/linalg.hpp>
#include <edifice/prng.hpp>

#include <memory>
#include <string>

namespace edifice {

enum class Entry : char { Free = 'f', Zero = 'z', One = 'o' };

struct DetConstraint {
  std::vector<size_t> block;  // row/column indices of the sub-block
  bool unit = false;          // true: det != 0; false: det == value
  Rat value = Rat(1);
  bool operator==(const DetConstraint&) const = default;
};

/// Normal unipotent block N = { identity + free entries at (i in keep,
/// j not in keep) }; the quotient keeps the keep x keep sub-pattern.
struct UnipotentQuotient {
  std::vector<size_t> keep;
  std::string quotient_name;
};

/// Subgroup of GL_n cut out by an entry pattern plus determinant constraints
/// on sub-blocks.  Closure under product and inverse is checked on a seeded
/// random sample at construction; the catalogued specs (GL_n, SL_n, standard
/// parabolics, Levis, tori, the Borel of SL_2, GL_2 x V inside GL_3) are
/// certified exactly in the test suite.
class BlockGroupSpec {
 public:
  BlockGroupSpec(std::string name, size_t n, std::vector<std::vector<Entry>> pattern,
                 std::vector<DetConstraint> det = {},
                 std::optional<UnipotentQuotient> quotient = std::nullopt);

  const std::string& name() const { return name_; }
  size_t n() const { return n_; }
  Entry entry(size_t i, size_t j) const { return pattern_[i][j]; }
  const std::vector<std::vector<Entry>>& pattern() const { return pattern_; }
  const std::vector<DetConstraint>& det_constraints() const { return det_; }
  const std::optional<UnipotentQuotient>& unipotent_quotient() const { return quotient_; }

  bool member(const QMat& g) const;
  /// Random member; deterministic for a fixed generator state.
  QMat sample(Rng& rng, long height = 4) const;

  bool all_free() const { return all_free_; }
  /// All entries free and no value-determinant constraint.
  bool is_general_linear() const;
  /// All entries free (value-determinant constraints allowed, e.g. SL_n).
  bool is_linear_type() const { return all_free_; }
  /// Partition into diagonal blocks when the pattern is block-diagonal with
  /// free blocks; empty otherwise.
  const std::vector<std::vector<size_t>>& diag_blocks() const { return diag_blocks_; }
  bool is_block_diagonal() const { return !diag_blocks_.empty(); }
  /// Upper-triangular pattern with free diagonal (Borel type).
  bool is_upper_solvable() const { return upper_solvable_; }
  /// Strictly upper free positions (the unipotent coordinates of a Borel
  /// type pattern).
  std::vector<std::pair<size_t, size_t>> unipotent_positions() const;

  bool same_spec(const BlockGroupSpec& o) const {
    return n_ == o.n_ && pattern_ == o.pattern_ && det_ == o.det_;
  }
  /// Pattern-level containment: every member of *this satisfies o's pattern
  /// and o's determinant constraints appear among ours.
  bool contained_in(const BlockGroupSpec& o) const;

  // catalogue
  static std::shared_ptr<const BlockGroupSpec> gl(size_t n);
  static std::shared_ptr<const BlockGroupSpec> sl(size_t n);
  static std::shared_ptr<const BlockGroupSpec> diag_torus(size_t n);
  static std::shared_ptr<const BlockGroupSpec> borel_sl2();
  /// Block upper-triangular parabolic of GL_n for the given composition.
  static std::shared_ptr<const BlockGroupSpec> block_upper(const std::vector<size_t>& sizes);
  /// Block diagonal Levi of GL_n for the given composition.
  static std::shared_ptr<const BlockGroupSpec> block_diag(const std::vector<size_t>& sizes);
  /// GL_2 x V embedded in GL_3 as [[A, v], [0, 1]].
  static std::shared_ptr<const BlockGroupSpec> gl2_semidirect_gl3();

 private:
  std::string name_;
  size_t n_;
  std::vector<std::vector<Entry>> pattern_;
  std::vector<DetConstraint> det_;
  std::optional<UnipotentQuotient> quotient_;
  bool all_free_ = false;
  bool upper_solvable_ = false;
  std::vector<std::vector<size_t>> diag_blocks_;
};

using GroupPtr = std::shared_ptr<const BlockGroupSpec>;

}  // namespace edifice
