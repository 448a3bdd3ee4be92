#include <edifice/blockgroup.hpp>

#include <algorithm>

namespace edifice {

BlockGroupSpec::BlockGroupSpec(std::string name, size_t n,
                               std::vector<std::vector<Entry>> pattern,
                               std::vector<DetConstraint> det,
                               std::optional<UnipotentQuotient> quotient)
    : name_(std::move(name)), n_(n), pattern_(std::move(pattern)), det_(std::move(det)),
      quotient_(std::move(quotient)) {
  if (pattern_.size() != n_) throw std::invalid_argument("pattern row count mismatch");
  for (const auto& row : pattern_)
    if (row.size() != n_) throw std::invalid_argument("pattern column count mismatch");
  for (const auto& c : det_) {
    for (size_t i : c.block)
      if (i >= n_) throw std::invalid_argument("determinant block index out of range");
    if (!c.unit && c.value == 0) throw std::invalid_argument("determinant constrained to zero");
  }

  all_free_ = true;
  for (const auto& row : pattern_)
    for (Entry e : row)
      if (e != Entry::Free) all_free_ = false;

  upper_solvable_ = true;
  for (size_t i = 0; i < n_ && upper_solvable_; ++i) {
    for (size_t j = 0; j < n_; ++j) {
      if (i > j && pattern_[i][j] != Entry::Zero) upper_solvable_ = false;
      if (i == j && pattern_[i][j] == Entry::Zero) upper_solvable_ = false;
    }
  }

  // detect a block-diagonal pattern: free within consecutive diagonal
  // blocks, zero everywhere else
  {
    std::vector<std::vector<size_t>> blocks;
    size_t pos = 0;
    bool ok = true;
    while (pos < n_ && ok) {
      size_t end = pos + 1;  // widen while a free entry couples columns
      bool grew = true;
      while (grew) {
        grew = false;
        for (size_t i = pos; i < end && !grew; ++i)
          for (size_t j = end; j < n_ && !grew; ++j)
            if (pattern_[i][j] != Entry::Zero || pattern_[j][i] != Entry::Zero) {
              end = j + 1;
              grew = true;
            }
      }
      std::vector<size_t> blk;
      for (size_t k = pos; k < end; ++k) blk.push_back(k);
      for (size_t i = pos; i < end && ok; ++i)
        for (size_t j = pos; j < end && ok; ++j)
          if (pattern_[i][j] != Entry::Free) ok = false;
      blocks.push_back(std::move(blk));
      pos = end;
    }
    if (ok) diag_blocks_ = std::move(blocks);
  }

  if (quotient_) {
    for (size_t k : quotient_->keep)
      if (k >= n_) throw std::invalid_argument("quotient keep index out of range");
  }

  // randomized closure check (products and inverses stay in the set)
  Rng rng(0x9e3779b97f4a7c15ULL ^ n_);
  for (int trial = 0; trial < 6; ++trial) {
    QMat g = sample(rng), h = sample(rng);
    if (!member(g * h)) throw std::invalid_argument("pattern set not closed under products");
    auto gi = inverse(g);
    if (!gi || !member(*gi)) throw std::invalid_argument("pattern set not closed under inverses");
  }

  if (quotient_) {
    // pattern-level normality of N on samples
    std::vector<bool> keep(n_, false);
    for (size_t k : quotient_->keep) keep[k] = true;
    auto in_n = [&](const QMat& m) {
      for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j) {
          Rat expect = i == j ? Rat(1) : Rat(0);
          bool free_slot = keep[i] && !keep[j];
          if (!free_slot && m(i, j) != expect) return false;
        }
      return true;
    };
    for (int trial = 0; trial < 6; ++trial) {
      QMat g = sample(rng);
      QMat u = QMat::identity(n_);
      for (size_t i = 0; i < n_; ++i)
        for (size_t j = 0; j < n_; ++j)
          if (keep[i] && !keep[j]) u(i, j) = rng.rational();
      QMat conj = g * u * *inverse(g);
      if (!in_n(conj)) throw std::invalid_argument("quotient block is not normal");
    }
  }
}

bool BlockGroupSpec::member(const QMat& g) const {
  if (g.rows() != n_ || g.cols() != n_) return false;
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = 0; j < n_; ++j) {
      if (pattern_[i][j] == Entry::Zero && g(i, j) != 0) return false;
      if (pattern_[i][j] == Entry::One && g(i, j) != 1) return false;
    }
  if (det(g) == 0) return false;
  for (const auto& c : det_) {
    QMat sub(c.block.size(), c.block.size());
    for (size_t i = 0; i < c.block.size(); ++i)
      for (size_t j = 0; j < c.block.size(); ++j) sub(i, j) = g(c.block[i], c.block[j]);
    Rat d = det(sub);
    if (c.unit ? d == 0 : d != c.value) return false;
  }
  return true;
}

QMat BlockGroupSpec::sample(Rng& rng, long height) const {
  for (int attempt = 0; attempt < 200; ++attempt) {
    QMat g(n_, n_);
    for (size_t i = 0; i < n_; ++i)
      for (size_t j = 0; j < n_; ++j) {
        switch (pattern_[i][j]) {
          case Entry::Free:
            g(i, j) = rng.rational(height);
            break;
          case Entry::Zero:
            g(i, j) = 0;
            break;
          case Entry::One:
            g(i, j) = 1;
            break;
        }
      }
    if (det(g) == 0) continue;
    bool ok = true;
    for (const auto& c : det_) {
      QMat sub(c.block.size(), c.block.size());
      for (size_t i = 0; i < c.block.size(); ++i)
        for (size_t j = 0; j < c.block.size(); ++j) sub(i, j) = g(c.block[i], c.block[j]);
      Rat d = det(sub);
      if (d == 0) {
        ok = false;
        break;
      }
      if (c.unit || d == c.value) continue;
      // rescale one all-free row of the block to hit the required value
      bool fixed = false;
      for (size_t r : c.block) {
        bool row_free = true;
        for (size_t j = 0; j < n_; ++j)
          if (g(r, j) != 0 && pattern_[r][j] != Entry::Free) row_free = false;
        if (!row_free) continue;
        Rat scale = c.value / d;
        for (size_t j = 0; j < n_; ++j) g(r, j) *= scale;
        fixed = true;
        break;
      }
      if (!fixed) {
        ok = false;
        break;
      }
    }
    if (ok && member(g)) return g;
  }
  throw std::runtime_error("failed to sample a member of " + name_);
}

bool BlockGroupSpec::is_general_linear() const {
  if (!all_free_) return false;
  for (const auto& c : det_)
    if (!c.unit) return false;
  return true;
}

std::vector<std::pair<size_t, size_t>> BlockGroupSpec::unipotent_positions() const {
  std::vector<std::pair<size_t, size_t>> pos;
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = i + 1; j < n_; ++j)
      if (pattern_[i][j] == Entry::Free) pos.emplace_back(i, j);
  return pos;
}

bool BlockGroupSpec::contained_in(const BlockGroupSpec& o) const {
  if (n_ != o.n_) return false;
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = 0; j < n_; ++j) {
      if (o.pattern_[i][j] == Entry::Zero && pattern_[i][j] != Entry::Zero) return false;
      if (o.pattern_[i][j] == Entry::One && pattern_[i][j] != Entry::One) return false;
    }
  for (const auto& c : o.det_)
    if (std::find(det_.begin(), det_.end(), c) == det_.end()) return false;
  return true;
}

namespace {

std::vector<std::vector<Entry>> filled(size_t n, Entry e) {
  return std::vector<std::vector<Entry>>(n, std::vector<Entry>(n, e));
}

std::vector<size_t> full_block(size_t n) {
  std::vector<size_t> b(n);
  for (size_t i = 0; i < n; ++i) b[i] = i;
  return b;
}

}  // namespace

GroupPtr BlockGroupSpec::gl(size_t n) {
  return std::make_shared<BlockGroupSpec>("GL" + std::to_string(n), n, filled(n, Entry::Free));
}

GroupPtr BlockGroupSpec::sl(size_t n) {
  return std::make_shared<BlockGroupSpec>(
      "SL" + std::to_string(n), n, filled(n, Entry::Free),
      std::vector<DetConstraint>{{full_block(n), false, Rat(1)}});
}

GroupPtr BlockGroupSpec::diag_torus(size_t n) {
  auto p = filled(n, Entry::Zero);
  for (size_t i = 0; i < n; ++i) p[i][i] = Entry::Free;
  return std::make_shared<BlockGroupSpec>("T" + std::to_string(n), n, std::move(p));
}

GroupPtr BlockGroupSpec::borel_sl2() {
  auto p = filled(2, Entry::Free);
  p[1][0] = Entry::Zero;
  return std::make_shared<BlockGroupSpec>(
      "B(SL2)", 2, std::move(p), std::vector<DetConstraint>{{full_block(2), false, Rat(1)}});
}

GroupPtr BlockGroupSpec::block_upper(const std::vector<size_t>& sizes) {
  size_t n = 0;
  for (size_t s : sizes) n += s;
  auto p = filled(n, Entry::Free);
  size_t row_start = 0;
  std::string name = "P(";
  for (size_t b = 0; b < sizes.size(); ++b) {
    for (size_t i = row_start; i < row_start + sizes[b]; ++i)
      for (size_t j = 0; j < row_start; ++j) p[i][j] = Entry::Zero;
    row_start += sizes[b];
    name += (b ? "," : "") + std::to_string(sizes[b]);
  }
  return std::make_shared<BlockGroupSpec>(name + ")", n, std::move(p));
}

GroupPtr BlockGroupSpec::block_diag(const std::vector<size_t>& sizes) {
  size_t n = 0;
  for (size_t s : sizes) n += s;
  auto p = filled(n, Entry::Zero);
  size_t start = 0;
  std::string name = "L(";
  for (size_t b = 0; b < sizes.size(); ++b) {
    for (size_t i = start; i < start + sizes[b]; ++i)
      for (size_t j = start; j < start + sizes[b]; ++j) p[i][j] = Entry::Free;
    start += sizes[b];
    name += (b ? "," : "") + std::to_string(sizes[b]);
  }
  return std::make_shared<BlockGroupSpec>(name + ")", n, std::move(p));
}

GroupPtr BlockGroupSpec::gl2_semidirect_gl3() {
  auto p = filled(3, Entry::Free);
  p[2][0] = Entry::Zero;
  p[2][1] = Entry::Zero;
  p[2][2] = Entry::One;
  return std::make_shared<BlockGroupSpec>("GL2xV", 3, std::move(p),
                                          std::vector<DetConstraint>{},
                                          UnipotentQuotient{{0, 1}, "GL2"});
}

}  // namespace edifice
