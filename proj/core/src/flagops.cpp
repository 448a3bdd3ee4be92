#include <edifice/flagpoint.hpp>

#include <algorithm>
#include <functional>
#include <map>

namespace edifice {

namespace {

std::vector<std::vector<QVec>> cumulative_flag(const EdificePoint& x) {
  std::vector<std::vector<QVec>> f;
  for (const auto& lv : x.levels) f.push_back(lv.basis);
  return f;
}

std::vector<QVec> full_space_basis(size_t n) {
  std::vector<QVec> b;
  for (size_t k = 0; k < n; ++k) {
    QVec e(n, Rat(0));
    e[k] = 1;
    b.push_back(std::move(e));
  }
  return b;
}

// Common refinement of two flags of Q^n (restricted to `ambient` when given):
// returns basis columns with their (x-level, y-level) cell, preferring
// standard basis vectors in index order.
struct RefinedColumn {
  QVec v;
  size_t xi, yj;  // 1-based level indices
};

std::vector<RefinedColumn> refine_flags(const std::vector<std::vector<QVec>>& f,
                                        const std::vector<std::vector<QVec>>& g, size_t n,
                                        const std::vector<QVec>* ambient = nullptr) {
  auto meet = [&](const std::vector<QVec>& a, const std::vector<QVec>& b) {
    return subspace_intersection(a, b);
  };
  size_t p = f.size(), q = g.size();
  std::vector<RefinedColumn> out;
  auto restricted = [&](const std::vector<QVec>& s) {
    return ambient ? meet(s, *ambient) : s;
  };
  for (size_t i = 1; i <= p; ++i) {
    for (size_t j = 1; j <= q; ++j) {
      auto t = meet(restricted(f[i - 1]), restricted(g[j - 1]));
      std::vector<QVec> d;  // T_{i-1,j} + T_{i,j-1}
      if (i > 1) {
        auto a = meet(restricted(f[i - 2]), restricted(g[j - 1]));
        d.insert(d.end(), a.begin(), a.end());
      }
      if (j > 1) {
        auto b = meet(restricted(f[i - 1]), restricted(g[j - 2]));
        d.insert(d.end(), b.begin(), b.end());
      }
      auto acc = canonical_basis(d);
      while (acc.size() < t.size()) {
        QVec pick;
        bool found = false;
        for (size_t k = 0; k < n && !found; ++k) {
          QVec e(n, Rat(0));
          e[k] = 1;
          if (in_span(t, e) && !in_span(acc, e)) {
            pick = e;
            found = true;
          }
        }
        if (!found) {
          for (const auto& v : t)
            if (!in_span(acc, v)) {
              pick = v;
              found = true;
              break;
            }
        }
        if (!found) throw std::logic_error("refinement failed to extend a cell");
        out.push_back({pick, i, j});
        acc.push_back(pick);
        acc = canonical_basis(acc);
      }
    }
  }
  return out;
}

std::optional<QMat> common_apartment_linear(const EdificePoint& x, const EdificePoint& y) {
  size_t n = x.n();
  auto cols = refine_flags(cumulative_flag(x), cumulative_flag(y), n);
  if (cols.size() != n) throw std::logic_error("flag refinement is not a basis");
  QMat basis(n, n);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) basis(i, k) = cols[k].v[i];
  if (!inverse(basis)) throw std::logic_error("flag refinement yielded a singular basis");
  return basis;
}

std::optional<QMat> common_apartment_block_diag(const EdificePoint& x, const EdificePoint& y) {
  size_t n = x.n();
  const auto& blocks = x.group->diag_blocks();
  std::vector<QVec> columns;
  for (const auto& blk : blocks) {
    std::vector<QVec> coord;
    for (size_t k : blk) {
      QVec e(n, Rat(0));
      e[k] = 1;
      coord.push_back(std::move(e));
    }
    auto cols = refine_flags(cumulative_flag(x), cumulative_flag(y), n, &coord);
    if (cols.size() != blk.size())
      throw std::logic_error("flag does not decompose along the diagonal blocks");
    for (auto& c : cols) columns.push_back(c.v);
  }
  QMat basis(n, n);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) basis(i, k) = columns[k][i];
  if (!inverse(basis)) throw std::logic_error("blockwise refinement singular");
  return basis;
}

// nested coordinate chains with prescribed cumulative sizes
void coordinate_chains(size_t n, const std::vector<size_t>& dims, size_t level,
                       std::vector<size_t>& current,
                       const std::function<void(const std::vector<std::vector<size_t>>&)>& emit,
                       std::vector<std::vector<size_t>>& chain) {
  if (level == dims.size()) {
    emit(chain);
    return;
  }
  size_t need = dims[level] - (level == 0 ? 0 : dims[level - 1]);
  // choose `need` new indices from the complement of `current`
  std::vector<size_t> avail;
  for (size_t k = 0; k < n; ++k)
    if (std::find(current.begin(), current.end(), k) == current.end()) avail.push_back(k);
  std::vector<size_t> pick(need);
  std::function<void(size_t, size_t)> choose = [&](size_t start, size_t got) {
    if (got == need) {
      std::vector<size_t> snapshot = current;
      for (size_t k : pick) current.push_back(k);
      chain.push_back(current);
      coordinate_chains(n, dims, level + 1, current, emit, chain);
      chain.pop_back();
      current = std::move(snapshot);
      return;
    }
    for (size_t idx = start; idx + (need - got) <= avail.size(); ++idx) {
      pick[got] = avail[idx];
      choose(idx + 1, got + 1);
    }
  };
  choose(0, 0);
}

// u in the unipotent pattern of H with u . coordinate-chain = the flag
std::optional<QMat> solve_unipotent_transport(const BlockGroupSpec& h,
                                              const std::vector<std::vector<size_t>>& chain,
                                              const std::vector<std::vector<QVec>>& flag) {
  size_t n = h.n();
  auto positions = h.unipotent_positions();
  size_t vars = positions.size();
  std::vector<QVec> rows;
  QVec rhs;
  // u e_k in span(flag level) for every level and k in the chain set
  for (size_t lvl = 0; lvl < chain.size(); ++lvl) {
    const auto& target = flag[lvl];
    QMat t(n, target.size());
    for (size_t j = 0; j < target.size(); ++j)
      for (size_t i = 0; i < n; ++i) t(i, j) = target[j][i];
    QMat proj(n, n);
    if (target.size() > 0) {
      auto gram_inv = inverse(t.transpose() * t);
      proj = t * *gram_inv * t.transpose();
    }
    QMat comp = QMat::identity(n) - proj;
    for (size_t k : chain[lvl]) {
      // comp . u . e_k = 0 ; u = I + sum over positions
      for (size_t i = 0; i < n; ++i) {
        QVec coeff(vars, Rat(0));
        Rat constant = comp(i, k);  // from the identity part
        for (size_t v = 0; v < vars; ++v) {
          auto [a, b] = positions[v];
          if (b == k) coeff[v] = comp(i, a);
        }
        rows.push_back(std::move(coeff));
        rhs.push_back(-constant);
      }
    }
  }
  QMat m(rows.size(), vars);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t j = 0; j < vars; ++j) m(r, j) = rows[r][j];
  auto sol = solve(m, rhs);
  if (!sol) return std::nullopt;
  QMat u = QMat::identity(n);
  for (size_t v = 0; v < vars; ++v) u(positions[v].first, positions[v].second) = (*sol)[v];
  if (!h.member(u)) return std::nullopt;
  return u;
}

std::vector<size_t> flag_dims(const EdificePoint& x) {
  std::vector<size_t> d;
  for (const auto& lv : x.levels) d.push_back(lv.basis.size());
  return d;
}

std::optional<QMat> common_apartment_solvable(const EdificePoint& x, const EdificePoint& y) {
  const auto& h = *x.group;
  size_t n = h.n();
  if (n > 6) throw std::domain_error("solvable torus search capped at n = 6");
  auto fx = cumulative_flag(x), fy = cumulative_flag(y);
  std::optional<QMat> result;
  std::vector<size_t> cur1, cur2;
  std::vector<std::vector<size_t>> chain1, chain2;
  coordinate_chains(n, flag_dims(x), 0, cur1,
                    [&](const std::vector<std::vector<size_t>>& cx) {
                      if (result) return;
                      coordinate_chains(
                          n, flag_dims(y), 0, cur2,
                          [&](const std::vector<std::vector<size_t>>& cy) {
                            if (result) return;
                            // one u must transport both coordinate chains
                            auto flags = fx;
                            auto chains = cx;
                            flags.insert(flags.end(), fy.begin(), fy.end());
                            chains.insert(chains.end(), cy.begin(), cy.end());
                            auto u = solve_unipotent_transport(h, chains, flags);
                            if (u) result = *u;
                          },
                          chain2);
                    },
                    chain1);
  return result;
}

}  // namespace

std::optional<QMat> common_apartment(const EdificePoint& x, const EdificePoint& y) {
  if (!x.group || !y.group || !x.group->same_spec(*y.group))
    throw std::invalid_argument("points over different block groups");
  if (x.group->is_linear_type()) return common_apartment_linear(x, y);
  if (x.group->is_block_diagonal()) return common_apartment_block_diag(x, y);
  if (x.group->is_upper_solvable()) return common_apartment_solvable(x, y);
  throw std::domain_error("no torus search catalogued for block group " + x.group->name());
}

QVec weights_in_basis(const EdificePoint& x, const QMat& basis) {
  size_t n = x.n();
  if (basis.rows() != n || basis.cols() != n) throw std::invalid_argument("basis shape mismatch");
  QVec w(n);
  std::map<Rat, size_t> jumps;
  for (size_t k = 0; k < n; ++k) {
    QVec col = basis.col(k);
    bool assigned = false;
    for (const auto& lv : x.levels) {
      if (in_span(lv.basis, col)) {
        w[k] = lv.weight;
        ++jumps[lv.weight];
        assigned = true;
        break;
      }
    }
    if (!assigned) throw std::invalid_argument("basis column outside the full space");
  }
  // the basis must split the flag: counts per weight match the dimension jumps
  size_t prev = 0;
  for (const auto& lv : x.levels) {
    size_t jump = lv.basis.size() - prev;
    prev = lv.basis.size();
    auto it = jumps.find(lv.weight);
    if (it == jumps.end() || it->second != jump)
      throw std::invalid_argument("basis does not split the flag");
  }
  return w;
}

EdificePoint add(const EdificePoint& x, const EdificePoint& y) {
  auto basis = common_apartment(x, y);
  if (!basis) throw NoCommonApartment();
  QVec w = weights_in_basis(x, *basis) + weights_in_basis(y, *basis);
  return point_from_cochar(x.group, {*basis, w});
}

EdificePoint scale(const Rat& a, const EdificePoint& x) {
  if (a <= 0) throw std::invalid_argument("scaling factor must be positive");
  EdificePoint y = x;
  for (auto& lv : y.levels) lv.weight *= a;
  if (y.rep)
    for (auto& w : y.rep->weights) w *= a;
  return y;
}

EdificePoint opposite(const EdificePoint& x, const QMat& basis) {
  QVec w = weights_in_basis(x, basis);
  for (auto& v : w) v = -v;
  return point_from_cochar(x.group, {basis, w});
}

bool is_opposite(const EdificePoint& x, const EdificePoint& y) {
  if (!x.group->same_spec(*y.group))
    throw std::invalid_argument("points over different block groups");
  auto basis = common_apartment(x, y);
  if (!basis) return false;
  QVec s = weights_in_basis(x, *basis) + weights_in_basis(y, *basis);
  return is_zero(s);
}

Cocharacter recover_lambda(const EdificePoint& x, const EdificePoint& y) {
  auto basis = common_apartment(x, y);
  if (!basis || !is_opposite(x, y)) throw NotOpposite();
  return Cocharacter{*basis, weights_in_basis(x, *basis)};
}

EdificePoint geodesic(const EdificePoint& x, const EdificePoint& y, const Rat& t) {
  if (t < 0 || t > 1) throw std::invalid_argument("geodesic parameter outside [0,1]");
  auto basis = common_apartment(x, y);
  if (!basis) throw NoCommonApartment();
  QVec w = t * weights_in_basis(x, *basis) + (1 - t) * weights_in_basis(y, *basis);
  return point_from_cochar(x.group, {*basis, w});
}

EdificePoint include_map(const EdificePoint& x, const GroupPtr& super) {
  if (!x.group->contained_in(*super))
    throw std::invalid_argument(x.group->name() + " is not contained in " + super->name());
  Rng rng(17);
  for (int i = 0; i < 3; ++i)
    if (!super->member(x.group->sample(rng)))
      throw std::invalid_argument("sampled member escapes the target group");
  EdificePoint y = x;
  y.group = super;
  return y;
}

std::optional<EdificePoint> include_preimage(const GroupPtr& sub, const EdificePoint& x) {
  if (!sub->contained_in(*x.group))
    throw std::invalid_argument(sub->name() + " is not contained in " + x.group->name());
  if (x.rep && cochar_in_group(*sub, *x.rep)) {
    EdificePoint y = x;
    y.group = sub;
    return y;
  }
  if (!sub->is_upper_solvable())
    throw std::domain_error("no preimage search catalogued for block group " + sub->name());
  size_t n = sub->n();
  if (n > 6) throw std::domain_error("preimage search capped at n = 6");
  auto flag = cumulative_flag(x);
  std::optional<EdificePoint> result;
  std::vector<size_t> cur;
  std::vector<std::vector<size_t>> chain;
  coordinate_chains(n, flag_dims(x), 0, cur,
                    [&](const std::vector<std::vector<size_t>>& c) {
                      if (result) return;
                      auto u = solve_unipotent_transport(*sub, c, flag);
                      if (!u) return;
                      QVec w(n);
                      for (size_t lvl = 0; lvl < c.size(); ++lvl) {
                        for (size_t k : c[lvl]) {
                          bool earlier = lvl > 0 && std::find(c[lvl - 1].begin(), c[lvl - 1].end(),
                                                              k) != c[lvl - 1].end();
                          if (!earlier) w[k] = x.levels[lvl].weight;
                        }
                      }
                      Cocharacter cand{*u, w};
                      if (!cochar_in_group(*sub, cand)) return;
                      EdificePoint y = point_from_cochar(sub, cand);
                      if (y.same_flag(x)) result = y;
                    },
                    chain);
  return result;
}

namespace {

GroupPtr quotient_target(const BlockGroupSpec& h) {
  const auto& q = *h.unipotent_quotient();
  size_t m = q.keep.size();
  std::vector<std::vector<Entry>> pat(m, std::vector<Entry>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) pat[i][j] = h.entry(q.keep[i], q.keep[j]);
  std::vector<DetConstraint> dets;
  for (const auto& c : h.det_constraints()) {
    bool inside = std::all_of(c.block.begin(), c.block.end(), [&](size_t b) {
      return std::find(q.keep.begin(), q.keep.end(), b) != q.keep.end();
    });
    if (inside) {
      DetConstraint d = c;
      for (auto& b : d.block)
        b = static_cast<size_t>(std::find(q.keep.begin(), q.keep.end(), b) - q.keep.begin());
      dets.push_back(std::move(d));
    }
  }
  return std::make_shared<BlockGroupSpec>(q.quotient_name, m, std::move(pat), std::move(dets));
}

}  // namespace

EdificePoint quotient_map(const EdificePoint& x) {
  const auto& h = *x.group;
  if (!h.unipotent_quotient()) throw std::domain_error("group has no catalogued unipotent quotient");
  if (!x.rep) throw std::domain_error("quotient of a point without a cocharacter witness");
  if (!h.member(x.rep->conjugator))
    throw std::domain_error("quotient needs a conjugator inside the group");
  const auto& q = *h.unipotent_quotient();
  for (size_t k = 0; k < h.n(); ++k) {
    bool kept = std::find(q.keep.begin(), q.keep.end(), k) != q.keep.end();
    if (!kept && x.rep->weights[k] != 0)
      throw std::logic_error("discarded coordinate carries a nonzero weight");
  }
  size_t m = q.keep.size();
  QMat a(m, m);
  QVec w(m);
  for (size_t i = 0; i < m; ++i) {
    w[i] = x.rep->weights[q.keep[i]];
    for (size_t j = 0; j < m; ++j) a(i, j) = x.rep->conjugator(q.keep[i], q.keep[j]);
  }
  return point_from_cochar(quotient_target(h), {a, w});
}

std::optional<QMat> quotient_fiber_witness(const EdificePoint& x1, const EdificePoint& x2) {
  const auto& h = *x1.group;
  if (!h.unipotent_quotient()) throw std::domain_error("group has no catalogued unipotent quotient");
  if (!x1.group->same_spec(*x2.group)) throw std::invalid_argument("points over different groups");
  if (x1.levels.size() != x2.levels.size()) return std::nullopt;
  for (size_t i = 0; i < x1.levels.size(); ++i) {
    if (x1.levels[i].weight != x2.levels[i].weight) return std::nullopt;
    if (x1.levels[i].basis.size() != x2.levels[i].basis.size()) return std::nullopt;
  }
  const auto& q = *h.unipotent_quotient();
  size_t n = h.n();
  std::vector<bool> kept(n, false);
  for (size_t k : q.keep) kept[k] = true;
  std::vector<std::pair<size_t, size_t>> slots;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (kept[i] && !kept[j]) slots.emplace_back(i, j);

  // linear conditions: n . F_w(x1) inside F_w(x2)
  std::vector<QVec> rows;
  QVec rhs;
  for (size_t lvl = 0; lvl < x1.levels.size(); ++lvl) {
    const auto& target = x2.levels[lvl].basis;
    QMat t(n, target.size());
    for (size_t j = 0; j < target.size(); ++j)
      for (size_t i = 0; i < n; ++i) t(i, j) = target[j][i];
    QMat proj(n, n);
    if (!target.empty()) proj = t * *inverse(t.transpose() * t) * t.transpose();
    QMat comp = QMat::identity(n) - proj;
    for (const auto& v : x1.levels[lvl].basis) {
      for (size_t i = 0; i < n; ++i) {
        QVec coeff(slots.size(), Rat(0));
        Rat constant(0);
        for (size_t s = 0; s < slots.size(); ++s) {
          auto [a, b] = slots[s];
          coeff[s] += comp(i, a) * v[b];
        }
        for (size_t k = 0; k < n; ++k) constant += comp(i, k) * v[k];
        rows.push_back(std::move(coeff));
        rhs.push_back(-constant);
      }
    }
  }
  QMat m(rows.size(), slots.size());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t j = 0; j < slots.size(); ++j) m(r, j) = rows[r][j];
  auto part = solve(m, rhs);
  if (!part) return std::nullopt;
  auto dirs = kernel(m);

  auto materialize = [&](const QVec& params) {
    QVec v = *part;
    for (size_t j = 0; j < dirs.size(); ++j)
      if (params[j] != 0) v = v + params[j] * dirs[j];
    QMat u = QMat::identity(n);
    for (size_t s = 0; s < slots.size(); ++s) u(slots[s].first, slots[s].second) = v[s];
    return u;
  };
  std::vector<QVec> trials;
  trials.push_back(QVec(dirs.size(), Rat(0)));
  for (size_t j = 0; j < dirs.size(); ++j) {
    QVec p(dirs.size(), Rat(0));
    p[j] = 1;
    trials.push_back(p);
  }
  Rng rng(23);
  for (int t = 0; t < 16; ++t) trials.push_back(rng.rational_vector(dirs.size(), 3));
  for (const auto& p : trials) {
    QMat u = materialize(p);
    if (!h.member(u)) continue;
    if (equal_points(act(u, x1), x2)) return u;
  }
  return std::nullopt;
}

EdificePoint levi_projection(const Cocharacter& lambda, const GroupPtr& levi_spec,
                             const EdificePoint& x) {
  if (!x.group->is_linear_type())
    throw std::domain_error("projection requires a reductive linear-type ambient group");
  size_t n = x.n();
  if (!(lambda.conjugator == QMat::identity(n)))
    throw std::invalid_argument("projection wants lambda diagonal in the standard basis");
  if (!levi_spec->is_block_diagonal())
    throw std::invalid_argument("target spec of the projection must be block diagonal");

  auto xp = point_from_cochar(x.group, lambda);
  auto basis = common_apartment(x, xp);
  if (!basis) throw NoCommonApartment();
  QVec wx = weights_in_basis(x, *basis);
  QVec wl = weights_in_basis(xp, *basis);

  // graded pieces: keep of each column only the component in its
  // lambda-eigenspace (a coordinate span, lambda being standard diagonal)
  QMat tilted(n, n);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      tilted(i, k) = lambda.weights[i] == wl[k] ? (*basis)(i, k) : Rat(0);
  if (!inverse(tilted)) throw std::logic_error("graded projection of the basis is singular");
  return point_from_cochar(levi_spec, {tilted, wx});
}

QMat levi_transporter(const GroupPtr& h, const Cocharacter& lambda, const Cocharacter& mu) {
  size_t n = h->n();
  auto x = point_from_cochar(h, lambda);
  auto y = point_from_cochar(h, mu);
  // P and U agree iff the underlying subspace chains agree
  if (x.levels.size() != y.levels.size())
    throw std::invalid_argument("cocharacters define different parabolic subgroups");
  for (size_t i = 0; i < x.levels.size(); ++i)
    if (x.levels[i].basis != y.levels[i].basis)
      throw std::invalid_argument("cocharacters define different parabolic subgroups");

  auto wl = lambda.distinct_weights_desc();
  auto wm = mu.distinct_weights_desc();
  std::vector<QVec> rows;
  QVec rhs;
  size_t vars = n * n;
  auto add_rows = [&](const std::vector<QVec>& src, const std::vector<QVec>& target,
                      bool minus_identity) {
    QMat proj(n, n);
    if (!target.empty()) {
      QMat t(n, target.size());
      for (size_t j = 0; j < target.size(); ++j)
        for (size_t i = 0; i < n; ++i) t(i, j) = target[j][i];
      proj = t * *inverse(t.transpose() * t) * t.transpose();
    }
    QMat comp = QMat::identity(n) - proj;
    for (const auto& v : src)
      for (size_t i = 0; i < n; ++i) {
        QVec coeff(vars, Rat(0));
        for (size_t k = 0; k < n; ++k)
          for (size_t j = 0; j < n; ++j) coeff[k * n + j] += comp(i, k) * v[j];
        Rat constant(0);
        if (minus_identity)
          for (size_t k = 0; k < n; ++k) constant += comp(i, k) * v[k];
        rows.push_back(std::move(coeff));
        rhs.push_back(constant);
      }
  };
  // (u - 1) . V_{>=w} inside V_{>w}: target is the previous (smaller) level
  for (size_t i = 0; i < x.levels.size(); ++i) {
    std::vector<QVec> deeper = i == 0 ? std::vector<QVec>{} : x.levels[i - 1].basis;
    add_rows(x.levels[i].basis, deeper, /*minus_identity=*/true);
  }
  // u . E_{w_i}(lambda) inside E_{v_i}(mu), matched by level order
  for (size_t i = 0; i < wl.size(); ++i)
    add_rows(lambda.eigenspace(wl[i]), canonical_basis(mu.eigenspace(wm[i])),
             /*minus_identity=*/false);
  // the pattern of H
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (h->entry(i, j) == Entry::Free) continue;
      QVec coeff(vars, Rat(0));
      coeff[i * n + j] = 1;
      rows.push_back(std::move(coeff));
      rhs.push_back(h->entry(i, j) == Entry::One ? Rat(1) : Rat(0));
    }

  QMat m(rows.size(), vars);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t j = 0; j < vars; ++j) m(r, j) = rows[r][j];
  auto sol = solve(m, rhs);
  if (!sol) throw std::logic_error("Levi transporter system inconsistent");
  if (!kernel(m).empty()) throw std::logic_error("Levi transporter is not unique");
  QMat u(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) u(i, j) = (*sol)[i * n + j];
  if (!h->member(u)) throw std::logic_error("Levi transporter left the group");
  for (size_t i = 0; i < wl.size(); ++i) {
    std::vector<QVec> mapped;
    for (const auto& v : lambda.eigenspace(wl[i])) mapped.push_back(u * v);
    if (canonical_basis(mapped) != canonical_basis(mu.eigenspace(wm[i])))
      throw std::logic_error("Levi transporter does not transport the splitting");
  }
  return u;
}

Rat point_dist2(const EdificePoint& x, const EdificePoint& y, const SPDForm* form) {
  if (x.n() != y.n()) throw std::invalid_argument("points of different ambient rank");
  size_t n = x.n();
  auto cols = refine_flags(cumulative_flag(x), cumulative_flag(y), n);
  if (cols.size() != n) throw std::logic_error("flag refinement is not a basis");
  QMat basis(n, n);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) basis(i, k) = cols[k].v[i];
  QVec wx = weights_in_basis(x, basis), wy = weights_in_basis(y, basis);
  QVec d = wx - wy;
  if (!form) return dot(d, d);
  if (form->dim() != n) throw std::invalid_argument("form dimension mismatch");
  // the weight coordinates come in no preferred order: the form must be
  // invariant under the symmetric group
  for (size_t k = 0; k + 1 < n; ++k) {
    QMat p = QMat::identity(n);
    std::swap(p(k, k), p(k, k + 1));
    std::swap(p(k + 1, k + 1), p(k + 1, k));
    if (!(p.transpose() * form->m * p == form->m))
      throw std::invalid_argument("form is not permutation invariant");
  }
  return form->eval(d);
}

}  // namespace edifice
