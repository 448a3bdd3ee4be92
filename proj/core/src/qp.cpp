#include <edifice/qp.hpp>

#include <algorithm>

namespace edifice {

namespace {

// Stationary point of x^T F x on {C_S x = 1}: solve the bordered system
//   [ 2F   -C_S^T ] [x ]   [0]
//   [ C_S    0    ] [mu] = [1].
// Rows of C_S must be linearly independent, which makes the system regular.
std::optional<std::pair<QVec, QVec>> equality_qp(const std::vector<const IVec*>& rows,
                                                 const SPDForm& form) {
  size_t n = form.dim(), k = rows.size();
  QMat sys(n + k, n + k);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) sys(i, j) = 2 * form.m(i, j);
  for (size_t s = 0; s < k; ++s)
    for (size_t j = 0; j < n; ++j) {
      sys(j, n + s) = Rat(-(*rows[s])[j]);
      sys(n + s, j) = Rat((*rows[s])[j]);
    }
  QVec rhs(n + k, Rat(0));
  for (size_t s = 0; s < k; ++s) rhs[n + s] = 1;
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  QVec x(sol->begin(), sol->begin() + n);
  QVec mu(sol->begin() + n, sol->end());
  return std::make_pair(std::move(x), std::move(mu));
}

}  // namespace

std::optional<QPSolution> min_norm_qp(const std::vector<IVec>& constraints, const SPDForm& form) {
  size_t n = form.dim(), m = constraints.size();
  for (const auto& c : constraints)
    if (c.size() != n) throw std::invalid_argument("constraint dimension mismatch");
  if (m == 0)
    return QPSolution{QVec(n, Rat(0)), {}, {}, Rat(0)};

  auto feasible = [&](const QVec& x) {
    for (const auto& c : constraints) {
      Rat v(0);
      for (size_t j = 0; j < n; ++j) v += Rat(c[j]) * x[j];
      if (v < 1) return false;
    }
    return true;
  };

  size_t max_k = std::min(n, m);
  std::vector<size_t> subset;
  // enumerate subsets by size; the optimum is certified by KKT, so the first
  // hit wins (the minimizer is unique either way)
  std::optional<QPSolution> found;
  auto try_subset = [&](const std::vector<size_t>& idx) -> bool {
    std::vector<const IVec*> rows;
    std::vector<QVec> qrows;
    for (size_t i : idx) {
      rows.push_back(&constraints[i]);
      qrows.push_back(to_rational(constraints[i]));
    }
    if (!qrows.empty() && canonical_basis(qrows).size() != qrows.size()) return false;
    auto sol = equality_qp(rows, form);
    if (!sol) return false;
    auto& [x, mu] = *sol;
    for (const auto& v : mu)
      if (v < 0) return false;
    if (!feasible(x)) return false;
    QPSolution qp;
    qp.minimizer = x;
    qp.multipliers.assign(m, Rat(0));
    for (size_t s = 0; s < idx.size(); ++s) qp.multipliers[idx[s]] = mu[s];
    qp.active = idx;
    qp.value = form.eval(x);
    found = std::move(qp);
    return true;
  };

  std::vector<size_t> idx;
  // size-k subsets in lexicographic order, k ascending
  for (size_t k = 1; k <= max_k && !found; ++k) {
    idx.assign(k, 0);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (try_subset(idx)) break;
      // next combination
      size_t i = k;
      while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return found;
}

namespace {

// Monotone boundary search: pred is true on (-inf, boundary] and false above
// (or the reverse when rising=false).  Returns the largest certified value
// where pred holds, landing exactly on rational boundaries of moderate height.
Rat boundary_search(const Rat& lo, const Rat& hi, const std::function<bool(const Rat&)>& pred,
                    const std::function<bool(const Rat&)>& exact_hit, int iterations) {
  Rat good = lo, bad = hi;
  if (exact_hit(good)) return good;
  for (int it = 0; it < iterations; ++it) {
    Rat mid = simplest_between(good, bad);
    if (pred(mid)) {
      good = mid;
      if (exact_hit(good)) return good;
    } else {
      bad = mid;
    }
  }
  return good;
}

}  // namespace

std::pair<Rat, Rat> gen_eig_bounds(const SPDForm& a, const SPDForm& b) {
  size_t n = a.dim();
  if (b.dim() != n) throw std::invalid_argument("pencil dimension mismatch");

  // proportional pencils resolve immediately (covers A = B and A = tB)
  {
    Rat ratio(0);
    bool proportional = true;
    for (size_t i = 0; i < n && proportional; ++i)
      for (size_t j = 0; j < n && proportional; ++j) {
        if (b.m(i, j) == 0) {
          if (a.m(i, j) != 0) proportional = false;
        } else {
          Rat r = a.m(i, j) / b.m(i, j);
          if (ratio == 0)
            ratio = r;
          else if (r != ratio)
            proportional = false;
        }
      }
    if (proportional && ratio != 0) return {ratio, ratio};
  }

  auto binv = inverse(b.m);
  auto ainv = inverse(a.m);
  Rat trace_ba(0), trace_ab(0);
  QMat ba = *binv * a.m, ab = *ainv * b.m;
  for (size_t i = 0; i < n; ++i) {
    trace_ba += ba(i, i);
    trace_ab += ab(i, i);
  }
  // pencil eigenvalues are positive; their sum bounds the extremes
  Rat min_lo = 1 / trace_ab;     // <= lambda_min
  Rat max_hi = trace_ba;         // >= lambda_max

  auto amcb_psd = [&](const Rat& c) { return is_positive_semidefinite(a.m - c * b.m); };
  auto cbma_psd = [&](const Rat& c) { return is_positive_semidefinite(c * b.m - a.m); };
  auto pencil_det_zero = [&](const Rat& c) { return det(a.m - c * b.m) == 0; };

  Rat c = boundary_search(
      min_lo, max_hi + 1, amcb_psd, [&](const Rat& v) { return amcb_psd(v) && pencil_det_zero(v); }, 64);
  // for the upper bound search the predicate holds above the boundary; negate
  // the axis to reuse the rising search
  Rat big = boundary_search(
      -(max_hi), -min_lo + 1, [&](const Rat& v) { return cbma_psd(-v); },
      [&](const Rat& v) { return cbma_psd(-v) && pencil_det_zero(-v); }, 64);
  Rat C = -big;

  if (!amcb_psd(c) || !cbma_psd(C))
    throw std::logic_error("generalized eigenvalue bounds failed certification");
  return {c, C};
}

}  // namespace edifice
