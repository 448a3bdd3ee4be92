#include <edifice/feasible.hpp>

#include <algorithm>
#include <map>

namespace edifice {

namespace {

// Normalizes to a primitive covector; used to deduplicate constraints within
// one elimination stage (keeping the strict version when both occur).
void dedup(std::vector<HalfSpace>& cons) {
  std::map<IVec, bool> seen;  // covector -> strict
  for (const auto& h : cons) {
    IVec key = primitive_integer(h.c, /*allow_zero=*/true);
    auto [it, inserted] = seen.try_emplace(key, h.strict);
    if (!inserted) it->second = it->second || h.strict;
  }
  cons.clear();
  for (auto& [key, strict] : seen) cons.push_back({to_rational(key), strict});
}

}  // namespace

std::optional<QVec> feasible_point(std::vector<HalfSpace> constraints, size_t dim) {
  for (const auto& h : constraints)
    if (h.c.size() != dim) throw std::invalid_argument("constraint dimension mismatch");

  // stages[k] holds constraints over variables 0..k (before eliminating k).
  std::vector<std::vector<HalfSpace>> stages(dim);
  auto current = std::move(constraints);
  for (size_t k = dim; k-- > 0;) {
    dedup(current);
    stages[k] = current;
    std::vector<HalfSpace> lower, upper, passthrough;
    for (const auto& h : stages[k]) {
      int s = sgn(h.c[k]);
      if (s > 0)
        lower.push_back(h);
      else if (s < 0)
        upper.push_back(h);
      else
        passthrough.push_back(h);
    }
    std::vector<HalfSpace> next = std::move(passthrough);
    for (const auto& lo : lower)
      for (const auto& up : upper) {
        // (-up.c[k]) * lo.c + lo.c[k] * up.c cancels variable k
        QVec c = (-up.c[k]) * lo.c + lo.c[k] * up.c;
        next.push_back({std::move(c), lo.strict || up.strict});
      }
    current = std::move(next);
  }
  // fully eliminated: each remaining constraint is 0 > 0 or 0 >= 0
  for (const auto& h : current)
    if (h.strict) return std::nullopt;

  QVec y(dim, Rat(0));
  for (size_t k = 0; k < dim; ++k) {
    bool has_lower = false, has_upper = false, lower_strict = false, upper_strict = false;
    Rat best_lower(0), best_upper(0);
    for (const auto& h : stages[k]) {
      if (h.c[k] == 0) continue;
      Rat rest(0);
      for (size_t j = 0; j < k; ++j) rest += h.c[j] * y[j];
      Rat bound = -rest / h.c[k];
      if (h.c[k] > 0) {
        if (!has_lower || bound > best_lower || (bound == best_lower && h.strict)) {
          lower_strict = (has_lower && bound == best_lower) ? (lower_strict || h.strict) : h.strict;
          best_lower = bound;
          has_lower = true;
        }
      } else {
        if (!has_upper || bound < best_upper || (bound == best_upper && h.strict)) {
          upper_strict = (has_upper && bound == best_upper) ? (upper_strict || h.strict) : h.strict;
          best_upper = bound;
          has_upper = true;
        }
      }
    }
    if (!has_lower && !has_upper)
      y[k] = 0;
    else if (!has_upper)
      y[k] = lower_strict ? best_lower + 1 : best_lower;
    else if (!has_lower)
      y[k] = upper_strict ? best_upper - 1 : best_upper;
    else if (best_lower < best_upper)
      y[k] = (best_lower + best_upper) / 2;
    else if (best_lower == best_upper && !lower_strict && !upper_strict)
      y[k] = best_lower;
    else
      throw std::logic_error("Fourier-Motzkin back-substitution hit an empty interval");
  }
  return y;
}

std::optional<IVec> strict_feasible(const std::vector<IVec>& strict,
                                    const std::vector<IVec>& nonneg,
                                    const std::vector<IVec>& zero, size_t rank) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  auto check_dim = [&](const std::vector<IVec>& v) {
    for (const auto& c : v)
      if (c.size() != rank) throw std::invalid_argument("constraint dimension mismatch");
  };
  check_dim(strict);
  check_dim(nonneg);
  check_dim(zero);

  // substitute away the equalities: x = K y with K a kernel basis
  std::vector<QVec> kernel_basis;
  if (zero.empty()) {
    for (size_t i = 0; i < rank; ++i) {
      QVec e(rank, Rat(0));
      e[i] = 1;
      kernel_basis.push_back(std::move(e));
    }
  } else {
    kernel_basis = kernel(IMat::from_rows(zero).to_rational());
  }
  size_t m = kernel_basis.size();

  auto substitute = [&](const IVec& c) {
    QVec r(m, Rat(0));
    for (size_t j = 0; j < m; ++j)
      for (size_t i = 0; i < rank; ++i) r[j] += Rat(c[i]) * kernel_basis[j][i];
    return r;
  };

  std::vector<HalfSpace> cons;
  for (const auto& c : strict) {
    QVec r = substitute(c);
    if (is_zero(r)) return std::nullopt;  // 0 > 0
    cons.push_back({std::move(r), true});
  }
  for (const auto& c : nonneg) {
    QVec r = substitute(c);
    if (!is_zero(r)) cons.push_back({std::move(r), false});
  }

  QVec x(rank, Rat(0));
  if (m > 0) {
    auto y = feasible_point(std::move(cons), m);
    if (!y) return std::nullopt;
    for (size_t j = 0; j < m; ++j)
      for (size_t i = 0; i < rank; ++i) x[i] += (*y)[j] * kernel_basis[j][i];
  } else if (!strict.empty()) {
    return std::nullopt;  // x forced to 0 but a strict constraint is present
  }

  IVec v = primitive_integer(x, /*allow_zero=*/true);

  for (const auto& c : strict)
    if (dot(c, v) <= 0) throw std::logic_error("feasible witness violates a strict constraint");
  for (const auto& c : nonneg)
    if (dot(c, v) < 0) throw std::logic_error("feasible witness violates a weak constraint");
  for (const auto& c : zero)
    if (dot(c, v) != 0) throw std::logic_error("feasible witness violates an equality");
  return v;
}

}  // namespace edifice
