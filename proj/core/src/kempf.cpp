#include <edifice/kempf.hpp>

#include <algorithm>
#include <set>

namespace edifice {

StatePoint::StatePoint(std::vector<size_t> support_, SVec coords_)
    : support(std::move(support_)), coords(std::move(coords_)) {
  if (support.size() != coords.size())
    throw std::invalid_argument("support and coordinates differ in length");
  for (const auto& c : coords)
    if (c.is_zero()) throw std::invalid_argument("support coordinate is zero");
  for (size_t i = 1; i < support.size(); ++i)
    if (support[i - 1] >= support[i]) throw std::invalid_argument("support not strictly sorted");
}

bool destabilizes(const LinearAction& a, const StatePoint& x, const SVec& lambda) {
  if (lambda.size() != a.apartment.rank())
    throw std::invalid_argument("cocharacter dimension mismatch");
  for (size_t idx : x.support) {
    if (idx >= a.apartment.weights().size())
      throw std::invalid_argument("support index out of range");
    if (pair_scalar(lambda, a.apartment.weights()[idx]).sign() < 0) return false;
  }
  return true;
}

std::optional<StatePoint> limit_point(const LinearAction& a, const StatePoint& x,
                                      const SVec& lambda) {
  if (!destabilizes(a, x, lambda)) return std::nullopt;
  StatePoint out;
  for (size_t i = 0; i < x.support.size(); ++i) {
    if (pair_scalar(lambda, a.apartment.weights()[x.support[i]]).sign() == 0) {
      out.support.push_back(x.support[i]);
      out.coords.push_back(x.coords[i]);
    }
  }
  return out;
}

bool torus_orbit_member(const LinearAction& a, const StatePoint& x, const StatePoint& y) {
  if (x.support != y.support) return false;
  size_t m = x.support.size();
  if (m == 0) return true;
  std::vector<Rat> ratio(m);
  for (size_t i = 0; i < m; ++i) {
    if (!x.coords[i].is_rational() || !y.coords[i].is_rational())
      throw std::invalid_argument("orbit membership limited to rational coordinates");
    ratio[i] = y.coords[i].rational() / x.coords[i].rational();
  }
  // solve t^chi = ratio along the Smith normal form of the support
  // characters: with u m v = s diagonal and u, v unimodular, the system
  // t^m = r is solvable iff phi_u(r) lies in the image of phi_s, i.e. the
  // j-th transformed ratio is an s_j-th power (and 1 on zero rows)
  std::vector<IVec> rows;
  for (size_t idx : x.support) rows.push_back(a.apartment.weights()[idx]);
  IMat mchi = IMat::from_rows(rows);
  auto snf = smith_normal_form(mchi);
  auto apply_multiplicative = [&](const IMat& e, const std::vector<Rat>& v) {
    std::vector<Rat> out(e.rows(), Rat(1));
    for (size_t i = 0; i < e.rows(); ++i)
      for (size_t j = 0; j < e.cols(); ++j) {
        Int exp = e(i, j);
        if (exp == 0) continue;
        Rat base = v[j];
        Rat p(1);
        Int steps = abs(exp);
        for (Int s = 0; s < steps; ++s) p *= base;
        out[i] *= exp > 0 ? p : 1 / p;
      }
    return out;
  };
  auto transformed = apply_multiplicative(snf.u, ratio);
  for (size_t j = 0; j < m; ++j) {
    Int s = j < std::min(snf.s.rows(), snf.s.cols()) ? snf.s(j, j) : Int(0);
    if (s == 0) {
      if (transformed[j] != 1) return false;
    } else {
      Rat root;
      if (!rational_root(transformed[j], s.get_ui(), root)) return false;
    }
  }
  return true;
}

bool properly_destabilizes_torus(const LinearAction& a, const StatePoint& x, const SVec& lambda) {
  auto lim = limit_point(a, x, lambda);
  if (!lim) return false;
  // the torus action preserves supports exactly, so the limit leaves the
  // orbit precisely when the support shrinks
  return lim->support != x.support;
}

DestabCone destab_cone(const LinearAction& a, const StatePoint& x) {
  DestabCone cone;
  cone.rank = a.apartment.rank();
  std::set<IVec> seen;
  for (size_t idx : x.support) {
    IVec w = a.apartment.weights()[idx];
    if (std::all_of(w.begin(), w.end(), [](const Int& v) { return v == 0; })) continue;
    if (seen.insert(w).second) cone.inequalities.push_back(w);
  }
  size_t r = cone.rank;
  if (cone.inequalities.empty()) {
    for (size_t i = 0; i < r; ++i) {
      IVec e(r, Int(0));
      e[i] = 1;
      cone.lineality.push_back(e);
    }
    return cone;
  }
  cone.lineality = integer_kernel(IMat::from_rows(cone.inequalities));

  // candidate extreme rays: one-dimensional solution sets of subsets of
  // tight constraints (modulo lineality), kept when they satisfy everything
  size_t m = cone.inequalities.size();
  std::set<IVec> rays;
  size_t lin_dim = cone.lineality.size();
  std::vector<size_t> subset;
  std::function<void(size_t)> recurse = [&](size_t start) {
    std::vector<QVec> eqs;
    for (size_t i : subset) eqs.push_back(to_rational(cone.inequalities[i]));
    QMat msub = eqs.empty() ? QMat(0, r) : QMat::from_rows(eqs);
    auto ker = eqs.empty() ? std::vector<QVec>{} : kernel(msub);
    if (eqs.empty()) ker = kernel(QMat(1, r));  // the whole space for r==dim
    if (ker.size() == lin_dim + 1) {
      // 1-dimensional modulo lineality: pick a generator not in the lineality
      for (const auto& g : ker) {
        std::vector<QVec> lin;
        for (const auto& l : cone.lineality) lin.push_back(to_rational(l));
        if (in_span(lin, g)) continue;
        for (int s : {+1, -1}) {
          QVec cand = rat(s) * g;
          bool ok = true;
          for (const auto& c : cone.inequalities) {
            Rat val(0);
            for (size_t k = 0; k < r; ++k) val += Rat(c[k]) * cand[k];
            if (val < 0) {
              ok = false;
              break;
            }
          }
          if (ok) rays.insert(primitive_integer(cand));
        }
        break;
      }
      return;  // deeper subsets cannot enlarge the kernel back
    }
    if (ker.size() <= lin_dim) return;
    for (size_t i = start; i < m; ++i) {
      subset.push_back(i);
      recurse(i + 1);
      subset.pop_back();
    }
  };
  recurse(0);
  cone.rays.assign(rays.begin(), rays.end());
  return cone;
}

bool DestabCone::contains(const QVec& v) const {
  for (const auto& c : inequalities) {
    Rat val(0);
    for (size_t k = 0; k < v.size(); ++k) val += Rat(c[k]) * v[k];
    if (val < 0) return false;
  }
  return true;
}

bool is_cr_cone(const DestabCone& c) {
  for (const auto& r : c.rays) {
    QVec neg(r.size());
    for (size_t k = 0; k < r.size(); ++k) neg[k] = Rat(-r[k]);
    if (!c.contains(neg)) return false;
  }
  return true;
}

std::optional<KempfResult> kempf_optimal(const LinearAction& a, const StatePoint& x,
                                         const AdmissibleMetric& metric) {
  if (metric.dim() != a.apartment.rank()) throw std::invalid_argument("metric rank mismatch");
  for (const auto& g : a.apartment.weyl_generators()) {
    QMat gq = g.to_rational();
    if (!(gq.transpose() * metric.form.m * gq == metric.form.m))
      throw std::invalid_argument("metric is not Weyl invariant on the apartment");
  }
  std::vector<IVec> constraints;
  for (size_t idx : x.support) constraints.push_back(a.apartment.weights()[idx]);
  auto qp = min_norm_qp(constraints, metric.form);
  if (!qp || constraints.empty()) {
    if (constraints.empty()) return std::nullopt;  // nothing to destabilize against
    return std::nullopt;
  }
  KempfResult res;
  res.minimizer = qp->minimizer;
  res.multipliers = qp->multipliers;
  res.lambda_opt = primitive_integer(qp->minimizer);
  res.value_sq = 1 / qp->value;  // min pairing is 1 at the optimum
  return res;
}

OptimalParabolic optimal_parabolic(const LinearAction& a, const StatePoint& x,
                                   const IVec& lambda_opt) {
  SVec l(lambda_opt.size());
  for (size_t i = 0; i < lambda_opt.size(); ++i) l[i] = Scalar(Rat(lambda_opt[i]));
  OptimalParabolic out{parabolic_key(a.apartment, l), false};
  auto cone = destab_cone(a, x);
  QVec neg(lambda_opt.size());
  for (size_t i = 0; i < lambda_opt.size(); ++i) neg[i] = Rat(-lambda_opt[i]);
  out.unopposed = !cone.contains(neg);
  return out;
}

}  // namespace edifice
