#include <doctest.h>
#include <edifice/metric.hpp>
#include <edifice/prng.hpp>

#include <cmath>

#include "helpers.hpp"

using namespace edifice;
using namespace testdata;

namespace {

QMat random_spd(Rng& rng, size_t n) {
  QMat a(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a(i, j) = rng.rational(3);
  return a.transpose() * a + QMat::identity(n);
}

}  // namespace

TEST_CASE("weyl averaging fixes the form") {
  // trivial group: unchanged
  ApartmentData torus("T", 2, {iv({0, 0})}, {});
  QMat f = QMat::from_rows({qv({2, 1}), qv({1, 3})});
  CHECK(weyl_average(f, torus).form.m == f);

  // SL2: rank one, any form survives the sign action
  auto sl2 = sl2_apartment();
  QMat f1 = QMat::from_rows({qv({5})});
  CHECK(weyl_average(f1, sl2).form.m == f1);

  // SL3: the average of diag(1,2) is invariant under both generators
  auto sl3 = sl3_apartment();
  QMat d12 = QMat::from_rows({qv({1, 0}), qv({0, 2})});
  auto avg = weyl_average(d12, sl3);
  for (const auto& g : sl3.weyl_generators()) {
    QMat gq = g.to_rational();
    CHECK(gq.transpose() * avg.form.m * gq == avg.form.m);
  }
}

TEST_CASE("pullback metrics restrict distances") {
  auto base = AdmissibleMetric{SPDForm(QMat::identity(3)), {"base"}};
  IMat id = IMat::identity(3);
  CHECK(pullback(base, id).form.m == base.form.m);

  IMat twice(3, 3);
  for (size_t i = 0; i < 3; ++i) twice(i, i) = 2;
  CHECK(pullback(base, twice).form.m == (rat(4) * QMat::identity(3)));

  // diagonal torus inside the rank-3 apartment: an inclusion of a sublattice
  IMat incl(3, 1);
  incl(0, 0) = 1;
  incl(1, 0) = 1;
  incl(2, 0) = 1;
  auto restricted = pullback(base, incl);
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    QVec x = rng.rational_vector(1, 5), y = rng.rational_vector(1, 5);
    QVec lift_x(3, x[0]), lift_y(3, y[0]);
    CHECK(dist2(restricted, x, y) == dist2(base, lift_x, lift_y));
  }

  // non-injective maps are rejected
  IMat degenerate(3, 2);
  degenerate(0, 0) = 1;
  degenerate(0, 1) = 1;
  CHECK_THROWS_AS(pullback(base, degenerate), std::invalid_argument);
}

TEST_CASE("product metric satisfies the squared Pythagoras rule") {
  auto sl2 = sl2_apartment();
  auto d1 = standard_metric(sl2);
  auto d2 = AdmissibleMetric{SPDForm(QMat::from_rows({qv({3})})), {"scaled"}};
  auto prod = product_metric(d1, d2);
  CHECK(prod.dim() == 2);
  Rng rng(6);
  for (int t = 0; t < 1000; ++t) {
    QVec x = rng.rational_vector(2, 5), y = rng.rational_vector(2, 5);
    Rat lhs = dist2(prod, x, y);
    Rat rhs = dist2(d1, QVec{x[0]}, QVec{y[0]}) + dist2(d2, QVec{x[1]}, QVec{y[1]});
    CHECK(lhs == rhs);
  }
  // unit-form example: dist^2((1),(0)) in the first factor only
  CHECK(dist2(prod, qv({1, 0}), qv({0, 0})) == 1);

  // a rank-0 factor leaves the metric unchanged
  auto empty = AdmissibleMetric{SPDForm(QMat(0, 0)), {"trivial"}};
  CHECK(product_metric(d1, empty).form.m == d1.form.m);
}

TEST_CASE("central split of the GL2 apartment") {
  auto gl2 = gln_apartment(2);
  auto metric = standard_metric(gl2);
  auto split = central_split(metric, gl2);
  REQUIRE(split.z_basis.size() == 1);

  QVec x = qv({3, 1});
  QVec xz = split.proj_z * x;
  QVec xp = split.proj_perp * x;
  CHECK(xz == qv({2, 2}));
  CHECK(xp == qv({1, -1}));
  CHECK(x == xz + xp);
  // the parts are orthogonal for the form
  CHECK(metric.form.inner(xz, xp) == 0);
  // central vectors project to themselves
  QVec z = qv({5, 5});
  CHECK(split.proj_perp * z == qv({0, 0}));

  // squared Pythagoras identity on samples
  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    QVec u = rng.rational_vector(2, 5), v = rng.rational_vector(2, 5);
    Rat whole = dist2(metric, u, v);
    Rat zpart = metric.form.eval(split.proj_z * (u - v));
    Rat ppart = metric.form.eval(split.proj_perp * (u - v));
    CHECK(whole == zpart + ppart);
  }
}

TEST_CASE("central split is trivial without central cocharacters") {
  auto sl3 = sl3_apartment();
  auto metric = standard_metric(sl3);
  auto split = central_split(metric, sl3);
  CHECK(split.z_basis.empty());
  CHECK(split.proj_perp == QMat::identity(2));
  QVec x = qv({4, -7});
  CHECK(split.proj_z * x == qv({0, 0}));
}

TEST_CASE("bi-Lipschitz constants between admissible metrics") {
  auto sl3 = sl3_apartment();
  auto d1 = standard_metric(sl3);
  CHECK(bilipschitz(d1, d1) == std::make_pair(rat(1), rat(1)));

  auto d9 = AdmissibleMetric{SPDForm(rat(9) * d1.form.m), d1.provenance};
  CHECK(bilipschitz(d9, d1) == std::make_pair(rat(9), rat(9)));

  Rng rng(8);
  auto w1 = weyl_average(random_spd(rng, 2), sl3);
  auto w2 = weyl_average(random_spd(rng, 2), sl3);
  auto [c, big] = bilipschitz(w1, w2);
  for (int t = 0; t < 1000; ++t) {
    QVec x = rng.rational_vector(2, 6), y = rng.rational_vector(2, 6);
    Rat a = dist2(w1, x, y), b = dist2(w2, x, y);
    CHECK(c * b <= a);
    CHECK(a <= big * b);
  }
}

TEST_CASE("squared distances: exactness, invariance, homogeneity") {
  auto sl3 = sl3_apartment();
  auto metric = standard_metric(sl3);

  CHECK(dist2(metric, qv({3, 4}), qv({3, 4})) == 0);
  AdmissibleMetric flat{SPDForm(QMat::identity(2)), {"id"}};
  CHECK(dist2(flat, qv({1, 0}), qv({0, 1})) == 2);

  Rng rng(9);
  for (int t = 0; t < 1000; ++t) {
    QVec x = rng.rational_vector(2, 5), y = rng.rational_vector(2, 5);
    for (const auto& g : sl3.weyl_closure()) {
      QVec gx = g.to_rational() * x, gy = g.to_rational() * y;
      CHECK(dist2(metric, gx, gy) == dist2(metric, x, y));
    }
    Rat a = rng.positive_rational(5);
    CHECK(dist2(metric, a * x, a * y) == a * a * dist2(metric, x, y));
  }

  // flag-norm style: multiplicity-weighted sum of squared weights
  AdmissibleMetric gl3_form{SPDForm(QMat::identity(3)), {"id"}};
  CHECK(dist2(gl3_form, qv({2, -1, -1}), qv({0, 0, 0})) == 6);
}

TEST_CASE("dist2 over a quadratic extension stays exact") {
  AdmissibleMetric flat{SPDForm(QMat::identity(2)), {"id"}};
  SVec x{Scalar(rat(1)), Scalar(rat(0), rat(1), 2)};  // (1, sqrt2)
  SVec zero{Scalar(0), Scalar(0)};
  CHECK(dist2(flat, x, zero) == Scalar(rat(3)));
}

TEST_CASE("spherical squared chordal distance") {
  AdmissibleMetric flat{SPDForm(QMat::identity(2)), {"id"}};
  // same ray
  CHECK(spherical_dist2(flat, qv({2, 1}), qv({6, 3})) == Scalar(rat(0)));
  // antipodal: squared diameter 4
  CHECK(spherical_dist2(flat, qv({2, 1}), qv({-4, -2})) == Scalar(rat(4)));
  // 45 degrees: 2 - sqrt2
  CHECK(spherical_dist2(flat, qv({1, 0}), qv({1, 1})) == Scalar(rat(2), rat(-1), 2));
  CHECK_THROWS_AS(spherical_dist2(flat, qv({0, 0}), qv({1, 1})), std::invalid_argument);
  // sanity against floating point on random pairs
  Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    QVec x = rng.rational_vector(2, 5), y = rng.rational_vector(2, 5);
    if (is_zero(x) || is_zero(y)) continue;
    double nx = std::sqrt(flat.form.eval(x).get_d()), ny = std::sqrt(flat.form.eval(y).get_d());
    double cx0 = x[0].get_d() / nx - y[0].get_d() / ny;
    double cx1 = x[1].get_d() / nx - y[1].get_d() / ny;
    double expect = cx0 * cx0 + cx1 * cx1;
    CHECK(std::abs(spherical_dist2(flat, x, y).approx() - expect) < 1e-9);
  }
}

TEST_CASE("type gap: minimal positive orbit separation") {
  auto sl3 = sl3_apartment();
  auto metric = standard_metric(sl3);
  Rat gap = type_gap2(metric, sl3, qv({1, 0}));
  CHECK(gap > 0);
  auto orbit = weyl_orbit(sl3, SVec{Scalar(rat(1)), Scalar(rat(0))});
  for (const auto& p : orbit) {
    QVec q{p[0].rational(), p[1].rational()};
    if (q == qv({1, 0})) continue;
    CHECK(dist2(metric, q, qv({1, 0})) >= gap);
  }
  // fixed points have no positive-gap companions
  CHECK(type_gap2(metric, sl3, qv({0, 0})) == 0);
}
