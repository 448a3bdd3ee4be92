#include <doctest.h>
#include <edifice/prng.hpp>
#include <edifice/qp.hpp>

#include "helpers.hpp"

using namespace edifice;
using namespace testdata;

namespace {

// brute-force oracle: smallest form-norm over a rational grid of feasible
// points (step 1/4, box +-6)
std::optional<Rat> grid_min_norm(const std::vector<IVec>& cons, const SPDForm& f) {
  size_t n = f.dim();
  std::vector<long> v(n, -24);
  std::optional<Rat> best;
  for (;;) {
    QVec x(n);
    for (size_t i = 0; i < n; ++i) x[i] = rat(v[i], 4);
    bool ok = true;
    for (const auto& c : cons) {
      Rat s(0);
      for (size_t i = 0; i < n; ++i) s += Rat(c[i]) * x[i];
      if (s < 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      Rat nrm = f.eval(x);
      if (!best || nrm < *best) best = nrm;
    }
    size_t k = 0;
    while (k < n && ++v[k] > 24) v[k++] = -24;
    if (k == n) break;
  }
  return best;
}

void check_kkt(const std::vector<IVec>& cons, const SPDForm& f, const QPSolution& sol) {
  size_t n = f.dim();
  // stationarity: 2 F x = sum mu_i c_i
  QVec lhs = rat(2) * (f.m * sol.minimizer);
  QVec rhs(n, Rat(0));
  for (size_t i = 0; i < cons.size(); ++i)
    for (size_t j = 0; j < n; ++j) rhs[j] += sol.multipliers[i] * Rat(cons[i][j]);
  CHECK(lhs == rhs);
  for (size_t i = 0; i < cons.size(); ++i) {
    CHECK(sol.multipliers[i] >= 0);
    Rat s(0);
    for (size_t j = 0; j < n; ++j) s += Rat(cons[i][j]) * sol.minimizer[j];
    CHECK(s >= 1);
    // complementary slackness
    CHECK(sol.multipliers[i] * (s - 1) == 0);
  }
}

}  // namespace

TEST_CASE("min-norm QP on the spec instances") {
  SPDForm id2(QMat::identity(2));

  auto a = min_norm_qp({iv({1, 0})}, id2);
  REQUIRE(a.has_value());
  CHECK(a->minimizer == qv({1, 0}));
  check_kkt({iv({1, 0})}, id2, *a);

  auto b = min_norm_qp({iv({1, 0}), iv({0, 1})}, id2);
  REQUIRE(b.has_value());
  CHECK(b->minimizer == qv({1, 1}));
  check_kkt({iv({1, 0}), iv({0, 1})}, id2, *b);

  std::vector<IVec> cons{iv({1, 0}), iv({-1, 2})};
  auto c = min_norm_qp(cons, id2);
  REQUIRE(c.has_value());
  check_kkt(cons, id2, *c);
  auto oracle = grid_min_norm(cons, id2);
  REQUIRE(oracle.has_value());
  CHECK(c->value <= *oracle);
  // the oracle grid contains the true optimum here: (1,1)
  CHECK(c->minimizer == qv({1, 1}));
  CHECK(c->value == *oracle);
}

TEST_CASE("infeasible QP returns no value") {
  SPDForm id2(QMat::identity(2));
  CHECK(!min_norm_qp({iv({1, 0}), iv({-1, 0})}, id2).has_value());
}

TEST_CASE("random QPs beat every grid point and certify KKT") {
  Rng rng(909);
  int solved = 0;
  for (int t = 0; t < 40; ++t) {
    std::vector<IVec> cons;
    size_t nc = 1 + static_cast<size_t>(rng.int_in(0, 3));
    for (size_t i = 0; i < nc; ++i) {
      IVec c(2);
      for (auto& x : c) x = rng.int_in(-2, 2);
      cons.push_back(c);
    }
    // a random SPD form: A^T A + I
    QMat a(2, 2);
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) a(i, j) = rng.rational(2);
    SPDForm f(a.transpose() * a + QMat::identity(2));
    auto sol = min_norm_qp(cons, f);
    auto oracle = grid_min_norm(cons, f);
    if (!sol) {
      CHECK(!oracle.has_value());
      continue;
    }
    ++solved;
    check_kkt(cons, f, *sol);
    if (oracle) CHECK(sol->value <= *oracle);
  }
  CHECK(solved > 5);
}

TEST_CASE("generalized eigenvalue bounds") {
  SPDForm id2(QMat::identity(2));
  SPDForm twice(rat(2) * QMat::identity(2));
  SPDForm diag13(QMat::from_rows({qv({1, 0}), qv({0, 3})}));

  auto same = gen_eig_bounds(id2, id2);
  CHECK(same.first == 1);
  CHECK(same.second == 1);

  auto scaled = gen_eig_bounds(twice, id2);
  CHECK(scaled.first == 2);
  CHECK(scaled.second == 2);

  auto spread = gen_eig_bounds(diag13, id2);
  CHECK(spread.first == 1);
  CHECK(spread.second == 3);
}

TEST_CASE("eigenvalue bounds sandwich random vectors") {
  Rng rng(4242);
  QMat a0(3, 3), b0(3, 3);
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      a0(i, j) = rng.rational(3);
      b0(i, j) = rng.rational(3);
    }
  SPDForm a(a0.transpose() * a0 + QMat::identity(3));
  SPDForm b(b0.transpose() * b0 + QMat::identity(3));
  auto [c, big] = gen_eig_bounds(a, b);
  CHECK(c > 0);
  CHECK(c <= big);
  for (int t = 0; t < 1000; ++t) {
    QVec v = rng.rational_vector(3, 5);
    Rat va = a.eval(v), vb = b.eval(v);
    CHECK(c * vb <= va);
    CHECK(va <= big * vb);
  }
}
