#pragma once

#include <edifice/apartment.hpp>

// Shared combinatorial test data.

namespace testdata {

using namespace edifice;

inline IVec iv(std::initializer_list<long> xs) {
  IVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline QVec qv(std::initializer_list<long> xs) {
  QVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline SVec sv(std::initializer_list<long> xs) {
  SVec v;
  for (long x : xs) v.emplace_back(rat(x));
  return v;
}

// GL_2 x V inside GL_3: conjugation weights of the diagonal torus on the Lie
// algebra, {e1-e2, e2-e1, e1, e2, 0}.
inline ApartmentData gl2v_apartment() {
  std::vector<IVec> weights = {iv({1, -1}), iv({-1, 1}), iv({1, 0}), iv({0, 1}), iv({0, 0})};
  IMat swap(2, 2);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  ApartmentData a("GL2xV", 2, weights, {swap});
  return a;
}

inline void attach_gl2v_labels(ApartmentData& a) {
  // classes in descending order: 0:(1,0) 1:(1,-1) 2:(0,1) 3:(0,0) 4:(-1,1)
  a.set_label({0, 1, 2, 3, 4}, "G");
  a.set_label({1, 3, 4}, "GL2");
  a.set_label({0, 1, 2, 3}, "B+ x V");
  a.set_label({0, 1, 3}, "B+ x V1");
  a.set_label({1, 3}, "B+");
  a.set_label({0, 2, 3, 4}, "B- x V");
  a.set_label({2, 3, 4}, "B- x V2");
  a.set_label({3, 4}, "B-");
}

// SL_3 root data in simple coroot coordinates: the six roots of A_2.
inline ApartmentData sl3_apartment() {
  std::vector<IVec> weights = {iv({2, -1}),  iv({-1, 2}),  iv({1, 1}),
                               iv({-2, 1}), iv({1, -2}), iv({-1, -1})};
  IMat s1(2, 2), s2(2, 2);
  s1(0, 0) = -1;
  s1(0, 1) = 1;
  s1(1, 1) = 1;
  s2(0, 0) = 1;
  s2(1, 0) = 1;
  s2(1, 1) = -1;
  return ApartmentData("SL3", 2, weights, {s1, s2});
}

// SL_2 adjoint data: weights {2, -2, 0}, Weyl group {±1}.
inline ApartmentData sl2_apartment() {
  std::vector<IVec> weights = {iv({2}), iv({-2}), iv({0})};
  IMat w(1, 1);
  w(0, 0) = -1;
  return ApartmentData("SL2", 1, weights, {w});
}

// rank-1 torus acting with a single weight
inline ApartmentData rank1_apartment() {
  return ApartmentData("rank1", 1, {iv({1})}, {});
}

// GL_n conjugation data: weights e_i - e_j plus n zeros, Weyl = S_n.
inline ApartmentData gln_apartment(size_t n) {
  std::vector<IVec> weights;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      IVec w(n, Int(0));
      if (i == j) {
        weights.push_back(w);
        continue;
      }
      w[i] = 1;
      w[j] = -1;
      weights.push_back(std::move(w));
    }
  std::vector<IMat> gens;
  for (size_t k = 0; k + 1 < n; ++k) {
    IMat p = IMat::identity(n);
    p(k, k) = 0;
    p(k + 1, k + 1) = 0;
    p(k, k + 1) = 1;
    p(k + 1, k) = 1;
    gens.push_back(std::move(p));
  }
  return ApartmentData("GL" + std::to_string(n), n, weights, gens);
}

// GL_n conjugation plus the standard module weights e_i.
inline ApartmentData gln_with_standard(size_t n) {
  auto base = gln_apartment(n);
  std::vector<IVec> weights = base.weights();
  for (size_t i = 0; i < n; ++i) {
    IVec w(n, Int(0));
    w[i] = 1;
    weights.push_back(std::move(w));
  }
  return ApartmentData("GL" + std::to_string(n) + "+std", n, weights, base.weyl_generators());
}

}  // namespace testdata
