#include <doctest.h>
#include <edifice/apartment.hpp>
#include <edifice/prng.hpp>

#include <map>
#include <set>

#include "helpers.hpp"

using namespace edifice;
using namespace testdata;

namespace {

SVec to_svec(const QVec& q) { return SVec(q.begin(), q.end()); }
SVec to_svec(const IVec& v) {
  SVec s;
  for (const auto& x : v) s.emplace_back(Rat(x));
  return s;
}

std::string key_label(const ApartmentData& a, const SVec& lambda) {
  auto key = parabolic_key(a, lambda);
  auto label = a.label_of(key);
  REQUIRE(label.has_value());
  return *label;
}

}  // namespace

TEST_CASE("apartment construction validates the data") {
  CHECK_NOTHROW(gl2v_apartment());
  CHECK_NOTHROW(sl3_apartment());
  CHECK(sl3_apartment().weyl_closure().size() == 6);
  CHECK(gl2v_apartment().weyl_closure().size() == 2);

  // a generator that does not permute the weights is rejected
  IMat bad(2, 2);
  bad(0, 0) = 1;
  bad(0, 1) = 1;
  bad(1, 1) = 1;
  CHECK_THROWS_AS(ApartmentData("bad", 2, {iv({1, 0})}, {bad}), std::invalid_argument);

  // roots outside the weight multiset only warn
  ApartmentData warned("w", 1, {iv({2})}, {}, {iv({3})});
  CHECK(warned.warnings().size() == 1);
  ApartmentData fine("f", 1, {iv({2})}, {}, {iv({2})});
  CHECK(fine.warnings().empty());
}

TEST_CASE("sign partitions on the semidirect example") {
  auto a = gl2v_apartment();
  // lambda = (2,1): e1-e2, e1, e2 positive; e2-e1 negative; 0 zero
  auto p = sign_partition(a, sv({2, 1}));
  CHECK(p.signs == std::vector<int>{1, -1, 1, 1, 0});
  // lambda = 0: everything zero
  auto z = sign_partition(a, sv({0, 0}));
  CHECK(z.signs == std::vector<int>{0, 0, 0, 0, 0});
  // lambda = (1, sqrt2): e1-e2 pairs to 1 - sqrt2 < 0
  SVec irr{Scalar(rat(1)), Scalar(rat(0), rat(1), 2)};
  auto q = sign_partition(a, irr);
  CHECK(q.signs[0] == -1);
  CHECK(q.signs[1] == +1);
  CHECK(q.signs[2] == +1);
  CHECK(q.signs[3] == +1);
}

TEST_CASE("parabolic keys reproduce the eight table rows") {
  auto a = gl2v_apartment();
  attach_gl2v_labels(a);
  CHECK(key_label(a, sv({1, 1})) == "G");       // a = b >= 0
  CHECK(key_label(a, sv({0, 0})) == "G");
  CHECK(key_label(a, sv({2, 1})) == "B+ x V");  // a > b >= 0
  CHECK(key_label(a, sv({1, 0})) == "B+ x V");
  CHECK(key_label(a, sv({1, -1})) == "B+ x V1");  // a >= 0 > b
  CHECK(key_label(a, sv({0, -1})) == "B+ x V1");
  CHECK(key_label(a, sv({-1, -2})) == "B+");      // 0 > a > b
  CHECK(key_label(a, sv({-1, -1})) == "GL2");     // 0 > a = b
  CHECK(key_label(a, sv({-2, -1})) == "B-");      // 0 > b > a
  CHECK(key_label(a, sv({-1, 1})) == "B- x V2");  // b >= 0 > a
  CHECK(key_label(a, sv({-1, 0})) == "B- x V2");
  CHECK(key_label(a, sv({1, 2})) == "B- x V");    // b > a >= 0
}

TEST_CASE("keys are invariant under positive scaling") {
  auto a = gl2v_apartment();
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    QVec l = rng.rational_vector(2, 5);
    Rat c = rng.positive_rational(7);
    CHECK(parabolic_key(a, to_svec(l)) == parabolic_key(a, to_svec(c * l)));
  }
}

TEST_CASE("key addition closure") {
  // P_{l+m} = P_l when the keys agree, exactly (sum lemma at sign level)
  auto a = gl2v_apartment();
  Rng rng(22);
  int hits = 0;
  for (int t = 0; t < 500; ++t) {
    QVec l = rng.rational_vector(2, 5), m = rng.rational_vector(2, 5);
    auto kl = parabolic_key(a, to_svec(l));
    if (!(kl == parabolic_key(a, to_svec(m)))) continue;
    ++hits;
    CHECK(parabolic_key(a, to_svec(l + m)) == kl);
    Rat ca = rng.positive_rational(), cb = rng.positive_rational();
    CHECK(parabolic_key(a, to_svec(ca * l + cb * m)) == kl);
  }
  CHECK(hits > 20);
}

TEST_CASE("realize_pattern inverts sign_partition") {
  auto a = gl2v_apartment();
  // table row b > a >= 0, witness like (0,1)
  SignPattern want;
  want.signs = {-1, 1, 1, 1, 0};  // e1-e2 < 0, e2-e1 > 0, e1 > 0?? see below
  // row "b>a>=0" interior: a=1,b=2: signs (-,+,+,+,0)
  auto w = realize_pattern(a, want);
  REQUIRE(w.has_value());
  CHECK(sign_partition(a, to_svec(*w)) == want);

  // chi and -chi cannot both be positive
  SignPattern bad;
  bad.signs = {1, 1, 1, 1, 0};
  CHECK(!realize_pattern(a, bad).has_value());

  // the all-zero pattern is realized by 0 here (the weights span)
  SignPattern zero;
  zero.signs = {0, 0, 0, 0, 0};
  auto z = realize_pattern(a, zero);
  REQUIRE(z.has_value());
  CHECK(*z == iv({0, 0}));
}

TEST_CASE("cochar_approx rescales rational input") {
  auto a = sl3_apartment();
  CHECK(cochar_approx(a, sv({1, 2})) == iv({1, 2}));
  SVec frac{Scalar(rat(1, 2)), Scalar(rat(1, 3))};
  CHECK(cochar_approx(a, frac) == iv({3, 2}));
  CHECK(cochar_approx(a, sv({0, 0})) == iv({0, 0}));
}

TEST_CASE("cochar_approx preserves sign partitions over quadratic fields") {
  auto sl3 = sl3_apartment();
  auto gl2v = gl2v_apartment();
  Rng rng(33);
  for (int t = 0; t < 200; ++t) {
    const ApartmentData& a = t % 2 ? sl3 : gl2v;
    SVec l = rng.sqrt_vector(2, 2);
    IVec approx = cochar_approx(a, l);
    CHECK(sign_partition(a, to_svec(approx)) == sign_partition(a, l));
  }
  // the SL3 example with lambda = (1, sqrt2 - 1)
  SVec l{Scalar(rat(1)), Scalar(rat(-1), rat(1), 2)};
  IVec approx = cochar_approx(sl3, l);
  CHECK(sign_partition(sl3, to_svec(approx)) == sign_partition(sl3, l));
}

TEST_CASE("fan of a rank-1 torus action") {
  auto a = rank1_apartment();
  auto fan = enumerate_fan(a);
  CHECK(fan.cells.size() == 3);  // +, 0, -
  CHECK(fan.regions.size() == 2);  // geq0 = {chi} and geq0 = {} grouped: {+,0} vs {-}
}

TEST_CASE("fan of the semidirect example matches the table") {
  auto a = gl2v_apartment();
  attach_gl2v_labels(a);
  auto fan = enumerate_fan(a);
  CHECK(fan.cells.size() == 13);   // 6 sectors + 6 rays + origin
  CHECK(fan.regions.size() == 8);  // the eight table rows
  std::set<std::string> labels;
  for (const auto& reg : fan.regions) {
    auto l = a.label_of(reg.key);
    REQUIRE(l.has_value());
    labels.insert(*l);
  }
  CHECK(labels == std::set<std::string>{"G", "GL2", "B+ x V", "B+ x V1", "B+", "B- x V",
                                        "B- x V2", "B-"});
  // every cell's witness realizes its sign pattern exactly
  for (const auto& cell : fan.cells)
    CHECK(sign_partition(a, to_svec(cell.witness)) == cell.pattern);
  // cells are pairwise distinct as sign patterns
  std::set<std::vector<int>> seen;
  for (const auto& cell : fan.cells) CHECK(seen.insert(cell.pattern.signs).second);
}

TEST_CASE("fan partition covers random points exactly once") {
  auto a = gl2v_apartment();
  auto fan = enumerate_fan(a);
  Rng rng(44);
  for (int t = 0; t < 300; ++t) {
    QVec l = rng.rational_vector(2, 9);
    auto p = sign_partition(a, to_svec(l));
    size_t hits = 0;
    for (const auto& cell : fan.cells)
      if (cell.pattern == p) ++hits;
    CHECK(hits == 1);
  }
}

TEST_CASE("SL3 fan has thirteen keys, matching the grid oracle") {
  auto a = sl3_apartment();
  auto fan = enumerate_fan(a);
  CHECK(fan.cells.size() == 13);    // 6 sectors + 6 rays + origin
  CHECK(fan.regions.size() == 13);  // 1 + 6 chambers + 6 walls

  std::set<std::vector<size_t>> oracle;
  for (long x = -4; x <= 4; ++x)
    for (long y = -4; y <= 4; ++y) oracle.insert(parabolic_key(a, sv({x, y})).geq0);
  CHECK(oracle.size() == 13);
  std::set<std::vector<size_t>> computed;
  for (const auto& reg : fan.regions) computed.insert(reg.key.geq0);
  CHECK(computed == oracle);
}

TEST_CASE("poset of the semidirect example is not simplicial") {
  auto a = gl2v_apartment();
  attach_gl2v_labels(a);
  auto fan = enumerate_fan(a);
  auto poset = parabolic_poset(a, fan);
  CHECK(poset.nodes.size() == 8);

  auto witness = simplicial_witness(poset);
  REQUIRE(witness.has_value());
  auto l1 = a.label_of(poset.nodes[witness->first].key);
  auto l2 = a.label_of(poset.nodes[witness->second].key);
  REQUIRE(l1.has_value());
  REQUIRE(l2.has_value());
  CHECK(*l1 == "B+ x V1");
  CHECK(*l2 == "B+ x V");
  // the two faces contain the same minimal elements
  CHECK(poset.minimal_below[witness->first] == poset.minimal_below[witness->second]);

  // B+ x V1 has exactly one proper face above it in the partial order: B+ x V
  size_t v1 = witness->first;
  size_t count = 0;
  for (size_t j = 0; j < poset.nodes.size(); ++j) {
    if (j == v1 || j == poset.full_group_node) continue;
    if (poset.leq(j, v1)) ++count;  // j below v1: proper faces of v1
  }
  CHECK(count == 1);
}

TEST_CASE("SL3 poset is simplicial; torus poset is a point") {
  auto sl3 = sl3_apartment();
  auto poset = parabolic_poset(sl3, enumerate_fan(sl3));
  CHECK(poset.nodes.size() == 13);
  CHECK(!simplicial_witness(poset).has_value());

  ApartmentData torus("T", 1, {iv({0})}, {});
  auto tposet = parabolic_poset(torus, enumerate_fan(torus));
  CHECK(tposet.nodes.size() == 1);
  CHECK(!simplicial_witness(tposet).has_value());
}

TEST_CASE("Weyl equivariance of sign partitions") {
  auto a = sl3_apartment();
  Rng rng(55);
  for (int t = 0; t < 100; ++t) {
    QVec l = rng.rational_vector(2, 5);
    for (size_t g = 0; g < a.weyl_generators().size(); ++g) {
      SVec wl = a.weyl_generators()[g] * to_svec(l);
      auto p = sign_partition(a, to_svec(l));
      auto q = sign_partition(a, wl);
      const auto& perm = a.class_permutation(g);
      for (size_t i = 0; i < a.weights().size(); ++i) {
        size_t c = a.class_of(i);
        // the class of weight i maps to perm[c]; find a weight index in it
        for (size_t j = 0; j < a.weights().size(); ++j)
          if (a.class_of(j) == perm[c]) {
            CHECK(q.signs[j] == p.signs[i]);
            break;
          }
      }
    }
  }
}

TEST_CASE("weyl orbits") {
  auto sl2 = sl2_apartment();
  auto orbit1 = weyl_orbit(sl2, sv({1}));
  CHECK(orbit1.size() == 2);
  CHECK(weyl_orbit(sl2, sv({0})).size() == 1);

  auto sl3 = sl3_apartment();
  CHECK(weyl_orbit(sl3, sv({1, 0})).size() == 6);  // generic orbit
  CHECK(weyl_orbit(sl3, sv({1, 2})).size() == 3);  // orbit of a wall point
}

TEST_CASE("local semicontinuity of geq0 under small perturbations") {
  auto a = sl3_apartment();
  Rng rng(66);
  for (int t = 0; t < 200; ++t) {
    QVec l = rng.rational_vector(2, 5);
    // epsilon from the smallest nonzero pairing over the largest coefficient sum
    Rat min_pair(0);
    Int max_coeff(0);
    for (const auto& w : a.weight_classes()) {
      Int sum(0);
      for (const auto& c : w) sum += abs(c);
      if (sum > max_coeff) max_coeff = sum;
      Rat p(0);
      for (size_t k = 0; k < 2; ++k) p += Rat(w[k]) * l[k];
      if (p != 0 && (min_pair == 0 || abs(p) < min_pair)) min_pair = abs(p);
    }
    if (min_pair == 0) continue;
    Rat eps = min_pair / (2 * Rat(max_coeff));
    QVec mu(2);
    for (auto& m : mu) m = rng.rational(3) * eps / 3;
    auto before = parabolic_key(a, to_svec(l));
    auto after = parabolic_key(a, to_svec(l + mu));
    CHECK(std::includes(before.geq0.begin(), before.geq0.end(), after.geq0.begin(),
                        after.geq0.end()));
  }
}

TEST_CASE("lattice maps of cocharacters") {
  auto sl3 = sl3_apartment();
  IMat id = IMat::identity(2);
  SVec l = sv({3, 1});
  CHECK(apply_map(id, sl3, sl3, l) == l);

  // diagonal inclusion Z -> Z^2
  ApartmentData z1("Z", 1, {iv({1})}, {});
  ApartmentData z2("Z2", 2, {iv({1, 0}), iv({0, 1})}, {});
  IMat diag(2, 1);
  diag(0, 0) = 1;
  diag(1, 0) = 1;
  auto img = apply_map(diag, z1, z2, sv({3}));
  CHECK(img == sv({3, 3}));

  // a pullback table is verified when supplied
  std::vector<IVec> table = {iv({1}), iv({1})};
  CHECK_NOTHROW(apply_map(diag, z1, z2, sv({3}), &table));
  std::vector<IVec> wrong = {iv({1}), iv({2})};
  CHECK_THROWS_AS(apply_map(diag, z1, z2, sv({3}), &wrong), std::invalid_argument);

  // injective maps reflect key equality downstream (tested property)
  Rng rng(77);
  IMat f(2, 2);
  f(0, 0) = 1;
  f(0, 1) = 1;
  f(1, 1) = 1;  // unimodular, injective
  IMat finv(2, 2);
  finv(0, 0) = 1;
  finv(0, 1) = -1;
  finv(1, 1) = 1;
  // push the weights forward along f so all pairings are preserved
  std::vector<IVec> pushed;
  for (const auto& w : sl3.weights()) pushed.push_back(covector_times(w, finv));
  ApartmentData target("img", 2, pushed, {});
  // pullback weights make the pairings match, so keys correspond exactly
  for (int t = 0; t < 50; ++t) {
    QVec x = rng.rational_vector(2, 4), y = rng.rational_vector(2, 4);
    auto fx = apply_map(f, sl3, target, to_svec(x));
    auto fy = apply_map(f, sl3, target, to_svec(y));
    bool same_up = parabolic_key(sl3, to_svec(x)) == parabolic_key(sl3, to_svec(y));
    bool same_down = parabolic_key(target, fx) == parabolic_key(target, fy);
    CHECK(same_up == same_down);
  }
}

TEST_CASE("principal rank-1 embedding into SL3 coweights") {
  // diag(a, 1, a^-1) in simple-coroot coordinates is (1, 1); its pairings
  // with the simple roots are both 1 while the rank-1 source pairs to 2
  auto sl3 = sl3_apartment();
  auto sl2 = sl2_apartment();
  IMat f(2, 1);
  f(0, 0) = 1;
  f(1, 0) = 1;
  auto img = apply_map(f, sl2, sl3, sv({1}));
  CHECK(img == sv({1, 1}));
  CHECK(pair_scalar(img, iv({2, -1})) == Scalar(rat(1)));
  CHECK(pair_scalar(img, iv({-1, 2})) == Scalar(rat(1)));
  // the pullback of each simple root restricts to half the source root
  CHECK(covector_times(iv({2, -1}), f) == iv({1}));
  CHECK(covector_times(iv({-1, 2}), f) == iv({1}));
}

TEST_CASE("products of apartments") {
  auto sl2 = sl2_apartment();
  auto prod = product(sl2, sl2);
  CHECK(prod.rank() == 2);
  CHECK(prod.weights().size() == 6);
  auto fan = enumerate_fan(prod);
  CHECK(fan.regions.size() == 9);  // 3 x 3 keys

  // componentwise key factorization
  Rng rng(88);
  for (int t = 0; t < 50; ++t) {
    QVec l = rng.rational_vector(2, 5);
    auto key = parabolic_key(prod, to_svec(l));
    auto k1 = parabolic_key(sl2, to_svec(QVec{l[0]}));
    auto k2 = parabolic_key(sl2, to_svec(QVec{l[1]}));
    // reconstruct the product geq0 from the factors
    std::set<std::vector<Int>> expect;
    for (size_t c : k1.geq0) {
      IVec w = sl2.weight_classes()[c];
      expect.insert({w[0], Int(0)});
    }
    for (size_t c : k2.geq0) {
      IVec w = sl2.weight_classes()[c];
      expect.insert({Int(0), w[0]});
    }
    std::set<std::vector<Int>> got;
    for (size_t c : key.geq0) {
      const auto& w = prod.weight_classes()[c];
      got.insert({w[0], w[1]});
    }
    CHECK(got == expect);
  }

  // product with a rank-0 datum leaves the apartment unchanged
  ApartmentData trivial("pt", 0, {}, {});
  auto same = product(sl2, trivial);
  CHECK(same.rank() == 1);
  CHECK(same.weights() == sl2.weights());
}

TEST_CASE("an apartment with no weights is a single region") {
  ApartmentData bare("bare", 2, {}, {});
  auto fan = enumerate_fan(bare);
  CHECK(fan.cells.size() == 1);
  CHECK(fan.regions.size() == 1);
  auto poset = parabolic_poset(bare, fan);
  CHECK(poset.nodes.size() == 1);
  CHECK(!simplicial_witness(poset).has_value());
  CHECK(central_cochars(bare).size() == 2);
}

TEST_CASE("central cocharacter sublattices") {
  CHECK(central_cochars(gln_apartment(3)) == std::vector<IVec>{iv({1, 1, 1})});
  // SL3 roots with the standard weights adjoined: trivial centre
  std::vector<IVec> ws = sl3_apartment().weights();
  ws.push_back(iv({1, 0}));
  ws.push_back(iv({-1, 1}));
  ws.push_back(iv({0, -1}));
  ApartmentData enriched("SL3+std", 2, ws, {});
  CHECK(central_cochars(enriched).empty());
  // a torus acting trivially has everything central
  ApartmentData torus("T", 2, {iv({0, 0})}, {});
  CHECK(central_cochars(torus).size() == 2);
}
