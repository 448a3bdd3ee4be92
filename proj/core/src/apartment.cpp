#include <edifice/apartment.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace edifice {

std::vector<size_t> SignPattern::plus() const {
  std::vector<size_t> r;
  for (size_t i = 0; i < signs.size(); ++i)
    if (signs[i] > 0) r.push_back(i);
  return r;
}

std::vector<size_t> SignPattern::zero() const {
  std::vector<size_t> r;
  for (size_t i = 0; i < signs.size(); ++i)
    if (signs[i] == 0) r.push_back(i);
  return r;
}

std::vector<size_t> SignPattern::minus() const {
  std::vector<size_t> r;
  for (size_t i = 0; i < signs.size(); ++i)
    if (signs[i] < 0) r.push_back(i);
  return r;
}

ApartmentData::ApartmentData(std::string name, size_t rank, std::vector<IVec> weights,
                             std::vector<IMat> weyl_gens, std::vector<IVec> roots,
                             size_t weyl_order_bound)
    : name_(std::move(name)), rank_(rank), weights_(std::move(weights)), gens_(std::move(weyl_gens)) {
  if (rank_ == 0) {
    if (!weights_.empty() || !gens_.empty())
      throw std::invalid_argument("rank-0 apartment with weights or generators");
  }
  for (const auto& w : weights_)
    if (w.size() != rank_) throw std::invalid_argument("weight dimension mismatch");

  // deduplicated weight classes, in descending vector order
  std::vector<IVec> sorted = weights_;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  classes_ = std::move(sorted);
  class_of_.resize(weights_.size());
  for (size_t i = 0; i < weights_.size(); ++i) {
    auto it = std::lower_bound(classes_.begin(), classes_.end(), weights_[i], std::greater<>());
    class_of_[i] = static_cast<size_t>(it - classes_.begin());
  }

  for (const auto& g : gens_) {
    if (g.rows() != rank_ || g.cols() != rank_)
      throw std::invalid_argument("Weyl generator shape mismatch");
    if (!is_unimodular(g)) throw std::invalid_argument("Weyl generator is not unimodular");
  }

  // each generator must permute the weight multiset; record the class action
  for (const auto& g : gens_) {
    std::multiset<IVec> ws(weights_.begin(), weights_.end());
    std::vector<size_t> perm(classes_.size());
    auto ginv_q = inverse(g.to_rational());
    IMat ginv(rank_, rank_);
    for (size_t i = 0; i < rank_; ++i)
      for (size_t j = 0; j < rank_; ++j) {
        if ((*ginv_q)(i, j).get_den() != 1)
          throw std::logic_error("unimodular inverse not integral");
        ginv(i, j) = (*ginv_q)(i, j).get_num();
      }
    for (const auto& w : weights_) {
      IVec img = covector_times(w, ginv);
      auto it = ws.find(img);
      if (it == ws.end())
        throw std::invalid_argument("Weyl generator does not permute the weight multiset");
      ws.erase(it);
    }
    for (size_t c = 0; c < classes_.size(); ++c) {
      IVec img = covector_times(classes_[c], ginv);
      auto it = std::lower_bound(classes_.begin(), classes_.end(), img, std::greater<>());
      if (it == classes_.end() || *it != img)
        throw std::logic_error("class image missing despite multiset match");
      perm[c] = static_cast<size_t>(it - classes_.begin());
    }
    perms_.push_back(std::move(perm));
  }

  // Weyl closure by breadth-first products
  std::set<IMat> seen;
  std::vector<IMat> frontier;
  IMat id = IMat::identity(rank_);
  seen.insert(id);
  closure_.push_back(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    std::vector<IMat> next;
    for (const auto& w : frontier)
      for (const auto& g : gens_) {
        IMat p = g * w;
        if (seen.insert(p).second) {
          closure_.push_back(p);
          next.push_back(p);
          if (closure_.size() > weyl_order_bound)
            throw std::invalid_argument("Weyl closure exceeds the order bound");
        }
      }
    frontier = std::move(next);
  }

  // roots, when supplied, are expected to occur among the weights
  for (const auto& r : roots) {
    bool found = false;
    for (size_t i = 0; i < weights_.size(); ++i)
      if (weights_[i] == r) {
        roots_.push_back(i);
        found = true;
        break;
      }
    if (!found)
      warnings_.push_back("root " +
                          [&] {
                            std::string s = "(";
                            for (size_t j = 0; j < r.size(); ++j)
                              s += (j ? "," : "") + r[j].get_str();
                            return s + ")";
                          }() +
                          " is not contained in the weight multiset");
  }
}

void ApartmentData::set_label(const std::vector<size_t>& geq0_classes, std::string label) {
  auto key = geq0_classes;
  std::sort(key.begin(), key.end());
  labels_[key] = std::move(label);
}

std::optional<std::string> ApartmentData::label_of(const ParabolicKey& key) const {
  auto it = labels_.find(key.geq0);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

SignPattern sign_partition(const ApartmentData& a, const SVec& lambda) {
  if (lambda.size() != a.rank()) throw std::invalid_argument("cocharacter dimension mismatch");
  // compute per class, then fan out to the multiset
  std::vector<int> class_sign(a.weight_classes().size());
  for (size_t c = 0; c < a.weight_classes().size(); ++c)
    class_sign[c] = pair_scalar(lambda, a.weight_classes()[c]).sign();
  SignPattern s;
  s.signs.resize(a.weights().size());
  for (size_t i = 0; i < a.weights().size(); ++i) s.signs[i] = class_sign[a.class_of(i)];
  return s;
}

SignPattern sign_partition(const ApartmentData& a, const QVec& lambda) {
  SVec s(lambda.begin(), lambda.end());
  return sign_partition(a, s);
}

ParabolicKey key_of_pattern(const ApartmentData& a, const SignPattern& s) {
  if (s.signs.size() != a.weights().size()) throw std::invalid_argument("pattern size mismatch");
  std::set<size_t> geq0, zero;
  for (size_t i = 0; i < s.signs.size(); ++i) {
    if (s.signs[i] >= 0) geq0.insert(a.class_of(i));
    if (s.signs[i] == 0) zero.insert(a.class_of(i));
  }
  return ParabolicKey{{geq0.begin(), geq0.end()}, {zero.begin(), zero.end()}};
}

ParabolicKey parabolic_key(const ApartmentData& a, const SVec& lambda) {
  return key_of_pattern(a, sign_partition(a, lambda));
}

ParabolicKey parabolic_key(const ApartmentData& a, const QVec& lambda) {
  return key_of_pattern(a, sign_partition(a, lambda));
}

std::optional<IVec> realize_pattern(const ApartmentData& a, const SignPattern& s) {
  if (s.signs.size() != a.weights().size()) throw std::invalid_argument("pattern size mismatch");
  for (size_t i = 0; i < s.signs.size(); ++i)
    for (size_t j = i + 1; j < s.signs.size(); ++j)
      if (a.class_of(i) == a.class_of(j) && s.signs[i] != s.signs[j])
        throw std::invalid_argument("duplicate weights with different signs");
  if (a.rank() == 0) return IVec{};
  std::vector<IVec> strict, nonneg, zero;
  for (size_t c = 0; c < a.weight_classes().size(); ++c) {
    int sign = 0;
    bool found = false;
    for (size_t i = 0; i < s.signs.size(); ++i)
      if (a.class_of(i) == c) {
        sign = s.signs[i];
        found = true;
        break;
      }
    if (!found) continue;
    const IVec& w = a.weight_classes()[c];
    if (sign > 0)
      strict.push_back(w);
    else if (sign == 0)
      zero.push_back(w);
    else {
      IVec neg(w.size());
      for (size_t k = 0; k < w.size(); ++k) neg[k] = -w[k];
      strict.push_back(std::move(neg));
    }
  }
  return strict_feasible(strict, nonneg, zero, a.rank());
}

IVec cochar_approx(const ApartmentData& a, const SVec& lambda) {
  if (lambda.size() != a.rank()) throw std::invalid_argument("cocharacter dimension mismatch");
  bool rational = std::all_of(lambda.begin(), lambda.end(),
                              [](const Scalar& s) { return s.is_rational(); });
  if (rational) {
    QVec q(lambda.size());
    for (size_t i = 0; i < lambda.size(); ++i) q[i] = lambda[i].rational();
    return primitive_integer(q, /*allow_zero=*/true);
  }
  SignPattern target = sign_partition(a, lambda);
  auto witness = realize_pattern(a, target);
  if (!witness) throw std::logic_error("cocharacter's own pattern reported infeasible");
  QVec rationalized = to_rational(*witness);
  if (!(sign_partition(a, rationalized) == target))
    throw std::logic_error("approximation changed the sign partition");
  return *witness;
}

namespace {

int pattern_rank(int s) { return s > 0 ? 0 : (s == 0 ? 1 : 2); }  // + < 0 < -

bool cell_less(const FanCell& a, const FanCell& b) {
  const auto& x = a.pattern.signs;
  const auto& y = b.pattern.signs;
  for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (pattern_rank(x[i]) != pattern_rank(y[i])) return pattern_rank(x[i]) < pattern_rank(y[i]);
  }
  return x.size() < y.size();
}

}  // namespace

ConeFan enumerate_fan(const ApartmentData& a, size_t max_rank) {
  if (a.rank() > max_rank) throw std::invalid_argument("rank exceeds the fan enumeration bound");
  size_t nc = a.weight_classes().size();

  // classes with nonzero weight get a sign; zero weights are always 0
  std::vector<size_t> live;
  std::vector<int> fixed(nc, 0);
  for (size_t c = 0; c < nc; ++c) {
    const IVec& w = a.weight_classes()[c];
    bool zero = std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 0; });
    if (!zero) live.push_back(c);
  }

  ConeFan fan;
  std::vector<int> class_sign(nc, 0);

  // depth-first over sign assignments with feasibility pruning
  auto assemble = [&](size_t upto) {
    std::vector<IVec> strict, nonneg, zero;
    for (size_t li = 0; li < upto; ++li) {
      size_t c = live[li];
      const IVec& w = a.weight_classes()[c];
      if (class_sign[c] > 0)
        strict.push_back(w);
      else if (class_sign[c] == 0)
        zero.push_back(w);
      else {
        IVec neg(w.size());
        for (size_t k = 0; k < w.size(); ++k) neg[k] = -w[k];
        strict.push_back(std::move(neg));
      }
    }
    return std::tuple(strict, nonneg, zero);
  };

  std::function<void(size_t)> descend = [&](size_t li) {
    auto [strict, nonneg, zero] = assemble(li);
    auto witness = strict_feasible(strict, nonneg, zero, a.rank());
    if (!witness) return;
    if (li == live.size()) {
      SignPattern p;
      p.signs.resize(a.weights().size());
      for (size_t i = 0; i < a.weights().size(); ++i) p.signs[i] = class_sign[a.class_of(i)];
      fan.cells.push_back({p, *witness});
      return;
    }
    for (int s : {+1, 0, -1}) {
      class_sign[live[li]] = s;
      descend(li + 1);
    }
    class_sign[live[li]] = 0;
  };
  if (a.rank() == 0) {
    fan.cells.push_back({SignPattern{std::vector<int>(a.weights().size(), 0)}, IVec{}});
  } else {
    descend(0);
  }

  std::sort(fan.cells.begin(), fan.cells.end(), cell_less);

  // group cells by parabolic (geq0 class set); the region's canonical key
  // carries the intersection of the zero sets, realized by the generic cell
  std::map<std::vector<size_t>, FanRegion> regions;
  for (size_t ci = 0; ci < fan.cells.size(); ++ci) {
    ParabolicKey key = key_of_pattern(a, fan.cells[ci].pattern);
    auto it = regions.find(key.geq0);
    if (it == regions.end()) {
      regions.emplace(key.geq0, FanRegion{key, {ci}});
    } else {
      auto& reg = it->second;
      std::vector<size_t> inter;
      std::set_intersection(reg.key.zero.begin(), reg.key.zero.end(), key.zero.begin(),
                            key.zero.end(), std::back_inserter(inter));
      reg.key.zero = std::move(inter);
      reg.cells.push_back(ci);
    }
  }
  for (auto& [geq0, reg] : regions) fan.regions.push_back(std::move(reg));
  return fan;
}

bool ApartmentPoset::leq(size_t i, size_t j) const {
  // sigma_i <= sigma_j iff geq0(j) is a subset of geq0(i)
  const auto& gi = nodes[i].key.geq0;
  const auto& gj = nodes[j].key.geq0;
  return std::includes(gi.begin(), gi.end(), gj.begin(), gj.end());
}

ApartmentPoset parabolic_poset(const ApartmentData& a, const ConeFan& fan) {
  ApartmentPoset p;
  p.nodes = fan.regions;
  size_t n = p.nodes.size();

  // antisymmetry is structural (nodes are distinct geq0 sets) but cheap to
  // verify
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (p.leq(i, j) && p.leq(j, i)) throw std::logic_error("poset order not antisymmetric");

  p.full_group_node = n;
  size_t all = a.weight_classes().size();
  for (size_t i = 0; i < n; ++i)
    if (p.nodes[i].key.geq0.size() == all) p.full_group_node = i;
  if (p.full_group_node == n) throw std::logic_error("missing full-group node (lambda = 0)");

  // vertices: minimal proper nodes
  std::vector<bool> vertex(n, false);
  for (size_t i = 0; i < n; ++i) {
    if (i == p.full_group_node) continue;
    bool minimal = true;
    for (size_t j = 0; j < n && minimal; ++j)
      if (j != i && j != p.full_group_node && p.leq(j, i)) minimal = false;
    vertex[i] = minimal;
  }
  p.minimal_below.resize(n);
  for (size_t i = 0; i < n; ++i) {
    if (i == p.full_group_node) continue;
    for (size_t v = 0; v < n; ++v)
      if (vertex[v] && p.leq(v, i)) p.minimal_below[i].push_back(v);
  }

  // Hasse covers
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j || !p.leq(i, j)) continue;
      bool cover = true;
      for (size_t k = 0; k < n && cover; ++k)
        if (k != i && k != j && p.leq(i, k) && p.leq(k, j)) cover = false;
      if (cover) p.hasse.emplace_back(i, j);
    }
  return p;
}

std::optional<std::pair<size_t, size_t>> simplicial_witness(const ApartmentPoset& p) {
  size_t n = p.nodes.size();
  for (size_t i = 0; i < n; ++i) {
    if (i == p.full_group_node) continue;
    for (size_t j = i + 1; j < n; ++j) {
      if (j == p.full_group_node) continue;
      if (p.minimal_below[i] == p.minimal_below[j]) {
        // report the higher face first (the one with the smaller geq0 set)
        if (p.nodes[i].key.geq0.size() <= p.nodes[j].key.geq0.size()) return std::make_pair(i, j);
        return std::make_pair(j, i);
      }
    }
  }
  return std::nullopt;
}

std::vector<SVec> weyl_orbit(const ApartmentData& a, const SVec& lambda) {
  if (lambda.size() != a.rank()) throw std::invalid_argument("cocharacter dimension mismatch");
  auto less = [](const SVec& x, const SVec& y) {
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] < y[i]) return true;
      if (y[i] < x[i]) return false;
    }
    return false;
  };
  std::set<SVec, decltype(less)> orbit(less);
  for (const auto& w : a.weyl_closure()) orbit.insert(w * lambda);
  return {orbit.begin(), orbit.end()};
}

SVec apply_map(const IMat& f, const ApartmentData& source, const ApartmentData& target,
               const SVec& lambda, const std::vector<IVec>* pullback_table) {
  if (f.cols() != source.rank() || f.rows() != target.rank())
    throw std::invalid_argument("lattice map shape mismatch");
  if (lambda.size() != source.rank()) throw std::invalid_argument("cocharacter dimension mismatch");
  if (pullback_table) {
    if (pullback_table->size() != target.weights().size())
      throw std::invalid_argument("pullback table size mismatch");
    for (size_t i = 0; i < target.weights().size(); ++i)
      if (covector_times(target.weights()[i], f) != (*pullback_table)[i])
        throw std::invalid_argument("pullback table does not match the lattice map");
  }
  return f * lambda;
}

ApartmentData product(const ApartmentData& a1, const ApartmentData& a2) {
  size_t r1 = a1.rank(), r2 = a2.rank();
  std::vector<IVec> weights;
  for (const auto& w : a1.weights()) {
    IVec v(r1 + r2, Int(0));
    std::copy(w.begin(), w.end(), v.begin());
    weights.push_back(std::move(v));
  }
  for (const auto& w : a2.weights()) {
    IVec v(r1 + r2, Int(0));
    std::copy(w.begin(), w.end(), v.begin() + r1);
    weights.push_back(std::move(v));
  }
  std::vector<IMat> gens;
  for (const auto& g : a1.weyl_generators()) {
    IMat m = IMat::identity(r1 + r2);
    for (size_t i = 0; i < r1; ++i)
      for (size_t j = 0; j < r1; ++j) m(i, j) = g(i, j);
    gens.push_back(std::move(m));
  }
  for (const auto& g : a2.weyl_generators()) {
    IMat m = IMat::identity(r1 + r2);
    for (size_t i = 0; i < r2; ++i)
      for (size_t j = 0; j < r2; ++j) m(r1 + i, r1 + j) = g(i, j);
    gens.push_back(std::move(m));
  }
  return ApartmentData(a1.name() + "x" + a2.name(), r1 + r2, std::move(weights), std::move(gens));
}

std::vector<IVec> central_cochars(const ApartmentData& a) {
  if (a.weights().empty()) {
    std::vector<IVec> basis;
    for (size_t i = 0; i < a.rank(); ++i) {
      IVec e(a.rank(), Int(0));
      e[i] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  return integer_kernel(IMat::from_rows(a.weights()));
}

}  // namespace edifice
