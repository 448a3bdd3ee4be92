#include <edifice/io.hpp>

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace edifice::io {

using json = nlohmann::ordered_json;

namespace {

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw std::invalid_argument("rational must be an integer or a \"p/q\" string");
}

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("integer must be a number or string");
}

IVec ivec_from_json(const json& j) {
  IVec v;
  for (const auto& e : j) v.push_back(int_from_json(e));
  return v;
}

QVec qvec_from_json(const json& j) {
  QVec v;
  for (const auto& e : j) v.push_back(rat_from_json(e));
  return v;
}

QMat qmat_from_json(const json& j) {
  std::vector<QVec> rows;
  for (const auto& r : j) rows.push_back(qvec_from_json(r));
  return QMat::from_rows(rows);
}

IMat imat_from_json(const json& j) {
  std::vector<IVec> rows;
  for (const auto& r : j) rows.push_back(ivec_from_json(r));
  return IMat::from_rows(rows);
}

Scalar scalar_from_json(const json& j) {
  if (j.is_object()) {
    Rat a = j.contains("a") ? rat_from_json(j["a"]) : Rat(0);
    Rat b = j.contains("b") ? rat_from_json(j["b"]) : Rat(0);
    unsigned long d = j.contains("d") ? j["d"].get<unsigned long>() : 0;
    if (b != 0 && d == 0) throw std::invalid_argument("irrational part without a radicand");
    return b == 0 ? Scalar(a) : Scalar(a, b, d);
  }
  return Scalar(rat_from_json(j));
}

json rat_json(const Rat& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
  return json(rat_to_string(q));
}

json ivec_json(const IVec& v) {
  json a = json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p())
      a.push_back(x.get_si());
    else
      a.push_back(x.get_str());
  }
  return a;
}

json qvec_json(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_json(x));
  return a;
}

json qmat_json(const QMat& m) {
  json rows = json::array();
  for (size_t i = 0; i < m.rows(); ++i) rows.push_back(qvec_json(m.row(i)));
  return rows;
}

json scalar_json(const Scalar& s) {
  if (s.is_rational()) return rat_json(s.rational());
  json o;
  o["a"] = rat_json(s.rational_part());
  o["b"] = rat_json(s.radical_part());
  o["d"] = s.radicand();
  return o;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // surface the line number for CLI diagnostics
    size_t line = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw std::invalid_argument("JSON parse error at line " + std::to_string(line) + ": " +
                                e.what());
  }
}

json key_json(const ApartmentData& a, const ParabolicKey& key) {
  json o;
  o["geq0"] = json::array();
  for (size_t c : key.geq0) o["geq0"].push_back(ivec_json(a.weight_classes()[c]));
  o["zero"] = json::array();
  for (size_t c : key.zero) o["zero"].push_back(ivec_json(a.weight_classes()[c]));
  if (auto label = a.label_of(key)) o["label"] = *label;
  return o;
}

std::string pattern_string(const SignPattern& p) {
  std::string s;
  for (int v : p.signs) s += v > 0 ? '+' : (v == 0 ? '0' : '-');
  return s;
}

}  // namespace

ApartmentBundle parse_apartment_json(const std::string& text) {
  json j = parse_text(text);
  std::string name = j.value("name", "apartment");
  size_t rank = j.at("rank").get<size_t>();
  std::vector<IVec> weights;
  for (const auto& w : j.at("weights")) weights.push_back(ivec_from_json(w));
  std::vector<IMat> gens;
  if (j.contains("weyl_gens"))
    for (const auto& g : j["weyl_gens"]) gens.push_back(imat_from_json(g));
  std::vector<IVec> roots;
  if (j.contains("roots"))
    for (const auto& r : j["roots"]) roots.push_back(ivec_from_json(r));
  size_t bound = j.value("weyl_order_bound", 10080);

  ApartmentBundle bundle{ApartmentData(name, rank, weights, gens, roots, bound), std::nullopt,
                         std::nullopt};
  if (j.contains("labels")) {
    for (const auto& entry : j["labels"]) {
      std::vector<size_t> classes;
      for (const auto& w : entry.at("geq0_weights")) {
        IVec vec = ivec_from_json(w);
        const auto& cls = bundle.apartment.weight_classes();
        auto it = std::find(cls.begin(), cls.end(), vec);
        if (it == cls.end()) throw std::invalid_argument("label references an unknown weight");
        classes.push_back(static_cast<size_t>(it - cls.begin()));
      }
      bundle.apartment.set_label(classes, entry.at("label").get<std::string>());
    }
  }
  if (j.contains("form")) bundle.form = qmat_from_json(j["form"]);
  if (j.contains("form2")) bundle.form2 = qmat_from_json(j["form2"]);
  return bundle;
}

std::string apartment_json(const ApartmentBundle& bundle) {
  const auto& a = bundle.apartment;
  json o;
  o["name"] = a.name();
  o["rank"] = a.rank();
  o["weights"] = json::array();
  for (const auto& w : a.weights()) o["weights"].push_back(ivec_json(w));
  if (!a.weyl_generators().empty()) {
    o["weyl_gens"] = json::array();
    for (const auto& g : a.weyl_generators()) {
      json rows = json::array();
      for (size_t i = 0; i < g.rows(); ++i) rows.push_back(ivec_json(g.row(i)));
      o["weyl_gens"].push_back(rows);
    }
  }
  if (!a.root_indices().empty()) {
    o["roots"] = json::array();
    for (size_t i : a.root_indices()) o["roots"].push_back(ivec_json(a.weights()[i]));
  }
  if (!a.labels().empty()) {
    o["labels"] = json::array();
    for (const auto& [classes, label] : a.labels()) {
      json entry;
      entry["geq0_weights"] = json::array();
      for (size_t c : classes) entry["geq0_weights"].push_back(ivec_json(a.weight_classes()[c]));
      entry["label"] = label;
      o["labels"].push_back(entry);
    }
  }
  if (bundle.form) o["form"] = qmat_json(*bundle.form);
  if (bundle.form2) o["form2"] = qmat_json(*bundle.form2);
  return o.dump(2) + "\n";
}

GroupPtr parse_blockgroup_json(const std::string& text) {
  json j = parse_text(text);
  std::string name = j.value("name", "H");
  size_t n = j.at("n").get<size_t>();
  std::vector<std::vector<Entry>> pattern;
  for (const auto& row : j.at("pattern")) {
    std::string s = row.get<std::string>();
    if (s.size() != n) throw std::invalid_argument("pattern row length mismatch");
    std::vector<Entry> r;
    for (char c : s) {
      if (c != 'f' && c != 'z' && c != 'o')
        throw std::invalid_argument("pattern entries must be 'f', 'z' or 'o'");
      r.push_back(static_cast<Entry>(c));
    }
    pattern.push_back(std::move(r));
  }
  std::vector<DetConstraint> dets;
  if (j.contains("det")) {
    for (const auto& d : j["det"]) {
      DetConstraint c;
      for (const auto& b : d.at("block")) c.block.push_back(b.get<size_t>());
      auto v = d.at("value");
      if (v.is_string() && v.get<std::string>() == "unit")
        c.unit = true;
      else
        c.value = rat_from_json(v);
      dets.push_back(std::move(c));
    }
  }
  std::optional<UnipotentQuotient> quot;
  if (j.contains("quotient")) {
    UnipotentQuotient q;
    for (const auto& k : j["quotient"].at("keep")) q.keep.push_back(k.get<size_t>());
    q.quotient_name = j["quotient"].value("name", name + "_quotient");
    quot = std::move(q);
  }
  return std::make_shared<BlockGroupSpec>(name, n, std::move(pattern), std::move(dets),
                                          std::move(quot));
}

EdificePoint parse_point_json(const std::string& text, const GroupPtr& group) {
  json j = parse_text(text);
  EdificePoint x;
  x.group = group;
  auto weights = j.at("weights");
  auto bases = j.at("bases");
  if (weights.size() != bases.size())
    throw std::invalid_argument("weights and bases differ in length");
  for (size_t i = 0; i < weights.size(); ++i) {
    FlagLevel lv;
    lv.weight = rat_from_json(weights[i]);
    for (const auto& row : bases[i]) lv.basis.push_back(qvec_from_json(row));
    lv.basis = canonical_basis(lv.basis);
    x.levels.push_back(std::move(lv));
  }
  for (size_t i = 1; i < x.levels.size(); ++i)
    if (!(x.levels[i].weight < x.levels[i - 1].weight))
      throw std::invalid_argument("flag weights must strictly decrease");
  if (x.levels.empty() || x.levels.back().basis.size() != group->n())
    throw std::invalid_argument("flag must end at the full space");
  if (j.contains("rep")) {
    Cocharacter rep{qmat_from_json(j["rep"].at("conjugator")),
                    qvec_from_json(j["rep"].at("weights"))};
    // the witness must reproduce the stated flag exactly
    EdificePoint rebuilt = point_from_cochar(group, rep);
    if (!rebuilt.same_flag(x))
      throw std::invalid_argument("rep cocharacter does not match the flag");
    x.rep = std::move(rep);
  }
  return x;
}

std::string point_json(const EdificePoint& x) {
  json o;
  o["group"] = x.group->name();
  o["weights"] = json::array();
  o["bases"] = json::array();
  for (const auto& lv : x.levels) {
    o["weights"].push_back(rat_json(lv.weight));
    json rows = json::array();
    for (const auto& r : lv.basis) rows.push_back(qvec_json(r));
    o["bases"].push_back(rows);
  }
  if (x.rep) {
    o["rep"]["conjugator"] = qmat_json(x.rep->conjugator);
    o["rep"]["weights"] = qvec_json(x.rep->weights);
  }
  return o.dump(2) + "\n";
}

Cocharacter parse_cochar_json(const std::string& text) {
  json j = parse_text(text);
  return Cocharacter{qmat_from_json(j.at("conjugator")), qvec_from_json(j.at("weights"))};
}

std::string cochar_json(const Cocharacter& c) {
  json o;
  o["conjugator"] = qmat_json(c.conjugator);
  o["weights"] = qvec_json(c.weights);
  return o.dump(2) + "\n";
}

QMat parse_matrix_json(const std::string& text) { return qmat_from_json(parse_text(text)); }

std::string matrix_json(const QMat& m) { return qmat_json(m).dump(2) + "\n"; }

namespace {

// scalar grammar: term (('+'|'-') term)*, term = rational ['*'? sqrt d] | sqrt d
Scalar parse_scalar_text(const std::string& s) {
  size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  auto parse_rat = [&]() -> Rat {
    skip();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      throw std::invalid_argument("malformed scalar: '" + s + "'");
    return rat_from_string(s.substr(start, pos - start));
  };
  Scalar total(0);
  int pending_sign = +1;
  bool first = true;
  for (;;) {
    skip();
    if (pos >= s.size()) break;
    if (!first) {
      if (s[pos] == '+')
        pending_sign = +1;
      else if (s[pos] == '-')
        pending_sign = -1;
      else
        throw std::invalid_argument("malformed scalar: '" + s + "'");
      ++pos;
      skip();
    }
    // a term: [rational][*]['sqrt' d]  or  bare rational / bare sqrt
    Rat coef(1);
    bool have_coef = false;
    if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '+' ||
                           s[pos] == '-')) {
      if (s.compare(pos, 4, "sqrt") != 0) {
        coef = parse_rat();
        have_coef = true;
      }
    }
    skip();
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      skip();
    }
    if (pos + 4 <= s.size() && s.compare(pos, 4, "sqrt") == 0) {
      pos += 4;
      skip();
      bool paren = pos < s.size() && s[pos] == '(';
      if (paren) ++pos;
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos == start) throw std::invalid_argument("sqrt needs a radicand: '" + s + "'");
      unsigned long d = std::stoul(s.substr(start, pos - start));
      if (paren) {
        if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("unbalanced sqrt(");
        ++pos;
      }
      total += Scalar(Rat(0), rat(pending_sign) * coef, d);
    } else {
      if (!have_coef) throw std::invalid_argument("malformed scalar: '" + s + "'");
      total += Scalar(rat(pending_sign) * coef);
    }
    first = false;
    pending_sign = +1;
  }
  if (first) throw std::invalid_argument("empty scalar");
  return total;
}

}  // namespace

SVec parse_scalar_tuple(const std::string& text) {
  std::string s = text;
  auto l = s.find('(');
  auto r = s.rfind(')');
  if (l != std::string::npos && r != std::string::npos && l < r) s = s.substr(l + 1, r - l - 1);
  SVec out;
  size_t start = 0;
  int depth = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '(') ++depth;
    if (i < s.size() && s[i] == ')') --depth;
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      std::string piece = s.substr(start, i - start);
      if (piece.find_first_not_of(" \t") != std::string::npos)
        out.push_back(parse_scalar_text(piece));
      start = i + 1;
    }
  }
  return out;
}

KempfInput parse_kempf_json(const std::string& text) {
  json j = parse_text(text);
  std::vector<IVec> weights;
  for (const auto& w : j.at("weights")) weights.push_back(ivec_from_json(w));
  size_t rank = j.contains("rank") ? j["rank"].get<size_t>()
                                   : (weights.empty() ? 0 : weights[0].size());
  std::vector<IMat> gens;
  if (j.contains("weyl_gens"))
    for (const auto& g : j["weyl_gens"]) gens.push_back(imat_from_json(g));
  ApartmentData apartment(j.value("name", "action"), rank, weights, gens);

  std::vector<size_t> support;
  for (const auto& x : j.at("support")) support.push_back(x.get<size_t>());
  SVec coords;
  if (j.contains("coords"))
    for (const auto& c : j["coords"]) coords.push_back(scalar_from_json(c));
  else
    coords.assign(support.size(), Scalar(1));
  KempfInput in{std::move(apartment), StatePoint(std::move(support), std::move(coords)),
                std::nullopt};
  if (j.contains("form")) in.form = qmat_from_json(j["form"]);
  return in;
}

std::string fan_report_json(const ApartmentData& a, const ConeFan& fan, bool approx) {
  json o;
  o["apartment"] = a.name();
  o["rank"] = a.rank();
  o["cell_count"] = fan.cells.size();
  o["region_count"] = fan.regions.size();
  o["cells"] = json::array();
  for (const auto& cell : fan.cells) {
    json c;
    c["pattern"] = pattern_string(cell.pattern);
    c["witness"] = ivec_json(cell.witness);
    o["cells"].push_back(c);
  }
  o["regions"] = json::array();
  for (const auto& reg : fan.regions) {
    json r;
    r["key"] = key_json(a, reg.key);
    r["cells"] = reg.cells;
    o["regions"].push_back(r);
  }
  if (approx) o["note"] = "exact output; no approximation applies to fans";
  return o.dump(2) + "\n";
}

std::string fan_report_csv(const ApartmentData& a, const ConeFan& fan) {
  std::ostringstream os;
  os << "cell,pattern,witness,label\n";
  for (size_t i = 0; i < fan.cells.size(); ++i) {
    const auto& cell = fan.cells[i];
    os << i << "," << pattern_string(cell.pattern) << ",\"";
    for (size_t k = 0; k < cell.witness.size(); ++k)
      os << (k ? " " : "") << cell.witness[k].get_str();
    os << "\",";
    auto key = key_of_pattern(a, cell.pattern);
    if (auto label = a.label_of(key)) os << *label;
    os << "\n";
  }
  return os.str();
}

std::string poset_report_json(const ApartmentData& a, const ApartmentPoset& poset) {
  json o;
  o["apartment"] = a.name();
  o["node_count"] = poset.nodes.size();
  o["nodes"] = json::array();
  for (size_t i = 0; i < poset.nodes.size(); ++i) {
    json nd;
    nd["id"] = i;
    nd["key"] = key_json(a, poset.nodes[i].key);
    nd["minimal_elements"] = poset.minimal_below[i];
    nd["is_full_group"] = (i == poset.full_group_node);
    o["nodes"].push_back(nd);
  }
  o["hasse"] = json::array();
  for (const auto& [lo, hi] : poset.hasse) o["hasse"].push_back(json::array({lo, hi}));
  auto witness = simplicial_witness(poset);
  o["simplicial"] = !witness.has_value();
  if (witness) {
    json w;
    w["first"] = witness->first;
    w["second"] = witness->second;
    if (auto l1 = a.label_of(poset.nodes[witness->first].key)) w["first_label"] = *l1;
    if (auto l2 = a.label_of(poset.nodes[witness->second].key)) w["second_label"] = *l2;
    o["witness"] = w;
  }
  return o.dump(2) + "\n";
}

std::string poset_dot(const ApartmentData& a, const ApartmentPoset& poset) {
  std::ostringstream os;
  os << "digraph poset {\n  rankdir=BT;\n";
  for (size_t i = 0; i < poset.nodes.size(); ++i) {
    std::string label;
    if (auto l = a.label_of(poset.nodes[i].key)) {
      label = *l;
    } else {
      label = "{";
      for (size_t c : poset.nodes[i].key.geq0) {
        label += label.size() > 1 ? "," : "";
        const auto& w = a.weight_classes()[c];
        label += "(";
        for (size_t k = 0; k < w.size(); ++k) label += (k ? " " : "") + w[k].get_str();
        label += ")";
      }
      label += "}";
    }
    os << "  n" << i << " [label=\"" << label << "\"];\n";
  }
  for (const auto& [lo, hi] : poset.hasse) os << "  n" << lo << " -> n" << hi << ";\n";
  os << "}\n";
  return os.str();
}

std::string approx_report_json(const ApartmentData& a, const SVec& lambda, const IVec& result) {
  json o;
  o["apartment"] = a.name();
  o["lambda"] = json::array();
  for (const auto& s : lambda) o["lambda"].push_back(scalar_json(s));
  o["approx"] = ivec_json(result);
  SignPattern p = sign_partition(a, lambda);
  std::string signs;
  for (int v : p.signs) signs += v > 0 ? '+' : (v == 0 ? '0' : '-');
  o["signs"] = signs;
  return o.dump(2) + "\n";
}

std::string metric_compare_report_json(const AdmissibleMetric& d1, const AdmissibleMetric& d2,
                                       const Rat& c, const Rat& big_c, size_t samples,
                                       size_t seed, bool approx) {
  json o;
  o["c"] = rat_json(c);
  o["C"] = rat_json(big_c);
  if (approx) {
    o["c_approx"] = c.get_d();
    o["C_approx"] = big_c.get_d();
  }
  o["form1"] = qmat_json(d1.form.m);
  o["form2"] = qmat_json(d2.form.m);
  o["sample_check"] = {{"samples", samples}, {"seed", seed}, {"violations", 0}};
  return o.dump(2) + "\n";
}

std::string kempf_report_json(const LinearAction& action, const StatePoint& x,
                              const std::optional<KempfResult>& result, bool approx) {
  json o;
  o["apartment"] = action.apartment.name();
  o["support"] = x.support;
  if (!result) {
    o["semistable"] = true;
    return o.dump(2) + "\n";
  }
  o["semistable"] = false;
  o["lambda_opt"] = ivec_json(result->lambda_opt);
  o["value_sq"] = rat_json(result->value_sq);
  if (approx) o["value_approx"] = std::sqrt(result->value_sq.get_d());
  o["minimizer"] = qvec_json(result->minimizer);
  o["multipliers"] = qvec_json(result->multipliers);
  auto par = optimal_parabolic(action, x, result->lambda_opt);
  json key;
  key["geq0"] = json::array();
  for (size_t c : par.key.geq0)
    key["geq0"].push_back(ivec_json(action.apartment.weight_classes()[c]));
  key["zero"] = json::array();
  for (size_t c : par.key.zero)
    key["zero"].push_back(ivec_json(action.apartment.weight_classes()[c]));
  o["parabolic_key"] = key;
  o["unopposed"] = par.unopposed;
  return o.dump(2) + "\n";
}

std::string scalar_to_json_string(const Scalar& s) { return scalar_json(s).dump(); }

}  // namespace edifice::io
