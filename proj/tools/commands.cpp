#include "commands.hpp"

#include <CLI11.hpp>
#include <edifice/io.hpp>

#include <fstream>
#include <sstream>
#include <thread>

namespace edifice::cli {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CommonOpts {
  std::string input;
  std::string format = "json";
  uint64_t seed = 0;
  unsigned threads = 1;
  bool approx = false;
  size_t max_rank = 6;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input = true) {
  auto* opt = cmd->add_option("--input", o.input, "input spec file (JSON)");
  if (needs_input) opt->required();
  cmd->add_option("--format", o.format, "output format")->default_str("json");
  cmd->add_option("--seed", o.seed, "seed for randomized sub-procedures");
  cmd->add_option("--threads", o.threads, "worker threads for sample sweeps")
      ->check(CLI::Range(1u, 64u));
  cmd->add_flag("--approx", o.approx, "include decimal approximations in the output");
  cmd->add_option("--max-rank", o.max_rank, "safety bound for fan enumeration");
}

AdmissibleMetric metric_from(const QMat& form, const ApartmentData& a) {
  for (const auto& g : a.weyl_generators()) {
    QMat gq = g.to_rational();
    if (!(gq.transpose() * form * gq == form))
      throw std::invalid_argument("supplied form is not Weyl invariant");
  }
  return AdmissibleMetric{SPDForm(form), {"user"}};
}

// deterministic multi-threaded violation count for the sandwich check
size_t sandwich_violations(const AdmissibleMetric& d1, const AdmissibleMetric& d2, const Rat& c,
                           const Rat& big, size_t samples, uint64_t seed, unsigned threads) {
  // draw all samples up front so the partition cannot change the stream
  Rng rng(seed);
  std::vector<std::pair<QVec, QVec>> pairs;
  pairs.reserve(samples);
  for (size_t i = 0; i < samples; ++i)
    pairs.emplace_back(rng.rational_vector(d1.dim(), 6), rng.rational_vector(d1.dim(), 6));
  auto count_range = [&](size_t lo, size_t hi) {
    size_t bad = 0;
    for (size_t i = lo; i < hi; ++i) {
      Rat a = dist2(d1, pairs[i].first, pairs[i].second);
      Rat b = dist2(d2, pairs[i].first, pairs[i].second);
      if (!(c * b <= a && a <= big * b)) ++bad;
    }
    return bad;
  };
  if (threads <= 1) return count_range(0, samples);
  std::vector<size_t> partial(threads, 0);
  std::vector<std::thread> pool;
  size_t chunk = (samples + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    size_t lo = std::min<size_t>(t * chunk, samples), hi = std::min(lo + chunk, samples);
    pool.emplace_back([&, t, lo, hi] { partial[t] = count_range(lo, hi); });
  }
  for (auto& th : pool) th.join();
  size_t total = 0;
  for (size_t p : partial) total += p;
  return total;
}

void require_format(const CommonOpts& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw std::invalid_argument("unsupported output format '" + o.format + "'");
}

int cmd_fan(const CommonOpts& o, std::ostream& out) {
  require_format(o, {"json", "csv"});
  auto bundle = io::parse_apartment_json(slurp(o.input));
  auto fan = enumerate_fan(bundle.apartment, o.max_rank);
  if (o.format == "csv")
    out << io::fan_report_csv(bundle.apartment, fan);
  else
    out << io::fan_report_json(bundle.apartment, fan, o.approx);
  return 0;
}

int cmd_poset(const CommonOpts& o, std::ostream& out) {
  require_format(o, {"json", "dot"});
  auto bundle = io::parse_apartment_json(slurp(o.input));
  auto fan = enumerate_fan(bundle.apartment, o.max_rank);
  auto poset = parabolic_poset(bundle.apartment, fan);
  if (o.format == "dot")
    out << io::poset_dot(bundle.apartment, poset);
  else
    out << io::poset_report_json(bundle.apartment, poset);
  return 0;
}

int cmd_approx(const CommonOpts& o, const std::string& lambda_text, std::ostream& out) {
  require_format(o, {"json"});
  auto bundle = io::parse_apartment_json(slurp(o.input));
  SVec lambda = io::parse_scalar_tuple(lambda_text);
  IVec result = cochar_approx(bundle.apartment, lambda);
  out << io::approx_report_json(bundle.apartment, lambda, result);
  return 0;
}

int cmd_metric_compare(const CommonOpts& o, size_t samples, std::ostream& out) {
  require_format(o, {"json"});
  auto bundle = io::parse_apartment_json(slurp(o.input));
  const auto& a = bundle.apartment;
  auto d1 = bundle.form ? metric_from(*bundle.form, a) : standard_metric(a);
  auto d2 = bundle.form2 ? metric_from(*bundle.form2, a) : standard_metric(a);
  auto [c, big] = bilipschitz(d1, d2);
  size_t violations = sandwich_violations(d1, d2, c, big, samples, o.seed, o.threads);
  if (violations != 0) throw std::logic_error("certified constants violated on samples");
  out << io::metric_compare_report_json(d1, d2, c, big, samples, o.seed, o.approx);
  return 0;
}

int cmd_kempf(const CommonOpts& o, std::ostream& out) {
  require_format(o, {"json"});
  auto input = io::parse_kempf_json(slurp(o.input));
  LinearAction action{input.apartment};
  AdmissibleMetric metric = input.form ? metric_from(*input.form, action.apartment)
                                       : standard_metric(action.apartment);
  auto result = kempf_optimal(action, input.point, metric);
  out << io::kempf_report_json(action, input.point, result, o.approx);
  return result ? 0 : 3;
}

struct FlagOpsOpts {
  CommonOpts common;
  std::string group_path, x_path, y_path, g_path, lambda_path, levi_path, target_path;
  Rat t = Rat(1) / 2;
  std::string t_text = "1/2";
};

int cmd_flag_ops(const std::string& sub, const FlagOpsOpts& o, std::ostream& out) {
  auto group = io::parse_blockgroup_json(slurp(o.group_path));
  auto point = [&](const std::string& path) {
    return io::parse_point_json(slurp(path), group);
  };
  if (sub == "add") {
    auto z = add(point(o.x_path), point(o.y_path));
    out << io::point_json(z);
    return 0;
  }
  if (sub == "oppose") {
    auto x = point(o.x_path), y = point(o.y_path);
    if (!is_opposite(x, y)) {
      out << "{\n  \"opposite\": false\n}\n";
      return 3;
    }
    out << "{\n  \"opposite\": true,\n  \"lambda\":\n" << io::cochar_json(recover_lambda(x, y))
        << "}\n";
    return 0;
  }
  if (sub == "common") {
    auto basis = common_apartment(point(o.x_path), point(o.y_path));
    if (!basis) {
      out << "{\n  \"common_apartment\": \"none\"\n}\n";
      return 3;
    }
    out << io::matrix_json(*basis);
    return 0;
  }
  if (sub == "act") {
    auto g = io::parse_matrix_json(slurp(o.g_path));
    out << io::point_json(act(g, point(o.x_path)));
    return 0;
  }
  if (sub == "geodesic") {
    auto z = geodesic(point(o.x_path), point(o.y_path), rat_from_string(o.t_text));
    out << io::point_json(z);
    return 0;
  }
  if (sub == "project") {
    auto lambda = io::parse_cochar_json(slurp(o.lambda_path));
    auto levi = io::parse_blockgroup_json(slurp(o.levi_path));
    out << io::point_json(levi_projection(lambda, levi, point(o.x_path)));
    return 0;
  }
  if (sub == "quotient") {
    out << io::point_json(quotient_map(point(o.x_path)));
    return 0;
  }
  if (sub == "include") {
    auto target = io::parse_blockgroup_json(slurp(o.target_path));
    out << io::point_json(include_map(point(o.x_path), target));
    return 0;
  }
  throw std::invalid_argument("unknown flag-ops subcommand '" + sub + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"computations in vector edifices of split linear algebraic groups"};
  app.require_subcommand(1);

  CommonOpts fan_o, poset_o, approx_o, metric_o, kempf_o;
  std::string lambda_text;
  size_t samples = 1000;

  auto* fan = app.add_subcommand("fan", "enumerate the sign-pattern fan of an apartment");
  add_common(fan, fan_o);
  auto* poset = app.add_subcommand("poset", "parabolic poset and simplicial check");
  add_common(poset, poset_o);
  auto* approx = app.add_subcommand("approx", "integral cocharacter approximation");
  add_common(approx, approx_o);
  approx->add_option("--lambda", lambda_text, "cocharacter, e.g. \"(1/2, 1+sqrt2)\"")->required();
  auto* metric = app.add_subcommand("metric-compare", "certified bi-Lipschitz constants");
  add_common(metric, metric_o);
  metric->add_option("--samples", samples, "sandwich sample count");
  auto* kempf = app.add_subcommand("kempf", "optimal destabilising cocharacter");
  add_common(kempf, kempf_o);

  auto* flag_ops = app.add_subcommand("flag-ops", "weighted-flag point operations");
  flag_ops->require_subcommand(1);
  FlagOpsOpts fo;
  std::vector<std::string> subnames = {"add",      "oppose",  "common", "act",
                                       "geodesic", "project", "quotient", "include"};
  std::vector<CLI::App*> subs;
  for (const auto& name : subnames) {
    auto* s = flag_ops->add_subcommand(name);
    s->add_option("--group", fo.group_path)->required();
    s->add_option("--x", fo.x_path)->required();
    if (name == "add" || name == "oppose" || name == "common" || name == "geodesic")
      s->add_option("--y", fo.y_path)->required();
    if (name == "act") s->add_option("--g", fo.g_path)->required();
    if (name == "geodesic") s->add_option("--t", fo.t_text);
    if (name == "project") {
      s->add_option("--lambda", fo.lambda_path)->required();
      s->add_option("--levi", fo.levi_path)->required();
    }
    if (name == "include") s->add_option("--target", fo.target_path)->required();
    add_common(s, fo.common, /*needs_input=*/false);
    subs.push_back(s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (fan->parsed()) return cmd_fan(fan_o, out);
    if (poset->parsed()) return cmd_poset(poset_o, out);
    if (approx->parsed()) return cmd_approx(approx_o, lambda_text, out);
    if (metric->parsed()) return cmd_metric_compare(metric_o, samples, out);
    if (kempf->parsed()) return cmd_kempf(kempf_o, out);
    if (flag_ops->parsed()) {
      for (size_t i = 0; i < subs.size(); ++i)
        if (subs[i]->parsed()) return cmd_flag_ops(subnames[i], fo, out);
    }
  } catch (const NoCommonApartment& e) {
    err << "none: " << e.what() << "\n";
    return 3;
  } catch (const NotOpposite& e) {
    err << "none: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace edifice::cli
