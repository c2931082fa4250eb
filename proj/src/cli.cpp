#include "pixel/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>

#include "pixel/io.hpp"
#include "pixel/ppm.hpp"

namespace pixel::cli {

namespace {

using io::Json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Config {
  std::string in, in2, out, epsilon, kind, box = "full", point, ppm;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  int nmax = 2, n = 2, l = 1, s = 2, t = 2, r = 1, k = 2, d = 1, a = 2;
  int ppm_size = 256, threads = 1;
  bool weak = false, mc = false;
  std::vector<std::string> params;
};

struct Outcome {
  Json report;
  int code = 0;
  /// d = 2 function drawn by --ppm.
  std::optional<PiecewiseFunction> raster;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<std::string> flags;
  std::vector<std::string> required;
  std::uint64_t default_trials = 0;
  std::function<Outcome(const Config&)> handler;
};

// Flags that never change the report bytes are kept out of "config".
bool recorded(const std::string& flag) {
  return flag != "out" && flag != "ppm" && flag != "ppm-size" && flag != "threads";
}

Json config_value(const Config& c, const std::string& flag) {
  if (flag == "in") return c.in;
  if (flag == "in2") return c.in2;
  if (flag == "seed") return c.seed;
  if (flag == "trials") return c.trials;
  if (flag == "epsilon") return c.epsilon.empty() ? Json(nullptr) : Json(to_string(parse_rational(c.epsilon)));
  if (flag == "nmax") return c.nmax;
  if (flag == "n") return c.n;
  if (flag == "l") return c.l;
  if (flag == "s") return c.s;
  if (flag == "t") return c.t;
  if (flag == "r") return c.r;
  if (flag == "k") return c.k;
  if (flag == "d") return c.d;
  if (flag == "a") return c.a;
  if (flag == "kind") return c.kind;
  if (flag == "weak") return c.weak;
  if (flag == "mc") return c.mc;
  if (flag == "box") return c.box;
  if (flag == "param") return c.params;
  if (flag == "point") return c.point;
  return nullptr;
}

void add_flag(CLI::App* sub, Config& c, const std::string& flag) {
  if (flag == "in") sub->add_option("--in", c.in, "input file");
  else if (flag == "in2") sub->add_option("--in2", c.in2, "second input file");
  else if (flag == "out") sub->add_option("--out", c.out, "write the report here instead of stdout");
  else if (flag == "seed") sub->add_option("--seed", c.seed, "64-bit seed (default 0)");
  else if (flag == "trials") sub->add_option("--trials", c.trials, "number of samples");
  else if (flag == "epsilon") sub->add_option("--epsilon", c.epsilon, "rational p/q in (0,1]");
  else if (flag == "nmax") sub->add_option("--nmax", c.nmax, "largest substructure size (default 2)");
  else if (flag == "n") sub->add_option("--n", c.n, "substructure size (default 2)");
  else if (flag == "l") sub->add_option("--l", c.l, "resolution / number of blocks (default 1)");
  else if (flag == "s") sub->add_option("--s", c.s, "block size (default 2)");
  else if (flag == "t") sub->add_option("--t", c.t, "block size of the instantiation (default 2)");
  else if (flag == "r") sub->add_option("--r", c.r, "size to preserve (default 1)");
  else if (flag == "k") sub->add_option("--k", c.k, "color count (default 2)");
  else if (flag == "d") sub->add_option("--d", c.d, "arity (default 1)");
  else if (flag == "a") sub->add_option("--a", c.a, "alphabet size (default 2)");
  else if (flag == "kind") sub->add_option("--kind", c.kind, "variant selector");
  else if (flag == "weak") sub->add_flag("--weak", c.weak, "allow equal indices");
  else if (flag == "mc") sub->add_flag("--mc", c.mc, "Monte Carlo estimate instead of the exact value");
  else if (flag == "box") sub->add_option("--box", c.box, "full or dyadic (default full)")->check(CLI::IsMember({"full", "dyadic"}));
  else if (flag == "param") sub->add_option("--param", c.params, "generator parameter key=value (repeatable)");
  else if (flag == "point") sub->add_option("--point", c.point, "comma-separated rational coordinates");
  else if (flag == "ppm") sub->add_option("--ppm", c.ppm, "also write a P6 raster of the d = 2 subject");
  else if (flag == "ppm-size") sub->add_option("--ppm-size", c.ppm_size, "raster side in pixels (default 256)");
  else if (flag == "threads") sub->add_option("--threads", c.threads, "worker threads (speed only)");
}

// ---------------------------------------------------------------------------
// Input helpers.

std::string need(const std::string& v, const char* flag) {
  if (v.empty()) throw UsageError(std::string("missing --") + flag);
  return v;
}

PiecewiseFunction load_function(const std::string& path, const char* flag) {
  return io::function_from_json(io::load_file(need(path, flag)));
}
DiscreteModel load_discrete(const std::string& path, const char* flag) {
  return io::discrete_from_json(io::load_file(need(path, flag)));
}
HomogeneousSpec load_spec(const std::string& path, const char* flag) {
  return io::spec_from_json(io::load_file(need(path, flag)));
}

Rational epsilon_of(const Config& c) {
  try {
    return parse_rational(need(c.epsilon, "epsilon"));
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(std::string("--epsilon: ") + e.what());
  }
}

std::map<std::string, std::string> params_of(const Config& c, const std::vector<std::string>& allowed) {
  std::map<std::string, std::string> out;
  for (const std::string& p : c.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects key=value, got '" + p + "'");
    std::string key = p.substr(0, eq);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw UsageError("unknown parameter '" + key + "' for --kind " + c.kind);
    out[key] = p.substr(eq + 1);
  }
  return out;
}

int int_param(const std::map<std::string, std::string>& p, const std::string& key, int fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("parameter '" + key + "' must be an integer");
}

BoxStrategy strategy_of(const Config& c) { return c.box == "dyadic" ? BoxStrategy::Dyadic : BoxStrategy::Full; }

PixelateOptions pixelate_options(const Config& c, std::uint64_t trials) {
  PixelateOptions o;
  o.trials = trials;
  o.seed = c.seed;
  o.strategy = strategy_of(c);
  o.threads = c.threads;
  return o;
}

Json models_json(const std::set<DiscreteModel>& models) {
  Json arr = Json::array();
  for (const auto& m : models) arr.push_back(io::to_json(m));
  return arr;
}

// ---------------------------------------------------------------------------
// Subcommands.

Outcome cmd_gen(const Config& c) {
  PiecewiseFunction f = PiecewiseFunction::order_function();
  if (c.kind == "order_function") {
    params_of(c, {});
  } else if (c.kind == "dyadic_alternating") {
    auto p = params_of(c, {"depth"});
    f = PiecewiseFunction::dyadic_alternating(int_param(p, "depth", 5));
  } else if (c.kind == "threshold") {
    auto p = params_of(c, {"level"});
    f = PiecewiseFunction::threshold(p.count("level") ? parse_rational(p["level"]) : Rational(1));
  } else if (c.kind == "random_homogeneous") {
    auto p = params_of(c, {"l", "d", "k"});
    f = PiecewiseFunction::random_homogeneous(int_param(p, "l", 2), int_param(p, "d", 2), int_param(p, "k", 2), c.seed);
  } else if (c.kind == "random_grid") {
    auto p = params_of(c, {"m", "d", "k"});
    const int m = int_param(p, "m", 4), d = int_param(p, "d", 2), k = int_param(p, "k", 2);
    if (m < 1 || d < 1 || d > Limits::max_arity || k < 1 || k > Limits::max_colors)
      throw UsageError("random_grid needs m >= 1, d in [1,4], k in [1,16]");
    std::mt19937_64 rng(c.seed);
    std::vector<Color> values(checked_volume(d, m));
    for (auto& v : values) v = static_cast<Color>(1 + rng() % static_cast<std::uint64_t>(k));
    f = PiecewiseFunction::grid(DiscreteModel(d, k, m, std::move(values)));
  } else {
    throw UsageError("--kind must be one of order_function, dyadic_alternating, threshold, random_homogeneous, random_grid");
  }
  return {io::to_json(f), 0, f};
}

Outcome cmd_eval(const Config& c) {
  PiecewiseFunction f = load_function(c.in, "in");
  std::vector<Rational> x;
  std::string rest = need(c.point, "point");
  for (std::size_t start = 0;;) {
    const auto comma = rest.find(',', start);
    x.push_back(parse_rational(rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  Json pt = Json::array();
  for (const auto& v : x) pt.push_back(io::to_json(v));
  return {Json{{"point", pt}, {"color", f.evaluate(x)}}, 0, std::nullopt};
}

Outcome cmd_check_homog(const Config& c) {
  DiscreteModel s = load_discrete(c.in, "in");
  auto res = check_homogeneous(s, c.l);
  if (auto* g = std::get_if<HomogeneousSpec>(&res))
    return {Json{{"homogeneous", true}, {"spec", io::to_json(*g)}}, 0, std::nullopt};
  return {Json{{"homogeneous", false}, {"violation", io::to_json(std::get<HomogeneityViolation>(res))}}, 1, std::nullopt};
}

Outcome cmd_instantiate(const Config& c) {
  DiscreteModel m = instantiate(load_spec(c.in, "in"), c.t);
  Outcome o{io::to_json(m), 0, std::nullopt};
  if (m.arity() == 2) o.raster = PiecewiseFunction::grid(m);
  return o;
}

Outcome cmd_compatible(const Config& c) {
  DiscreteModel r = load_discrete(c.in, "in"), s = load_discrete(c.in2, "in2");
  try {
    const bool ok = compatible(r, s, c.l);
    return {Json{{"compatible", ok}}, ok ? 0 : 1, std::nullopt};
  } catch (const NotHomogeneous& e) {
    return {Json{{"compatible", false}, {"error", e.what()}, {"violation", io::to_json(e.violation())}}, 1,
            std::nullopt};
  }
}

Outcome cmd_flatten(const Config& c) {
  HomogeneousSpec g = flatten_order_dependency(load_spec(c.in, "in"));
  return {io::to_json(g), 0, PiecewiseFunction::homogeneous(g)};
}

Outcome cmd_distance(const Config& c) {
  PiecewiseFunction f = load_function(c.in, "in"), g = load_function(c.in2, "in2");
  if (c.mc) return {io::to_json(distance_mc(f, g, c.trials, c.seed, c.threads)), 0, f};
  return {Json{{"distance", io::to_json(distance_exact(f, g))}}, 0, f};
}

Outcome cmd_mu(const Config& c) {
  PiecewiseFunction f = load_function(c.in, "in");
  return {io::to_json(mu_exact(f, c.n)), 0, f};
}

Outcome cmd_sample(const Config& c) {
  PiecewiseFunction f = load_function(c.in, "in");
  return {io::to_json(mu_sample(f, c.n, c.trials, c.seed, c.threads)), 0, f};
}

Outcome cmd_substructs(const Config& c) {
  PiecewiseFunction f = load_function(c.in, "in");
  if (!f.piecewise_form()) throw NotPiecewise("substructs needs an input with a piecewise form");
  auto models = enumerate_substructures(*f.piecewise_form(), c.n);
  return {Json{{"n", c.n}, {"count", models.size()}, {"models", models_json(models)}}, 0, f};
}

Outcome cmd_appears(const Config& c) {
  DiscreteModel r = load_discrete(c.in, "in"), s = load_discrete(c.in2, "in2");
  auto w = c.weak ? appears_weak(r, s) : appears_in_discrete(r, s);
  Json rep{{"mode", c.weak ? "weak" : "strict"}, {"appears", w.has_value()}};
  rep["witness"] = w ? Json(w->indices) : Json(nullptr);
  return {rep, w ? 0 : 1, std::nullopt};
}

Outcome cmd_inlay_find(const Config& c) {
  DiscreteModel s = load_discrete(c.in, "in");
  auto res = find_homogeneous_inlay(s, c.l, c.s);
  if (!res) return {Json{{"found", false}, {"selection", nullptr}, {"model", nullptr}}, 1, std::nullopt};
  return {Json{{"found", true}, {"selection", io::to_json(res->selection)}, {"model", io::to_json(res->model)}}, 0,
          std::nullopt};
}

Outcome cmd_inlay_sample(const Config& c) {
  PiecewiseFunction f = load_function(c.in, "in");
  Box box = c.box == "dyadic" ? random_dyadic_box(c.l, c.seed) : Box::full(c.l);
  InlaySample smp = sample_random_inlay(f, c.l, c.s, box, c.seed);
  return {Json{{"box", io::to_json(box)},
               {"selection", io::to_json(smp.selection)},
               {"model", io::to_json(smp.model)},
               {"homogeneous", smp.homogeneous}},
          0, f};
}

Outcome cmd_ramsey_find(const Config& c) {
  SortedColoring col = io::coloring_from_json(io::load_file(need(c.in, "in")));
  std::string kind = c.kind.empty() ? (col.sorts.size() == 1 ? "mono" : "multisort") : c.kind;
  if ((kind == "mono" || kind == "uniform") && col.sorts.size() != 1)
    throw UsageError("--kind " + kind + " needs a coloring with exactly one sort");
  Json rep{{"kind", kind}};
  bool found = false;
  if (kind == "mono") {
    auto res = find_monochromatic(col.sorts[0], col.coloring, c.s);
    found = res.has_value();
    if (res) {
      rep["subset"] = res->subset;
      rep["color"] = res->color;
    }
  } else if (kind == "uniform") {
    auto res = find_size_uniform(col.sorts[0], col.coloring, c.s);
    found = res.has_value();
    if (res) {
      rep["subset"] = res->subset;
      rep["colors"] = res->colors;
    }
  } else if (kind == "multisort") {
    auto res = find_multisort(col, c.s);
    found = res.has_value();
    if (res) {
      rep["parts"] = res->parts;
      Json prof = Json::array();
      for (const auto& [p, color] : res->profile_colors) prof.push_back(Json{{"profile", p}, {"color", color}});
      rep["profiles"] = std::move(prof);
    }
  } else {
    throw UsageError("--kind must be mono, uniform or multisort");
  }
  rep["found"] = found;
  return {rep, found ? 0 : 1, std::nullopt};
}

Outcome cmd_ramsey_bound(const Config& c) {
  Json rep{{"kind", c.kind}};
  if (c.kind == "R1" || c.kind == "R2") {
    rep["params"] = Json{{"d", c.d}, {"a", c.a}, {"s", c.s}};
    rep["value"] = io::to_json(c.kind == "R1" ? bound_R1(c.d, BigInt(c.a), BigInt(c.s)) : bound_R2(c.d, BigInt(c.a), BigInt(c.s)));
  } else if (c.kind == "R") {
    rep["params"] = Json{{"l", c.l}, {"d", c.d}, {"a", c.a}, {"s", c.s}};
    rep["value"] = io::to_json(bound_R(c.l, c.d, BigInt(c.a), BigInt(c.s)));
  } else if (c.kind == "r") {
    rep["params"] = Json{{"l", c.l}, {"s", c.s}, {"d", c.d}, {"k", c.k}};
    InlayBound b = bound_r_inlay(c.l, c.s, c.d, c.k);
    rep["value"] = io::to_json(b.value);
    rep["alphabet_size"] = io::to_json(b.alphabet_size);
  } else if (c.kind == "delta") {
    rep["params"] = Json{{"l", c.l}, {"s", c.s}, {"d", c.d}, {"k", c.k}};
    rep["value"] = io::to_json(bound_delta(c.l, c.s, c.d, c.k));
  } else {
    throw UsageError("--kind must be R1, R2, R, r or delta");
  }
  return {rep, 0, std::nullopt};
}

Outcome cmd_quantize(const Config& c) {
  PiecewiseFunction f = load_function(c.in, "in");
  HomogeneousSpec g = quantize(f, c.l);
  return {io::to_json(g), 0, PiecewiseFunction::homogeneous(g)};
}

Outcome cmd_appclose(const Config& c) {
  PiecewiseFunction f = load_function(c.in, "in");
  HomogeneousSpec g = load_spec(c.in2, "in2");
  return {io::to_json(appclose_search(f, g, c.s, c.trials, c.seed, strategy_of(c))), 0, f};
}

Outcome certificate_outcome(const PixelationCertificate& cert) {
  Outcome o{io::to_json(cert), cert.verdict == Verdict::Fail || cert.verdict == Verdict::Inconclusive ? 1 : 0,
            std::nullopt};
  if (cert.g_prime) o.raster = PiecewiseFunction::homogeneous(*cert.g_prime);
  return o;
}

Outcome cmd_pixelate(const Config& c) {
  PiecewiseFunction f = load_function(c.in, "in");
  try {
    return certificate_outcome(pixelate(f, epsilon_of(c), c.nmax, pixelate_options(c, c.trials)));
  } catch (const BudgetExhausted& e) {
    Outcome o = certificate_outcome(e.partial());
    o.report["error"] = e.what();
    o.code = 1;
    return o;
  }
}

Outcome cmd_certify(const Config& c) {
  PiecewiseFunction f = load_function(c.in, "in");
  HomogeneousSpec g = load_spec(c.in2, "in2");
  CertifyOptions o;
  o.trials = c.trials;
  o.seed = c.seed;
  o.threads = c.threads;
  CertifyResult res = certify(g, f, c.nmax, o);
  const int code = res.verdict == Verdict::Fail || res.verdict == Verdict::Inconclusive ? 1 : 0;
  return {io::to_json(res), code, PiecewiseFunction::homogeneous(g)};
}

Outcome cmd_ensure_size(const Config& c) {
  PiecewiseFunction f = load_function(c.in, "in");
  try {
    return certificate_outcome(pixelate_ensure_size(f, epsilon_of(c), c.r, c.nmax, pixelate_options(c, c.trials)));
  } catch (const BudgetExhausted& e) {
    Outcome o = certificate_outcome(e.partial());
    o.report["error"] = e.what();
    o.code = 1;
    return o;
  }
}

const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"gen", "emit a built-in generator or a random grid as a model file", {"kind", "param", "seed", "out", "ppm", "ppm-size"}, {"kind"}, 0, cmd_gen},
      {"eval", "evaluate a function at a rational point", {"in", "point", "out"}, {"in", "point"}, 0, cmd_eval},
      {"check-homog", "check l-part homogeneity of a discrete model", {"in", "l", "out"}, {"in"}, 0, cmd_check_homog},
      {"instantiate", "the homogeneous model over [tl]^d compatible with a spec", {"in", "t", "out", "ppm", "ppm-size"}, {"in"}, 0, cmd_instantiate},
      {"compatible", "compare two l-part homogeneous models", {"in", "in2", "l", "out"}, {"in", "in2"}, 0, cmd_compatible},
      {"flatten", "remove the order dependency of a spec", {"in", "out", "ppm", "ppm-size"}, {"in"}, 0, cmd_flatten},
      {"distance", "distance between two functions", {"in", "in2", "mc", "trials", "seed", "threads", "out", "ppm", "ppm-size"}, {"in", "in2"}, 100000, cmd_distance},
      {"mu", "exact statistic distribution", {"in", "n", "out", "ppm", "ppm-size"}, {"in"}, 0, cmd_mu},
      {"sample", "empirical statistic distribution", {"in", "n", "trials", "seed", "threads", "out", "ppm", "ppm-size"}, {"in"}, 10000, cmd_sample},
      {"substructs", "all substructures of size n", {"in", "n", "out", "ppm", "ppm-size"}, {"in"}, 0, cmd_substructs},
      {"appears", "search for an appearance of one model in another", {"in", "in2", "weak", "out"}, {"in", "in2"}, 0, cmd_appears},
      {"inlay-find", "first homogeneous inlay of a discrete model", {"in", "l", "s", "out"}, {"in"}, 0, cmd_inlay_find},
      {"inlay-sample", "random inlay of a function", {"in", "l", "s", "seed", "box", "out", "ppm", "ppm-size"}, {"in"}, 0, cmd_inlay_sample},
      {"ramsey-find", "monochromatic, size-uniform or multi-sort subsets", {"in", "s", "kind", "out"}, {"in"}, 0, cmd_ramsey_find},
      {"ramsey-bound", "evaluate a bound recursion", {"kind", "l", "d", "a", "s", "k", "out"}, {"kind"}, 0, cmd_ramsey_bound},
      {"quantize", "plurality quantization at resolution l", {"in", "l", "out", "ppm", "ppm-size"}, {"in"}, 0, cmd_quantize},
      {"appclose", "sample homogeneous inlays close to F", {"in", "in2", "s", "trials", "seed", "box", "out", "ppm", "ppm-size"}, {"in", "in2"}, 1000, cmd_appclose},
      {"pixelate", "pixelate and certify", {"in", "epsilon", "nmax", "trials", "seed", "box", "threads", "out", "ppm", "ppm-size"}, {"in", "epsilon"}, 4096, cmd_pixelate},
      {"certify", "certify a spec against F", {"in", "in2", "nmax", "trials", "seed", "threads", "out", "ppm", "ppm-size"}, {"in", "in2"}, 100000, cmd_certify},
      {"ensure-size", "pixelate keeping every size-r substructure", {"in", "epsilon", "r", "nmax", "trials", "seed", "box", "threads", "out", "ppm", "ppm-size"}, {"in", "epsilon"}, 4096, cmd_ensure_size},
  };
  return table;
}

void write_report(const Json& report, const Config& c, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error("cannot write '" + c.out + "'");
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pixelation of ordered functions into l-part homogeneous ones", "pixelate"};
  app.require_subcommand(1);
  Config cfg;
  std::map<std::string, CLI::App*> subs;
  for (const Command& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    for (const std::string& f : cmd.flags) add_flag(sub, cfg, f);
    for (const std::string& f : cmd.required) sub->get_option("--" + f)->required();
    subs[cmd.name] = sub;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const Command* cmd = nullptr;
  for (const Command& c : commands())
    if (subs[c.name]->parsed()) cmd = &c;
  if (!cmd) {
    err << "usage error: no subcommand\n";
    return 2;
  }
  if (std::find(cmd->flags.begin(), cmd->flags.end(), "trials") != cmd->flags.end() &&
      subs[cmd->name]->get_option("--trials")->count() == 0)
    cfg.trials = cmd->default_trials;

  try {
    Json config{{"command", cmd->name}};
    for (const std::string& f : cmd->flags)
      if (recorded(f)) config[f] = config_value(cfg, f);
    Outcome o = cmd->handler(cfg);
    o.report["config"] = std::move(config);
    write_report(o.report, cfg, out);
    if (!cfg.ppm.empty()) {
      if (!o.raster || o.raster->arity() != 2) throw UsageError("--ppm needs a d = 2 subject");
      std::ofstream f(cfg.ppm, std::ios::binary);
      if (!f) throw Error("cannot write '" + cfg.ppm + "'");
      f << render_ppm(*o.raster, cfg.ppm_size);
    }
    return o.code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const io::FormatError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace pixel::cli
