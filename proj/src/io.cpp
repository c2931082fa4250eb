#include "pixel/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace pixel::io {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(where + ": missing field '" + key + "'");
  return *it;
}

long get_int(const Json& j, const std::string& key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) throw FormatError(where + ": field '" + key + "' must be an integer");
  return v.get<long>();
}

std::uint64_t get_u64(const Json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  if (v.is_string()) {
    try {
      std::size_t used = 0;
      const std::string s = v.get<std::string>();
      const unsigned long long x = std::stoull(s, &used);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw FormatError(what + " must be a nonnegative 64-bit integer");
}

std::vector<int> int_array(const Json& v, const std::string& what) {
  if (!v.is_array()) throw FormatError(what + " must be an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) throw FormatError(what + "[" + std::to_string(i) + "] must be an integer");
    out.push_back(v[i].get<int>());
  }
  return out;
}

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw FormatError(where + ": unknown field '" + it.key() + "'");
}

std::string check_header(const Json& j) {
  if (!j.is_object()) throw FormatError("model file: expected a JSON object");
  const Json& v = field(j, "format_version", "model file");
  if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
    throw FormatError("model file: field 'format_version' must be 1");
  const Json& kind = field(j, "kind", "model file");
  if (!kind.is_string()) throw FormatError("model file: field 'kind' must be a string");
  return kind.get<std::string>();
}

Json header(const char* kind, int d, int k) {
  return Json{{"format_version", kFormatVersion}, {"kind", kind}, {"d", d}, {"k", k}};
}

// Library errors raised while building a value are reported against the file.
template <class Fn>
auto wrap(const std::string& where, Fn fn) {
  try {
    return fn();
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    throw FormatError(where + ": " + e.what());
  }
}

}  // namespace

Json to_json(const Rational& q) { return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Json to_json(const BigInt& v) { return v.get_str(); }

Rational rational_from_json(const Json& j, const std::string& what) {
  try {
    if (j.is_object()) {
      check_keys(j, {"num", "den"}, what);
      auto part = [&](const char* key) {
        const Json& v = field(j, key, what);
        if (v.is_string()) return BigInt(v.get<std::string>());
        if (v.is_number_integer()) return BigInt(v.get<long>());
        throw FormatError(what + ": field '" + std::string(key) + "' must be an integer string");
      };
      return make_rational(part("num"), part("den"));
    }
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& e) {
    throw FormatError(what + ": " + e.what());
  }
  throw FormatError(what + " must be a rational {\"num\",\"den\"}, a \"p/q\" string or an integer");
}

Json to_json(const DiscreteModel& m) {
  Json j = header("discrete", m.arity(), m.colors());
  j["m"] = m.side();
  j["values"] = m.values();
  return j;
}

Json to_json(const HomogeneousSpec& g) {
  Json j = header("homogeneous", g.arity(), g.colors());
  j["l"] = g.resolution();
  Json entries = Json::array();
  for (const SpecEntry& e : g.entries())
    entries.push_back(Json{{"cells", e.cells}, {"pattern", e.pattern.ranks}, {"color", e.color}});
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const PiecewiseFunction& f) {
  if (const auto* grid = f.grid_values()) {
    Json j = to_json(*grid);
    j["kind"] = "grid";
    return j;
  }
  if (const auto* spec = f.spec()) return to_json(*spec);
  const GeneratorSpec& g = *f.generator_spec();
  Json j = header("generator", f.arity(), f.colors());
  j["name"] = g.name;
  Json params = Json::object();
  if (g.name == "dyadic_alternating") params["depth"] = g.depth;
  if (g.name == "threshold") params["level"] = to_json(g.level);
  if (g.name == "random_homogeneous") params = Json{{"l", g.l}, {"d", g.d}, {"k", g.k}, {"seed", g.seed}};
  j["params"] = std::move(params);
  return j;
}

Json to_json(const StatisticDistribution& mu) {
  Json entries = Json::array();
  for (const auto& [r, q] : mu.entries) entries.push_back(Json{{"model", to_json(r)}, {"mu", to_json(q)}});
  return Json{{"n", mu.n}, {"entries", std::move(entries)}, {"total", to_json(mu.total())}};
}

Json to_json(const SampleReport& rep) {
  Json counts = Json::array();
  for (const auto& [r, c] : rep.counts) counts.push_back(Json{{"model", to_json(r)}, {"count", c}});
  return Json{{"n", rep.n}, {"trials", rep.trials}, {"seed", rep.seed}, {"counts", std::move(counts)}};
}

Json to_json(const MonteCarloEstimate& est) {
  return Json{{"estimate", to_json(est.estimate)},
              {"standard_error", est.standard_error},
              {"hits", est.hits},
              {"trials", est.trials},
              {"seed", est.seed}};
}

Json to_json(const InlaySelection& sel) { return Json{{"blocks", sel.blocks}}; }

Json to_json(const ContinuousSelection& sel) {
  Json blocks = Json::array();
  for (const auto& block : sel.blocks) {
    Json b = Json::array();
    for (const Rational& x : block) b.push_back(to_json(x));
    blocks.push_back(std::move(b));
  }
  return Json{{"blocks", std::move(blocks)}};
}

Json to_json(const Box& box) {
  Json a = Json::array(), b = Json::array();
  for (const Rational& x : box.alpha) a.push_back(to_json(x));
  for (const Rational& x : box.beta) b.push_back(to_json(x));
  return Json{{"alpha", std::move(a)}, {"beta", std::move(b)}};
}

Json to_json(const HomogeneityViolation& v) {
  return Json{{"first", v.first}, {"second", v.second}, {"first_color", v.first_color}, {"second_color", v.second_color}};
}

Json to_json(const CertifyResult& c) {
  Json tables = Json::array();
  for (const CertificateTable& t : c.tables) {
    Json entries = Json::array();
    for (const CertificateEntry& e : t.entries) {
      Json je{{"model", to_json(e.model)}, {"mu", to_json(e.mu)}};
      if (e.count) je["count"] = *e.count;
      entries.push_back(std::move(je));
    }
    tables.push_back(Json{{"n", t.n}, {"entries", std::move(entries)}});
  }
  return Json{{"exact", c.exact}, {"tables", std::move(tables)}, {"verdict", verdict_name(c.verdict)}};
}

Json to_json(const AppcloseResult& r) {
  Json cands = Json::array();
  for (const AppcloseCandidate& c : r.candidates)
    cands.push_back(Json{{"trial", c.trial},
                         {"box", to_json(c.box)},
                         {"selection", to_json(c.selection)},
                         {"g_prime", to_json(c.g_prime)},
                         {"distance", to_json(c.distance)},
                         {"within_bound", c.within_bound}});
  return Json{{"base_distance", to_json(r.base_distance)},
              {"bound", to_json(r.bound)},
              {"trials", r.trials},
              {"homogeneous_samples", r.homogeneous_samples},
              {"candidates", std::move(cands)}};
}

Json to_json(const PixelationCertificate& c) {
  Json j = to_json(c.certification);
  j.erase("verdict");
  j["l"] = c.l;
  j["s"] = c.s;
  j["epsilon"] = to_json(c.epsilon);
  j["quantize_distance"] = to_json(c.quantize_distance);
  j["g_prime"] = c.g_prime ? to_json(*c.g_prime) : Json(nullptr);
  j["distance"] = to_json(c.distance);
  j["distance_bound"] = to_json(c.distance_bound);
  j["within_bound"] = c.within_bound;
  j["bound_witnessed"] = c.bound_witnessed;
  j["candidates_examined"] = c.candidates_examined;
  j["samples"] = c.samples;
  j["verdict"] = verdict_name(c.verdict);
  j["seed"] = c.seed;
  if (c.r) {
    j["r"] = *c.r;
    j["delta"] = c.delta ? to_json(*c.delta) : Json(nullptr);
    Json missing = Json::array();
    for (const auto& m : c.missing_at_r) missing.push_back(to_json(m));
    j["missing_at_r"] = std::move(missing);
  }
  return j;
}

Json to_json(const ArityCheckResult& r) {
  Json violations = Json::array();
  auto entry = [](const SpecEntry& e) { return Json{{"cells", e.cells}, {"pattern", e.pattern.ranks}, {"color", e.color}}; };
  for (const ArityViolation& v : r.violations) violations.push_back(Json{{"first", entry(v.first)}, {"second", entry(v.second)}});
  Json witnesses = Json::array();
  for (const auto& m : r.witnesses) witnesses.push_back(to_json(m));
  return Json{{"pass", r.pass}, {"violations", std::move(violations)}, {"witnesses", std::move(witnesses)},
              {"witness_size", r.witness_size}};
}

// ---------------------------------------------------------------------------

DiscreteModel discrete_from_json(const Json& j) {
  const std::string kind = check_header(j);
  if (kind != "discrete" && kind != "grid")
    throw FormatError("model file: expected kind 'discrete' or 'grid', got '" + kind + "'");
  const std::string where = kind + " model";
  check_keys(j, {"format_version", "kind", "d", "k", "m", "values", "config"}, where);
  const long d = get_int(j, "d", where), k = get_int(j, "k", where), m = get_int(j, "m", where);
  if (d < 1 || d > Limits::max_arity) throw FormatError(where + ": field 'd' out of range");
  if (k < 1 || k > Limits::max_colors) throw FormatError(where + ": field 'k' out of range");
  if (m < 1 || m > Limits::max_side) throw FormatError(where + ": field 'm' out of range");
  std::vector<int> values = int_array(field(j, "values", where), where + ": field 'values'");
  return wrap(where, [&] { return DiscreteModel(static_cast<int>(d), static_cast<int>(k), static_cast<int>(m), std::move(values)); });
}

HomogeneousSpec spec_from_json(const Json& j) {
  const std::string kind = check_header(j);
  if (kind != "homogeneous") throw FormatError("model file: expected kind 'homogeneous', got '" + kind + "'");
  const std::string where = "homogeneous model";
  check_keys(j, {"format_version", "kind", "d", "k", "l", "entries", "config"}, where);
  const long d = get_int(j, "d", where), k = get_int(j, "k", where), l = get_int(j, "l", where);
  if (d < 1 || d > Limits::max_arity) throw FormatError(where + ": field 'd' out of range");
  const Json& entries = field(j, "entries", where);
  if (!entries.is_array()) throw FormatError(where + ": field 'entries' must be an array");
  std::vector<SpecEntry> list;
  list.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string at = where + ": entries[" + std::to_string(i) + "]";
    const Json& e = entries[i];
    if (!e.is_object()) throw FormatError(at + " must be an object");
    check_keys(e, {"cells", "pattern", "color"}, at);
    SpecEntry se;
    se.cells = int_array(field(e, "cells", at), at + ".cells");
    se.pattern.ranks = int_array(field(e, "pattern", at), at + ".pattern");
    se.color = static_cast<int>(get_int(e, "color", at));
    if (static_cast<long>(se.pattern.ranks.size()) == d && !se.pattern.ranks.empty() &&
        order_pattern(se.pattern.ranks) != se.pattern)
      throw FormatError(at + ".pattern is not a dense-rank vector");
    list.push_back(std::move(se));
  }
  return wrap(where, [&] { return HomogeneousSpec::from_entries(static_cast<int>(l), static_cast<int>(d), static_cast<int>(k), list); });
}

PiecewiseFunction function_from_json(const Json& j) {
  const std::string kind = check_header(j);
  if (kind == "discrete" || kind == "grid") return PiecewiseFunction::grid(discrete_from_json(j));
  if (kind == "homogeneous") return PiecewiseFunction::homogeneous(spec_from_json(j));
  if (kind != "generator") throw FormatError("model file: unknown kind '" + kind + "'");
  const std::string where = "generator model";
  check_keys(j, {"format_version", "kind", "d", "k", "name", "params", "config"}, where);
  const Json& name = field(j, "name", where);
  if (!name.is_string()) throw FormatError(where + ": field 'name' must be a string");
  GeneratorSpec g;
  g.name = name.get<std::string>();
  const std::string pw = where + ": params";
  Json params = j.contains("params") ? j["params"] : Json::object();
  if (!params.is_object()) throw FormatError(pw + " must be an object");
  if (g.name == "order_function") {
    check_keys(params, {}, pw);
  } else if (g.name == "dyadic_alternating") {
    check_keys(params, {"depth"}, pw);
    g.depth = static_cast<int>(get_int(params, "depth", pw));
  } else if (g.name == "threshold") {
    check_keys(params, {"level"}, pw);
    g.level = rational_from_json(field(params, "level", pw), pw + ".level");
  } else if (g.name == "random_homogeneous") {
    check_keys(params, {"l", "d", "k", "seed"}, pw);
    g.l = static_cast<int>(get_int(params, "l", pw));
    g.d = static_cast<int>(get_int(params, "d", pw));
    g.k = static_cast<int>(get_int(params, "k", pw));
    g.seed = get_u64(field(params, "seed", pw), pw + ".seed");
  } else {
    throw FormatError(where + ": unknown generator '" + g.name + "'");
  }
  PiecewiseFunction f = wrap(where, [&] { return PiecewiseFunction::generator(g); });
  if (get_int(j, "d", where) != f.arity() || get_int(j, "k", where) != f.colors())
    throw FormatError(where + ": fields 'd'/'k' do not match generator '" + g.name + "' (d=" +
                      std::to_string(f.arity()) + ", k=" + std::to_string(f.colors()) + ")");
  return f;
}

Box box_from_json(const Json& j) {
  const std::string where = "box";
  if (!j.is_object()) throw FormatError(where + ": expected an object");
  check_keys(j, {"alpha", "beta"}, where);
  Box box;
  for (const char* key : {"alpha", "beta"}) {
    const Json& arr = field(j, key, where);
    if (!arr.is_array()) throw FormatError(where + ": field '" + std::string(key) + "' must be an array");
    auto& dst = std::string(key) == "alpha" ? box.alpha : box.beta;
    for (std::size_t i = 0; i < arr.size(); ++i)
      dst.push_back(rational_from_json(arr[i], where + "." + key + "[" + std::to_string(i) + "]"));
  }
  return box;
}

SortedColoring coloring_from_json(const Json& j) {
  const std::string kind = check_header(j);
  if (kind != "coloring") throw FormatError("coloring file: expected kind 'coloring', got '" + kind + "'");
  const std::string where = "coloring";
  check_keys(j, {"format_version", "kind", "d", "sorts", "colors", "config"}, where);
  const long d = get_int(j, "d", where);
  if (d < 1) throw FormatError(where + ": field 'd' must be positive");
  const Json& sorts = field(j, "sorts", where);
  if (!sorts.is_array() || sorts.empty()) throw FormatError(where + ": field 'sorts' must be a nonempty array");
  SortedColoring c{{}, SubsetColoring(static_cast<int>(d))};
  for (std::size_t i = 0; i < sorts.size(); ++i)
    c.sorts.push_back(int_array(sorts[i], where + ": sorts[" + std::to_string(i) + "]"));
  const Json& colors = field(j, "colors", where);
  if (!colors.is_array()) throw FormatError(where + ": field 'colors' must be an array");
  for (std::size_t i = 0; i < colors.size(); ++i) {
    const std::string at = where + ": colors[" + std::to_string(i) + "]";
    if (!colors[i].is_object()) throw FormatError(at + " must be an object");
    check_keys(colors[i], {"set", "color"}, at);
    const std::vector<int> set = int_array(field(colors[i], "set", at), at + ".set");
    const long color = get_int(colors[i], "color", at);
    wrap(at, [&] {
      c.coloring.set(set, static_cast<int>(color));
      return 0;
    });
  }
  return c;
}

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace pixel::io
