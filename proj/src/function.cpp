#include "pixel/function.hpp"

#include <random>

namespace pixel {

namespace {

Color order_color(const Rational& a, const Rational& b) {
  if (a < b) return 1;
  if (a == b) return 2;
  return 3;
}

Color dyadic_color(const Rational& x, int depth) {
  // x lies in J_r = (2^-r, 2^-r+1] for the least r with x > 2^-r.
  Rational bound(1);
  for (int r = 1; r <= depth; ++r) {
    bound /= 2;
    if (x > bound) return (r % 2 == 1) ? 2 : 1;
  }
  return 1;
}

void check_point(std::span<const Rational> x, int d) {
  if (static_cast<int>(x.size()) != d)
    throw Error("point has " + std::to_string(x.size()) + " coordinates, function has arity " + std::to_string(d));
  for (const Rational& v : x)
    if (v <= 0 || v > 1) throw Error("coordinate " + to_string(v) + " outside (0,1]");
}

}  // namespace

PiecewiseFunction::PiecewiseFunction(int d, int k,
                                     std::variant<DiscreteModel, HomogeneousSpec, GeneratorSpec> payload,
                                     std::shared_ptr<const HomogeneousSpec> form)
    : d_(d), k_(k), payload_(std::move(payload)), form_(std::move(form)) {}

PiecewiseFunction PiecewiseFunction::grid(DiscreteModel values) {
  const int d = values.arity(), k = values.colors(), m = values.side();
  auto form = std::make_shared<const HomogeneousSpec>(
      HomogeneousSpec::build(m, d, k, [&](std::span<const int> cells, const OrderPattern&) {
        return values.at(cells);
      }));
  return PiecewiseFunction(d, k, std::move(values), std::move(form));
}

PiecewiseFunction PiecewiseFunction::homogeneous(HomogeneousSpec spec) {
  auto form = std::make_shared<const HomogeneousSpec>(spec);
  const int d = spec.arity(), k = spec.colors();
  return PiecewiseFunction(d, k, std::move(spec), std::move(form));
}

PiecewiseFunction PiecewiseFunction::order_function() {
  GeneratorSpec g;
  g.name = "order_function";
  return generator(g);
}

PiecewiseFunction PiecewiseFunction::dyadic_alternating(int depth) {
  GeneratorSpec g;
  g.name = "dyadic_alternating";
  g.depth = depth;
  return generator(g);
}

PiecewiseFunction PiecewiseFunction::threshold(Rational level) {
  GeneratorSpec g;
  g.name = "threshold";
  g.level = std::move(level);
  return generator(g);
}

PiecewiseFunction PiecewiseFunction::random_homogeneous(int l, int d, int k, std::uint64_t seed) {
  GeneratorSpec g;
  g.name = "random_homogeneous";
  g.l = l;
  g.d = d;
  g.k = k;
  g.seed = seed;
  return generator(g);
}

PiecewiseFunction PiecewiseFunction::generator(const GeneratorSpec& gen) {
  GeneratorSpec g = gen;
  if (g.name == "order_function") {
    g = GeneratorSpec{.name = g.name};
    auto form = std::make_shared<const HomogeneousSpec>(
        HomogeneousSpec::build(1, 2, 3, [](std::span<const int>, const OrderPattern& p) {
          return p.ranks[0] < p.ranks[1] ? 1 : p.ranks[0] == p.ranks[1] ? 2 : 3;
        }));
    return PiecewiseFunction(2, 3, std::move(g), std::move(form));
  }
  if (g.name == "dyadic_alternating") {
    if (g.depth < 1 || g.depth > kMaxDyadicDepth)
      throw Error("dyadic_alternating depth must lie in [1," + std::to_string(kMaxDyadicDepth) + "]");
    g = GeneratorSpec{.name = g.name, .depth = g.depth};
    const int cells = 1 << g.depth;
    const int depth = g.depth;
    // J_r boundaries are multiples of 2^-depth, so each cell sits inside one J_r.
    auto form = std::make_shared<const HomogeneousSpec>(
        HomogeneousSpec::build(cells, 1, 2, [&](std::span<const int> c, const OrderPattern&) {
          return dyadic_color(make_rational(c[0], cells), depth);
        }));
    return PiecewiseFunction(1, 2, std::move(g), std::move(form));
  }
  if (g.name == "threshold") {
    if (g.level < 0 || g.level > 2) throw Error("threshold level must lie in [0,2]");
    g = GeneratorSpec{.name = g.name, .level = g.level};
    return PiecewiseFunction(2, 2, std::move(g), nullptr);
  }
  if (g.name == "random_homogeneous") {
    g = GeneratorSpec{.name = g.name, .l = g.l, .d = g.d, .k = g.k, .seed = g.seed};
    if (g.l < 1 || g.d < 1 || g.k < 1) throw Error("random_homogeneous needs positive l, d, k");
    std::mt19937_64 rng(g.seed);
    const auto k = static_cast<std::uint64_t>(g.k);
    auto form = std::make_shared<const HomogeneousSpec>(HomogeneousSpec::build(
        g.l, g.d, g.k,
        [&](std::span<const int>, const OrderPattern&) { return static_cast<Color>(1 + rng() % k); }));
    return PiecewiseFunction(g.d, g.k, std::move(g), std::move(form));
  }
  throw Error("unknown generator '" + g.name + "'");
}

FunctionKind PiecewiseFunction::kind() const {
  switch (payload_.index()) {
    case 0: return FunctionKind::Grid;
    case 1: return FunctionKind::Homogeneous;
    default: return FunctionKind::Generator;
  }
}

std::optional<Rational> PiecewiseFunction::threshold_level() const {
  if (const auto* g = generator_spec(); g && g->name == "threshold") return g->level;
  return std::nullopt;
}

Color PiecewiseFunction::evaluate(std::span<const Rational> x) const {
  check_point(x, d_);
  if (const auto* grid = grid_values()) {
    std::vector<int> cells(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) cells[j] = cell_of(x[j], grid->side());
    return grid->at(cells);
  }
  if (const auto* s = spec()) {
    std::vector<int> cells(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) cells[j] = cell_of(x[j], s->resolution());
    return s->at(cells, order_pattern(x));
  }
  const GeneratorSpec& g = *generator_spec();
  if (g.name == "order_function") return order_color(x[0], x[1]);
  if (g.name == "dyadic_alternating") return dyadic_color(x[0], g.depth);
  if (g.name == "threshold") return (x[0] + x[1] <= g.level) ? 1 : 2;
  // random_homogeneous: the table is the rule.
  std::vector<int> cells(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) cells[j] = cell_of(x[j], form_->resolution());
  return form_->at(cells, order_pattern(x));
}

}  // namespace pixel
