#include "pixel/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "pixel/parallel.hpp"

namespace pixel {

Rational StatisticDistribution::mass(const DiscreteModel& r) const {
  auto it = entries.find(r);
  return it == entries.end() ? Rational(0) : it->second;
}

Rational StatisticDistribution::total() const {
  Rational t = 0;
  for (const auto& [_, q] : entries) t += q;
  return t;
}

std::set<DiscreteModel> StatisticDistribution::support() const {
  std::set<DiscreteModel> s;
  for (const auto& [r, q] : entries)
    if (q > 0) s.insert(r);
  return s;
}

std::uint64_t SampleReport::count(const DiscreteModel& r) const {
  auto it = counts.find(r);
  return it == counts.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------
// Exact polygon areas for the threshold generator.

namespace {

using Point2 = std::pair<Rational, Rational>;

// Keeps the part of a convex polygon with a*x + b*y <= c.
std::vector<Point2> clip(const std::vector<Point2>& poly, const Rational& a, const Rational& b, const Rational& c) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    Rational fp = a * p.first + b * p.second - c;
    Rational fq = a * q.first + b * q.second - c;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      Rational t = fp / (fp - fq);
      out.emplace_back(p.first + t * (q.first - p.first), p.second + t * (q.second - p.second));
    }
  }
  return out;
}

Rational polygon_area(const std::vector<Point2>& poly) {
  Rational twice = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % poly.size()];
    twice += p.first * q.second - q.first * p.second;
  }
  return abs(twice) / 2;
}

}  // namespace

Rational threshold_area(const Rational& lo1, const Rational& hi1, const Rational& lo2, const Rational& hi2,
                        int order_region, const Rational& level) {
  std::vector<Point2> poly{{lo1, lo2}, {hi1, lo2}, {hi1, hi2}, {lo1, hi2}};
  if (order_region == 1) poly = clip(poly, 1, -1, 0);  // x1 <= x2
  if (order_region == 2) poly = clip(poly, -1, 1, 0);  // x2 <= x1
  poly = clip(poly, 1, 1, level);
  return poly.size() < 3 ? Rational(0) : polygon_area(poly);
}

// ---------------------------------------------------------------------------
// Region sums: cells of resolution L times strict order patterns.

namespace {

long common_resolution(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  return lcm(f.resolution(), g.resolution());
}

void check_region_budget(int d, long L, const EnumerationCaps& caps) {
  double regions = std::pow(static_cast<double>(L), d);
  if (L > Limits::max_side || regions > static_cast<double>(caps.max_regions))
    throw CapExceeded("region enumeration at resolution " + std::to_string(L) + " exceeds the cap");
}

// fn(cells, pattern_index, pattern, mass) for each fine cell and strict
// pattern consistent with it. Masses over one cell sum to L^-d.
template <class Fn>
void for_each_region(int d, int L, Fn fn) {
  const auto& patterns = all_patterns(d);
  const Rational cell_volume = Rational(1) / Rational(pow(BigInt(L), static_cast<unsigned long>(d)));
  std::array<BigInt, Limits::max_arity + 1> fact;
  for (int i = 0; i <= Limits::max_arity; ++i) fact[static_cast<std::size_t>(i)] = factorial(static_cast<unsigned long>(i));
  TupleCounter it(d, L);
  do {
    auto cells = it.current();
    BigInt orderings = 1;
    for (int j = 0; j < d; ++j) {
      bool first = true;
      int group = 0;
      for (int h = 0; h < d; ++h) {
        if (cells[static_cast<std::size_t>(h)] != cells[static_cast<std::size_t>(j)]) continue;
        if (h < j) first = false;
        ++group;
      }
      if (first) orderings *= fact[static_cast<std::size_t>(group)];
    }
    const Rational mass = cell_volume / Rational(orderings);
    for (std::size_t p = 0; p < patterns.size(); ++p)
      if (patterns[p].strict() && pattern_consistent(cells, patterns[p]))
        fn(cells, static_cast<int>(p), patterns[p], mass);
  } while (it.next());
}

// Color of a function with piecewise form at a region of resolution L.
Color form_color(const HomogeneousSpec& form, int L, std::span<const int> cells, int pidx) {
  const int factor = L / form.resolution();
  std::array<int, Limits::max_arity> coarse{};
  for (std::size_t j = 0; j < cells.size(); ++j) coarse[j] = (cells[j] + factor - 1) / factor;
  return form.slot(form.cell_index(std::span<const int>(coarse.data(), cells.size())), pidx);
}

// Part of the region where the threshold function is 1.
Rational threshold_region_area(const Rational& level, int L, std::span<const int> cells, const OrderPattern& p) {
  const Rational lo1 = make_rational(cells[0] - 1, L), hi1 = make_rational(cells[0], L);
  const Rational lo2 = make_rational(cells[1] - 1, L), hi2 = make_rational(cells[1], L);
  int region = 0;
  if (cells[0] == cells[1]) region = p.ranks[0] < p.ranks[1] ? 1 : 2;
  return threshold_area(lo1, hi1, lo2, hi2, region, level);
}

}  // namespace

Rational distance_exact(const PiecewiseFunction& f, const PiecewiseFunction& g, const EnumerationCaps& caps) {
  if (f.arity() != g.arity()) throw Error("distance: arity mismatch");
  if (f.colors() != g.colors()) throw Error("distance: color count mismatch");
  const int d = f.arity();
  const long L = common_resolution(f, g);
  check_region_budget(d, L, caps);
  const auto tf = f.threshold_level();
  const auto tg = g.threshold_level();
  if ((!tf && !f.piecewise_form()) || (!tg && !g.piecewise_form()))
    throw NotPiecewise("distance: input has no exact piecewise form");

  Rational total = 0;
  for_each_region(d, static_cast<int>(L), [&](std::span<const int> cells, int pidx, const OrderPattern& p,
                                               const Rational& mass) {
    if (tf && tg) {
      // Sublevel sets of thresholds are nested, so they differ on the gap.
      total += abs(threshold_region_area(*tf, static_cast<int>(L), cells, p) -
                   threshold_region_area(*tg, static_cast<int>(L), cells, p));
      return;
    }
    if (tf || tg) {
      const Rational& level = tf ? *tf : *tg;
      const HomogeneousSpec& form = tf ? *g.piecewise_form() : *f.piecewise_form();
      const Color c = form_color(form, static_cast<int>(L), cells, pidx);
      const Rational below = threshold_region_area(level, static_cast<int>(L), cells, p);
      total += (c == 1) ? Rational(mass - below) : below;
      return;
    }
    if (form_color(*f.piecewise_form(), static_cast<int>(L), cells, pidx) !=
        form_color(*g.piecewise_form(), static_cast<int>(L), cells, pidx))
      total += mass;
  });
  return total;
}

std::vector<std::vector<Rational>> box_color_masses(const PiecewiseFunction& f, int l, const EnumerationCaps& caps) {
  const int d = f.arity(), k = f.colors();
  if (l < 1) throw Error("resolution must be positive");
  const std::size_t boxes = checked_volume(d, l);
  std::vector<std::vector<Rational>> out(boxes, std::vector<Rational>(static_cast<std::size_t>(k), Rational(0)));

  if (auto level = f.threshold_level()) {
    check_region_budget(d, l, caps);
    const Rational box = make_rational(1, static_cast<long>(l) * l);
    TupleCounter it(d, l);
    std::size_t bi = 0;
    do {
      auto c = it.current();
      Rational below = threshold_area(make_rational(c[0] - 1, l), make_rational(c[0], l), make_rational(c[1] - 1, l),
                                      make_rational(c[1], l), 0, *level);
      out[bi][0] = below;
      out[bi][1] = box - below;
      ++bi;
    } while (it.next());
    return out;
  }

  const HomogeneousSpec* form = f.piecewise_form();
  if (!form) throw NotPiecewise("input has no exact piecewise form");
  const long L = lcm(l, form->resolution());
  check_region_budget(d, L, caps);
  const int factor = static_cast<int>(L / l);
  for_each_region(d, static_cast<int>(L), [&](std::span<const int> cells, int pidx, const OrderPattern&,
                                               const Rational& mass) {
    std::size_t bi = 0;
    for (int c : cells) bi = bi * static_cast<std::size_t>(l) + static_cast<std::size_t>((c + factor - 1) / factor - 1);
    out[bi][static_cast<std::size_t>(form_color(*form, static_cast<int>(L), cells, pidx) - 1)] += mass;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Exact statistic distribution.

StatisticDistribution mu_exact(const PiecewiseFunction& f, int n, const EnumerationCaps& caps) {
  const HomogeneousSpec* form = f.piecewise_form();
  if (!form) throw NotPiecewise("mu_exact: input has no exact piecewise form");
  if (n < 1) throw Error("mu_exact: n must be positive");
  const int d = f.arity(), L = form->resolution();
  // Nondecreasing cell assignments [n] -> [L].
  if (binomial(static_cast<unsigned long>(L + n - 1), static_cast<unsigned long>(n)) > BigInt(static_cast<unsigned long>(caps.max_assignments)))
    throw CapExceeded("mu_exact: C(L+n-1, n) exceeds the enumeration cap at L = " + std::to_string(L) +
                      ", n = " + std::to_string(n));
  const std::size_t tuples = checked_volume(d, n);

  // Per tuple of [n]^d: its pattern and its coordinates.
  std::vector<int> tuple_pattern(tuples);
  std::vector<int> tuple_coords(tuples * static_cast<std::size_t>(d));
  {
    TupleCounter it(d, n);
    std::size_t t = 0;
    do {
      tuple_pattern[t] = pattern_index_of(it.current());
      for (int j = 0; j < d; ++j)
        tuple_coords[t * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] = it.current()[static_cast<std::size_t>(j)] - 1;
      ++t;
    } while (it.next());
  }

  std::vector<BigInt> fact(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) fact[static_cast<std::size_t>(i)] = factorial(static_cast<unsigned long>(i));

  std::map<std::vector<Color>, BigInt> weights;
  std::vector<int> assign(static_cast<std::size_t>(n), 1);
  std::vector<Color> values(tuples);
  for (;;) {
    for (std::size_t t = 0; t < tuples; ++t) {
      std::size_t ci = 0;
      for (int j = 0; j < d; ++j)
        ci = ci * static_cast<std::size_t>(L) +
             static_cast<std::size_t>(assign[static_cast<std::size_t>(tuple_coords[t * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)])] - 1);
      values[t] = form->slot(ci, tuple_pattern[t]);
    }
    // multinomial n! / prod cnt!
    BigInt w = fact[static_cast<std::size_t>(n)];
    for (int i = 0; i < n;) {
      int j = i;
      while (j < n && assign[static_cast<std::size_t>(j)] == assign[static_cast<std::size_t>(i)]) ++j;
      w /= fact[static_cast<std::size_t>(j - i)];
      i = j;
    }
    weights[values] += w;

    int pos = n - 1;
    while (pos >= 0 && assign[static_cast<std::size_t>(pos)] == L) --pos;
    if (pos < 0) break;
    ++assign[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < n; ++j) assign[static_cast<std::size_t>(j)] = assign[static_cast<std::size_t>(pos)];
  }

  StatisticDistribution dist;
  dist.n = n;
  const BigInt denom = pow(BigInt(L), static_cast<unsigned long>(n));
  for (auto& [v, w] : weights)
    dist.entries.emplace(DiscreteModel(d, f.colors(), n, v), make_rational(w, denom));
  return dist;
}

// ---------------------------------------------------------------------------
// Induced models and Monte Carlo.

namespace {

// ceil(L * (u + 1) / 2^64).
int dyadic_cell(std::uint64_t u, int L) {
  using u128 = unsigned __int128;
  const u128 num = static_cast<u128>(static_cast<unsigned>(L)) * (static_cast<u128>(u) + 1);
  return static_cast<int>((num + ((static_cast<u128>(1) << 64) - 1)) >> 64);
}

// Evaluates F at points x_j = (u_j + 1) / 2^64.
class DyadicEvaluator {
 public:
  explicit DyadicEvaluator(const PiecewiseFunction& f) : f_(f), form_(f.piecewise_form()) {}

  Color operator()(std::span<const std::uint64_t> u) const {
    if (form_) {
      std::array<int, Limits::max_arity> cells{};
      for (std::size_t j = 0; j < u.size(); ++j) cells[j] = dyadic_cell(u[j], form_->resolution());
      return form_->slot(form_->cell_index(std::span<const int>(cells.data(), u.size())), pattern_index_of(u));
    }
    std::vector<Rational> x;
    x.reserve(u.size());
    for (std::uint64_t v : u) x.push_back(dyadic_unit(v));
    return f_.evaluate(x);
  }

 private:
  const PiecewiseFunction& f_;
  const HomogeneousSpec* form_;
};

std::size_t chunk_count(std::uint64_t trials) {
  return static_cast<std::size_t>((trials + kChunkTrials - 1) / kChunkTrials);
}

std::uint64_t chunk_size(std::uint64_t trials, std::size_t chunk) {
  const std::uint64_t start = chunk * kChunkTrials;
  return std::min<std::uint64_t>(kChunkTrials, trials - start);
}

}  // namespace

MonteCarloEstimate distance_mc(const PiecewiseFunction& f, const PiecewiseFunction& g, std::uint64_t trials,
                               std::uint64_t seed, int threads) {
  if (trials < 1) throw Error("distance_mc: trials must be positive");
  if (f.arity() != g.arity() || f.colors() != g.colors()) throw Error("distance_mc: arity or color count mismatch");
  const std::size_t d = static_cast<std::size_t>(f.arity());
  const DyadicEvaluator ef(f), eg(g);
  const std::size_t chunks = chunk_count(trials);
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    auto rng = chunk_rng(seed, c);
    std::array<std::uint64_t, Limits::max_arity> u{};
    const std::span<const std::uint64_t> point(u.data(), d);
    for (std::uint64_t t = chunk_size(trials, c); t > 0; --t) {
      for (std::size_t j = 0; j < d; ++j) u[j] = rng();
      if (ef(point) != eg(point)) ++hits[c];
    }
  });
  MonteCarloEstimate est;
  est.trials = trials;
  est.seed = seed;
  for (auto h : hits) est.hits += h;
  est.estimate = make_rational(BigInt(static_cast<unsigned long>(est.hits)), BigInt(static_cast<unsigned long>(trials)));
  const double p = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return est;
}

SampleReport mu_sample(const PiecewiseFunction& f, int n, std::uint64_t trials, std::uint64_t seed, int threads) {
  if (trials < 1) throw Error("mu_sample: trials must be positive");
  if (n < 1) throw Error("mu_sample: n must be positive");
  const int d = f.arity();
  const std::size_t tuples = checked_volume(d, n);
  std::vector<int> tuple_idx;
  tuple_idx.reserve(tuples * static_cast<std::size_t>(d));
  {
    TupleCounter it(d, n);
    do {
      for (int i : it.current()) tuple_idx.push_back(i - 1);
    } while (it.next());
  }
  const DyadicEvaluator eval(f);
  const std::size_t chunks = chunk_count(trials);
  std::vector<std::map<std::vector<Color>, std::uint64_t>> partial(chunks);
  parallel_chunks(chunks, threads, [&](std::size_t c) {
    auto rng = chunk_rng(seed, c);
    std::vector<std::uint64_t> u(static_cast<std::size_t>(n));
    std::vector<Color> values(tuples);
    std::array<std::uint64_t, Limits::max_arity> point{};
    for (std::uint64_t t = chunk_size(trials, c); t > 0; --t) {
      // Coordinate collisions have probability zero; redraw them.
      for (;;) {
        for (auto& v : u) v = rng();
        std::sort(u.begin(), u.end());
        if (std::adjacent_find(u.begin(), u.end()) == u.end()) break;
      }
      for (std::size_t tu = 0; tu < tuples; ++tu) {
        for (int j = 0; j < d; ++j)
          point[static_cast<std::size_t>(j)] = u[static_cast<std::size_t>(tuple_idx[tu * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)])];
        values[tu] = eval(std::span<const std::uint64_t>(point.data(), static_cast<std::size_t>(d)));
      }
      ++partial[c][values];
    }
  });
  SampleReport report;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  std::map<std::vector<Color>, std::uint64_t> merged;
  for (auto& p : partial)
    for (auto& [v, cnt] : p) merged[v] += cnt;
  for (auto& [v, cnt] : merged) report.counts.emplace(DiscreteModel(d, f.colors(), n, v), cnt);
  return report;
}

DiscreteModel induced_model(const PiecewiseFunction& f, std::span<const Rational> points) {
  const int d = f.arity();
  const int n = static_cast<int>(points.size());
  if (n < 1) throw Error("induced model needs at least one point");
  for (const Rational& x : points)
    if (x <= 0 || x > 1) throw Error("coordinate " + to_string(x) + " outside (0,1]");
  std::vector<Color> values;
  values.reserve(checked_volume(d, n));
  TupleCounter it(d, n);
  if (const HomogeneousSpec* form = f.piecewise_form()) {
    std::vector<int> cells(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cells[static_cast<std::size_t>(i)] = cell_of(points[static_cast<std::size_t>(i)], form->resolution());
    // Dense ranks of the points stand in for their values in comparisons.
    std::vector<Rational> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> rank(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      rank[static_cast<std::size_t>(i)] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), points[static_cast<std::size_t>(i)]) - sorted.begin());
    std::array<int, Limits::max_arity> tc{}, tr{};
    do {
      auto idx = it.current();
      for (int j = 0; j < d; ++j) {
        tc[static_cast<std::size_t>(j)] = cells[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)] - 1)];
        tr[static_cast<std::size_t>(j)] = rank[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)] - 1)];
      }
      values.push_back(form->slot(form->cell_index(std::span<const int>(tc.data(), static_cast<std::size_t>(d))),
                                  pattern_index_of(std::span<const int>(tr.data(), static_cast<std::size_t>(d)))));
    } while (it.next());
  } else {
    std::vector<Rational> x(static_cast<std::size_t>(d));
    do {
      auto idx = it.current();
      for (int j = 0; j < d; ++j) x[static_cast<std::size_t>(j)] = points[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)] - 1)];
      values.push_back(f.evaluate(x));
    } while (it.next());
  }
  return DiscreteModel(d, f.colors(), n, std::move(values));
}

}  // namespace pixel
