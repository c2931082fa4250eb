#pragma once

// Brute-force reference implementations used only by the tests. They avoid
// the library's tables and search kernels: everything is recomputed from
// explicit points, explicit index sets and pairwise comparisons.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "pixel/function.hpp"
#include "pixel/model.hpp"
#include "pixel/rational.hpp"

namespace oracle {

using pixel::BigInt;
using pixel::Color;
using pixel::DiscreteModel;
using pixel::PiecewiseFunction;
using pixel::Rational;

/// All tuples of [m]^d in row-major order.
inline std::vector<std::vector<int>> tuples(int d, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(d), 1);
  for (;;) {
    out.push_back(t);
    int j = d - 1;
    while (j >= 0 && t[static_cast<std::size_t>(j)] == m) t[static_cast<std::size_t>(j--)] = 1;
    if (j < 0) break;
    ++t[static_cast<std::size_t>(j)];
  }
  return out;
}

/// All k-subsets of [0, n) as sorted vectors, lexicographic.
inline std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(static_cast<std::size_t>(k));
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == k) {
      out.push_back(c);
      return;
    }
    for (int v = from; v <= n - (k - pos); ++v) {
      c[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 0);
  return out;
}

/// Same comparison structure: a_j < a_h iff b_j < b_h and a_j == a_h iff b_j == b_h.
inline bool same_order(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t h = 0; h < a.size(); ++h)
      if ((a[j] < a[h]) != (b[j] < b[h]) || (a[j] == a[h]) != (b[j] == b[h])) return false;
  return true;
}

inline std::vector<int> blocks_of(const std::vector<int>& idx, int block) {
  std::vector<int> out;
  for (int v : idx) out.push_back((v + block - 1) / block);
  return out;
}

/// Homogeneity by definition: tuples with equal block vectors and equal comparison
/// structure carry equal colors.
inline bool is_homogeneous(const DiscreteModel& s, int l) {
  const int block = s.side() / l;
  auto all = tuples(s.arity(), s.side());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (blocks_of(all[i], block) == blocks_of(all[j], block) && same_order(all[i], all[j]) &&
          s.at(all[i]) != s.at(all[j]))
        return false;
  return true;
}

/// Number of distinct values below each entry: equal keys iff same_order.
inline std::vector<int> order_key(const std::vector<int>& v) {
  std::vector<int> out;
  for (int x : v) {
    std::set<int> below;
    for (int y : v)
      if (y < x) below.insert(y);
    out.push_back(static_cast<int>(below.size()));
  }
  return out;
}

/// Compatibility by definition: no pair of tuples with equal blocks and equal order
/// carries different colors. Tuples of R are indexed by their key first.
inline bool compatible(const DiscreteModel& r, const DiscreteModel& s, int l) {
  const int br = r.side() / l, bs = s.side() / l;
  std::map<std::vector<int>, std::set<Color>> seen;
  for (const auto& i : tuples(r.arity(), r.side())) {
    std::vector<int> key = blocks_of(i, br);
    const auto ord = order_key(i);
    key.insert(key.end(), ord.begin(), ord.end());
    seen[key].insert(r.at(i));
  }
  for (const auto& j : tuples(s.arity(), s.side())) {
    std::vector<int> key = blocks_of(j, bs);
    const auto ord = order_key(j);
    key.insert(key.end(), ord.begin(), ord.end());
    auto it = seen.find(key);
    if (it == seen.end()) continue;
    for (Color c : it->second)
      if (c != s.at(j)) return false;
  }
  return true;
}

/// Every l-part homogeneous model over [tl]^d with k colors: tuples are
/// grouped into classes of the equivalence above and every coloring of the
/// classes is produced.
inline std::vector<DiscreteModel> all_homogeneous_models(int l, int d, int k, int t) {
  const int side = t * l;
  auto all = tuples(d, side);
  std::vector<int> cls(all.size(), -1);
  int classes = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = classes;
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (cls[j] < 0 && blocks_of(all[i], t) == blocks_of(all[j], t) && same_order(all[i], all[j])) cls[j] = classes;
    ++classes;
  }
  std::vector<DiscreteModel> out;
  std::vector<int> color(static_cast<std::size_t>(classes), 1);
  for (;;) {
    std::vector<Color> values;
    for (int c : cls) values.push_back(color[static_cast<std::size_t>(c)]);
    out.emplace_back(d, k, side, std::move(values));
    int j = classes - 1;
    while (j >= 0 && color[static_cast<std::size_t>(j)] == k) color[static_cast<std::size_t>(j--)] = 1;
    if (j < 0) break;
    ++color[static_cast<std::size_t>(j)];
  }
  return out;
}

/// R(i) = S(j_{i_1}, ..., j_{i_d}) for an explicit index list j (1-based).
inline DiscreteModel restrict_to(const DiscreteModel& s, const std::vector<int>& j) {
  std::vector<Color> values;
  const int n = static_cast<int>(j.size());
  for (const auto& i : tuples(s.arity(), n)) {
    std::vector<int> idx;
    for (int v : i) idx.push_back(j[static_cast<std::size_t>(v - 1)]);
    values.push_back(s.at(idx));
  }
  return DiscreteModel(s.arity(), s.colors(), n, std::move(values));
}

/// First index set in lexicographic order (strict), over all C(m, n) choices.
inline std::optional<std::vector<int>> appears(const DiscreteModel& r, const DiscreteModel& s) {
  if (r.side() > s.side()) return std::nullopt;
  for (auto c : combinations(s.side(), r.side())) {
    for (int& v : c) ++v;
    if (restrict_to(s, c) == r) return c;
  }
  return std::nullopt;
}

/// Weak version: all nondecreasing sequences.
inline std::optional<std::vector<int>> appears_weak(const DiscreteModel& r, const DiscreteModel& s) {
  const int n = r.side(), m = s.side();
  std::vector<int> j(static_cast<std::size_t>(n), 1);
  for (;;) {
    if (restrict_to(s, j) == r) return j;
    int p = n - 1;
    while (p >= 0 && j[static_cast<std::size_t>(p)] == m) --p;
    if (p < 0) return std::nullopt;
    ++j[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < n; ++q) j[static_cast<std::size_t>(q)] = j[static_cast<std::size_t>(p)];
  }
}

/// Points strictly increasing, the i-th inside cell cells[i] (sorted) of
/// resolution L, away from every cell boundary.
inline std::vector<Rational> interior_points(const std::vector<int>& cells, int L) {
  const long n = static_cast<long>(cells.size());
  std::vector<Rational> x;
  for (long i = 0; i < n; ++i)
    x.push_back(pixel::make_rational(cells[static_cast<std::size_t>(i)] - 1, L) +
                pixel::make_rational(i + 1, static_cast<long>(L) * (n + 1)));
  return x;
}

inline DiscreteModel model_at(const PiecewiseFunction& f, const std::vector<Rational>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<Color> values;
  for (const auto& i : tuples(f.arity(), n)) {
    std::vector<Rational> p;
    for (int v : i) p.push_back(x[static_cast<std::size_t>(v - 1)]);
    values.push_back(f.evaluate(p));
  }
  return DiscreteModel(f.arity(), f.colors(), n, std::move(values));
}

/// mu_{F,n} from all L^n cell functions of n i.i.d. points (each 1/L^n),
/// sorted, evaluated at explicit interior points. L must be a resolution at
/// which F is piecewise constant per (cell, order).
inline std::map<DiscreteModel, Rational> mu(const PiecewiseFunction& f, int n, int L) {
  std::map<DiscreteModel, BigInt> counts;
  for (const auto& c : tuples(n, L)) {
    std::vector<int> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    ++counts[model_at(f, interior_points(sorted, L))];
  }
  std::map<DiscreteModel, Rational> out;
  const BigInt total = pixel::pow(BigInt(L), static_cast<unsigned long>(n));
  for (auto& [m, c] : counts) out.emplace(m, pixel::make_rational(c, total));
  return out;
}

/// Whether R has positive mass: every cell function carries weight 1/L^n, so
/// it suffices that some strictly increasing choice of n cells induces R.
/// Sufficient only; models needing two points in one cell are not found.
inline bool realized_by_distinct_cells(const PiecewiseFunction& f, const DiscreteModel& r, int L) {
  for (auto c : combinations(L, r.side())) {
    for (int& v : c) ++v;
    if (model_at(f, interior_points(c, L)) == r) return true;
  }
  return false;
}

/// d(F, G) from all cell vectors at resolution L and all d! orders of the
/// coordinates, each with weight 1/(L^d d!).
inline Rational distance(const PiecewiseFunction& f, const PiecewiseFunction& g, int L) {
  const int d = f.arity();
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  BigInt differ = 0;
  for (const auto& c : tuples(d, L))
    for (const auto& p : perms) {
      std::vector<Rational> x;
      for (int j = 0; j < d; ++j)
        x.push_back(pixel::make_rational(c[static_cast<std::size_t>(j)] - 1, L) +
                    pixel::make_rational(p[static_cast<std::size_t>(j)], static_cast<long>(L) * (d + 1)));
      if (f.evaluate(x) != g.evaluate(x)) ++differ;
    }
  return pixel::make_rational(differ, pixel::pow(BigInt(L), static_cast<unsigned long>(d)) * BigInt(static_cast<unsigned long>(perms.size())));
}

/// Area of {x in (0,1]^2 : x1 + x2 <= c}.
inline Rational threshold_area(const Rational& c) {
  if (c <= 0) return 0;
  if (c >= 2) return 1;
  if (c <= 1) return c * c / 2;
  const Rational r = 2 - c;
  return 1 - r * r / 2;
}

/// Lexicographically first s-subset of {0..n-1} passing `good`.
inline std::optional<std::vector<int>> first_subset(int n, int s, const std::function<bool(const std::vector<int>&)>& good) {
  for (const auto& c : combinations(n, s))
    if (good(c)) return c;
  return std::nullopt;
}

/// All subsets of `u` with size in [lo, hi].
inline std::vector<std::vector<int>> subsets(const std::vector<int>& u, int lo, int hi) {
  std::vector<std::vector<int>> out;
  for (int size = lo; size <= std::min<int>(hi, static_cast<int>(u.size())); ++size)
    for (const auto& c : combinations(static_cast<int>(u.size()), size)) {
      std::vector<int> s;
      for (int i : c) s.push_back(u[static_cast<std::size_t>(i)]);
      out.push_back(s);
    }
  return out;
}

}  // namespace oracle
