#include "pixel/inlay.hpp"

#include <algorithm>
#include <string>

#include "pixel/homogeneity.hpp"
#include "pixel/measure.hpp"
#include "pixel/parallel.hpp"

namespace pixel {

Box Box::full(int l) {
  if (l < 1) throw Error("box needs l >= 1");
  return Box{std::vector<Rational>(static_cast<std::size_t>(l), Rational(0)),
             std::vector<Rational>(static_cast<std::size_t>(l), Rational(1))};
}

void Box::validate(int l) const {
  if (static_cast<int>(alpha.size()) != l || static_cast<int>(beta.size()) != l)
    throw Error("box needs " + std::to_string(l) + " alpha and beta values");
  for (std::size_t a = 0; a < alpha.size(); ++a)
    if (alpha[a] < 0 || !(alpha[a] < beta[a]) || beta[a] > 1)
      throw Error("box block " + std::to_string(a + 1) + " needs 0 <= alpha < beta <= 1");
}

namespace {

int checked_t(const DiscreteModel& s_model, int l) {
  if (l < 1) throw Error("inlay needs l >= 1");
  if (s_model.side() % l != 0)
    throw Error("side " + std::to_string(s_model.side()) + " is not divisible by l = " + std::to_string(l));
  return s_model.side() / l;
}

}  // namespace

DiscreteModel extract_inlay(const DiscreteModel& s_model, const InlaySelection& sel) {
  const int l = sel.block_count();
  const int s = sel.block_size();
  const int t = checked_t(s_model, l);
  const int d = s_model.arity();
  for (const auto& block : sel.blocks) {
    if (static_cast<int>(block.size()) != s) throw Error("inlay blocks must all have the same length");
    for (std::size_t b = 0; b < block.size(); ++b) {
      if (block[b] < 1 || block[b] > t) throw Error("inlay index " + std::to_string(block[b]) + " outside [1," + std::to_string(t) + "]");
      if (b > 0 && block[b] <= block[b - 1]) throw Error("inlay indices must increase within a block");
    }
  }
  if (s < 1) throw Error("inlay blocks must be nonempty");
  // Position p of R maps to index (a - 1)t + h_{a,b} of S.
  std::vector<int> map;
  for (int a = 0; a < l; ++a)
    for (int h : sel.blocks[static_cast<std::size_t>(a)]) map.push_back(a * t + h);
  std::vector<Color> values;
  values.reserve(checked_volume(d, s * l));
  std::vector<int> probe(static_cast<std::size_t>(d));
  TupleCounter it(d, s * l);
  do {
    auto idx = it.current();
    for (int j = 0; j < d; ++j) probe[static_cast<std::size_t>(j)] = map[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)] - 1)];
    values.push_back(s_model.at(probe));
  } while (it.next());
  return DiscreteModel(d, s_model.colors(), s * l, std::move(values));
}

std::optional<HomogeneousInlay> find_homogeneous_inlay(const DiscreteModel& s_model, int l, int s) {
  const int t = checked_t(s_model, l);
  const int d = s_model.arity();
  if (s < d) throw Error("inlay search needs s >= d");
  if (t < s) throw Error("inlay search needs t >= s");
  const int n = s * l;
  const std::size_t P = all_patterns(d).size();

  // Tuples of [n]^d grouped by their largest coordinate, each with the table
  // slot (cell vector at block size s, pattern) it constrains.
  struct Tuple {
    std::size_t slot;
    std::vector<int> idx;
  };
  std::vector<std::vector<Tuple>> layers(static_cast<std::size_t>(n));
  {
    TupleCounter it(d, n);
    do {
      auto idx = it.current();
      std::size_t ci = 0;
      for (int v : idx) ci = ci * static_cast<std::size_t>(l) + static_cast<std::size_t>((v - 1) / s);
      const std::size_t slot = ci * P + static_cast<std::size_t>(pattern_index_of(idx));
      const int top = *std::max_element(idx.begin(), idx.end());
      layers[static_cast<std::size_t>(top - 1)].push_back({slot, {idx.begin(), idx.end()}});
    } while (it.next());
  }

  std::vector<Color> table(checked_volume(d, l) * P, 0);
  std::vector<int> map(static_cast<std::size_t>(n), 0);  // position -> index of S
  std::vector<int> h(static_cast<std::size_t>(n), 0);
  std::vector<int> probe(static_cast<std::size_t>(d));
  std::vector<std::vector<std::size_t>> added(static_cast<std::size_t>(n));

  auto undo = [&](int p) {
    for (std::size_t slot : added[static_cast<std::size_t>(p)]) table[slot] = 0;
    added[static_cast<std::size_t>(p)].clear();
  };
  auto fits = [&](int p) {
    for (const Tuple& tu : layers[static_cast<std::size_t>(p)]) {
      for (int j = 0; j < d; ++j) probe[static_cast<std::size_t>(j)] = map[static_cast<std::size_t>(tu.idx[static_cast<std::size_t>(j)] - 1)];
      const Color c = s_model.at(probe);
      if (table[tu.slot] == 0) {
        table[tu.slot] = c;
        added[static_cast<std::size_t>(p)].push_back(tu.slot);
      } else if (table[tu.slot] != c) {
        return false;
      }
    }
    return true;
  };

  int p = 0;
  h[0] = 0;
  while (p >= 0) {
    undo(p);
    const int a = p / s, b = p % s;
    int& cur = h[static_cast<std::size_t>(p)];
    ++cur;
    if (cur > t - (s - 1 - b)) {
      --p;
      continue;
    }
    map[static_cast<std::size_t>(p)] = a * t + cur;
    if (!fits(p)) continue;
    if (p == n - 1) break;
    ++p;
    h[static_cast<std::size_t>(p)] = (p % s == 0) ? 0 : h[static_cast<std::size_t>(p - 1)];
  }
  if (p < 0) return std::nullopt;

  InlaySelection sel;
  sel.blocks.assign(static_cast<std::size_t>(l), {});
  for (int q = 0; q < n; ++q) sel.blocks[static_cast<std::size_t>(q / s)].push_back(h[static_cast<std::size_t>(q)]);
  DiscreteModel r = extract_inlay(s_model, sel);
  return HomogeneousInlay{std::move(sel), std::move(r)};
}

std::vector<Rational> inlay_points(const ContinuousSelection& sel) {
  const long l = static_cast<long>(sel.blocks.size());
  std::vector<Rational> out;
  for (long a = 0; a < l; ++a)
    for (const Rational& x : sel.blocks[static_cast<std::size_t>(a)]) out.push_back((Rational(a) + x) / Rational(l));
  return out;
}

InlaySample sample_random_inlay(const PiecewiseFunction& f, int l, int s, const Box& box, std::uint64_t seed) {
  const int d = f.arity();
  if (s < d) throw Error("inlay sampling needs s >= d");
  box.validate(l);
  const HomogeneousSpec* form = f.piecewise_form();
  const long L = f.resolution();
  auto rng = chunk_rng(seed, 0);

  InlaySample out{ContinuousSelection{}, DiscreteModel::constant(d, f.colors(), 1, 1), false};
  out.selection.blocks.assign(static_cast<std::size_t>(l), {});
  for (int a = 0; a < l; ++a) {
    const Rational& lo = box.alpha[static_cast<std::size_t>(a)];
    const Rational width = box.beta[static_cast<std::size_t>(a)] - lo;
    auto& block = out.selection.blocks[static_cast<std::size_t>(a)];
    for (;;) {
      block.clear();
      std::vector<std::uint64_t> u(static_cast<std::size_t>(s));
      for (auto& v : u) v = rng();
      std::sort(u.begin(), u.end());
      if (std::adjacent_find(u.begin(), u.end()) != u.end()) continue;
      bool boundary = false;
      for (std::uint64_t v : u) {
        Rational x = lo + width * dyadic_unit(v);
        if (form) {
          // (a + x) / l on a multiple of 1/L is a cell boundary of F.
          Rational scaled = (Rational(a) + x) * Rational(L) / Rational(l);
          if (scaled.get_den() == 1) boundary = true;
        }
        block.push_back(std::move(x));
      }
      if (!boundary) break;
    }
  }
  const std::vector<Rational> points = inlay_points(out.selection);
  out.model = induced_model(f, points);
  out.homogeneous = std::holds_alternative<HomogeneousSpec>(check_homogeneous(out.model, l));
  return out;
}

}  // namespace pixel
