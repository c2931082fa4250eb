#include "pixel/homogeneity.hpp"

#include <string>

namespace pixel {

namespace {

std::string tuple_string(const std::vector<int>& t) {
  std::string s = "(";
  for (std::size_t j = 0; j < t.size(); ++j) s += (j ? "," : "") + std::to_string(t[j]);
  return s + ")";
}

void check_block_size(int side, int l, int d) {
  if (l < 1) throw Error("resolution must be positive");
  if (side % l != 0)
    throw Error("side " + std::to_string(side) + " is not divisible by l = " + std::to_string(l));
  if (side / l < d)
    throw Error("block size " + std::to_string(side / l) + " is smaller than the arity " + std::to_string(d));
}

}  // namespace

NotHomogeneous::NotHomogeneous(HomogeneityViolation v)
    : Error("model is not l-part homogeneous: " + tuple_string(v.first) + " -> " + std::to_string(v.first_color) +
            " but " + tuple_string(v.second) + " -> " + std::to_string(v.second_color)),
      violation_(std::move(v)) {}

HomogeneityResult check_homogeneous(const DiscreteModel& s_model, int l) {
  const int d = s_model.arity(), k = s_model.colors(), side = s_model.side();
  check_block_size(side, l, d);
  const int block = side / l;
  const std::size_t P = all_patterns(d).size();
  const std::size_t cells = checked_volume(d, l);
  std::vector<Color> table(cells * P, 0);
  std::vector<std::size_t> first_seen(cells * P, 0);

  std::vector<int> cell(static_cast<std::size_t>(d));
  TupleCounter it(d, side);
  std::size_t flat = 0;
  do {
    auto idx = it.current();
    std::size_t ci = 0;
    for (int j = 0; j < d; ++j) {
      cell[static_cast<std::size_t>(j)] = (idx[static_cast<std::size_t>(j)] + block - 1) / block;
      ci = ci * static_cast<std::size_t>(l) + static_cast<std::size_t>(cell[static_cast<std::size_t>(j)] - 1);
    }
    const std::size_t slot = ci * P + static_cast<std::size_t>(pattern_index(order_pattern(idx)));
    const Color c = s_model[flat];
    if (table[slot] == 0) {
      table[slot] = c;
      first_seen[slot] = flat;
    } else if (table[slot] != c) {
      HomogeneityViolation v;
      // Recover the earlier tuple from its flat index.
      v.first.assign(static_cast<std::size_t>(d), 0);
      std::size_t rest = first_seen[slot];
      for (int j = d; j-- > 0;) {
        v.first[static_cast<std::size_t>(j)] = static_cast<int>(rest % static_cast<std::size_t>(side)) + 1;
        rest /= static_cast<std::size_t>(side);
      }
      v.first_color = table[slot];
      v.second.assign(idx.begin(), idx.end());
      v.second_color = c;
      return v;
    }
    ++flat;
  } while (it.next());

  // block >= d means every consistent pair was realized, so the table is total.
  return HomogeneousSpec::build(l, d, k, [&](std::span<const int> cs, const OrderPattern& p) {
    std::size_t ci = 0;
    for (int c : cs) ci = ci * static_cast<std::size_t>(l) + static_cast<std::size_t>(c - 1);
    return table[ci * P + static_cast<std::size_t>(pattern_index(p))];
  });
}

HomogeneousSpec extract_spec(const DiscreteModel& s_model, int l) {
  auto result = check_homogeneous(s_model, l);
  if (auto* v = std::get_if<HomogeneityViolation>(&result)) throw NotHomogeneous(std::move(*v));
  return std::get<HomogeneousSpec>(std::move(result));
}

DiscreteModel instantiate(const HomogeneousSpec& g, int t) {
  const int d = g.arity(), l = g.resolution();
  if (t < d) throw Error("instantiation block size t = " + std::to_string(t) + " is below the arity " + std::to_string(d));
  const long side = static_cast<long>(t) * l;
  if (side > Limits::max_side) throw CapExceeded("instantiation side exceeds the cap");
  std::vector<Color> values;
  values.reserve(checked_volume(d, side));
  std::vector<int> cell(static_cast<std::size_t>(d));
  TupleCounter it(d, static_cast<int>(side));
  do {
    auto idx = it.current();
    for (std::size_t j = 0; j < idx.size(); ++j) cell[j] = (idx[j] + t - 1) / t;
    values.push_back(g.at(cell, order_pattern(idx)));
  } while (it.next());
  return DiscreteModel(d, g.colors(), static_cast<int>(side), std::move(values));
}

bool compatible(const DiscreteModel& r, const DiscreteModel& s, int l) {
  if (r.arity() != s.arity() || r.colors() != s.colors()) throw Error("compatible: arity or color count mismatch");
  return extract_spec(r, l) == extract_spec(s, l);
}

HomogeneousSpec flatten_order_dependency(const HomogeneousSpec& g) {
  std::vector<int> cells;
  return HomogeneousSpec::build(g.resolution(), g.arity(), g.colors(),
                                [&](std::span<const int> cs, const OrderPattern&) {
                                  cells.assign(cs.begin(), cs.end());
                                  // ties exactly the coordinates that share a cell
                                  return g.at(cs, order_pattern(cells));
                                });
}

std::vector<HomogeneousSpec> enumerate_specs(int l, int d, int k, std::size_t cap) {
  const std::size_t pairs = consistent_pair_count(l, d);
  std::size_t total = 1;
  for (std::size_t i = 0; i < pairs; ++i) {
    if (total > cap / static_cast<std::size_t>(k)) throw CapExceeded("too many specs to enumerate");
    total *= static_cast<std::size_t>(k);
  }
  std::vector<HomogeneousSpec> out;
  out.reserve(total);
  std::vector<Color> digits(pairs, 1);
  for (;;) {
    std::size_t pos = 0;
    out.push_back(HomogeneousSpec::build(l, d, k, [&](std::span<const int>, const OrderPattern&) {
      return digits[pos++];
    }));
    std::size_t j = pairs;
    while (j > 0 && digits[j - 1] == k) digits[--j] = 1;
    if (j == 0) break;
    ++digits[j - 1];
  }
  return out;
}

}  // namespace pixel
