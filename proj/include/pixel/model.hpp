#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pixel/error.hpp"
#include "pixel/rational.hpp"

namespace pixel {

/// Colors are 1-based, in [k].
using Color = int;

/// Practical limits for dense storage.
struct Limits {
  static constexpr int max_arity = 4;
  static constexpr int max_colors = 16;
  static constexpr int max_side = 10000;
  static constexpr std::size_t max_entries = std::size_t{1} << 24;
};

/// Iterates [m]^d in row-major order (last index fastest), 1-based.
class TupleCounter {
 public:
  TupleCounter(int d, int m);

  std::span<const int> current() const { return idx_; }
  bool next();

 private:
  int m_;
  std::vector<int> idx_;
};

/// m^d, throwing CapExceeded when it exceeds Limits::max_entries.
std::size_t checked_volume(int d, long m);

/// A total function [m]^d -> [k], stored densely.
class DiscreteModel {
 public:
  DiscreteModel(int d, int k, int m, std::vector<Color> values);

  static DiscreteModel constant(int d, int k, int m, Color c);

  int arity() const { return d_; }
  int colors() const { return k_; }
  int side() const { return m_; }
  std::size_t size() const { return values_.size(); }

  const std::vector<Color>& values() const { return values_; }
  Color at(std::span<const int> idx) const { return values_[flat_index(idx)]; }
  Color operator[](std::size_t flat) const { return values_[flat]; }

  std::size_t flat_index(std::span<const int> idx) const;

  /// Copy with a single entry changed.
  DiscreteModel with(std::span<const int> idx, Color c) const;

  auto operator<=>(const DiscreteModel&) const = default;

 private:
  int d_;
  int k_;
  int m_;
  std::vector<Color> values_;
};

/// Dense-rank encoding of a weak order on d coordinates. Ranks are exactly
/// {1, ..., c} for some c <= d.
struct OrderPattern {
  std::vector<int> ranks;

  int arity() const { return static_cast<int>(ranks.size()); }
  /// All ranks distinct.
  bool strict() const;
  auto operator<=>(const OrderPattern&) const = default;
};

template <class T>
OrderPattern order_pattern(std::span<const T> values) {
  if (values.empty()) throw Error("zero arity");
  std::vector<T> distinct(values.begin(), values.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  OrderPattern p;
  p.ranks.reserve(values.size());
  for (const T& v : values)
    p.ranks.push_back(
        static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), v) - distinct.begin()) + 1);
  return p;
}

inline OrderPattern order_pattern(const std::vector<Rational>& values) {
  return order_pattern(std::span<const Rational>(values));
}
inline OrderPattern order_pattern(const std::vector<int>& values) {
  return order_pattern(std::span<const int>(values));
}

/// Cell indices of a point in [l]^d; entry j is the cell of coordinate j.
struct CellVector {
  int l = 1;
  std::vector<int> cells;

  static CellVector of(std::span<const Rational> x, int l);
  auto operator<=>(const CellVector&) const = default;
};

/// True iff cells_j < cells_j' implies ranks_j < ranks_j' for all j, j'.
bool pattern_consistent(std::span<const int> cells, const OrderPattern& p);
bool pattern_consistent(const CellVector& cells, const OrderPattern& p);

/// Every order pattern of arity d, in lexicographic order of the rank vector.
/// The count is the ordered Bell number (1, 3, 13, 75 for d = 1..4).
const std::vector<OrderPattern>& all_patterns(int d);

/// Position of p in all_patterns(p.arity()).
int pattern_index(std::span<const int> ranks);
inline int pattern_index(const OrderPattern& p) { return pattern_index(p.ranks); }

/// pattern_index(order_pattern(values)) without allocating; d <= max_arity.
template <class T>
int pattern_index_of(std::span<const T> values) {
  std::array<int, Limits::max_arity> ranks{};
  const std::size_t d = values.size();
  for (std::size_t j = 0; j < d; ++j) {
    int below = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (!(values[i] < values[j])) continue;
      bool first = true;
      for (std::size_t h = 0; h < i; ++h)
        if (values[h] == values[i]) first = false;
      below += first ? 1 : 0;
    }
    ranks[j] = below + 1;
  }
  return pattern_index(std::span<const int>(ranks.data(), d));
}

/// Number of rank values of a pattern (its number of distinct coordinates).
int pattern_width(const OrderPattern& p);

}  // namespace pixel
