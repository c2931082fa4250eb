#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "pixel/rational.hpp"

namespace pixel {

/// Colors of nonempty vertex subsets of size at most d. Vertices are labels
/// in [0, 64); a subset is keyed by its bitmask.
class SubsetColoring {
 public:
  static constexpr int kMaxVertex = 64;

  explicit SubsetColoring(int d);

  /// Colors every subset of `vertices` whose size lies in [min_size, d].
  static SubsetColoring from_function(std::span<const int> vertices, int d, int min_size,
                                      const std::function<int(std::span<const int>)>& color);

  int arity() const { return d_; }
  void set(std::span<const int> subset, int color);
  std::optional<int> color(std::uint64_t mask) const;
  /// Throws if the subset has no color.
  int at(std::uint64_t mask) const;

  const std::unordered_map<std::uint64_t, int>& table() const { return colors_; }

 private:
  int d_;
  std::unordered_map<std::uint64_t, int> colors_;
};

std::uint64_t subset_mask(std::span<const int> subset);

/// A disjoint union of l sorts with a coloring of all small subsets.
struct SortedColoring {
  std::vector<std::vector<int>> sorts;
  SubsetColoring coloring;
};

struct MonochromaticResult {
  std::vector<int> subset;
  int color = 0;
};

struct SizeUniformResult {
  std::vector<int> subset;
  /// colors[c - 1] is the color of every c-subset of `subset`.
  std::vector<int> colors;
};

struct MultisortResult {
  std::vector<std::vector<int>> parts;
  /// Color per intersection profile (|C cap U_1|, ..., |C cap U_l|).
  std::map<std::vector<int>, int> profile_colors;
};

/// Lexicographically first s-subset of V on which all d-subsets share a color.
/// Only d-subsets need a color.
std::optional<MonochromaticResult> find_monochromatic(std::span<const int> vertices, const SubsetColoring& f, int s);

/// Lexicographically first s-subset on which f(C) depends only on |C|.
std::optional<SizeUniformResult> find_size_uniform(std::span<const int> vertices, const SubsetColoring& f, int s);

/// Lexicographically first (U_1, ..., U_l), |U_i| = s, U_i within sort i, on
/// which f(C) depends only on the intersection sizes.
std::optional<MultisortResult> find_multisort(const SortedColoring& c, int s);

/// Limits on bound evaluation; beyond them BoundOverflow is thrown.
struct BoundBudget {
  std::uint64_t max_bits = std::uint64_t{1} << 24;
  std::uint64_t max_steps = std::uint64_t{1} << 22;
};

/// Ramsey bound for one sort and d-subsets: d = 1 is pigeonhole, d >= 2 uses
/// the end-homogeneous sequence argument.
BigInt bound_R1(int d, const BigInt& a, const BigInt& s, const BoundBudget& budget = {});
/// R1(1, a, R1(2, a, ... R1(d, a, s))).
BigInt bound_R2(int d, const BigInt& a, const BigInt& s, const BoundBudget& budget = {});
/// The multi-sort bound: R(1, d, a, s) = R2(d, a, s) and
/// R(l, d, a, s) = R(l-1, d, a^(k'^d), s) with k' = R2(d, a^((d+1)^l), s).
BigInt bound_R(int l, int d, const BigInt& a, const BigInt& s, const BoundBudget& budget = {});

struct InlayBound {
  BigInt value;
  BigInt alphabet_size;
};

/// r(l, s, d, k) = R(l, d, |A|, s) with |A| = sum_c k^(#surjections [d] -> [c]).
InlayBound bound_r_inlay(int l, int s, int d, int k, const BoundBudget& budget = {});
BigInt inlay_alphabet_size(int d, int k);

/// 1 / C(t, s)^l with t = r(l, s, d, k).
Rational bound_delta(int l, int s, int d, int k, const BoundBudget& budget = {});

}  // namespace pixel
