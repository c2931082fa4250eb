#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pixel/function.hpp"
#include "pixel/model.hpp"
#include "pixel/rational.hpp"

namespace pixel {

/// Per block a in [l], indices h_{a,1} < ... < h_{a,s} in [t].
struct InlaySelection {
  std::vector<std::vector<int>> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
  int block_size() const { return blocks.empty() ? 0 : static_cast<int>(blocks.front().size()); }
  bool operator==(const InlaySelection&) const = default;
};

/// Per block a in [l], points alpha_a < x_{a,1} < ... < x_{a,s} <= beta_a.
struct ContinuousSelection {
  std::vector<std::vector<Rational>> blocks;

  bool operator==(const ContinuousSelection&) const = default;
};

/// Per block bounds 0 <= alpha_a < beta_a <= 1.
struct Box {
  std::vector<Rational> alpha;
  std::vector<Rational> beta;

  static Box full(int l);
  void validate(int l) const;
  bool operator==(const Box&) const = default;
};

/// R over [sl]^d with R(i) = S((a_1 - 1)t + h_{a_1,b_1}, ...), where
/// a_j = ceil(i_j / s) and b_j = i_j - (a_j - 1)s. S has side t*l.
DiscreteModel extract_inlay(const DiscreteModel& s_model, const InlaySelection& sel);

struct HomogeneousInlay {
  InlaySelection selection;
  DiscreteModel model;
};

/// Lexicographically first selection whose inlay is l-part homogeneous.
/// Requires s >= d and t >= s.
std::optional<HomogeneousInlay> find_homogeneous_inlay(const DiscreteModel& s_model, int l, int s);

struct InlaySample {
  ContinuousSelection selection;
  DiscreteModel model;
  bool homogeneous = false;
};

/// Draws s sorted uniforms in (alpha_a, beta_a] per block and evaluates
/// R(i) = F((a_1 - 1 + x_{a_1,b_1}) / l, ...). When F has a piecewise form,
/// draws that hit a cell boundary of F are redrawn.
InlaySample sample_random_inlay(const PiecewiseFunction& f, int l, int s, const Box& box, std::uint64_t seed);

/// The points (a - 1 + x_{a,b}) / l in increasing order.
std::vector<Rational> inlay_points(const ContinuousSelection& sel);

}  // namespace pixel
