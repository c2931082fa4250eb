#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "pixel/function.hpp"
#include "pixel/model.hpp"
#include "pixel/rational.hpp"

namespace pixel {

/// mu_{F,n}: the law of the model induced on n sorted uniform points.
struct StatisticDistribution {
  int n = 0;
  std::map<DiscreteModel, Rational> entries;

  /// 0 for models outside the support.
  Rational mass(const DiscreteModel& r) const;
  Rational total() const;
  std::set<DiscreteModel> support() const;
};

struct SampleReport {
  int n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::map<DiscreteModel, std::uint64_t> counts;

  std::uint64_t count(const DiscreteModel& r) const;
};

struct MonteCarloEstimate {
  Rational estimate;        // hits / trials
  double standard_error = 0.0;  // sqrt(p(1-p)/trials) at the estimate
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct EnumerationCaps {
  /// Upper limit on the number of cell assignments mu_exact enumerates.
  std::uint64_t max_assignments = 1'000'000;
  /// Upper limit on L^d regions visited by region sums.
  std::uint64_t max_regions = 1u << 22;
};

/// Pr[F(x) != G(x)] for uniform x in (0,1]^d, exactly. Both inputs need an
/// exact piecewise form, except that threshold generators are handled through
/// exact polygon areas.
Rational distance_exact(const PiecewiseFunction& f, const PiecewiseFunction& g, const EnumerationCaps& caps = {});

/// Seeded Monte Carlo estimate of distance_exact.
MonteCarloEstimate distance_mc(const PiecewiseFunction& f, const PiecewiseFunction& g, std::uint64_t trials,
                               std::uint64_t seed, int threads = 1);

/// Exact statistic distribution. Requires a piecewise form.
StatisticDistribution mu_exact(const PiecewiseFunction& f, int n, const EnumerationCaps& caps = {});

/// Empirical statistic distribution over `trials` seeded draws.
SampleReport mu_sample(const PiecewiseFunction& f, int n, std::uint64_t trials, std::uint64_t seed,
                       int threads = 1);

/// Model R over [p]^d with R(i) = F(points[i_1], ..., points[i_d]). The
/// points need not be sorted.
DiscreteModel induced_model(const PiecewiseFunction& f, std::span<const Rational> points);

/// Exact masses of each color inside every grid box of resolution l, summed
/// over all orders of the coordinates. Result[cell_index][color - 1].
std::vector<std::vector<Rational>> box_color_masses(const PiecewiseFunction& f, int l,
                                                     const EnumerationCaps& caps = {});

/// Area of {x in box, x1 + x2 <= level} intersected with the order region
/// (0: none, 1: x1 < x2, 2: x1 > x2). Exact polygon clipping.
Rational threshold_area(const Rational& lo1, const Rational& hi1, const Rational& lo2, const Rational& hi2,
                        int order_region, const Rational& level);

}  // namespace pixel
