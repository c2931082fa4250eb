#pragma once

#include <optional>
#include <set>
#include <vector>

#include "pixel/homogeneous_spec.hpp"
#include "pixel/measure.hpp"
#include "pixel/model.hpp"

namespace pixel {

/// Positions j_1 < ... < j_n (nondecreasing in weak mode) in [m] with
/// S(j_{i_1}, ..., j_{i_d}) = R(i_1, ..., i_d) for every tuple.
struct AppearanceWitness {
  std::vector<int> indices;

  bool operator==(const AppearanceWitness&) const = default;
};

/// Lexicographically first strictly increasing witness, or none.
std::optional<AppearanceWitness> appears_in_discrete(const DiscreteModel& r, const DiscreteModel& s);

/// Same search over nondecreasing sequences.
std::optional<AppearanceWitness> appears_weak(const DiscreteModel& r, const DiscreteModel& s);

/// Every model over [n]^d appearing in G, i.e. the support of mu_{G,n}.
std::set<DiscreteModel> enumerate_substructures(const HomogeneousSpec& g, int n, const EnumerationCaps& caps = {});

/// Two spec entries that agree on the first d' coordinates (cells and order)
/// but carry different values of the designated bit.
struct ArityViolation {
  SpecEntry first;
  SpecEntry second;
};

struct ArityCheckResult {
  bool pass = true;
  std::vector<ArityViolation> violations;
  /// Forbidden structures appearing in G: models with two tuples sharing the
  /// first d' indices whose bits differ. Taken at the smallest size with any.
  std::vector<DiscreteModel> witnesses;
  int witness_size = 0;
};

/// Bit b of color c is ((c - 1) >> b) & 1. Requires k to be a power of two and
/// 1 <= d' <= d; d' = d passes vacuously.
ArityCheckResult check_arity_invariance(const HomogeneousSpec& g, int bit, int d_prime,
                                        const EnumerationCaps& caps = {});

/// True iff R contains two tuples with equal first d' indices and different
/// values of the bit.
bool is_forbidden_structure(const DiscreteModel& r, int bit, int d_prime);

}  // namespace pixel
