#pragma once

#include <variant>
#include <vector>

#include "pixel/homogeneous_spec.hpp"
#include "pixel/model.hpp"

namespace pixel {

/// Two index tuples with equal cell vectors and equal order patterns but
/// different colors.
struct HomogeneityViolation {
  std::vector<int> first;
  std::vector<int> second;
  Color first_color = 0;
  Color second_color = 0;

  bool operator==(const HomogeneityViolation&) const = default;
};

class NotHomogeneous : public Error {
 public:
  explicit NotHomogeneous(HomogeneityViolation v);
  const HomogeneityViolation& violation() const { return violation_; }

 private:
  HomogeneityViolation violation_;
};

using HomogeneityResult = std::variant<HomogeneousSpec, HomogeneityViolation>;

/// Checks whether S over [sl]^d is l-part homogeneous with l blocks of size s,
/// i.e. S(i) depends only on (ceil(i_j / s))_j and the order pattern of i.
/// Requires s >= d. On failure returns the first violation in row-major order.
HomogeneityResult check_homogeneous(const DiscreteModel& s_model, int l);

/// Like check_homogeneous but throws NotHomogeneous on failure.
HomogeneousSpec extract_spec(const DiscreteModel& s_model, int l);

/// The unique l-part homogeneous model over [tl]^d compatible with G; t >= d.
DiscreteModel instantiate(const HomogeneousSpec& g, int t);

/// Both inputs must be l-part homogeneous (NotHomogeneous otherwise); true iff
/// their extracted specs coincide.
bool compatible(const DiscreteModel& r, const DiscreteModel& s, int l);

/// Remaps every pattern of a cell vector to the color of the pattern that ties
/// exactly the coordinates sharing a cell. The result is constant per grid box.
HomogeneousSpec flatten_order_dependency(const HomogeneousSpec& g);

/// Every spec for (l, d, k), in lexicographic order of the table.
/// Throws CapExceeded beyond `cap` specs.
std::vector<HomogeneousSpec> enumerate_specs(int l, int d, int k, std::size_t cap = 1u << 20);

}  // namespace pixel
