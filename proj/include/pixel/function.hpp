#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "pixel/homogeneous_spec.hpp"
#include "pixel/model.hpp"
#include "pixel/rational.hpp"

namespace pixel {

enum class FunctionKind { Grid, Homogeneous, Generator };

/// Name and parameters of a built-in generator. Only the fields relevant to
/// `name` are meaningful.
struct GeneratorSpec {
  std::string name;
  int depth = 0;            // dyadic_alternating
  Rational level = 0;       // threshold
  int l = 0, d = 0, k = 0;  // random_homogeneous
  std::uint64_t seed = 0;   // random_homogeneous

  bool operator==(const GeneratorSpec&) const = default;
};

/// An exactly evaluable input F : (0,1]^d -> [k].
///
/// Every kind except the threshold generator also carries an exact piecewise
/// form: a homogeneous spec agreeing with F at every point of (0,1]^d. Exact
/// measure computations run on that form.
class PiecewiseFunction {
 public:
  /// Constant on each cell ((i-1)/m, i/m] of the grid of `values`.
  static PiecewiseFunction grid(DiscreteModel values);
  static PiecewiseFunction homogeneous(HomogeneousSpec spec);
  static PiecewiseFunction generator(const GeneratorSpec& gen);

  /// d = 2, k = 3: 1 below the diagonal order x1 < x2, 2 on it, 3 above.
  static PiecewiseFunction order_function();
  /// d = 1, k = 2: color 2 on (2^-r, 2^-r+1] for odd r <= depth, color 1 on
  /// even r and on (0, 2^-depth].
  static PiecewiseFunction dyadic_alternating(int depth);
  /// d = 2, k = 2: color 1 iff x1 + x2 <= level. Has no exact piecewise form.
  static PiecewiseFunction threshold(Rational level);
  static PiecewiseFunction random_homogeneous(int l, int d, int k, std::uint64_t seed);

  FunctionKind kind() const;
  int arity() const { return d_; }
  int colors() const { return k_; }

  const DiscreteModel* grid_values() const { return std::get_if<DiscreteModel>(&payload_); }
  const HomogeneousSpec* spec() const { return std::get_if<HomogeneousSpec>(&payload_); }
  const GeneratorSpec* generator_spec() const { return std::get_if<GeneratorSpec>(&payload_); }

  /// Null when F has no exact piecewise form.
  const HomogeneousSpec* piecewise_form() const { return form_.get(); }
  /// Resolution of the piecewise form; 1 for the threshold generator.
  int resolution() const { return form_ ? form_->resolution() : 1; }
  std::optional<Rational> threshold_level() const;

  Color evaluate(std::span<const Rational> x) const;

  bool operator==(const PiecewiseFunction& o) const { return payload_ == o.payload_; }

 private:
  PiecewiseFunction(int d, int k, std::variant<DiscreteModel, HomogeneousSpec, GeneratorSpec> payload,
                    std::shared_ptr<const HomogeneousSpec> form);

  int d_;
  int k_;
  std::variant<DiscreteModel, HomogeneousSpec, GeneratorSpec> payload_;
  std::shared_ptr<const HomogeneousSpec> form_;
};

inline Color evaluate(const PiecewiseFunction& f, std::span<const Rational> x) { return f.evaluate(x); }

/// Largest depth accepted by dyadic_alternating (2^depth cells must fit the side cap).
inline constexpr int kMaxDyadicDepth = 13;

}  // namespace pixel
