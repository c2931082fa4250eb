#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "pixel/function.hpp"
#include "pixel/homogeneity.hpp"
#include "pixel/inlay.hpp"
#include "pixel/measure.hpp"
#include "pixel/pipeline.hpp"
#include "pixel/ramsey.hpp"
#include "pixel/substructure.hpp"

namespace pixel::io {

using Json = nlohmann::json;

/// Thrown for malformed input; the message names the offending field.
class FormatError : public Error {
 public:
  using Error::Error;
};

inline constexpr int kFormatVersion = 1;

Json to_json(const Rational& q);
/// Accepts {"num","den"} objects, "p/q" strings and integers.
Rational rational_from_json(const Json& j, const std::string& field);
Json to_json(const BigInt& v);

Json to_json(const DiscreteModel& m);
Json to_json(const HomogeneousSpec& g);
Json to_json(const PiecewiseFunction& f);
Json to_json(const StatisticDistribution& mu);
Json to_json(const SampleReport& rep);
Json to_json(const MonteCarloEstimate& est);
Json to_json(const InlaySelection& sel);
Json to_json(const ContinuousSelection& sel);
Json to_json(const Box& box);
Json to_json(const HomogeneityViolation& v);
Json to_json(const CertifyResult& c);
Json to_json(const AppcloseResult& r);
Json to_json(const PixelationCertificate& c);
Json to_json(const ArityCheckResult& r);

/// Model files: "discrete" and "grid" payloads are interchangeable here.
DiscreteModel discrete_from_json(const Json& j);
HomogeneousSpec spec_from_json(const Json& j);
/// discrete (read as a grid), grid, homogeneous or generator.
PiecewiseFunction function_from_json(const Json& j);
Box box_from_json(const Json& j);

/// {"format_version":1,"kind":"coloring","d","sorts":[[v...]...],
///  "colors":[{"set":[v...],"color":c}...]}.
SortedColoring coloring_from_json(const Json& j);

/// Reads and parses a JSON file; parse errors carry line and column.
Json load_file(const std::string& path);

}  // namespace pixel::io
