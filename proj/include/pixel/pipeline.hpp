#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pixel/function.hpp"
#include "pixel/homogeneous_spec.hpp"
#include "pixel/inlay.hpp"
#include "pixel/measure.hpp"

namespace pixel {

/// Plurality color of each grid box of resolution l by exact measure, the
/// same for every pattern of the box. Ties go to the smallest color.
HomogeneousSpec quantize(const PiecewiseFunction& f, int l, const EnumerationCaps& caps = {});

/// Full: every block samples from (0, 1]. Dyadic: every trial picks, per
/// block, a random dyadic interval (j/2^r, (j+1)/2^r] with r <= 3.
enum class BoxStrategy { Full, Dyadic };

/// The Dyadic strategy's box for one trial seed.
Box random_dyadic_box(int l, std::uint64_t seed);

struct AppcloseCandidate {
  std::uint64_t trial = 0;
  Box box;
  ContinuousSelection selection;
  DiscreteModel inlay;
  HomogeneousSpec g_prime;
  Rational distance;
  /// d(F, G') <= 2 d(F, G) + C(d,2)/l.
  bool within_bound = false;
};

struct AppcloseResult {
  Rational base_distance;  // d(F, G)
  Rational bound;          // 2 d(F, G) + C(d,2)/l
  std::uint64_t trials = 0;
  std::uint64_t homogeneous_samples = 0;
  /// One entry per distinct G', in order of first appearance.
  std::vector<AppcloseCandidate> candidates;
};

AppcloseResult appclose_search(const PiecewiseFunction& f, const HomogeneousSpec& g, int s, std::uint64_t trials,
                               std::uint64_t seed, BoxStrategy strategy = BoxStrategy::Full,
                               const EnumerationCaps& caps = {});

/// Pass and Fail come from exact masses. Consistent and Inconclusive come from
/// empirical frequencies (inputs without a piecewise form).
enum class Verdict { Pass, Fail, Consistent, Inconclusive };
const char* verdict_name(Verdict v);

struct CertificateEntry {
  DiscreteModel model;
  Rational mu;                         // exact mass, or observed frequency
  std::optional<std::uint64_t> count;  // empirical mode only
};

struct CertificateTable {
  int n = 0;
  std::vector<CertificateEntry> entries;
};

struct CertifyOptions {
  EnumerationCaps caps;
  /// Used only when F has no piecewise form.
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct CertifyResult {
  bool exact = true;
  std::vector<CertificateTable> tables;
  Verdict verdict = Verdict::Pass;
};

/// For n <= n_max, every R in enumerate_substructures(G', n) with mu_{F,n}(R).
CertifyResult certify(const HomogeneousSpec& g_prime, const PiecewiseFunction& f, int n_max,
                      const CertifyOptions& options = {});

struct PixelateOptions {
  /// Total inlay samples drawn by the appclose stage.
  std::uint64_t trials = 4096;
  std::uint64_t seed = 0;
  BoxStrategy strategy = BoxStrategy::Full;
  EnumerationCaps caps;
  std::uint64_t certify_trials = 100000;
  int threads = 1;
  /// Largest l tried when F has no piecewise form.
  int max_l = 4096;
};

struct PixelationCertificate {
  int l = 0;
  int s = 0;
  Rational epsilon;
  Rational quantize_distance;  // d(F, G) for G = quantize(F, l)
  std::optional<HomogeneousSpec> g_prime;
  Rational distance;  // d(F, G')
  Rational distance_bound;
  bool within_bound = false;
  /// Some candidate of the accepted run met the appclose inequality.
  bool bound_witnessed = false;
  std::uint64_t candidates_examined = 0;
  std::uint64_t samples = 0;
  CertifyResult certification;
  Verdict verdict = Verdict::Fail;
  std::uint64_t seed = 0;

  /// ensure-size only.
  std::optional<int> r;
  std::optional<Rational> delta;
  std::vector<DiscreteModel> missing_at_r;
};

/// Raised when no candidate certifies within the budget. Carries the best
/// partial report.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, PixelationCertificate partial);
  const PixelationCertificate& partial() const { return partial_; }

 private:
  PixelationCertificate partial_;
};

/// Smallest l >= max(ceil(3 C(d,2)/eps), 1) with d(F, quantize(F, l)) <= eps/3.
int choose_resolution(const PiecewiseFunction& f, const Rational& epsilon, const PixelateOptions& options = {});

PixelationCertificate pixelate(const PiecewiseFunction& f, const Rational& epsilon, int n_max,
                               const PixelateOptions& options = {});

/// pixelate with eps' = min(eps, delta / (2 r^d)), delta the least positive
/// mass of mu_{F,r}, then checks that support(mu_{F,r}) appears in G'.
PixelationCertificate pixelate_ensure_size(const PiecewiseFunction& f, const Rational& epsilon, int r, int n_max,
                                           const PixelateOptions& options = {});

}  // namespace pixel
