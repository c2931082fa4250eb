#include "pixel/pipeline.hpp"

#include <algorithm>
#include <string>

#include "pixel/homogeneity.hpp"
#include "pixel/parallel.hpp"
#include "pixel/substructure.hpp"

namespace pixel {

namespace {

// splitmix64 finalizer over (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rational pair_term(int d, int l) {
  return make_rational(binomial(static_cast<unsigned long>(d), 2), BigInt(l));
}

}  // namespace

Box random_dyadic_box(int l, std::uint64_t seed) {
  auto rng = chunk_rng(seed, 1);
  Box box;
  for (int a = 0; a < l; ++a) {
    const int depth = static_cast<int>(rng() % 4);
    const long cells = 1L << depth;
    const long j = static_cast<long>(rng() % static_cast<std::uint64_t>(cells));
    box.alpha.push_back(make_rational(j, cells));
    box.beta.push_back(make_rational(j + 1, cells));
  }
  return box;
}

namespace {

// Draws inlays one trial at a time and keeps the distinct homogeneous ones.
class Appclose {
 public:
  Appclose(const PiecewiseFunction& f, const HomogeneousSpec& g, int s, std::uint64_t seed, BoxStrategy strategy,
           const EnumerationCaps& caps)
      : f_(f), l_(g.resolution()), s_(s), seed_(seed), strategy_(strategy), caps_(caps) {
    if (g.arity() != f.arity() || g.colors() != f.colors()) throw Error("appclose: G does not match F's arity or colors");
    if (s < f.arity()) throw Error("appclose needs s >= d");
    result_.base_distance = distance_exact(f, PiecewiseFunction::homogeneous(g), caps);
    result_.bound = 2 * result_.base_distance + pair_term(f.arity(), l_);
  }

  /// Index of a new candidate, if this trial produced one.
  std::optional<std::size_t> step(std::uint64_t trial) {
    ++result_.trials;
    const std::uint64_t trial_seed = derive_seed(seed_, trial);
    Box box = strategy_ == BoxStrategy::Full ? Box::full(l_) : random_dyadic_box(l_, trial_seed);
    InlaySample sample = sample_random_inlay(f_, l_, s_, box, trial_seed);
    if (!sample.homogeneous) return std::nullopt;
    ++result_.homogeneous_samples;
    HomogeneousSpec gp = extract_spec(sample.model, l_);
    for (const auto& c : result_.candidates)
      if (c.g_prime == gp) return std::nullopt;
    Rational dist = distance_exact(f_, PiecewiseFunction::homogeneous(gp), caps_);
    const bool ok = dist <= result_.bound;
    result_.candidates.push_back(AppcloseCandidate{trial, std::move(box), std::move(sample.selection),
                                                   std::move(sample.model), std::move(gp), std::move(dist), ok});
    return result_.candidates.size() - 1;
  }

  AppcloseResult& result() { return result_; }

 private:
  const PiecewiseFunction& f_;
  int l_;
  int s_;
  std::uint64_t seed_;
  BoxStrategy strategy_;
  EnumerationCaps caps_;
  AppcloseResult result_;
};

}  // namespace

HomogeneousSpec quantize(const PiecewiseFunction& f, int l, const EnumerationCaps& caps) {
  const auto masses = box_color_masses(f, l, caps);
  const int d = f.arity();
  std::vector<Color> winner(masses.size());
  for (std::size_t b = 0; b < masses.size(); ++b) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < masses[b].size(); ++c)
      if (masses[b][c] > masses[b][best]) best = c;
    winner[b] = static_cast<Color>(best + 1);
  }
  return HomogeneousSpec::build(l, d, f.colors(), [&](std::span<const int> cells, const OrderPattern&) {
    std::size_t b = 0;
    for (int c : cells) b = b * static_cast<std::size_t>(l) + static_cast<std::size_t>(c - 1);
    return winner[b];
  });
}

AppcloseResult appclose_search(const PiecewiseFunction& f, const HomogeneousSpec& g, int s, std::uint64_t trials,
                               std::uint64_t seed, BoxStrategy strategy, const EnumerationCaps& caps) {
  Appclose run(f, g, s, seed, strategy, caps);
  for (std::uint64_t t = 0; t < trials; ++t) run.step(t);
  return std::move(run.result());
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Consistent: return "consistent";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "fail";
}

CertifyResult certify(const HomogeneousSpec& g_prime, const PiecewiseFunction& f, int n_max,
                      const CertifyOptions& options) {
  if (g_prime.arity() != f.arity() || g_prime.colors() != f.colors())
    throw Error("certify: G' does not match F's arity or colors");
  if (n_max < 1) throw Error("certify needs n_max >= 1");
  CertifyResult out;
  out.exact = f.piecewise_form() != nullptr;
  bool all_positive = true;
  for (int n = 1; n <= n_max; ++n) {
    CertificateTable table;
    table.n = n;
    const auto subs = enumerate_substructures(g_prime, n, options.caps);
    if (out.exact) {
      const StatisticDistribution mu = mu_exact(f, n, options.caps);
      for (const DiscreteModel& r : subs) {
        Rational m = mu.mass(r);
        if (m == 0) all_positive = false;
        table.entries.push_back({r, std::move(m), std::nullopt});
      }
    } else {
      const SampleReport rep =
          mu_sample(f, n, options.trials, derive_seed(options.seed, static_cast<std::uint64_t>(n)), options.threads);
      for (const DiscreteModel& r : subs) {
        const std::uint64_t c = rep.count(r);
        if (c == 0) all_positive = false;
        table.entries.push_back({r, make_rational(BigInt(static_cast<unsigned long>(c)),
                                                  BigInt(static_cast<unsigned long>(options.trials))),
                                 c});
      }
    }
    out.tables.push_back(std::move(table));
  }
  if (out.exact) {
    out.verdict = all_positive ? Verdict::Pass : Verdict::Fail;
  } else {
    out.verdict = all_positive ? Verdict::Consistent : Verdict::Inconclusive;
  }
  return out;
}

BudgetExhausted::BudgetExhausted(const std::string& what, PixelationCertificate partial)
    : Error(what), partial_(std::move(partial)) {}

int choose_resolution(const PiecewiseFunction& f, const Rational& epsilon, const PixelateOptions& options) {
  const int d = f.arity();
  const Rational start = 3 * Rational(binomial(static_cast<unsigned long>(d), 2)) / epsilon;
  BigInt l0;
  mpz_cdiv_q(l0.get_mpz_t(), start.get_num_mpz_t(), start.get_den_mpz_t());
  if (l0 < 1) l0 = 1;
  if (l0 > Limits::max_side) throw CapExceeded("initial resolution " + l0.get_str() + " exceeds the side cap");
  const long first = l0.get_si();
  // At a multiple of F's resolution every box lies in one cell of F, so only
  // boxes with repeated cells can disagree, and their mass is <= C(d,2)/l.
  const long L = f.resolution();
  const long cap = f.piecewise_form() ? (first + L - 1) / L * L : std::max<long>(first, options.max_l);
  const Rational target = epsilon / 3;
  for (long l = first; l <= cap; ++l) {
    const HomogeneousSpec g = quantize(f, static_cast<int>(l), options.caps);
    if (distance_exact(f, PiecewiseFunction::homogeneous(g), options.caps) <= target) return static_cast<int>(l);
  }
  throw CapExceeded("no resolution up to " + std::to_string(cap) + " quantizes within epsilon/3");
}

PixelationCertificate pixelate(const PiecewiseFunction& f, const Rational& epsilon, int n_max,
                               const PixelateOptions& options) {
  if (epsilon <= 0 || epsilon > 1) throw Error("epsilon must lie in (0,1]");
  if (n_max < 1) throw Error("n_max must be positive");
  PixelationCertificate cert;
  cert.epsilon = epsilon;
  cert.seed = options.seed;
  cert.l = choose_resolution(f, epsilon, options);
  cert.s = std::max(f.arity(), n_max);
  const HomogeneousSpec g = quantize(f, cert.l, options.caps);

  Appclose run(f, g, cert.s, options.seed, options.strategy, options.caps);
  cert.quantize_distance = run.result().base_distance;
  cert.distance_bound = run.result().bound;

  CertifyOptions copt;
  copt.caps = options.caps;
  copt.trials = options.certify_trials;
  copt.seed = options.seed;
  copt.threads = options.threads;

  std::optional<std::size_t> best;
  for (std::uint64_t t = 0; t < options.trials; ++t) {
    const auto idx = run.step(t);
    if (!idx) continue;
    const AppcloseCandidate& c = run.result().candidates[*idx];
    ++cert.candidates_examined;
    cert.bound_witnessed = cert.bound_witnessed || c.within_bound;
    if (!best || c.distance < run.result().candidates[*best].distance) best = idx;
    if (c.distance > epsilon) continue;
    CertifyResult cr = certify(c.g_prime, f, n_max, copt);
    if (cr.verdict == Verdict::Fail || cr.verdict == Verdict::Inconclusive) continue;
    cert.g_prime = c.g_prime;
    cert.distance = c.distance;
    cert.within_bound = c.within_bound;
    cert.verdict = cr.verdict;
    cert.certification = std::move(cr);
    cert.samples = run.result().trials;
    return cert;
  }

  cert.samples = run.result().trials;
  cert.verdict = Verdict::Fail;
  if (best) {
    const AppcloseCandidate& c = run.result().candidates[*best];
    cert.g_prime = c.g_prime;
    cert.distance = c.distance;
    cert.within_bound = c.within_bound;
  }
  throw BudgetExhausted("no certified candidate within " + std::to_string(options.trials) + " inlay samples (" +
                            std::to_string(cert.candidates_examined) + " distinct homogeneous candidates)",
                        std::move(cert));
}

PixelationCertificate pixelate_ensure_size(const PiecewiseFunction& f, const Rational& epsilon, int r, int n_max,
                                           const PixelateOptions& options) {
  if (r < 1) throw Error("r must be positive");
  const StatisticDistribution mu = mu_exact(f, r, options.caps);
  std::optional<Rational> delta;
  for (const auto& [_, m] : mu.entries)
    if (m > 0 && (!delta || m < *delta)) delta = m;
  const Rational scale = 2 * Rational(pow(BigInt(r), static_cast<unsigned long>(f.arity())));
  const Rational eps = std::min(epsilon, Rational(*delta / scale));
  PixelationCertificate cert = pixelate(f, eps, n_max, options);
  cert.r = r;
  cert.delta = delta;
  const auto subs = enumerate_substructures(*cert.g_prime, r, options.caps);
  for (const auto& [model, m] : mu.entries)
    if (m > 0 && !subs.count(model)) cert.missing_at_r.push_back(model);
  if (!cert.missing_at_r.empty()) cert.verdict = Verdict::Fail;
  return cert;
}

}  // namespace pixel
