#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pixel/homogeneity.hpp"
#include "pixel/pipeline.hpp"
#include "pixel/substructure.hpp"

using namespace pixel;

namespace {

HomogeneousSpec order_spec() { return *PiecewiseFunction::order_function().piecewise_form(); }

PiecewiseFunction grid1(std::vector<Color> v) {
  const int m = static_cast<int>(v.size());
  return PiecewiseFunction::grid(DiscreteModel(1, 2, m, std::move(v)));
}

HomogeneousSpec cells1(int l, std::vector<Color> v) {
  return HomogeneousSpec::build(l, 1, 2, [&](std::span<const int> c, const OrderPattern&) {
    return v[static_cast<std::size_t>(c[0] - 1)];
  });
}

}  // namespace

TEST(Quantize, Examples) {
  const auto f4 = grid1({1, 1, 2, 2});
  EXPECT_EQ(quantize(f4, 2), cells1(2, {1, 2}));
  EXPECT_EQ(distance_exact(f4, PiecewiseFunction::homogeneous(quantize(f4, 2))), 0);

  const auto f3 = grid1({1, 2, 2});
  EXPECT_EQ(quantize(f3, 1), cells1(1, {2}));
  EXPECT_EQ(distance_exact(f3, PiecewiseFunction::homogeneous(quantize(f3, 1))), make_rational(1, 3));

  const auto f2 = grid1({1, 2});
  EXPECT_EQ(quantize(f2, 1), cells1(1, {1}));
  EXPECT_EQ(distance_exact(f2, PiecewiseFunction::homogeneous(quantize(f2, 1))), make_rational(1, 2));
}

TEST(Quantize, IsPluralityPerBox) {
  // Plurality colors beat every other per-box constant assignment.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = PiecewiseFunction::random_homogeneous(2, 2, 3, seed);
    const auto g = quantize(f, 3);
    const auto gp = PiecewiseFunction::homogeneous(g);
    const Rational best = distance_exact(f, gp);
    for (int trial = 0; trial < 5; ++trial) {
      const auto other = HomogeneousSpec::build(3, 2, 3, [&](std::span<const int> c, const OrderPattern& p) {
        const bool flip = ((c[0] * 3 + c[1] + trial) % 4) == 0;
        return flip ? 1 + g.at(c, p) % 3 : g.at(c, p);
      });
      const auto flat = flatten_order_dependency(other);
      EXPECT_LE(best, distance_exact(f, PiecewiseFunction::homogeneous(flat)));
    }
  }
}

TEST(Appclose, HomogeneousInputReturnsItself) {
  const auto g = *PiecewiseFunction::random_homogeneous(2, 2, 2, 3).piecewise_form();
  const auto res = appclose_search(PiecewiseFunction::homogeneous(g), g, 2, 5, 1);
  ASSERT_FALSE(res.candidates.empty());
  EXPECT_EQ(res.candidates.front().trial, 0u);
  EXPECT_EQ(res.candidates.front().g_prime, g);
  EXPECT_EQ(res.candidates.front().distance, 0);
  EXPECT_TRUE(res.candidates.front().within_bound);
  EXPECT_EQ(res.candidates.size(), 1u);
  EXPECT_EQ(res.homogeneous_samples, 5u);
}

TEST(Appclose, OrderFunctionAtSix) {
  const auto f = PiecewiseFunction::order_function();
  const auto g = quantize(f, 6);
  const auto res = appclose_search(f, g, 2, 200, 3);
  bool found = false;
  for (const auto& c : res.candidates)
    if (c.g_prime == order_spec().refine(6)) {
      found = true;
      EXPECT_EQ(c.distance, 0);
      EXPECT_TRUE(compatible(c.inlay, instantiate(order_spec().refine(6), 2), 6));
    }
  EXPECT_TRUE(found);
}

TEST(Appclose, ThresholdInequalityWitnessed) {
  const auto f = PiecewiseFunction::threshold(Rational(1));
  const auto g = quantize(f, 6);
  const auto res = appclose_search(f, g, 2, 1000, 5);
  EXPECT_EQ(res.bound, 2 * res.base_distance + make_rational(1, 6));
  bool ok = false;
  for (const auto& c : res.candidates) {
    EXPECT_EQ(c.distance, distance_exact(f, PiecewiseFunction::homogeneous(c.g_prime)));
    EXPECT_EQ(c.within_bound, c.distance <= res.bound);
    ok = ok || c.within_bound;
  }
  EXPECT_TRUE(ok);
}

TEST(Appclose, DyadicBoxesAreDyadic) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Box b = random_dyadic_box(3, seed);
    b.validate(3);
    for (std::size_t a = 0; a < 3; ++a) {
      const Rational w = b.beta[a] - b.alpha[a];
      EXPECT_TRUE(w == 1 || w == make_rational(1, 2) || w == make_rational(1, 4) || w == make_rational(1, 8));
      EXPECT_EQ(Rational(b.alpha[a] / w).get_den(), 1);
    }
  }
  const auto f = PiecewiseFunction::random_homogeneous(2, 2, 2, 1);
  const auto res = appclose_search(f, quantize(f, 2), 2, 50, 9, BoxStrategy::Dyadic);
  ASSERT_FALSE(res.candidates.empty());
  EXPECT_EQ(res.candidates.front().distance, 0);
}

TEST(Certify, Examples) {
  const auto f = PiecewiseFunction::order_function();
  EXPECT_EQ(certify(order_spec(), f, 3).verdict, Verdict::Pass);
  const auto c2 = certify(HomogeneousSpec::constant(1, 2, 3, 2), f, 2);
  EXPECT_EQ(c2.verdict, Verdict::Fail);
  ASSERT_EQ(c2.tables.size(), 2u);
  EXPECT_EQ(c2.tables[1].entries.size(), 1u);
  EXPECT_EQ(c2.tables[1].entries[0].model, DiscreteModel::constant(2, 3, 2, 2));
  EXPECT_EQ(c2.tables[1].entries[0].mu, 0);
}

TEST(Certify, FlattenFailsButWeakWitnessesExist) {
  const auto f = PiecewiseFunction::order_function();
  const auto cr = certify(flatten_order_dependency(order_spec()), f, 2);
  EXPECT_EQ(cr.verdict, Verdict::Fail);
  const auto inst = instantiate(order_spec(), 2);
  for (const auto& t : cr.tables)
    for (const auto& e : t.entries)
      if (e.mu == 0) { EXPECT_TRUE(appears_weak(e.model, inst)); }
}

TEST(Certify, EmpiricalModeForThreshold) {
  const auto f = PiecewiseFunction::threshold(Rational(1));
  CertifyOptions opt;
  opt.trials = 20000;
  opt.seed = 3;
  const auto good = certify(quantize(f, 2), f, 2, opt);
  EXPECT_FALSE(good.exact);
  // Every box of quantize(F, 2) samples a positive-mass model.
  EXPECT_EQ(good.verdict, Verdict::Consistent);
  for (const auto& t : good.tables)
    for (const auto& e : t.entries) EXPECT_TRUE(e.count.has_value());
  // Constant 2 on the lower-left box can only appear if x1 + x2 > 1 there.
  const auto bad = HomogeneousSpec::build(2, 2, 2, [](std::span<const int> c, const OrderPattern&) {
    return c[0] == 1 && c[1] == 1 ? 2 : 1;
  });
  EXPECT_EQ(certify(bad, f, 2, opt).verdict, Verdict::Inconclusive);
}

TEST(Resolution, ChoosesSmallestWorkingL) {
  const auto f = PiecewiseFunction::order_function();
  EXPECT_EQ(choose_resolution(f, make_rational(1, 2)), 6);
  const auto d5 = PiecewiseFunction::dyadic_alternating(5);
  EXPECT_EQ(choose_resolution(d5, Rational(1)), 2);
  EXPECT_EQ(choose_resolution(d5, make_rational(1, 4)), 8);
}

TEST(Pixelate, OrderFunction) {
  PixelateOptions opt;
  opt.seed = 7;
  const auto cert = pixelate(PiecewiseFunction::order_function(), make_rational(1, 2), 2, opt);
  EXPECT_EQ(cert.verdict, Verdict::Pass);
  EXPECT_EQ(cert.l, 6);
  EXPECT_EQ(cert.distance, 0);
  ASSERT_TRUE(cert.g_prime);
  EXPECT_EQ(*cert.g_prime, order_spec().refine(6));
  EXPECT_FALSE(enumerate_substructures(*cert.g_prime, 2).count(DiscreteModel::constant(2, 3, 2, 2)));
}

TEST(Pixelate, HomogeneousInputIsItsOwnPixelation) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = PiecewiseFunction::random_homogeneous(2, 2, 2, seed);
    const auto cert = pixelate(f, make_rational(1, 2), 2);
    EXPECT_EQ(cert.l, 6);
    EXPECT_EQ(cert.distance, 0);
    EXPECT_EQ(cert.verdict, Verdict::Pass);
    EXPECT_EQ(*cert.g_prime, f.piecewise_form()->refine(cert.l / 2));
  }
}

TEST(Pixelate, BudgetExhaustedCarriesPartial) {
  PixelateOptions opt;
  opt.trials = 0;
  try {
    pixelate(PiecewiseFunction::order_function(), make_rational(1, 2), 2, opt);
    FAIL();
  } catch (const BudgetExhausted& e) {
    EXPECT_EQ(e.partial().l, 6);
    EXPECT_EQ(e.partial().verdict, Verdict::Fail);
  }
}

TEST(Pixelate, RejectsBadEpsilon) {
  EXPECT_THROW(pixelate(PiecewiseFunction::order_function(), Rational(0), 2), Error);
  EXPECT_THROW(pixelate(PiecewiseFunction::order_function(), Rational(2), 2), Error);
}

TEST(EnsureSize, Examples) {
  const auto f = grid1({1, 2});
  const auto cert = pixelate_ensure_size(f, make_rational(1, 2), 1, 2);
  ASSERT_TRUE(cert.delta);
  EXPECT_EQ(*cert.delta, make_rational(1, 2));
  EXPECT_EQ(cert.epsilon, make_rational(1, 4));
  EXPECT_TRUE(cert.missing_at_r.empty());

  const auto h = PiecewiseFunction::random_homogeneous(2, 1, 2, 4);
  const auto hc = pixelate_ensure_size(h, Rational(1), 2, 2);
  EXPECT_EQ(hc.verdict, Verdict::Pass);
  EXPECT_TRUE(hc.missing_at_r.empty());

  const auto d5 = PiecewiseFunction::dyadic_alternating(5);
  const auto dc = pixelate_ensure_size(d5, make_rational(1, 4), 2, 2);
  EXPECT_TRUE(dc.missing_at_r.empty());
  const auto subs = enumerate_substructures(*dc.g_prime, 2);
  for (const auto& [m, p] : mu_exact(d5, 2).entries) EXPECT_TRUE(subs.count(m));
}
