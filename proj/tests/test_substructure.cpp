#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pixel/homogeneity.hpp"
#include "pixel/substructure.hpp"

using namespace pixel;

namespace {

HomogeneousSpec order_spec() { return *PiecewiseFunction::order_function().piecewise_form(); }

DiscreteModel seq(std::vector<Color> v, int k = 2) {
  const int n = static_cast<int>(v.size());
  return DiscreteModel(1, k, n, std::move(v));
}

DiscreteModel random_model(std::mt19937_64& rng, int d, int k, int m) {
  std::vector<Color> v(checked_volume(d, m));
  for (Color& c : v) c = 1 + static_cast<Color>(rng() % static_cast<std::uint64_t>(k));
  return DiscreteModel(d, k, m, std::move(v));
}

}  // namespace

TEST(Appears, Examples) {
  const auto s3 = instantiate(order_spec(), 3);
  auto w = appears_in_discrete(s3, s3);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->indices, (std::vector<int>{1, 2, 3}));
  EXPECT_FALSE(appears_in_discrete(DiscreteModel::constant(2, 3, 2, 2), s3));
  w = appears_in_discrete(seq({1, 1}), seq({1, 2, 1}));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->indices, (std::vector<int>{1, 3}));
}

TEST(AppearsWeak, Examples) {
  const auto s3 = instantiate(order_spec(), 3);
  const auto w = appears_weak(DiscreteModel::constant(2, 3, 2, 2), s3);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->indices, (std::vector<int>{1, 1}));
  EXPECT_FALSE(appears_weak(seq({1, 2}), seq({2, 2})));
}

TEST(Appears, Preconditions) {
  EXPECT_THROW(appears_in_discrete(seq({1, 2}), DiscreteModel::constant(2, 2, 3, 1)), Error);
  EXPECT_THROW(appears_in_discrete(seq({1, 2}, 3), seq({1, 2, 1})), Error);
  EXPECT_FALSE(appears_in_discrete(seq({1, 2, 1}), seq({1, 2})));
  EXPECT_TRUE(appears_weak(seq({1, 1, 2}), seq({1, 2})));
}

TEST(Appears, AgreesWithOracle) {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 400; ++iter) {
    const int d = 1 + static_cast<int>(rng() % 2), k = 2;
    const int m = d + static_cast<int>(rng() % (d == 1 ? 6 : 4));
    const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(m, 3)));
    const auto s = random_model(rng, d, k, m);
    // Half the targets are real restrictions so that positives occur.
    DiscreteModel r = random_model(rng, d, k, n);
    if (rng() % 2) {
      auto c = oracle::combinations(m, n)[rng() % oracle::combinations(m, n).size()];
      for (int& v : c) ++v;
      r = oracle::restrict_to(s, c);
    }
    const auto got = appears_in_discrete(r, s);
    const auto expect = oracle::appears(r, s);
    ASSERT_EQ(got.has_value(), expect.has_value());
    if (got) { EXPECT_EQ(got->indices, *expect); }
    const auto weak = appears_weak(r, s);
    const auto weak_expect = oracle::appears_weak(r, s);
    ASSERT_EQ(weak.has_value(), weak_expect.has_value());
    if (weak) { EXPECT_EQ(weak->indices, *weak_expect); }
    if (got) { EXPECT_TRUE(weak); }
  }
}

TEST(Substructures, Examples) {
  EXPECT_EQ(enumerate_substructures(order_spec(), 2), (std::set<DiscreteModel>{instantiate(order_spec(), 2)}));
  const auto c = HomogeneousSpec::constant(2, 2, 2, 2);
  EXPECT_EQ(enumerate_substructures(c, 3), (std::set<DiscreteModel>{DiscreteModel::constant(2, 2, 3, 2)}));
  const auto ab = HomogeneousSpec::build(2, 1, 2, [](std::span<const int> cl, const OrderPattern&) { return cl[0]; });
  EXPECT_EQ(enumerate_substructures(ab, 2), (std::set<DiscreteModel>{seq({1, 1}), seq({1, 2}), seq({2, 2})}));
}

TEST(Substructures, MatchAppearanceInInstantiation) {
  // R appears in G iff it appears in instantiate(G, t) for t >= max(d, n).
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int l = 1 + static_cast<int>(seed % 3), d = 1 + static_cast<int>(seed % 2);
    const auto g = *PiecewiseFunction::random_homogeneous(l, d, 2, seed).piecewise_form();
    for (int n = 1; n <= 3; ++n) {
      const int t = std::max(d, n);
      const auto inst = instantiate(g, t);
      std::set<DiscreteModel> brute;
      for (auto c : oracle::combinations(inst.side(), n)) {
        for (int& v : c) ++v;
        brute.insert(oracle::restrict_to(inst, c));
      }
      EXPECT_EQ(enumerate_substructures(g, n), brute) << seed << " " << n;
    }
  }
}

TEST(ArityInvariance, PassesWhenBitDependsOnFirstCoordinate) {
  const auto g = HomogeneousSpec::build(2, 2, 4, [](std::span<const int> c, const OrderPattern& p) {
    // Bit 0 follows the first cell, bit 1 is arbitrary.
    return 1 + (c[0] - 1) + 2 * (pattern_index(p) % 2);
  });
  const auto res = check_arity_invariance(g, 0, 1);
  EXPECT_TRUE(res.pass);
  EXPECT_TRUE(res.violations.empty());
  EXPECT_TRUE(res.witnesses.empty());
}

TEST(ArityInvariance, FailsWithSizeTwoWitness) {
  const auto g = HomogeneousSpec::build(2, 2, 2, [](std::span<const int> c, const OrderPattern&) { return c[1]; });
  const auto res = check_arity_invariance(g, 0, 1);
  EXPECT_FALSE(res.pass);
  EXPECT_FALSE(res.violations.empty());
  EXPECT_EQ(res.witness_size, 2);
  ASSERT_FALSE(res.witnesses.empty());
  // Exhaustive size-2 enumeration of forbidden substructures.
  std::set<DiscreteModel> brute;
  for (const auto& r : enumerate_substructures(g, 2))
    if (is_forbidden_structure(r, 0, 1)) brute.insert(r);
  EXPECT_EQ(std::set<DiscreteModel>(res.witnesses.begin(), res.witnesses.end()), brute);
  for (const auto& v : res.violations) {
    EXPECT_EQ(v.first.cells[0], v.second.cells[0]);
    EXPECT_NE((v.first.color - 1) & 1, (v.second.color - 1) & 1);
  }
}

TEST(ArityInvariance, FullArityIsVacuousAndChecksInputs) {
  const auto g = HomogeneousSpec::build(2, 2, 2, [](std::span<const int> c, const OrderPattern&) { return c[1]; });
  EXPECT_TRUE(check_arity_invariance(g, 0, 2).pass);
  const auto g3 = HomogeneousSpec::constant(1, 2, 3, 1);
  EXPECT_THROW(check_arity_invariance(g3, 0, 1), Error);
  EXPECT_THROW(check_arity_invariance(g, 1, 1), Error);
  EXPECT_THROW(check_arity_invariance(g, 0, 0), Error);
}

TEST(ArityInvariance, ViolationsIffForbiddenStructureAppears) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = *PiecewiseFunction::random_homogeneous(1 + static_cast<int>(seed % 2), 2, 2, seed).piecewise_form();
    const auto res = check_arity_invariance(g, 0, 1);
    bool forbidden = false;
    for (int n = 2; n <= 3; ++n)
      for (const auto& r : enumerate_substructures(g, n)) forbidden = forbidden || is_forbidden_structure(r, 0, 1);
    EXPECT_EQ(!res.pass, forbidden) << seed;
    EXPECT_EQ(res.violations.empty(), res.pass);
  }
}
