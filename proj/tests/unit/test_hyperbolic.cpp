#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lorentz/hyperbolic.hpp"
#include "lorentz/lps.hpp"
#include "lorentz/permanent.hpp"
#include "oracles.hpp"

using namespace lorentz;
using oracle::poly;

namespace {

MultiPoly<double> lorentz_form(std::size_t n) {
  std::vector<Term<double>> t;
  for (std::size_t i = 0; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = 2;
    t.push_back({e, i == 0 ? 1.0 : -1.0});
  }
  return MultiPoly<double>(n, t);
}

// Coefficients of Π (t − r_i), constant first.
std::vector<double> from_roots(const std::vector<double>& roots) {
  std::vector<double> c{1.0};
  for (double r : roots) {
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = next;
  }
  return c;
}

const std::vector<double> e1{1, 0, 0};
const std::vector<double> ones4(4, 1.0);

}  // namespace

TEST(RootProfile, Examples) {
  const auto a = real_root_profile(std::vector<double>{-2, 0, 1});
  EXPECT_TRUE(a.all_real);
  ASSERT_EQ(a.roots.size(), 2u);
  EXPECT_NEAR(a.roots[0].real(), -std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(a.roots[1].real(), std::sqrt(2.0), 1e-12);
  EXPECT_FALSE(a.all_negative);

  EXPECT_FALSE(real_root_profile(std::vector<double>{1, 0, 1}).all_real);

  const auto c = real_root_profile(std::vector<double>{2, 4, 1});  // (t+2)²−2
  EXPECT_TRUE(c.all_real);
  EXPECT_TRUE(c.all_negative);

  EXPECT_THROW(real_root_profile(std::vector<double>{0, 0, 0}), DomainError);
}

TEST(RootProfile, RepeatedRootsAreReal) {
  const auto p = real_root_profile(std::vector<double>{1, 4, 6, 4, 1});  // (1+t)⁴
  EXPECT_TRUE(p.all_real);
  EXPECT_TRUE(p.all_negative);
  const auto z = real_root_profile(std::vector<double>{0, 0, 1});  // t²
  EXPECT_TRUE(z.all_real);
  EXPECT_FALSE(z.all_negative);
}

TEST(IsHyperbolic, Examples) {
  EXPECT_TRUE(is_hyperbolic(lorentz_form(3), e1));
  const auto sum_sq = poly<double>(2, {{{2, 0}, 1}, {{0, 2}, 1}});
  EXPECT_FALSE(is_hyperbolic(sum_sq, std::vector<double>{1, 0}));
  EXPECT_FALSE(is_hyperbolic(sum_sq, std::vector<double>{0.3, -2}));
  EXPECT_TRUE(is_hyperbolic(oracle::quartic<double>(), ones4));
}

TEST(IsHyperbolic, CertificateReportsSeedAndWitness) {
  const auto sum_sq = poly<double>(2, {{{2, 0}, 1}, {{0, 2}, 1}});
  const auto c = hyperbolicity_certificate(sum_sq, std::vector<double>{1, 1}, 32, 7);
  EXPECT_FALSE(c.hyperbolic);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.witness.size(), 2u);
  const auto ok = hyperbolicity_certificate(lorentz_form(3), e1, 32, 7);
  EXPECT_TRUE(ok.hyperbolic);
  EXPECT_EQ(ok.samples, 32u);
}

TEST(IsHyperbolic, ZeroAtDirectionThrows) {
  EXPECT_THROW(is_hyperbolic(lorentz_form(2), std::vector<double>{1, 1}), DomainError);
}

TEST(IsHyperbolic, NegatedDirection) {
  EXPECT_TRUE(is_hyperbolic(lorentz_form(3), std::vector<double>{-1, 0, 0}));
  EXPECT_TRUE(is_hyperbolic(oracle::quartic<double>(), std::vector<double>(4, -1.0)));
}

TEST(ConeMembership, Examples) {
  const auto f = lorentz_form(3);
  EXPECT_TRUE(cone_membership(f, e1, std::vector<double>{2, 1, 1}));
  EXPECT_FALSE(cone_membership(f, e1, std::vector<double>{1, 2, 0}));
  EXPECT_TRUE(cone_membership(f, e1, e1));
  EXPECT_TRUE(cone_membership(oracle::quartic<double>(), ones4, ones4));
}

TEST(ConeMembership, BoundaryPointsBelongToTheClosureOnly) {
  const auto f = lorentz_form(3);
  const std::vector<double> x{std::sqrt(2.0), 1, 1};
  EXPECT_FALSE(cone_membership(f, e1, x, ConeClosure::Open));
  EXPECT_TRUE(cone_membership(f, e1, x, ConeClosure::Closed));
}

TEST(ConeMembership, PositiveScalingInvariant) {
  Rng rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  const auto f = oracle::quartic<double>();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(4), lx(4);
    for (auto& v : x) v = 1.0 + 0.8 * g(rng);
    const double lambda = std::exp(g(rng));
    for (std::size_t i = 0; i < 4; ++i) lx[i] = lambda * x[i];
    EXPECT_EQ(cone_membership(f, ones4, x), cone_membership(f, ones4, lx));
  }
}

TEST(DirectionForMatrix, Examples) {
  const auto id = direction_for_matrix(Matrix<Rational>::identity(3));
  EXPECT_EQ(id, std::vector<Rational>(3, Rational(1)));
  const auto g = direction_for_matrix(gnk(4, 2).matrix());
  EXPECT_EQ(g, std::vector<Rational>(4, Rational(-1, 2)));
  const auto gf = direction_for_matrix(gnk(4, 2).matrix().cast<double>());
  for (double v : gf) EXPECT_NEAR(v, -0.5, 1e-12);
  EXPECT_THROW(direction_for_matrix(Matrix<Rational>{{1, -1}, {-1, 1}}), InfeasibleError);
  EXPECT_THROW(direction_for_matrix(Matrix<double>{{1, -1}, {-1, 1}}), InfeasibleError);
}

TEST(DirectionForMatrix, GeneratingPolynomialIsOneThere) {
  Rng rng(12);
  int done = 0;
  while (done < 20) {
    const auto a = oracle::random_int_matrix(rng, 4, 4, -3, 3);
    if (oracle::leibniz_det(a) == 0) continue;
    const auto e = direction_for_matrix(a);
    EXPECT_EQ(evaluate(generating_polynomial(a), e), Rational(1));
    const auto ed = direction_for_matrix(a.cast<double>());
    EXPECT_NEAR(evaluate(generating_polynomial(a.cast<double>()), ed), 1.0, 1e-7);
    ++done;
  }
}

TEST(NuijStep, Examples) {
  const auto f = poly<Rational>(2, {{{2, 0}, 1}, {{0, 2}, -1}});
  const Rational s(1, 10);
  // i = x2, j = x1 (zero based 1, 0)
  EXPECT_EQ(nuij_step(f, 1, 0, s), f + poly<Rational>(2, {{{1, 1}, 2}}) * MultiPoly<Rational>::constant(2, s));
  EXPECT_EQ(nuij_step(f, 1, 0, Rational(0)), f);
  EXPECT_THROW(nuij_step(f, 0, 0, s), DomainError);
  EXPECT_THROW(nuij_step(f, 2, 0, s), DimensionError);
}

TEST(NuijStep, RestrictionHasPositiveDiscriminant) {
  const double s = 0.3;
  const auto g = nuij_step(poly<double>(2, {{{2, 0}, 1}, {{0, 2}, -1}}), 1, 0, s);
  const auto c = restrict_line(g, std::vector<double>{0, 1}, std::vector<double>{1, 0});
  EXPECT_NEAR(c[0], -1.0, 1e-15);
  EXPECT_NEAR(c[1], 2 * s, 1e-15);
  EXPECT_NEAR(c[2], 1.0, 1e-15);
  EXPECT_GT(c[1] * c[1] - 4 * c[0] * c[2], 0.0);
}

TEST(NuijStep, PreservesSampledHyperbolicity) {
  const auto f = lorentz_form(3);
  for (double s : {0.5, 0.1, 0.01}) {
    EXPECT_TRUE(is_hyperbolic(nuij_step(f, 1, 0, s), e1));
    EXPECT_TRUE(is_hyperbolic(nuij_step(f, 2, 0, s), e1));
  }
}

TEST(NuijApprox, ZeroStepAndSmallDistance) {
  const auto f = poly<double>(2, {{{2, 0}, 1}, {{0, 2}, -1}});
  EXPECT_EQ(nuij_approx(f, std::size_t{0}, 0.0), f);
  const double s = 1e-3;
  const auto g = nuij_approx(f, std::size_t{0}, s);
  EXPECT_LE(coefficient_distance(f, g), 10 * s);
  EXPECT_GT(coefficient_distance(f, g), 0.0);
}

TEST(NuijApprox, CoordinateFormEqualsProductOfSteps) {
  // For e = e_j the direction form is Π_{i≠j} (1 + s x_i ∂_j)^d.
  const auto f = poly<Rational>(3, {{{2, 0, 0}, 1}, {{0, 2, 0}, -1}, {{0, 0, 2}, -1}});
  const Rational s(1, 7);
  auto expected = f;
  for (std::size_t i : {1, 2})
    for (int r = 0; r < 2; ++r) expected = nuij_step(expected, i, 0, s);
  EXPECT_EQ(nuij_approx(f, std::size_t{0}, s), expected);
}

TEST(NuijApprox, StaysHyperbolicAlongDirection) {
  const auto q = oracle::quartic<double>();
  for (double s : {1e-1, 1e-2}) EXPECT_TRUE(is_hyperbolic(nuij_approx(q, std::span<const double>(ones4), s), ones4));
}

TEST(Interlaces, Examples) {
  EXPECT_TRUE(interlaces(from_roots({2}), from_roots({1, 3})));
  EXPECT_FALSE(interlaces(from_roots({3}), from_roots({1, 2})));
  EXPECT_THROW(interlaces(from_roots({1, 2}), from_roots({1, 2})), DimensionError);
  EXPECT_THROW(interlaces(std::vector<double>{1, 1}, std::vector<double>{1, 0, 1}), DomainError);
}

TEST(Interlaces, DerivativeInterlacesByRolle) {
  Rng rng(9);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> roots(2 + trial % 5);
    for (auto& r : roots) r = g(rng);
    const auto f = from_roots(roots);
    std::vector<double> df(f.size() - 1);
    const double d = static_cast<double>(f.size() - 1);
    for (std::size_t k = 1; k < f.size(); ++k) df[k - 1] = static_cast<double>(k) * f[k] / d;
    EXPECT_TRUE(interlaces(df, f));
  }
}

TEST(RelaxationInclusion, Examples) {
  const auto e3 = poly<double>(3, {{{1, 1, 1}, 1}});
  EXPECT_TRUE(relaxation_inclusion_check(e3, std::vector<double>(3, 1.0), 1));
  EXPECT_TRUE(relaxation_inclusion_check(oracle::quartic<double>(), ones4, 2));
  EXPECT_THROW(relaxation_inclusion_check(e3, std::vector<double>(3, 1.0), 3), DomainError);
}

TEST(ConeSpec, OrthantBasics) {
  const auto c = ConeSpec::orthant(3, 5);
  EXPECT_EQ(c.dim(), 3u);
  EXPECT_STREQ(c.kind(), "orthant");
  EXPECT_TRUE(c.contains(std::vector<double>{1, 2, 3}));
  EXPECT_FALSE(c.contains(std::vector<double>{1, 0, 3}));
  const auto pts = c.sample_interior(50);
  for (const auto& p : pts) EXPECT_TRUE(c.contains(p));
  EXPECT_EQ(pts, c.sample_interior(50));  // seeded
}

TEST(ConeSpec, GeneratedCone) {
  const auto c = ConeSpec::generated({{1, 0}, {1, 1}});
  EXPECT_TRUE(c.contains(std::vector<double>{2, 1}));
  EXPECT_FALSE(c.contains(std::vector<double>{0, 1}));
  EXPECT_FALSE(c.contains(std::vector<double>{1, -0.1}));
  for (const auto& p : c.sample_interior(30)) EXPECT_TRUE(c.contains(p));
  std::vector<double> w;
  EXPECT_NEAR(nnls_residual({{1, 0}, {1, 1}}, std::vector<double>{3, 1}, &w), 0.0, 1e-12);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_NEAR(w[0], 2.0, 1e-12);
  EXPECT_NEAR(w[1], 1.0, 1e-12);
  EXPECT_NEAR(nnls_residual({{1, 0}, {1, 1}}, std::vector<double>{-1, 0}), 1.0, 1e-12);
  EXPECT_THROW(ConeSpec::generated({{0, 0}}), DomainError);
}

TEST(ConeSpec, HyperbolicityConeValidatesAndSamples) {
  const auto c = ConeSpec::hyperbolicity(oracle::quartic<double>(), ones4, 3);
  const auto pts = c.sample_interior(40);
  ASSERT_EQ(pts.size(), 40u);
  for (const auto& p : pts) EXPECT_TRUE(cone_membership(oracle::quartic<double>(), ones4, p));
  EXPECT_THROW(ConeSpec::hyperbolicity(lorentz_form(3), std::vector<double>{0, 1, 0}), DomainError);
  const auto sum_sq = poly<double>(2, {{{2, 0}, 1}, {{0, 2}, 1}});
  EXPECT_THROW(ConeSpec::hyperbolicity(sum_sq, std::vector<double>{1, 0}), DomainError);
}
