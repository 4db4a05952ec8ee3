#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lorentz/capacity.hpp"
#include "lorentz/lps.hpp"
#include "lorentz/permanent.hpp"
#include "oracles.hpp"

using namespace lorentz;
using oracle::poly;

namespace {

double monomial(const std::vector<double>& x, const std::vector<double>& alpha) {
  double m = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) m *= std::pow(x[i], alpha[i]);
  return m;
}

// Grid search of (x1² + x2²)/x1² over x2/x1 ∈ (0, 10]: the infimum 1 is approached as x2 → 0.
double grid_oracle() {
  double best = INFINITY;
  for (int k = 1; k <= 1000; ++k) {
    const double r = k * 0.01;
    best = std::min(best, 1.0 + r * r);
  }
  return best;
}

}  // namespace

TEST(Capacity, ConstantObjective) {
  const auto f = poly<double>(3, {{{1, 1, 1}, 1}});
  const std::vector<double> ones(3, 1.0);
  const auto r = capacity_estimate(f, ones);
  EXPECT_TRUE(r.feasible);
  EXPECT_DOUBLE_EQ(r.value, 1.0);
  EXPECT_TRUE(r.upper_bound);
}

TEST(Capacity, JnIsOneAtTheCenter) {
  for (std::size_t n : {2, 3, 4}) {
    const std::vector<double> ones(n, 1.0);
    const auto r = capacity_estimate(oracle::jn_poly(n), ones);
    EXPECT_TRUE(r.feasible);
    EXPECT_LE(r.value, 1.0 + 1e-6);
    EXPECT_GE(r.value, 1.0 - 1e-3);  // AM-GM: f/x^𝟙 >= 1
    for (double x : r.argmin) EXPECT_GT(x, 0.0);
    EXPECT_NEAR(r.value, evaluate(oracle::jn_poly(n), r.argmin) / monomial(r.argmin, ones), 1e-10 * r.value);
  }
}

TEST(Capacity, ScalingCovariance) {
  const auto f = poly<double>(3, {{{2, 1, 0}, 1}, {{0, 1, 2}, 3}, {{1, 1, 1}, 2}});
  const std::vector<double> alpha{1, 1, 1};
  const double a = capacity_estimate(f, alpha).value;
  const double b = capacity_estimate(7.5 * f, alpha).value;
  EXPECT_NEAR(b, 7.5 * a, 1e-8 * b);
}

TEST(Capacity, DilationMatchesReoptimization) {
  // Cap_𝟙(f(λx)) = Π λ_i · Cap_𝟙(f) when f is multi-affine in the exponents seen by α = 𝟙.
  Rng rng(3);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  const auto f = oracle::jn_poly(3);
  const std::vector<double> ones(3, 1.0);
  for (int t = 0; t < 5; ++t) {
    std::vector<double> lambda(3);
    for (auto& l : lambda) l = u(rng);
    Matrix<double> d(3, 3);
    for (std::size_t i = 0; i < 3; ++i) d(i, i) = lambda[i];
    const auto g = compose_linear(f, d);
    const double lam = lambda[0] * lambda[1] * lambda[2];
    EXPECT_NEAR(capacity_estimate(g, ones).value, lam * capacity_estimate(f, ones).value, 1e-6 * lam);
  }
}

TEST(Capacity, OrthantConeGivesSameAnswer) {
  const auto cone = ConeSpec::orthant(2);
  const std::vector<double> ones(2, 1.0);
  const auto r = capacity_estimate(oracle::jn_poly(2), ones, &cone);
  EXPECT_TRUE(r.feasible);
  EXPECT_LE(r.value, 1.0 + 1e-6);
}

TEST(Capacity, MixedSignHyperbolicCone) {
  const auto f = generating_polynomial(gnk(4, 2).matrix().cast<double>());
  const std::vector<double> ones(4, 1.0);
  const auto cone = ConeSpec::hyperbolicity(f, ones);
  const auto r = capacity_estimate(f, ones, &cone);
  ASSERT_TRUE(r.feasible);
  EXPECT_GT(r.value, 0.0);
  EXPECT_TRUE(std::isfinite(r.value));
  for (double x : r.argmin) EXPECT_GT(x, 0.0);
  EXPECT_TRUE(cone_membership(f, ones, r.argmin));
  EXPECT_NEAR(r.value, evaluate(f, r.argmin) / monomial(r.argmin, ones), 1e-10 * r.value);
}

TEST(Capacity, InfeasibleConeReportsInsteadOfThrowing) {
  // Λ₊₊(x1² − x2², −e1) lies in {x1 < 0}: no positive point.
  const auto f = poly<double>(2, {{{2, 0}, 1}, {{0, 2}, -1}});
  const auto cone = ConeSpec::hyperbolicity(f, std::vector<double>{-1, 0});
  const auto r = capacity_estimate(f, std::vector<double>{1, 1}, &cone);
  EXPECT_FALSE(r.feasible);
  EXPECT_TRUE(std::isinf(r.value));
}

TEST(Capacity, DeterministicGivenSeed) {
  const auto f = poly<double>(3, {{{2, 1, 0}, 1}, {{0, 1, 2}, 3}, {{1, 1, 1}, 2}});
  const std::vector<double> alpha{1, 1, 1};
  CapacityConfig cfg;
  cfg.seed = 42;
  const auto a = capacity_estimate(f, alpha, nullptr, cfg);
  const auto b = capacity_estimate(f, alpha, nullptr, cfg);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.argmin, b.argmin);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Capacity, InputValidation) {
  const auto f = poly<double>(2, {{{1, 1}, 1}});
  EXPECT_THROW(capacity_estimate(f, std::vector<double>{1}), DimensionError);
  EXPECT_THROW(capacity_estimate(f, std::vector<double>{1, -1}), DomainError);
  const auto cone = ConeSpec::orthant(3);
  EXPECT_THROW(capacity_estimate(f, std::vector<double>{1, 1}, &cone), DimensionError);
}

TEST(CapacityAudit, Examples) {
  for (int n : {2, 3, 4}) {
    const auto audit = capacity_bounds_audit(oracle::jn_poly(static_cast<std::size_t>(n)), std::vector<int>(n, 1));
    EXPECT_TRUE(audit.holds);
    EXPECT_NEAR(audit.f_at_ones, 1.0, 1e-12);
    EXPECT_NEAR(audit.f_mu, to_double(oracle::vdw_bound(n)), 1e-12);
  }
  const auto xy = capacity_bounds_audit(poly<double>(2, {{{1, 1}, 1}}), std::vector<int>{1, 1});
  EXPECT_TRUE(xy.holds);
  EXPECT_NEAR(xy.capacity.value, 1.0, 1e-12);

  const auto sq = capacity_bounds_audit(poly<double>(2, {{{2, 0}, 1}, {{0, 2}, 1}}), std::vector<int>{2, 0});
  EXPECT_TRUE(sq.holds);
  EXPECT_DOUBLE_EQ(sq.f_at_ones, 2.0);
  EXPECT_GE(sq.capacity.value, 1.0 - 1e-9);
  EXPECT_LE(sq.capacity.value, grid_oracle());

  EXPECT_THROW(capacity_bounds_audit(poly<double>(2, {{{2, 0}, 1}, {{0, 2}, -1}}), std::vector<int>{2, 0}),
               DomainError);
  EXPECT_THROW(capacity_bounds_audit(poly<double>(2, {{{2, 0}, 1}}), std::vector<int>{1, 1}), DomainError);
}
