#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lorentz/mixeddisc.hpp"
#include "lorentz/permanent.hpp"
#include "oracles.hpp"

using namespace lorentz;

namespace {

using MA = MixedArgument<Rational>;

Matrix<Rational> diag(std::initializer_list<long> d) {
  std::vector<Rational> v;
  for (long x : d) v.emplace_back(x);
  return Matrix<Rational>::diagonal(std::span<const Rational>(v));
}

// x1...xn coefficient of det(Σ x_i A_i) by polarization: Σ_{S ⊆ [n]} (−1)^{n−|S|} det(Σ_{i∈S} A_i).
Rational polarization(const std::vector<Matrix<Rational>>& as) {
  const std::size_t n = as.size();
  Rational sum(0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Matrix<Rational> s(n, n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        s = s + as[i];
        ++k;
      }
    const Rational d = oracle::leibniz_det(s);
    sum += (n - k) % 2 ? -d : d;
  }
  return sum;
}

}  // namespace

TEST(MixedDiscriminant, RepeatedMatrixIsDeterminant) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto a = oracle::random_int_matrix(rng, 3, 3, -4, 4);
    EXPECT_EQ(mixed_discriminant<Rational>({MA{a, 3}}), oracle::leibniz_det(a));
  }
}

TEST(MixedDiscriminant, IdentityPaddingGivesTrace) {
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto a = oracle::random_int_matrix(rng, 3, 3, -4, 4);
    EXPECT_EQ(mixed_discriminant<Rational>({MA{Matrix<Rational>::identity(3), 2}, MA{a, 1}}), trace(a));
  }
  // Only k = 1 of n: the trace itself.
  const auto a = oracle::random_int_matrix(rng, 4, 4, -4, 4);
  EXPECT_EQ(mixed_discriminant<Rational>({MA{a, 1}}), trace(a));
}

TEST(MixedDiscriminant, SmallExample) {
  EXPECT_EQ(mixed_discriminant(std::vector<Matrix<Rational>>{Matrix<Rational>::identity(2), diag({2, 3})}),
            Rational(5));
  EXPECT_EQ(md_via_coefficients<Rational>({MA{Matrix<Rational>::identity(2), 1}, MA{diag({2, 3}), 1}}),
            Rational(5));
}

TEST(MixedDiscriminant, MatchesPolarizationOracle) {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    std::vector<Matrix<Rational>> as;
    for (int i = 0; i < 3; ++i) as.push_back(oracle::random_int_matrix(rng, 3, 3, -3, 3));
    EXPECT_EQ(mixed_discriminant(as), polarization(as));
  }
}

TEST(MixedDiscriminant, SymmetricAndMultilinear) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    std::vector<Matrix<Rational>> as;
    for (int i = 0; i < 3; ++i) as.push_back(oracle::random_int_matrix(rng, 3, 3, -3, 3));
    const auto base = mixed_discriminant(as);
    auto perm = as;
    std::swap(perm[0], perm[2]);
    EXPECT_EQ(mixed_discriminant(perm), base);
    const auto b = oracle::random_int_matrix(rng, 3, 3, -3, 3);
    const Rational lambda(-2, 3);
    auto mixed = as;
    mixed[1] = as[1] + lambda * b;
    auto only_b = as;
    only_b[1] = b;
    EXPECT_EQ(mixed_discriminant(mixed), base + lambda * mixed_discriminant(only_b));
  }
}

TEST(MdViaCoefficients, AgreesWithDefinitionOnRandomTriples) {
  Rng rng(5);
  std::uniform_int_distribution<int> mult(0, 2);
  for (int t = 0; t < 200; ++t) {
    std::vector<MA> args;
    for (int i = 0; i < 3; ++i) args.push_back({oracle::random_int_matrix(rng, 3, 3, -3, 3), 1});
    if (t % 2) {
      // multiplicities summing to <= 3
      int left = 3;
      for (auto& a : args) {
        a.multiplicity = std::min(left, mult(rng));
        left -= a.multiplicity;
      }
    }
    EXPECT_EQ(md_via_coefficients(args), mixed_discriminant(args)) << "trial " << t;
  }
}

TEST(MdViaCoefficients, TraceAndPermanentCoefficients) {
  Rng rng(6);
  const auto a = oracle::random_int_matrix(rng, 2, 2, -5, 5);
  const auto p = determinantal_polynomial(std::vector<Matrix<Rational>>{Matrix<Rational>::identity(2), a}, false);
  EXPECT_EQ(p.coefficient(Exponents{1, 1}), trace(a));

  // Diagonal A_i = diag(row i of A): the x1...xn coefficient is per(A).
  const auto m = oracle::random_int_matrix(rng, 4, 4, -3, 3);
  std::vector<Matrix<Rational>> ds;
  for (std::size_t i = 0; i < 4; ++i) ds.push_back(Matrix<Rational>::diagonal(m.row(i)));
  EXPECT_EQ(determinantal_polynomial(ds, false).coefficient(Exponents(4, 1)), oracle::laplace_per(m));
}

TEST(MixedDiscriminant, Errors) {
  EXPECT_THROW(mixed_discriminant(std::vector<Matrix<Rational>>{}), DimensionError);
  EXPECT_THROW(mixed_discriminant(std::vector<Matrix<Rational>>{Matrix<Rational>(2, 2), Matrix<Rational>(3, 3)}),
               DimensionError);
  EXPECT_THROW(mixed_discriminant<Rational>({MA{Matrix<Rational>::identity(2), 3}}), DomainError);
  EXPECT_THROW(mixed_discriminant<Rational>({MA{Matrix<Rational>::identity(9), 9}}), DomainError);
}

TEST(DetOfSum, Examples) {
  const auto r = det_of_sum_expansion(std::vector<Matrix<Rational>>{Matrix<Rational>::identity(2), diag({2, 3})});
  EXPECT_EQ(r.direct, Rational(12));
  EXPECT_EQ(r.expanded, Rational(12));
  EXPECT_TRUE(r.agree);
  ASSERT_EQ(r.terms.size(), 3u);
  std::vector<Rational> values;
  for (const auto& t : r.terms) values.push_back(t.value);
  std::sort(values.begin(), values.end());
  EXPECT_EQ(values, (std::vector<Rational>{1, 5, 6}));

  Rng rng(7);
  const auto a = oracle::random_int_matrix(rng, 3, 3, -4, 4);
  const auto single = det_of_sum_expansion(std::vector<Matrix<Rational>>{a});
  EXPECT_EQ(single.direct, oracle::leibniz_det(a));
  EXPECT_EQ(single.terms.size(), 1u);
  const auto with_zero = det_of_sum_expansion(std::vector<Matrix<Rational>>{a, Matrix<Rational>(3, 3)});
  EXPECT_EQ(with_zero.expanded, oracle::leibniz_det(a));
}

TEST(DetOfSum, RandomAgreement) {
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + t % 4;
    std::vector<Matrix<Rational>> as;
    for (int i = 0; i < 2 + t % 2; ++i) as.push_back(oracle::random_int_matrix(rng, n, n, -3, 3));
    const auto r = det_of_sum_expansion(as);
    EXPECT_TRUE(r.agree);
    Matrix<Rational> s(n, n);
    for (const auto& a : as) s = s + a;
    EXPECT_EQ(r.direct, oracle::leibniz_det(s));
  }
}

TEST(RankOneUpdate, Examples) {
  const std::vector<Rational> ones{1, 1};
  const auto r = rank_one_update_det(Matrix<Rational>::identity(2), ones, ones);
  EXPECT_EQ(r.lhs, Rational(3));
  EXPECT_TRUE(r.agree);

  Rng rng(9);
  const auto a = oracle::random_int_matrix(rng, 3, 3, -4, 4) + Rational(13) * Matrix<Rational>::identity(3);
  const auto z = rank_one_update_det(a, std::vector<Rational>(3, Rational(0)), std::vector<Rational>{1, 2, 3});
  EXPECT_EQ(z.lhs, oracle::leibniz_det(a));
  EXPECT_THROW(rank_one_update_det(Matrix<Rational>(2, 2), ones, ones), DomainError);
}

TEST(RankOneUpdate, RandomExactIdentity) {
  Rng rng(10);
  int done = 0;
  while (done < 30) {
    const std::size_t n = 1 + done % 5;
    const auto a = oracle::random_int_matrix(rng, n, n, -4, 4);
    if (oracle::leibniz_det(a) == 0) continue;
    const auto u = oracle::random_int_vector(rng, n, -3, 3), v = oracle::random_int_vector(rng, n, -3, 3);
    const auto r = rank_one_update_det(a, u, v);
    EXPECT_TRUE(r.agree);
    EXPECT_EQ(r.lhs, oracle::leibniz_det(a + outer<Rational>(u, v)));
    ++done;
  }
}

TEST(ScalingIdentity, Examples) {
  Rng rng(11);
  std::vector<Matrix<Rational>> as{oracle::random_int_matrix(rng, 2, 2, -3, 3), oracle::random_int_matrix(rng, 2, 2, -3, 3)};
  const auto id = Matrix<Rational>::identity(2);
  EXPECT_TRUE(scaling_identity_check(id, id, as, std::vector<Rational>{1, 1}).holds);
  const auto r = scaling_identity_check(diag({2, 1}), id, as, std::vector<Rational>{Rational(1, 3), 5});
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.rhs, Rational(2) * Rational(5, 3) * mixed_discriminant(as));
  const auto z = scaling_identity_check(diag({2, 1}), id, as, std::vector<Rational>{0, 5});
  EXPECT_EQ(z.lhs, Rational(0));
  EXPECT_EQ(z.rhs, Rational(0));
  EXPECT_THROW(scaling_identity_check(id, id, as, std::vector<Rational>{1}), DimensionError);
}

TEST(ScalingIdentity, RandomInstances) {
  Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + t % 3;
    std::vector<Matrix<Rational>> as;
    for (std::size_t i = 0; i < n; ++i) as.push_back(oracle::random_int_matrix(rng, n, n, -3, 3));
    const auto x = oracle::random_int_matrix(rng, n, n, -2, 2), y = oracle::random_int_matrix(rng, n, n, -2, 2);
    EXPECT_TRUE(scaling_identity_check(x, y, as, oracle::random_int_vector(rng, n, -3, 3)).holds);
  }
}

TEST(MixedDiscriminant, FloatModeAgreesWithExact) {
  Rng rng(13);
  std::vector<Matrix<Rational>> as;
  for (int i = 0; i < 3; ++i) as.push_back(oracle::random_int_matrix(rng, 3, 3, -3, 3));
  std::vector<Matrix<double>> fs;
  for (const auto& a : as) fs.push_back(a.cast<double>());
  EXPECT_NEAR(mixed_discriminant(fs), to_double(mixed_discriminant(as)), 1e-9);
}
