#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "qmoment/liegroup.hpp"
#include "qmoment/random.hpp"

using namespace qmoment;

namespace {

AlgebraElement unit_algebra(const Quaternion& q) { return AlgebraElement(QuatMatrix::scalar(q)); }

// 1/2 (x1, [x2, x3]) computed on the complex embedding: Re tr_C = 2 Re tr_H.
double chi_via_embedding(const AlgebraElement& a, const AlgebraElement& b, const AlgebraElement& c) {
  const Eigen::MatrixXcd ea = complex_embed(a.matrix());
  const Eigen::MatrixXcd eb = complex_embed(b.matrix());
  const Eigen::MatrixXcd ec = complex_embed(c.matrix());
  const Eigen::MatrixXcd br = eb * ec - ec * eb;
  return 0.25 * (ea * br.adjoint()).trace().real();
}

class LieGroupN : public ::testing::TestWithParam<std::size_t> {};

}  // namespace

TEST(Bracket, QuaternionUnits) {
  const auto b = bracket(unit_algebra(Quaternion::i()), unit_algebra(Quaternion::j()));
  EXPECT_LT(max_abs_diff(b.matrix(), QuatMatrix::scalar({0, 0, 0, 2})), 1e-15);
}

TEST(Bracket, SelfBracketVanishesAndRankMismatchThrows) {
  Rng rng(1);
  const auto x = random_algebra(2, rng);
  EXPECT_LT(norm(bracket(x, x)), 1e-15);
  EXPECT_THROW(bracket(x, random_algebra(1, rng)), std::invalid_argument);
}

TEST_P(LieGroupN, JacobiIdentity) {
  const std::size_t n = GetParam();
  Rng rng(10 + n);
  for (int s = 0; s < 50; ++s) {
    const auto x = random_algebra(n, rng), y = random_algebra(n, rng), z = random_algebra(n, rng);
    const auto j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    EXPECT_LT(norm(j), 1e-12);
    EXPECT_LT(skew_residual(bracket(x, y).matrix()), 1e-12);
  }
}

TEST(Adjoint, IdentityAndQuaternionUnit) {
  Rng rng(2);
  const auto x = random_algebra(2, rng);
  EXPECT_LT(max_abs_diff(adjoint(GroupElement::identity(2), x).matrix(), x.matrix()), 1e-15);
  const GroupElement gi(QuatMatrix::scalar(Quaternion::i()));
  const auto r = adjoint(gi, unit_algebra(Quaternion::j()));
  EXPECT_LT(max_abs_diff(r.matrix(), QuatMatrix::scalar(-Quaternion::j())), 1e-15);
}

TEST_P(LieGroupN, AdjointPreservesInnerProductAndIsAnAction) {
  const std::size_t n = GetParam();
  Rng rng(20 + n);
  for (int s = 0; s < 50; ++s) {
    const auto g = random_group(n, rng), h = random_group(n, rng);
    const auto x = random_algebra(n, rng), y = random_algebra(n, rng);
    EXPECT_NEAR(ip(adjoint(g, x), adjoint(g, y)), ip(x, y), 1e-10);
    EXPECT_LT(max_abs_diff(adjoint(g * h, x).matrix(), adjoint(g, adjoint(h, x)).matrix()), 1e-10);
  }
}

TEST_P(LieGroupN, ExponentialLandsInGroup) {
  const std::size_t n = GetParam();
  Rng rng(30 + n);
  for (int s = 0; s < 100; ++s) {
    const auto x = random_algebra(n, rng, 2.0);
    const auto g = exp(x);
    EXPECT_LT(membership_residual(g.matrix()), 1e-10);
    EXPECT_LT(max_abs_diff((g * exp(-x)).matrix(), QuatMatrix::identity(n)), 1e-10);
  }
  EXPECT_LT(max_abs_diff(exp(AlgebraElement::zero(n)).matrix(), QuatMatrix::identity(n)), 1e-15);
}

TEST_P(LieGroupN, RandomGroupAndAlgebraAreMembers) {
  const std::size_t n = GetParam();
  Rng rng(40 + n);
  for (int s = 0; s < 50; ++s) {
    EXPECT_LT(membership_residual(random_group(n, rng).matrix()), 1e-12);
    EXPECT_LT(skew_residual(random_algebra(n, rng).matrix()), 1e-12);
  }
}

TEST(Members, CheckedConstructorsReject) {
  QuatMatrix m = QuatMatrix::identity(2);
  EXPECT_THROW(AlgebraElement{m}, std::domain_error);
  m(0, 0) = {2, 0, 0, 0};
  EXPECT_THROW(GroupElement{m}, std::domain_error);
  EXPECT_THROW(GroupElement{QuatMatrix(2, 1)}, std::invalid_argument);
}

TEST_P(LieGroupN, AlgebraBasisIsOrthonormalAndCoordinatesRoundtrip) {
  const std::size_t n = GetParam();
  const auto& b = algebra_basis(n);
  ASSERT_EQ(b.size(), algebra_dimension(n));
  EXPECT_EQ(algebra_dimension(n), n * (2 * n + 1));
  for (std::size_t p = 0; p < b.size(); ++p)
    for (std::size_t q = 0; q < b.size(); ++q) EXPECT_NEAR(ip(b[p], b[q]), p == q ? 1.0 : 0.0, 1e-14);
  Rng rng(50 + n);
  const auto x = random_algebra(n, rng);
  EXPECT_LT(max_abs_diff(from_coordinates(n, algebra_coordinates(x)).matrix(), x.matrix()), 1e-13);
}

TEST(CartanThreeForm, QuaternionUnitsGiveOne) {
  EXPECT_NEAR(cartan_three_form(unit_algebra(Quaternion::i()), unit_algebra(Quaternion::j()),
                                unit_algebra(Quaternion::k())),
              1.0, 1e-15);
}

TEST_P(LieGroupN, CartanThreeFormAntisymmetricInvariantMatchesEmbedding) {
  const std::size_t n = GetParam();
  Rng rng(60 + n);
  for (int s = 0; s < 50; ++s) {
    const auto a = random_algebra(n, rng), b = random_algebra(n, rng), c = random_algebra(n, rng);
    const double v = cartan_three_form(a, b, c);
    EXPECT_NEAR(v, chi_via_embedding(a, b, c), 1e-12);
    EXPECT_NEAR(cartan_three_form(a, a, b), 0.0, 1e-12);
    EXPECT_NEAR(cartan_three_form(b, a, c), -v, 1e-12);
    EXPECT_NEAR(cartan_three_form(a, c, b), -v, 1e-12);
    EXPECT_NEAR(cartan_three_form(c, a, b), v, 1e-12);
    const auto g = random_group(n, rng);
    EXPECT_NEAR(cartan_three_form(adjoint(g, a), adjoint(g, b), adjoint(g, c)), v, 1e-10);
  }
}

TEST_P(LieGroupN, TorusCoordinatesMatchExponential) {
  const std::size_t n = GetParam();
  Rng rng(70 + n);
  for (int s = 0; s < 20; ++s) {
    std::vector<double> x(n);
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    const TorusCoordinates t(x);
    EXPECT_LT(max_abs_diff(t.to_group().matrix(), exp(t.to_algebra()).matrix()), 1e-12);
    const auto back = TorusCoordinates::from_algebra(t.to_algebra());
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(back.x[k], x[k], 1e-15);
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> e = std::exp(std::complex<double>(0, 2 * std::numbers::pi * x[k]));
      EXPECT_NEAR(t.to_group()(k, k).w, e.real(), 1e-15);
      EXPECT_NEAR(t.to_group()(k, k).x, e.imag(), 1e-15);
    }
  }
  const auto tb = torus_basis(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) EXPECT_NEAR(norm(bracket(tb[a], tb[b])), 0.0, 1e-15);
}

TEST(FundamentalVector, CentralAndCommutingGeneratorsVanish) {
  const AlgebraElement xi = unit_algebra(Quaternion::i());
  for (double sign : {1.0, -1.0}) {
    const GroupElement g(QuatMatrix::scalar({sign, 0, 0, 0}));
    EXPECT_LT(norm(fundamental_vector(xi, g).xi), 1e-15);
  }
  Rng rng(3);
  const auto eta = random_algebra(2, rng);
  EXPECT_LT(norm(fundamental_vector(eta, exp(0.3 * eta)).xi), 1e-12);
}

TEST_P(LieGroupN, ConjugationClosedFormMatchesFiniteDifferences) {
  const std::size_t n = GetParam();
  Rng rng(80 + n);
  const GroupAction conj = [](const GroupElement& h, const GroupElement& g) { return conjugate(h, g); };
  for (int s = 0; s < 20; ++s) {
    const auto xi = random_algebra(n, rng);
    const auto g = random_group(n, rng);
    const auto exact = fundamental_vector(xi, g).xi;
    const auto fd = fundamental_vector(xi, conj, g, 1e-4).xi;
    EXPECT_LT(max_abs_diff(exact.matrix(), fd.matrix()), 1e-6);
    // d/dt exp(t xi) g exp(-t xi) = g (Ad_{g^-1} xi - xi), left-trivialized.
    EXPECT_LT(max_abs_diff(exact.matrix(), (adjoint(g.inverse(), xi) - xi).matrix()), 1e-15);
  }
}

INSTANTIATE_TEST_SUITE_P(Ranks, LieGroupN, ::testing::Values(1, 2, 3));
