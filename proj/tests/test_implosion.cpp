#include <gtest/gtest.h>

#include <numbers>

#include "qmoment/implosion.hpp"
#include "qmoment/verify.hpp"

using namespace qmoment;

namespace {

// block-diag(1, h) with h in Sp(n-1).
GroupElement lower_block(std::size_t n, Rng& rng) {
  QuatMatrix m = QuatMatrix::identity(n);
  if (n > 1) m.set_block(1, 1, random_group(n - 1, rng).matrix());
  return GroupElement(m);
}

StratumPoint edge_point(std::size_t n, Rng& rng) {
  std::vector<double> x(n, 0.0);
  x[0] = rng.uniform(0.02, 0.48);
  return {AlcoveFace::sigma01(n), random_group(n, rng), TorusCoordinates(x)};
}

SampleConfig small(std::size_t n) {
  SampleConfig c;
  c.n = n;
  c.samples = 20;
  c.seed = 9;
  c.threads = 1;
  return c;
}

class StratumN : public ::testing::TestWithParam<std::size_t> {};

}  // namespace

TEST(Stratum, Dimensions) {
  for (std::size_t n : {1u, 2u, 3u}) {
    EXPECT_EQ(StratumSpace(AlcoveFace::sigma0(n)).dim(), 0u);
    EXPECT_EQ(StratumSpace(AlcoveFace::sigma01(n)).dim(), 4 * n);
    EXPECT_EQ(StratumSpace(AlcoveFace::sigma1(n)).dim(), 4 * (n - 1));
  }
  EXPECT_THROW(StratumSpace(AlcoveFace::interior(2)), std::invalid_argument);
}

TEST_P(StratumN, OmegaExamplesAndRepresentativeIndependence) {
  const std::size_t n = GetParam();
  const FaceData fd(AlcoveFace::sigma01(n));
  const auto commutator = basis_from_coordinates(n, fd.commutator);
  EXPECT_EQ(commutator.size(), (n - 1) * (2 * n - 1));
  Rng rng(10 + n);
  for (int s = 0; s < 30; ++s) {
    const StratumPoint p = edge_point(n, rng);
    StratumTangent a{fd.canonicalize(random_algebra(n, rng)), std::vector<double>(n, 0.0)};
    StratumTangent b{fd.canonicalize(random_algebra(n, rng)), std::vector<double>(n, 0.0)};
    a.eta[0] = rng.normal();
    b.eta[0] = rng.normal();
    EXPECT_NEAR(stratum_omega(fd, p, a, a), 0.0, 1e-14);
    const double base = stratum_omega(fd, p, a, b);
    EXPECT_NEAR(base, -stratum_omega(fd, p, b, a), 1e-14);
    // Direct formula -1/2 ((Ad_x - Ad_x^-1) xi1, xi2) - (xi1, eta2) + (xi2, eta1).
    const GroupElement ex = p.x.to_group();
    const double direct = -0.5 * ip(adjoint(ex, a.xi) - adjoint(ex.inverse(), a.xi), b.xi) -
                          ip(a.xi, TorusCoordinates(b.eta).to_algebra()) + ip(b.xi, TorusCoordinates(a.eta).to_algebra());
    EXPECT_NEAR(base, direct, 1e-12);

    AlgebraElement shift = AlgebraElement::zero(n);
    for (const auto& c : commutator) shift += rng.normal() * c;
    EXPECT_NEAR(stratum_omega_upstairs(p.x, a.xi + shift, a.eta, b.xi, b.eta), base, 1e-10);
    EXPECT_NEAR(stratum_omega_upstairs(p.x, a.xi, a.eta, b.xi + shift, b.eta), base, 1e-10);
    if (n > 1) {
      const StratumTangent off{a.xi + shift, a.eta};
      EXPECT_THROW(stratum_omega(fd, p, off, b), std::domain_error);
    }
  }
}

TEST(Stratum, OmegaRejectsEtaOffTheFace) {
  const FaceData fd(AlcoveFace::sigma01(2));
  Rng rng(1);
  const StratumPoint p = edge_point(2, rng);
  const StratumTangent good{fd.canonicalize(random_algebra(2, rng)), {0.3, 0.0}};
  const StratumTangent bad{good.xi, {0.0, 0.3}};
  EXPECT_NO_THROW(stratum_omega(fd, p, good, good));
  EXPECT_THROW(stratum_omega(fd, p, good, bad), std::domain_error);
}

TEST(Stratum, FirstTermVanishesAtIdentity) {
  Rng rng(2);
  const auto xi1 = random_algebra(2, rng), xi2 = random_algebra(2, rng);
  EXPECT_NEAR(stratum_omega_upstairs(TorusCoordinates::zero(2), xi1, {0, 0}, xi2, {0, 0}), 0.0, 1e-14);
}

TEST(Stratum, MomentExamples) {
  const StratumPoint base{AlcoveFace::sigma0(2), GroupElement::identity(2), TorusCoordinates::zero(2)};
  const auto [phi, x] = stratum_moment(base);
  EXPECT_LT(max_abs_diff(phi.matrix(), QuatMatrix::identity(2)), 1e-15);
  EXPECT_EQ(x.x, (std::vector<double>{0.0, 0.0}));

  const StratumPoint quarter{AlcoveFace::sigma01(1), GroupElement::identity(1), TorusCoordinates({0.25})};
  const auto [q, qx] = stratum_moment(quarter);
  EXPECT_LT(max_abs_diff(q.matrix(), QuatMatrix::scalar({0, -1, 0, 0})), 1e-15);
  EXPECT_EQ(qx.x, (std::vector<double>{0.25}));
}

TEST_P(StratumN, MomentEquivarianceAndTorusAction) {
  const std::size_t n = GetParam();
  Rng rng(20 + n);
  for (int s = 0; s < 30; ++s) {
    const StratumPoint p = edge_point(n, rng);
    const auto h = random_group(n, rng);
    const auto [a, ax] = stratum_moment(stratum_g_action(h, p));
    const auto [b, bx] = stratum_moment(p);
    EXPECT_LT(max_abs_diff(a.matrix(), conjugate(h, b).matrix()), 1e-10);

    std::vector<double> tv(n);
    for (auto& v : tv) v = rng.uniform(-0.5, 0.5);
    const TorusCoordinates t(tv);
    const StratumPoint moved = stratum_t_action(t, p);
    EXPECT_EQ(stratum_moment(moved).second.x, bx.x);
    EXPECT_LT(stratum_distance(stratum_t_action(TorusCoordinates::zero(n), p), p), 1e-15);
    // Well defined on cosets: representatives g and g k act to the same coset.
    const StratumPoint other{p.face, p.g * lower_block(n, rng), p.x};
    EXPECT_LT(stratum_distance(stratum_t_action(t, other), moved), 1e-12);
    EXPECT_LT(max_abs_diff(stratum_moment(other).first.matrix(), b.matrix()), 1e-12);
  }
}

TEST_P(StratumN, SphereCanonicalize) {
  const std::size_t n = GetParam();
  Rng rng(30 + n);
  const StratumPoint id{AlcoveFace::sigma01(n), GroupElement::identity(n), TorusCoordinates(std::vector<double>(n, 0.0))};
  EXPECT_LT(max_abs_diff(sphere_canonicalize(id), QuatMatrix::unit(n, 0)), 1e-15);
  for (int s = 0; s < 20; ++s) {
    const StratumPoint p = edge_point(n, rng);
    const StratumPoint q{p.face, p.g * lower_block(n, rng), p.x};
    EXPECT_LT(max_abs_diff(sphere_canonicalize(p), sphere_canonicalize(q)), 1e-12);
    EXPECT_NEAR(norm2(sphere_canonicalize(p)), 1.0, 1e-12);
  }
  const StratumPoint vertex{AlcoveFace::sigma1(n), GroupElement::identity(n), TorusCoordinates(alcove_vertex(n, 1))};
  EXPECT_THROW(sphere_canonicalize(vertex), std::invalid_argument);
}

TEST_P(StratumN, EdgeStratumPassesAxioms) {
  const std::size_t n = GetParam();
  const StratumSpace s(AlcoveFace::sigma01(n));
  const auto c = small(n);
  for (const auto& r : {check_axiom_one(s, c), check_axiom_two(s, c), check_axiom_three(s, c),
                        check_equivariance(s, c), check_omega_invariance(s, c), check_fundamental_fields(s, c)})
    EXPECT_TRUE(r.pass) << r.name << " max " << r.max_residual;
}

TEST(Stratum, VertexStratumHasVanishingFormAndFullKernel) {
  // On sigma1 every tangent lies in ker(Ad_Phi + 1): the form vanishes identically.
  const StratumSpace s(AlcoveFace::sigma1(2));
  Rng rng(40);
  const Point p = s.sample(rng);
  for (const auto& a : s.tangent_basis(p))
    for (const auto& b : s.tangent_basis(p)) EXPECT_NEAR(s.omega(p, a, b), 0.0, 1e-14);
  const auto data = axiom_two_at(s, p);
  EXPECT_EQ(data.comparison.dim_a, 4);
  EXPECT_EQ(data.comparison.dim_b, 4);
  EXPECT_LT(data.comparison.max_angle(), 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Ranks, StratumN, ::testing::Values(1, 2));
