#include <gtest/gtest.h>

#include <memory>

#include "qmoment/conjclass.hpp"
#include "qmoment/double.hpp"
#include "qmoment/fusion.hpp"
#include "qmoment/verify.hpp"

using namespace qmoment;

namespace {

GroupElement unit_group(const Quaternion& q) { return GroupElement(QuatMatrix::scalar(q)); }

SampleConfig small(std::size_t n, std::size_t samples = 20) {
  SampleConfig c;
  c.n = n;
  c.samples = samples;
  c.seed = 5;
  c.threads = 1;
  return c;
}

void expect_axioms(const QHSpace& space, std::size_t n) {
  const auto c = small(n);
  for (const auto& r : {check_axiom_one(space, c), check_axiom_two(space, c), check_axiom_three(space, c),
                        check_equivariance(space, c), check_omega_invariance(space, c),
                        check_fundamental_fields(space, c)})
    EXPECT_TRUE(r.pass) << space.name() << " " << r.name << " max " << r.max_residual;
}

// Left-trivialized derivative of s -> F(u e^{s a}, v e^{s b}) at s = 0.
AlgebraElement fd_left(const std::function<GroupElement(const DoublePoint&)>& f, const DoublePoint& p,
                       const DoubleTangent& t, double h) {
  const QuatMatrix plus = f({p.u * exp(h * t.a), p.v * exp(h * t.b)}).matrix();
  const QuatMatrix minus = f({p.u * exp(-h * t.a), p.v * exp(-h * t.b)}).matrix();
  return AlgebraElement::project(mat_dagger(f(p).matrix()) * (plus - minus) * (0.5 / h));
}

class DoubleN : public ::testing::TestWithParam<std::size_t> {};

}  // namespace

TEST(Double, ActionExamples) {
  Rng rng(1);
  const DoublePoint p{random_group(2, rng), random_group(2, rng)};
  const auto id = GroupElement::identity(2);
  const auto same = double_act(id, id, p);
  EXPECT_LT(max_abs_diff(same.u.matrix(), p.u.matrix()), 1e-15);
  EXPECT_LT(max_abs_diff(same.v.matrix(), p.v.matrix()), 1e-15);
  const auto g = random_group(2, rng);
  const auto q = double_act(g, id, {id, p.v});
  EXPECT_LT(max_abs_diff(q.u.matrix(), g.matrix()), 1e-15);
  EXPECT_LT(max_abs_diff(q.v.matrix(), p.v.matrix()), 1e-15);
  EXPECT_THROW(double_act(random_group(1, rng), id, p), std::invalid_argument);
}

TEST_P(DoubleN, ActionCompositionAndMomentEquivariance) {
  const std::size_t n = GetParam();
  Rng rng(10 + n);
  for (int s = 0; s < 30; ++s) {
    const DoublePoint p{random_group(n, rng), random_group(n, rng)};
    const auto g1 = random_group(n, rng), g2 = random_group(n, rng);
    const auto h1 = random_group(n, rng), h2 = random_group(n, rng);
    const auto once = double_act(g1 * h1, g2 * h2, p);
    const auto twice = double_act(g1, g2, double_act(h1, h2, p));
    EXPECT_LT(max_abs_diff(once.u.matrix(), twice.u.matrix()), 1e-10);
    EXPECT_LT(max_abs_diff(once.v.matrix(), twice.v.matrix()), 1e-10);

    const auto [a1, a2] = double_moment(double_act(g1, g2, p));
    const auto [b1, b2] = double_moment(p);
    EXPECT_LT(max_abs_diff(a1.matrix(), conjugate(g1, b1).matrix()), 1e-10);
    EXPECT_LT(max_abs_diff(a2.matrix(), conjugate(g2, b2).matrix()), 1e-10);
  }
}

TEST(Double, MomentExamples) {
  Rng rng(2);
  const auto id = GroupElement::identity(2);
  const auto v = random_group(2, rng);
  const auto [p1, p2] = double_moment({id, v});
  EXPECT_LT(max_abs_diff(p1.matrix(), v.inverse().matrix()), 1e-15);
  EXPECT_LT(max_abs_diff(p2.matrix(), v.matrix()), 1e-15);
  const auto [q1, q2] = double_moment({random_group(2, rng), id});
  EXPECT_LT(max_abs_diff(q1.matrix(), id.matrix()), 1e-14);
  EXPECT_LT(max_abs_diff(q2.matrix(), id.matrix()), 1e-15);
}

TEST_P(DoubleN, OmegaAntisymmetricBilinearAndIdentityValue) {
  const std::size_t n = GetParam();
  Rng rng(20 + n);
  for (int s = 0; s < 30; ++s) {
    const DoublePoint p{random_group(n, rng), random_group(n, rng)};
    const DoubleTangent t1{random_algebra(n, rng), random_algebra(n, rng)};
    const DoubleTangent t2{random_algebra(n, rng), random_algebra(n, rng)};
    const DoubleTangent t3{random_algebra(n, rng), random_algebra(n, rng)};
    EXPECT_NEAR(double_omega(p, t1, t1), 0.0, 1e-12);
    EXPECT_NEAR(double_omega(p, t1, t2), -double_omega(p, t2, t1), 1e-12);
    const DoubleTangent mix{2.0 * t1.a + t3.a, 2.0 * t1.b + t3.b};
    EXPECT_NEAR(double_omega(p, mix, t2), 2.0 * double_omega(p, t1, t2) + double_omega(p, t3, t2), 1e-12);

    const auto id = GroupElement::identity(n);
    EXPECT_NEAR(double_omega({id, id}, t1, t2), -ip(t1.a, t2.b) + ip(t2.a, t1.b), 1e-12);
  }
}

TEST_P(DoubleN, ExactMomentDifferentialMatchesFiniteDifferences) {
  const std::size_t n = GetParam();
  Rng rng(30 + n);
  for (int s = 0; s < 20; ++s) {
    const DoublePoint p{random_group(n, rng), random_group(n, rng)};
    const DoubleTangent t{random_algebra(n, rng), random_algebra(n, rng)};
    const auto [d1, d2] = double_moment_differential(p, t);
    const auto f1 = fd_left([](const DoublePoint& q) { return double_moment(q).first; }, p, t, 1e-5);
    const auto f2 = fd_left([](const DoublePoint& q) { return double_moment(q).second; }, p, t, 1e-5);
    EXPECT_LT(norm(d1 - f1), 1e-8);
    EXPECT_LT(norm(d2 - f2), 1e-8);
  }
  // At (I, v) in the b-direction the second component is exactly b.
  const auto v = random_group(n, rng);
  const DoubleTangent tb{AlgebraElement::zero(n), random_algebra(n, rng)};
  const auto f2 = fd_left([](const DoublePoint& q) { return double_moment(q).second; }, {GroupElement::identity(n), v},
                          tb, 1e-5);
  EXPECT_LT(norm(f2 - tb.b), 1e-9);
}

TEST_P(DoubleN, AxiomSuite) { expect_axioms(DoubleSpace(GetParam()), GetParam()); }

TEST(Double, KernelAtQuaternionUnit) {
  const DoubleSpace d(1);
  const auto data = axiom_two_at(d, DoubleSpace::pack({GroupElement::identity(1), unit_group(Quaternion::i())}));
  // Ad_i = diag(1, -1, -1) on Im H: span{j, k} in each factor.
  EXPECT_EQ(data.comparison.dim_a, 4);
  EXPECT_EQ(data.comparison.dim_b, 4);
  EXPECT_LT(data.comparison.max_angle(), 1e-6);
}

TEST(Double, KernelTrivialAtGenericAndCentralPoints) {
  const DoubleSpace d(1);
  Rng rng(3);
  const auto generic = axiom_two_at(d, d.sample(rng));
  EXPECT_EQ(generic.comparison.dim_a, 0);
  EXPECT_EQ(generic.comparison.dim_b, 0);
  const auto central = axiom_two_at(d, DoubleSpace::pack({random_group(1, rng), unit_group({-1, 0, 0, 0})}));
  EXPECT_EQ(central.comparison.dim_a, 0);
  EXPECT_EQ(central.comparison.dim_b, 0);
}

TEST(ConjugacyClass, CentralClassIsAPoint) {
  for (double sign : {1.0, -1.0}) {
    const ConjugacyClass c(GroupElement(QuatMatrix::identity(2) * sign));
    EXPECT_EQ(c.dim(), 0u);
    Rng rng(4);
    const Point p = c.sample(rng);
    EXPECT_NEAR(c.omega(p, c.random_frame(p, rng), c.random_frame(p, rng)), 0.0, 1e-14);
  }
}

TEST(ConjugacyClass, FormAntisymmetricAndGeneratorIndependent) {
  Rng rng(5);
  const auto g = conjugate(random_group(2, rng), generic_torus_point(2).to_group());
  const auto stab = linalg::null_space(
      operator_matrix(2, [&](const AlgebraElement& a) { return adjoint(g, a); }) - Eigen::MatrixXd::Identity(10, 10),
      1e-8);
  ASSERT_EQ(stab.cols(), 2);  // generic: a maximal torus
  for (int s = 0; s < 20; ++s) {
    const auto xi = random_algebra(2, rng), eta = random_algebra(2, rng);
    EXPECT_NEAR(conjclass_omega(g, xi, xi), 0.0, 1e-14);
    const auto shift = from_coordinates(2, stab * Eigen::Vector2d(rng.normal(), rng.normal()));
    EXPECT_NEAR(conjclass_omega(g, xi + shift, eta), conjclass_omega(g, xi, eta), 1e-12);
  }
}

TEST(ConjugacyClass, GenericClassDimensionAndAxioms) {
  for (std::size_t n : {1u, 2u}) {
    const auto c = conjclass_make(generic_torus_point(n).to_group());
    EXPECT_EQ(c->dim(), algebra_dimension(n) - n);
    expect_axioms(*c, n);
  }
}

TEST(Fusion, FusedMomentAndAntisymmetry) {
  const auto d = std::make_shared<DoubleSpace>(2);
  const FusedSpace f(d);
  Rng rng(6);
  const Point p = f.sample(rng);
  const auto dp = DoubleSpace::unpack(p);
  const auto m = f.moment(p);
  ASSERT_EQ(m.size(), 1u);
  const auto expected = conjugate(dp.u, dp.v.inverse()) * dp.v;
  EXPECT_LT(max_abs_diff(m[0].matrix(), expected.matrix()), 1e-14);
  const FrameVec t = f.random_frame(p, rng);
  EXPECT_NEAR(f.omega(p, t, t), 0.0, 1e-14);
  EXPECT_EQ(f.symmetry().size(), 1u);
}

TEST(Fusion, RequiresTwoEqualGroupFactors) {
  const auto c = conjclass_make(generic_torus_point(1).to_group());
  EXPECT_THROW(FusedSpace{c}, std::invalid_argument);
  const auto mixed = product_space(std::make_shared<DoubleSpace>(1), std::make_shared<DoubleSpace>(2));
  EXPECT_THROW(FusedSpace(mixed, 1, 2), std::invalid_argument);
}

TEST(Fusion, FusedDoublesPassAxioms) {
  expect_axioms(*fuse_double(std::make_shared<DoubleSpace>(1)), 1);
  expect_axioms(*fuse_double(std::make_shared<DoubleSpace>(2)), 2);
  const auto pair = product_space(std::make_shared<DoubleSpace>(1), std::make_shared<DoubleSpace>(1));
  EXPECT_EQ(pair->symmetry().size(), 4u);
  expect_axioms(FusedSpace(pair, 1, 2), 1);
}

TEST(Product, MomentIsConcatenated) {
  const auto a = std::make_shared<DoubleSpace>(1);
  const auto b = conjclass_make(generic_torus_point(1).to_group());
  const auto prod = product_space(a, b);
  Rng rng(7);
  const Point p = prod->sample(rng);
  EXPECT_EQ(prod->moment(p).size(), 3u);
  EXPECT_EQ(prod->dim(), a->dim() + b->dim());
  expect_axioms(*prod, 1);
}

INSTANTIATE_TEST_SUITE_P(Ranks, DoubleN, ::testing::Values(1, 2));
