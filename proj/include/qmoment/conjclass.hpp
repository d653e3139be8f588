#pragma once

// Conjugacy classes C = { h g0 h^{-1} } as homogeneous spaces. Tangent vectors
// are presented by generators xi in g; the vector at g is d/ds e^{s xi} g e^{-s xi}.

#include "linalg.hpp"
#include "qhspace.hpp"

namespace qmoment {

// omega_g(v_xi, v_eta) = 1/2 ((eta, Ad_g xi) - (xi, Ad_g eta)).
inline double conjclass_omega(const GroupElement& g, const AlgebraElement& xi, const AlgebraElement& eta) {
  require_same_rank(g.rank(), xi.rank(), "conjclass_omega");
  require_same_rank(g.rank(), eta.rank(), "conjclass_omega");
  return 0.5 * (ip(eta, adjoint(g, xi)) - ip(xi, adjoint(g, eta)));
}

// Orthonormal coordinate basis of the complement of the stabilizer algebra g_g.
inline Eigen::MatrixXd stabilizer_complement(const GroupElement& g) {
  const Eigen::MatrixXd m = operator_matrix(g.rank(), [&](const AlgebraElement& a) { return adjoint(g, a); });
  const Eigen::MatrixXd k = linalg::null_space(m - Eigen::MatrixXd::Identity(m.rows(), m.cols()), tol::kernel);
  return linalg::complement(k, m.rows());
}

class ConjugacyClass final : public QHSpace {
 public:
  explicit ConjugacyClass(GroupElement g0) : g0_(std::move(g0)), dim_(static_cast<std::size_t>(stabilizer_complement(g0_).cols())) {}

  const GroupElement& base_point() const { return g0_; }
  std::size_t rank() const { return g0_.rank(); }

  std::string name() const override { return "conjclass"; }
  std::size_t dim() const override { return dim_; }
  std::vector<FactorSpec> symmetry() const override { return {{FactorKind::group, rank()}}; }

  Point sample(Rng& rng) const override {
    const GroupElement h = random_group(rank(), rng);
    return {{(h * g0_ * h.inverse()).matrix()}, {}};
  }
  FrameVec random_frame(const Point&, Rng& rng) const override { return {{random_algebra(rank(), rng).matrix()}, {}}; }
  // Fundamental fields of a left action satisfy [X_a, X_b] = -X_[a,b].
  FrameVec frame_bracket(const FrameVec& a, const FrameVec& b) const override {
    return {{(-bracket(AlgebraElement(a.parts.at(0)), AlgebraElement(b.parts.at(0)))).matrix()}, {}};
  }
  Point flow(const Point& p, const FrameVec& v, double s) const override {
    const GroupElement e = exp(s * AlgebraElement(v.parts.at(0)));
    return {{(e * GroupElement(p.parts.at(0)) * e.inverse()).matrix()}, {}};
  }

  double omega(const Point& p, const FrameVec& v, const FrameVec& w) const override {
    return conjclass_omega(GroupElement(p.parts.at(0)), AlgebraElement(v.parts.at(0)), AlgebraElement(w.parts.at(0)));
  }
  MomentValue moment(const Point& p) const override { return {GroupElement(p.parts.at(0))}; }
  std::vector<AlgebraElement> moment_differential(const Point& p, const FrameVec& v, double) const override {
    const GroupElement g(p.parts.at(0));
    const AlgebraElement xi(v.parts.at(0));
    return {adjoint(g.inverse(), xi) - xi};
  }

  Point act(const SymmetryGroup& h, const Point& p) const override {
    return {{(h.at(0) * GroupElement(p.parts.at(0)) * h.at(0).inverse()).matrix()}, {}};
  }
  FrameVec fundamental(const Point&, const SymmetryAlgebra& xi) const override { return {{xi.at(0).matrix()}, {}}; }
  FrameVec transport(const SymmetryGroup& h, const Point&, const FrameVec& v) const override {
    return {{adjoint(h.at(0), AlgebraElement(v.parts.at(0))).matrix()}, {}};
  }

  std::vector<FrameVec> tangent_basis(const Point& p) const override {
    const Eigen::MatrixXd c = stabilizer_complement(GroupElement(p.parts.at(0)));
    std::vector<FrameVec> out;
    for (Eigen::Index k = 0; k < c.cols(); ++k) out.push_back({{from_coordinates(rank(), c.col(k)).matrix()}, {}});
    return out;
  }
  Eigen::VectorXd tangent_coordinates(const Point& p, const FrameVec& v) const override {
    const Eigen::MatrixXd c = stabilizer_complement(GroupElement(p.parts.at(0)));
    return c.transpose() * algebra_coordinates(AlgebraElement(v.parts.at(0)));
  }

  double point_distance(const Point& a, const Point& b) const override {
    return max_abs_diff(a.parts.at(0), b.parts.at(0));
  }

 private:
  GroupElement g0_;
  std::size_t dim_;
};

inline std::shared_ptr<ConjugacyClass> conjclass_make(const GroupElement& g0) {
  return std::make_shared<ConjugacyClass>(g0);
}

// A regular torus point in the open alcove, used as the default generic class.
inline TorusCoordinates generic_torus_point(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k)
    x[k] = 0.47 * static_cast<double>(n - k) / static_cast<double>(n + 1) + 0.013 * static_cast<double>(k + 1);
  return TorusCoordinates(x);
}

}  // namespace qmoment
