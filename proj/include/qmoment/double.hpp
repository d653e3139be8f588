#pragma once

// The double D(G) = G x G with the G x G action
//   (g1, g2).(u, v) = (g1 u g2^{-1}, g2 v g2^{-1}),
// moment map (Ad_u v^{-1}, v) and its invariant 2-form.

#include <utility>

#include "qhspace.hpp"

namespace qmoment {

struct DoublePoint {
  GroupElement u;
  GroupElement v;
};

// Left-trivialized at u and at v.
struct DoubleTangent {
  AlgebraElement a;
  AlgebraElement b;
};

inline DoublePoint double_act(const GroupElement& g1, const GroupElement& g2, const DoublePoint& p) {
  require_same_rank(g1.rank(), p.u.rank(), "double_act");
  require_same_rank(g2.rank(), p.v.rank(), "double_act");
  return {g1 * p.u * g2.inverse(), g2 * p.v * g2.inverse()};
}

inline std::pair<GroupElement, GroupElement> double_moment(const DoublePoint& p) {
  return {p.u * p.v.inverse() * p.u.inverse(), p.v};
}

// Pairing of g-valued 1-forms: (alpha, beta)(X, Y) = (alpha X, beta Y) - (alpha Y, beta X).
inline double pair_forms(const AlgebraElement& ax, const AlgebraElement& bx, const AlgebraElement& ay,
                         const AlgebraElement& by) {
  return ip(ax, by) - ip(ay, bx);
}

// omega = -1/2 (Ad_v u*theta_L, u*theta_L) - 1/2 (u*theta_L, v*(theta_L + theta_R)).
inline double double_omega(const DoublePoint& p, const DoubleTangent& t1, const DoubleTangent& t2) {
  require_same_rank(p.u.rank(), t1.a.rank(), "double_omega");
  require_same_rank(p.u.rank(), t2.a.rank(), "double_omega");
  const GroupElement& v = p.v;
  const double first = pair_forms(adjoint(v, t1.a), t1.a, adjoint(v, t2.a), t2.a);
  const double second = pair_forms(t1.a, t1.b + adjoint(v, t1.b), t2.a, t2.b + adjoint(v, t2.b));
  return -0.5 * first - 0.5 * second;
}

// Exact left-trivialized differential of the moment map.
inline std::pair<AlgebraElement, AlgebraElement> double_moment_differential(const DoublePoint& p,
                                                                            const DoubleTangent& t) {
  return {adjoint(p.u * p.v, t.a - t.b) - adjoint(p.u, t.a), t.b};
}

class DoubleSpace final : public QHSpace {
 public:
  explicit DoubleSpace(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("DoubleSpace: rank must be at least 1");
  }

  std::size_t rank() const { return n_; }

  static DoublePoint unpack(const Point& p) { return {GroupElement(p.parts.at(0)), GroupElement(p.parts.at(1))}; }
  static DoubleTangent unpack(const FrameVec& v) {
    return {AlgebraElement(v.parts.at(0)), AlgebraElement(v.parts.at(1))};
  }
  static Point pack(const DoublePoint& p) { return {{p.u.matrix(), p.v.matrix()}, {}}; }
  static FrameVec pack(const DoubleTangent& t) { return {{t.a.matrix(), t.b.matrix()}, {}}; }

  std::string name() const override { return "double"; }
  std::size_t dim() const override { return 2 * algebra_dimension(n_); }
  std::vector<FactorSpec> symmetry() const override {
    return {{FactorKind::group, n_}, {FactorKind::group, n_}};
  }

  Point sample(Rng& rng) const override { return pack(DoublePoint{random_group(n_, rng), random_group(n_, rng)}); }
  FrameVec random_frame(const Point&, Rng& rng) const override {
    return pack(DoubleTangent{random_algebra(n_, rng), random_algebra(n_, rng)});
  }
  FrameVec frame_bracket(const FrameVec& x, const FrameVec& y) const override {
    const auto a = unpack(x);
    const auto b = unpack(y);
    return pack(DoubleTangent{bracket(a.a, b.a), bracket(a.b, b.b)});
  }
  Point flow(const Point& p, const FrameVec& v, double s) const override {
    const auto q = unpack(p);
    const auto t = unpack(v);
    return pack(DoublePoint{q.u * exp(s * t.a), q.v * exp(s * t.b)});
  }

  double omega(const Point& p, const FrameVec& v, const FrameVec& w) const override {
    return double_omega(unpack(p), unpack(v), unpack(w));
  }
  MomentValue moment(const Point& p) const override {
    auto [a, b] = double_moment(unpack(p));
    return {a, b};
  }
  std::vector<AlgebraElement> moment_differential(const Point& p, const FrameVec& v, double) const override {
    auto [a, b] = double_moment_differential(unpack(p), unpack(v));
    return {a, b};
  }

  Point act(const SymmetryGroup& g, const Point& p) const override {
    return pack(double_act(g.at(0), g.at(1), unpack(p)));
  }
  FrameVec fundamental(const Point& p, const SymmetryAlgebra& xi) const override {
    const auto q = unpack(p);
    return pack(DoubleTangent{adjoint(q.u.inverse(), xi.at(0)) - xi.at(1), adjoint(q.v.inverse(), xi.at(1)) - xi.at(1)});
  }
  FrameVec transport(const SymmetryGroup& g, const Point&, const FrameVec& v) const override {
    const auto t = unpack(v);
    return pack(DoubleTangent{adjoint(g.at(1), t.a), adjoint(g.at(1), t.b)});
  }

  std::vector<FrameVec> tangent_basis(const Point&) const override {
    std::vector<FrameVec> out;
    const auto zero = AlgebraElement::zero(n_);
    for (const auto& e : algebra_basis(n_)) out.push_back(pack(DoubleTangent{e, zero}));
    for (const auto& e : algebra_basis(n_)) out.push_back(pack(DoubleTangent{zero, e}));
    return out;
  }
  Eigen::VectorXd tangent_coordinates(const Point&, const FrameVec& v) const override {
    const auto t = unpack(v);
    const auto d = static_cast<Eigen::Index>(algebra_dimension(n_));
    Eigen::VectorXd c(2 * d);
    c.head(d) = algebra_coordinates(t.a);
    c.tail(d) = algebra_coordinates(t.b);
    return c;
  }

  double point_distance(const Point& a, const Point& b) const override {
    return max_abs_diff(a.parts.at(0), b.parts.at(0)) + max_abs_diff(a.parts.at(1), b.parts.at(1));
  }

 private:
  std::size_t n_;
};

}  // namespace qmoment
