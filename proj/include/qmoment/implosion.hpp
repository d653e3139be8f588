#pragma once

// Strata X_sigma = G/[G_sigma, G_sigma] x exp(sigma) of the imploded double of
// Sp(n), for the faces sigma0 (x = 0), sigma01 (the edge x = (s, 0, ..., 0))
// and sigma1 (x = (1/2, 0, ..., 0)).
//
// Forms are evaluated upstairs on Sp(n) x sigma, where the quotient directions
// [g_sigma, g_sigma] lie in the kernel of the pulled-back form.

#include <limits>
#include <numbers>

#include "alcove.hpp"
#include "qhspace.hpp"

namespace qmoment {

struct StratumPoint {
  AlcoveFace face;
  GroupElement g;
  TorusCoordinates x;
};

// xi left-trivialized at g; eta an x-coordinate vector in the face directions.
struct StratumTangent {
  AlgebraElement xi;
  std::vector<double> eta;
};

inline bool supported_face(const AlcoveFace& f) {
  return f == AlcoveFace::sigma0(f.n) || f == AlcoveFace::sigma01(f.n) || f == AlcoveFace::sigma1(f.n);
}

inline void require_supported_face(const AlcoveFace& f) {
  if (!supported_face(f)) throw std::invalid_argument("stratum: unsupported face " + f.name());
}

// 2 pi i diag(eta).
inline AlgebraElement torus_direction(const std::vector<double>& eta) { return TorusCoordinates(eta).to_algebra(); }

// Precomputed face data: commutator algebra and its orthogonal complement in sp(n).
struct FaceData {
  AlcoveFace face;
  Eigen::MatrixXd commutator;   // orthonormal coordinate columns
  Eigen::MatrixXd complement;   // orthonormal coordinate columns
  std::vector<std::vector<double>> directions;

  explicit FaceData(const AlcoveFace& f) : face(f) {
    const auto cc = center_and_commutator(f);
    commutator = cc.commutator_coords;
    complement = linalg::complement(commutator, static_cast<Eigen::Index>(algebra_dimension(f.n)));
    directions = f.directions();
  }

  std::size_t stratum_dimension() const {
    return static_cast<std::size_t>(complement.cols()) + directions.size();
  }
  double commutator_component(const AlgebraElement& xi) const {
    return commutator.cols() ? (commutator.transpose() * algebra_coordinates(xi)).norm() : 0.0;
  }
  AlgebraElement canonicalize(const AlgebraElement& xi) const {
    return from_coordinates(face.n, complement * (complement.transpose() * algebra_coordinates(xi)));
  }
  double off_face_component(const std::vector<double>& eta) const {
    std::vector<double> r = eta;
    for (const auto& d : directions) {
      double c = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) c += d[i] * eta[i];
      for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * d[i];
    }
    double s = 0.0;
    for (double v : r) s += v * v;
    return std::sqrt(s);
  }
};

// Stratum form without representative checks, on any upstairs tangents.
inline double stratum_omega_upstairs(const TorusCoordinates& x, const AlgebraElement& xi1, const std::vector<double>& eta1,
                                     const AlgebraElement& xi2, const std::vector<double>& eta2) {
  const GroupElement ex = x.to_group();
  const AlgebraElement d = adjoint(ex, xi1) - adjoint(ex.inverse(), xi1);
  return -0.5 * ip(d, xi2) - ip(xi1, torus_direction(eta2)) + ip(xi2, torus_direction(eta1));
}

// -1/2 ((Ad_x - Ad_{x^{-1}}) xi1, xi2) - (xi1, eta2) + (xi2, eta1), with xi_i
// required to be orthogonal to [g_sigma, g_sigma] and eta_i in the face directions.
inline double stratum_omega(const FaceData& fd, const StratumPoint& p, const StratumTangent& t1, const StratumTangent& t2) {
  for (const auto* t : {&t1, &t2}) {
    if (fd.commutator_component(t->xi) > tol::membership * std::max(1.0, norm(t->xi)))
      throw std::domain_error("stratum_omega: tangent not orthogonal to the commutator algebra");
    if (fd.off_face_component(t->eta) > tol::membership)
      throw std::domain_error("stratum_omega: eta outside the face directions");
  }
  return stratum_omega_upstairs(p.x, t1.xi, t1.eta, t2.xi, t2.eta);
}

inline double stratum_omega(const StratumPoint& p, const StratumTangent& t1, const StratumTangent& t2) {
  return stratum_omega(FaceData(p.face), p, t1, t2);
}

// (Ad_g exp(x)^{-1}, x).
inline std::pair<GroupElement, TorusCoordinates> stratum_moment(const StratumPoint& p) {
  return {conjugate(p.g, p.x.to_group().inverse()), p.x};
}

// g |-> g to_group(t)^{-1}, x unchanged.
inline StratumPoint stratum_t_action(const TorusCoordinates& t, const StratumPoint& p) {
  return {p.face, p.g * t.to_group().inverse(), p.x};
}

inline StratumPoint stratum_g_action(const GroupElement& h, const StratumPoint& p) { return {p.face, h * p.g, p.x}; }

// First column g.v, a complete invariant of the coset g Sp(n-1) on sigma01.
inline QuatMatrix sphere_canonicalize(const StratumPoint& p) {
  if (!(p.face == AlcoveFace::sigma01(p.face.n))) throw std::invalid_argument("sphere_canonicalize: face is not sigma01");
  return p.g.matrix().col(0);
}

// Distance between unit vectors modulo right unit scalars (points of HP^{m-1}).
inline double projective_column_distance(const QuatMatrix& a, const QuatMatrix& b) {
  const double na = std::sqrt(norm2(a));
  const double nb = std::sqrt(norm2(b));
  if (na == 0.0 || nb == 0.0) throw std::domain_error("projective distance: zero vector");
  const Quaternion s = hdot(b, a);
  const double ns = s.norm();
  const Quaternion q = ns > 0.0 ? s / ns : Quaternion(1.0);
  return frobenius(a * (1.0 / na) - b * q * (1.0 / nb));
}

// Distance between stratum points through a complete invariant of the coset.
inline double stratum_distance(const StratumPoint& a, const StratumPoint& b) {
  if (!(a.face == b.face)) return std::numeric_limits<double>::infinity();
  double dx = 0.0;
  for (std::size_t k = 0; k < a.x.rank(); ++k) dx += std::abs(a.x.x[k] - b.x.x[k]);
  const std::size_t n = a.face.n;
  if (a.face == AlcoveFace::sigma0(n)) return dx;
  if (a.face == AlcoveFace::sigma01(n)) return dx + frobenius(a.g.matrix().col(0) - b.g.matrix().col(0));
  if (a.face == AlcoveFace::sigma1(n))
    return dx + projective_column_distance(a.g.matrix().col(0), b.g.matrix().col(0));
  require_supported_face(a.face);
  return dx;
}

class StratumSpace final : public QHSpace {
 public:
  explicit StratumSpace(const AlcoveFace& face) : fd_(face) { require_supported_face(face); }

  const AlcoveFace& face() const { return fd_.face; }
  const FaceData& face_data() const { return fd_; }
  std::size_t rank() const { return fd_.face.n; }

  static Point pack(const StratumPoint& p) { return {{p.g.matrix()}, p.x.x}; }
  StratumPoint unpack(const Point& p) const { return {fd_.face, GroupElement(p.parts.at(0)), TorusCoordinates(p.reals)}; }

  // Face-direction coefficients r_k  ->  x-coordinate vector sum r_k d_k.
  std::vector<double> eta_of(const std::vector<double>& r) const {
    std::vector<double> e(rank(), 0.0);
    for (std::size_t k = 0; k < r.size(); ++k)
      for (std::size_t i = 0; i < rank(); ++i) e[i] += r[k] * fd_.directions[k][i];
    return e;
  }
  StratumTangent tangent(const FrameVec& v) const { return {AlgebraElement(v.parts.at(0)), eta_of(v.reals)}; }

  std::string name() const override { return "stratum[" + fd_.face.name() + "]"; }
  std::size_t dim() const override { return fd_.stratum_dimension(); }
  std::vector<FactorSpec> symmetry() const override {
    return {{FactorKind::group, rank()}, {FactorKind::torus, rank()}};
  }

  // Random coset representative and a random face point with barycentric weights in [0.05, 1].
  Point sample(Rng& rng) const override {
    const GroupElement g = random_group(rank(), rng);
    const auto vs = fd_.face.vertices();
    std::vector<double> w(vs.size());
    double total = 0.0;
    for (auto& v : w) total += (v = rng.uniform(0.05, 1.0));
    std::vector<double> x(rank(), 0.0);
    for (std::size_t k = 0; k < vs.size(); ++k)
      for (std::size_t i = 0; i < rank(); ++i) x[i] += w[k] / total * vs[k][i];
    return pack({fd_.face, g, TorusCoordinates(x)});
  }
  // Jointly normalized (xi, eta) so the upstairs frame has unit length.
  FrameVec random_frame(const Point&, Rng& rng) const override {
    const AlgebraElement a = random_algebra(rank(), rng);
    std::vector<double> r(fd_.directions.size());
    for (auto& v : r) v = rng.normal() / (2.0 * std::numbers::pi);
    FrameVec f{{a.matrix()}, r};
    const double len = std::sqrt(norm(a) * norm(a) + norm(torus_direction(eta_of(r))) * norm(torus_direction(eta_of(r))));
    return (1.0 / len) * f;
  }
  FrameVec frame_bracket(const FrameVec& a, const FrameVec& b) const override {
    return {{bracket(AlgebraElement(a.parts.at(0)), AlgebraElement(b.parts.at(0))).matrix()},
            std::vector<double>(a.reals.size(), 0.0)};
  }
  Point flow(const Point& p, const FrameVec& v, double s) const override {
    const StratumPoint q = unpack(p);
    const auto e = eta_of(v.reals);
    std::vector<double> x = q.x.x;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += s * e[i];
    return {{(q.g * exp(s * AlgebraElement(v.parts.at(0)))).matrix()}, x};
  }

  double omega(const Point& p, const FrameVec& v, const FrameVec& w) const override {
    const auto a = tangent(v);
    const auto b = tangent(w);
    return stratum_omega_upstairs(TorusCoordinates(p.reals), a.xi, a.eta, b.xi, b.eta);
  }
  MomentValue moment(const Point& p) const override {
    const auto [phi, x] = stratum_moment(unpack(p));
    return {phi, x.to_group()};
  }

  Point act(const SymmetryGroup& g, const Point& p) const override {
    const StratumPoint q = unpack(p);
    return pack({fd_.face, g.at(0) * q.g * g.at(1).inverse(), q.x});
  }
  FrameVec fundamental(const Point& p, const SymmetryAlgebra& xi) const override {
    const GroupElement g(p.parts.at(0));
    return {{(adjoint(g.inverse(), xi.at(0)) - xi.at(1)).matrix()}, std::vector<double>(fd_.directions.size(), 0.0)};
  }
  FrameVec transport(const SymmetryGroup& g, const Point&, const FrameVec& v) const override {
    return {{adjoint(g.at(1), AlgebraElement(v.parts.at(0))).matrix()}, v.reals};
  }

  std::vector<FrameVec> tangent_basis(const Point&) const override {
    std::vector<FrameVec> out;
    const std::size_t nd = fd_.directions.size();
    for (Eigen::Index k = 0; k < fd_.complement.cols(); ++k)
      out.push_back({{from_coordinates(rank(), fd_.complement.col(k)).matrix()}, std::vector<double>(nd, 0.0)});
    for (std::size_t k = 0; k < nd; ++k) {
      std::vector<double> r(nd, 0.0);
      r[k] = 1.0 / (2.0 * std::numbers::pi);
      out.push_back({{QuatMatrix(rank(), rank())}, r});
    }
    return out;
  }
  Eigen::VectorXd tangent_coordinates(const Point&, const FrameVec& v) const override {
    const Eigen::VectorXd c = fd_.complement.transpose() * algebra_coordinates(AlgebraElement(v.parts.at(0)));
    const auto nd = static_cast<Eigen::Index>(v.reals.size());
    Eigen::VectorXd out(c.size() + nd);
    out.head(c.size()) = c;
    for (Eigen::Index k = 0; k < nd; ++k) out(c.size() + k) = 2.0 * std::numbers::pi * v.reals[static_cast<std::size_t>(k)];
    return out;
  }

  double point_distance(const Point& a, const Point& b) const override { return stratum_distance(unpack(a), unpack(b)); }

 private:
  FaceData fd_;
};

inline std::shared_ptr<StratumSpace> stratum_space(const AlcoveFace& face) {
  return std::make_shared<StratumSpace>(face);
}

}  // namespace qmoment
