#pragma once

// The compact symplectic group Sp(n) = { A in M_n(H) : A^dag A = I }, its Lie
// algebra sp(n) of quaternionic skew-Hermitian matrices, the maximal torus and
// the Maurer-Cartan / Cartan 3-form machinery.
//
// Tangent vectors at group points are always left-trivialized: the pair
// (g, xi) stands for the vector d/ds g exp(s xi) at s = 0.

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "quat.hpp"
#include "random.hpp"
#include "tolerances.hpp"

namespace qmoment {

inline double membership_residual(const QuatMatrix& a) {
  return frobenius(mat_dagger(a) * a - QuatMatrix::identity(a.rows()));
}

inline double skew_residual(const QuatMatrix& x) { return frobenius(mat_dagger(x) + x); }

// Skew-Hermitian part (X - X^dag)/2.
inline QuatMatrix skew_part(const QuatMatrix& x) { return 0.5 * (x - mat_dagger(x)); }

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(QuatMatrix x) : x_(std::move(x)) {
    if (!x_.square()) throw std::invalid_argument("AlgebraElement: matrix is not square");
    if (skew_residual(x_) > tol::algebraic * std::max(1.0, frobenius(x_)))
      throw std::domain_error("AlgebraElement: matrix is not skew-Hermitian");
  }
  // Orthogonal projection of an arbitrary square matrix onto sp(n).
  static AlgebraElement project(const QuatMatrix& m) { return AlgebraElement(skew_part(m), Unchecked{}); }
  static AlgebraElement zero(std::size_t n) { return AlgebraElement(QuatMatrix(n, n), Unchecked{}); }

  std::size_t rank() const { return x_.rows(); }
  const QuatMatrix& matrix() const { return x_; }
  const Quaternion& operator()(std::size_t p, std::size_t q) const { return x_(p, q); }

  AlgebraElement& operator+=(const AlgebraElement& o) { x_ += o.x_; return *this; }
  AlgebraElement& operator-=(const AlgebraElement& o) { x_ -= o.x_; return *this; }
  AlgebraElement& operator*=(double s) { x_ *= s; return *this; }
  AlgebraElement operator-() const { return AlgebraElement(-x_, Unchecked{}); }

 private:
  struct Unchecked {};
  AlgebraElement(QuatMatrix x, Unchecked) : x_(std::move(x)) {}
  QuatMatrix x_;
};

inline AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
inline AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
inline AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }
inline AlgebraElement operator*(AlgebraElement a, double s) { return a *= s; }

inline double ip(const AlgebraElement& a, const AlgebraElement& b) { return mat_ip(a.matrix(), b.matrix()); }
inline double norm(const AlgebraElement& a) { return frobenius(a.matrix()); }

class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(QuatMatrix a) : a_(std::move(a)) {
    if (!a_.square()) throw std::invalid_argument("GroupElement: matrix is not square");
    if (membership_residual(a_) > tol::membership)
      throw std::domain_error("GroupElement: matrix is not in Sp(n)");
  }
  static GroupElement identity(std::size_t n) { return GroupElement(QuatMatrix::identity(n), Unchecked{}); }

  std::size_t rank() const { return a_.rows(); }
  const QuatMatrix& matrix() const { return a_; }
  const Quaternion& operator()(std::size_t p, std::size_t q) const { return a_(p, q); }

  GroupElement inverse() const { return GroupElement(mat_dagger(a_), Unchecked{}); }

  friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    if (g.rank() != h.rank()) throw std::invalid_argument("GroupElement product: rank mismatch");
    return GroupElement(g.a_ * h.a_, Unchecked{});
  }

 private:
  struct Unchecked {};
  GroupElement(QuatMatrix a, Unchecked) : a_(std::move(a)) {}
  QuatMatrix a_;
};

inline GroupElement exp(const AlgebraElement& x) { return GroupElement(mat_exp(x.matrix())); }

inline void require_same_rank(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": rank mismatch");
}

// [X, Y] = XY - YX.
inline AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_rank(x.rank(), y.rank(), "bracket");
  return AlgebraElement::project(x.matrix() * y.matrix() - y.matrix() * x.matrix());
}

// Ad_g X = g X g^{-1}.
inline AlgebraElement adjoint(const GroupElement& g, const AlgebraElement& x) {
  require_same_rank(g.rank(), x.rank(), "adjoint");
  return AlgebraElement::project(g.matrix() * x.matrix() * mat_dagger(g.matrix()));
}

// g h g^{-1}.
inline GroupElement conjugate(const GroupElement& g, const GroupElement& h) { return g * h * g.inverse(); }

// Cartan 3-form chi = (1/12)(theta, [theta, theta]) on left-trivialized triples;
// with the alternating wedge convention this is (x1, [x2, x3]) / 2.
inline double cartan_three_form(const AlgebraElement& x1, const AlgebraElement& x2, const AlgebraElement& x3) {
  require_same_rank(x1.rank(), x2.rank(), "cartan_three_form");
  require_same_rank(x1.rank(), x3.rank(), "cartan_three_form");
  return 0.5 * ip(x1, bracket(x2, x3));
}

inline std::size_t algebra_dimension(std::size_t n) { return n * (2 * n + 1); }

// Orthonormal real basis of sp(n): {i,j,k} E_pp first, then for p < q the
// normalized skew pairs u E_pq - conj(u) E_qp with u in {1,i,j,k}.
inline const std::vector<AlgebraElement>& algebra_basis(std::size_t n) {
  static thread_local std::vector<std::vector<AlgebraElement>> cache;
  if (cache.size() <= n) cache.resize(n + 1);
  auto& b = cache[n];
  if (!b.empty() || n == 0) return b;
  const Quaternion units[4] = {Quaternion(1), Quaternion::i(), Quaternion::j(), Quaternion::k()};
  for (std::size_t p = 0; p < n; ++p)
    for (int u = 1; u < 4; ++u) {
      QuatMatrix e(n, n);
      e(p, p) = units[u];
      b.emplace_back(e);
    }
  const double s = 1.0 / std::numbers::sqrt2;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q)
      for (int u = 0; u < 4; ++u) {
        QuatMatrix e(n, n);
        e(p, q) = units[u] * s;
        e(q, p) = -units[u].conj() * s;
        b.emplace_back(e);
      }
  return b;
}

inline Eigen::VectorXd algebra_coordinates(const AlgebraElement& x) {
  const auto& basis = algebra_basis(x.rank());
  Eigen::VectorXd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) v(static_cast<Eigen::Index>(k)) = ip(x, basis[k]);
  return v;
}

inline AlgebraElement from_coordinates(std::size_t n, const Eigen::VectorXd& v) {
  const auto& basis = algebra_basis(n);
  AlgebraElement x = AlgebraElement::zero(n);
  for (std::size_t k = 0; k < basis.size(); ++k) x += v(static_cast<Eigen::Index>(k)) * basis[k];
  return x;
}

// Real matrix of a linear map sp(n) -> sp(n) in the orthonormal basis.
inline Eigen::MatrixXd operator_matrix(std::size_t n, const std::function<AlgebraElement(const AlgebraElement&)>& op) {
  const auto& basis = algebra_basis(n);
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index c = 0; c < d; ++c) m.col(c) = algebra_coordinates(op(basis[static_cast<std::size_t>(c)]));
  return m;
}

inline AlgebraElement random_algebra(std::size_t n, Rng& rng, double scale = 1.0) {
  AlgebraElement x = AlgebraElement::project(rng.gaussian_matrix(n, n));
  const double nx = norm(x);
  return nx > 0 ? (scale / nx) * x : x;
}

// Random group element: Gram-Schmidt orthonormalization of a Gaussian matrix.
inline GroupElement random_group(std::size_t n, Rng& rng) {
  QuatMatrix g = rng.gaussian_matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    QuatMatrix v = g.col(c);
    for (std::size_t k = 0; k < c; ++k) {
      const QuatMatrix u = g.col(k);
      v -= u * hdot(u, v);
    }
    v *= 1.0 / std::sqrt(norm2(v));
    g.set_col(c, v);
  }
  return GroupElement(g);
}

// Maximal torus coordinates: x in R^n  <->  diag(e^{2 pi i x_1}, ..., e^{2 pi i x_n}).
struct TorusCoordinates {
  std::vector<double> x;

  TorusCoordinates() = default;
  explicit TorusCoordinates(std::vector<double> v) : x(std::move(v)) {}
  static TorusCoordinates zero(std::size_t n) { return TorusCoordinates(std::vector<double>(n, 0.0)); }

  std::size_t rank() const { return x.size(); }

  GroupElement to_group() const {
    QuatMatrix d(x.size(), x.size());
    for (std::size_t k = 0; k < x.size(); ++k) d(k, k) = Quaternion::cis(2.0 * std::numbers::pi * x[k]);
    return GroupElement(d);
  }
  // 2 pi i diag(x) in t inside sp(n).
  AlgebraElement to_algebra() const {
    QuatMatrix d(x.size(), x.size());
    for (std::size_t k = 0; k < x.size(); ++k) d(k, k) = Quaternion(0, 2.0 * std::numbers::pi * x[k]);
    return AlgebraElement(d);
  }
  static TorusCoordinates from_algebra(const AlgebraElement& t) {
    std::vector<double> v(t.rank());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = t(k, k).x / (2.0 * std::numbers::pi);
    return TorusCoordinates(std::move(v));
  }
};

// Orthonormal basis of the Cartan subalgebra t = span{ i E_kk }.
inline std::vector<AlgebraElement> torus_basis(std::size_t n) {
  std::vector<AlgebraElement> b;
  for (std::size_t k = 0; k < n; ++k) {
    QuatMatrix e(n, n);
    e(k, k) = Quaternion::i();
    b.emplace_back(e);
  }
  return b;
}

struct TangentVector {
  GroupElement base;
  AlgebraElement xi;
};

// Generating vector fields use xi_M(x) = d/dt exp(t xi).x at t = 0.
//
// Conjugation action h.g = h g h^{-1}: left-trivialized value Ad_{g^{-1}} xi - xi.
inline TangentVector fundamental_vector(const AlgebraElement& xi, const GroupElement& g) {
  require_same_rank(xi.rank(), g.rank(), "fundamental_vector");
  return {g, adjoint(g.inverse(), xi) - xi};
}

// Any smooth action on the group manifold; central differences along t -> exp(t xi).x.
using GroupAction = std::function<GroupElement(const GroupElement& acting, const GroupElement& point)>;

inline TangentVector fundamental_vector(const AlgebraElement& xi, const GroupAction& action,
                                        const GroupElement& x, double h) {
  const QuatMatrix plus = action(exp(h * xi), x).matrix();
  const QuatMatrix minus = action(exp(-h * xi), x).matrix();
  const QuatMatrix d = (plus - minus) * (0.5 / h);
  return {x, AlgebraElement::project(mat_dagger(x.matrix()) * d)};
}

}  // namespace qmoment
