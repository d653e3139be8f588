#pragma once

// Quaternion scalars and dense quaternionic matrices.
//
// Matrices act on columns from the left; scalars act from the right, so
// H^m is treated as a right H-module throughout the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "tolerances.hpp"

namespace qmoment {

struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  // e^{i theta}
  static Quaternion cis(double theta) { return {std::cos(theta), std::sin(theta), 0, 0}; }

  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  constexpr double real() const { return w; }
  constexpr Quaternion imag() const { return {0, x, y, z}; }
  Quaternion inverse() const {
    const double n2 = norm2();
    if (n2 == 0.0) throw std::domain_error("Quaternion::inverse: zero quaternion");
    return {w / n2, -x / n2, -y / n2, -z / n2};
  }
  bool finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
  constexpr bool operator==(const Quaternion&) const = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

// Hamilton product.
constexpr Quaternion qmul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) { return qmul(a, b); }

struct ImParts {
  double re, im_i, im_j, im_k;
};

constexpr ImParts im_parts(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }
constexpr double im_i(const Quaternion& q) { return q.x; }

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w << ' ' << q.x << "i " << q.y << "j " << q.z << "k)";
}

// Real inner product on H viewed as R^4: Re(a conj(b)).
constexpr double real_dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

class QuatMatrix {
 public:
  QuatMatrix() = default;
  QuatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  QuatMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Quaternion> entries)
      : rows_(rows), cols_(cols), data_(entries) {
    if (data_.size() != rows * cols) throw std::invalid_argument("QuatMatrix: entry count mismatch");
  }

  static QuatMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static QuatMatrix identity(std::size_t n) {
    QuatMatrix m(n, n);
    for (std::size_t p = 0; p < n; ++p) m(p, p) = 1.0;
    return m;
  }
  static QuatMatrix scalar(const Quaternion& q) { return {1, 1, {q}}; }
  static QuatMatrix column(const std::vector<Quaternion>& v) {
    QuatMatrix m(v.size(), 1);
    for (std::size_t p = 0; p < v.size(); ++p) m(p, 0) = v[p];
    return m;
  }
  // Standard basis column e_k of H^m.
  static QuatMatrix unit(std::size_t m, std::size_t k) {
    QuatMatrix e(m, 1);
    e(k, 0) = 1.0;
    return e;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  // Column-vector access.
  Quaternion& operator[](std::size_t r) { return data_[r * cols_]; }
  const Quaternion& operator[](std::size_t r) const { return data_[r * cols_]; }

  const std::vector<Quaternion>& entries() const { return data_; }

  QuatMatrix col(std::size_t c) const {
    QuatMatrix v(rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r) v(r, 0) = (*this)(r, c);
    return v;
  }
  void set_col(std::size_t c, const QuatMatrix& v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v(r, 0);
  }
  QuatMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    QuatMatrix b(nr, nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const QuatMatrix& b) {
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }

  bool finite() const {
    for (const auto& q : data_)
      if (!q.finite()) return false;
    return true;
  }

  QuatMatrix& operator+=(const QuatMatrix& o) {
    check_same_shape(o, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  QuatMatrix& operator-=(const QuatMatrix& o) {
    check_same_shape(o, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  QuatMatrix& operator*=(double s) {
    for (auto& q : data_) q *= s;
    return *this;
  }
  QuatMatrix operator-() const {
    QuatMatrix m = *this;
    m *= -1.0;
    return m;
  }

  void check_same_shape(const QuatMatrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument(std::string("QuatMatrix ") + what + ": shape mismatch");
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

inline QuatMatrix operator+(QuatMatrix a, const QuatMatrix& b) { return a += b; }
inline QuatMatrix operator-(QuatMatrix a, const QuatMatrix& b) { return a -= b; }
inline QuatMatrix operator*(QuatMatrix a, double s) { return a *= s; }
inline QuatMatrix operator*(double s, QuatMatrix a) { return a *= s; }

inline QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("QuatMatrix product: inner dimension mismatch");
  QuatMatrix c(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quaternion& ark = a(r, k);
      for (std::size_t s = 0; s < b.cols(); ++s) c(r, s) += qmul(ark, b(k, s));
    }
  return c;
}

// Right scalar multiplication (module structure).
inline QuatMatrix operator*(const QuatMatrix& a, const Quaternion& q) {
  QuatMatrix c(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t s = 0; s < a.cols(); ++s) c(r, s) = qmul(a(r, s), q);
  return c;
}
inline QuatMatrix operator*(const Quaternion& q, const QuatMatrix& a) {
  QuatMatrix c(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t s = 0; s < a.cols(); ++s) c(r, s) = qmul(q, a(r, s));
  return c;
}

// Conjugate transpose.
inline QuatMatrix mat_dagger(const QuatMatrix& a) {
  QuatMatrix d(a.cols(), a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) d(c, r) = a(r, c).conj();
  return d;
}

// (A, B) = Re tr(A B^dag); equals the Euclidean product of the real components.
inline double mat_ip(const QuatMatrix& a, const QuatMatrix& b) {
  a.check_same_shape(b, "mat_ip");
  double s = 0.0;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) s += real_dot(ea[k], eb[k]);
  return s;
}

inline double frobenius(const QuatMatrix& a) { return std::sqrt(mat_ip(a, a)); }

inline double max_abs_diff(const QuatMatrix& a, const QuatMatrix& b) { return frobenius(a - b); }

// Quaternionic Hermitian product of two columns: sum_l conj(a_l) b_l.
inline Quaternion hdot(const QuatMatrix& a, const QuatMatrix& b) {
  a.check_same_shape(b, "hdot");
  Quaternion s;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) s += qmul(a(r, c).conj(), b(r, c));
  return s;
}

inline double norm2(const QuatMatrix& a) { return mat_ip(a, a); }

// Complex embedding q = a + j b  |->  [[a, -conj(b)], [b, conj(a)]], applied in
// big-block layout: an r x c quaternionic matrix becomes 2r x 2c complex.
inline Eigen::MatrixXcd complex_embed(const QuatMatrix& m) {
  const auto r = static_cast<Eigen::Index>(m.rows());
  const auto c = static_cast<Eigen::Index>(m.cols());
  Eigen::MatrixXcd e(2 * r, 2 * c);
  for (Eigen::Index p = 0; p < r; ++p)
    for (Eigen::Index q = 0; q < c; ++q) {
      const Quaternion& h = m(static_cast<std::size_t>(p), static_cast<std::size_t>(q));
      const std::complex<double> a(h.w, h.x);
      const std::complex<double> b(h.y, -h.z);
      e(p, q) = a;
      e(p, q + c) = -std::conj(b);
      e(p + r, q) = b;
      e(p + r, q + c) = std::conj(a);
    }
  return e;
}

inline QuatMatrix complex_unembed(const Eigen::MatrixXcd& e) {
  if (e.rows() % 2 != 0 || e.cols() % 2 != 0)
    throw std::invalid_argument("complex_unembed: odd dimensions");
  const Eigen::Index r = e.rows() / 2;
  const Eigen::Index c = e.cols() / 2;
  const double scale = std::max(1.0, e.norm());
  QuatMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  for (Eigen::Index p = 0; p < r; ++p)
    for (Eigen::Index q = 0; q < c; ++q) {
      const std::complex<double> a = e(p, q);
      const std::complex<double> b = e(p + r, q);
      if (std::abs(e(p + r, q + c) - std::conj(a)) > tol::embedding * scale ||
          std::abs(e(p, q + c) + std::conj(b)) > tol::embedding * scale)
        throw std::domain_error("complex_unembed: matrix is not in the image of the embedding");
      m(static_cast<std::size_t>(p), static_cast<std::size_t>(q)) = {a.real(), a.imag(), b.real(), -b.imag()};
    }
  return m;
}

// Matrix exponential through the complex embedding (Pade scaling-and-squaring).
inline QuatMatrix mat_exp(const QuatMatrix& x) {
  if (!x.square()) throw std::invalid_argument("mat_exp: matrix is not square");
  const Eigen::MatrixXcd e = complex_embed(x);
  return complex_unembed(e.exp());
}

inline std::ostream& operator<<(std::ostream& os, const QuatMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << "]\n";
  }
  return os;
}

}  // namespace qmoment
