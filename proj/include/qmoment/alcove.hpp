#pragma once

// Root and alcove combinatorics for Sp(n) in the coordinates
// t = { 2 pi i diag(x_1, ..., x_n) }, alcove 0 <= x_n <= ... <= x_1 <= 1/2.
//
// Walls are indexed 0..n:
//   0      : x_1 = 1/2
//   k      : x_k = x_{k+1}   (1 <= k <= n-1)
//   n      : x_n = 0
// Vertex v_k (k = 0..n) has its first k coordinates equal to 1/2 and the rest 0;
// it lies on every wall except wall k.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "liegroup.hpp"
#include "linalg.hpp"

namespace qmoment {

inline constexpr double kFaceTolerance = 1e-12;

// Affine functional x |-> coeffs . x + constant (values of (2 pi i)^{-1} alpha).
struct AffineFunctional {
  std::string label;
  std::vector<double> coeffs;
  double constant = 0.0;

  double operator()(const std::vector<double>& x) const {
    double s = constant;
    for (std::size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * x[k];
    return s;
  }
};

inline void require_rank(std::size_t n) {
  if (n == 0) throw std::invalid_argument("rank must be at least 1");
}

// Simple roots as listed for Sp(n): x_k - x_{k+1} (k < n) and -2 x_1.
inline std::vector<AffineFunctional> simple_roots(std::size_t n) {
  require_rank(n);
  std::vector<AffineFunctional> out;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    AffineFunctional f{"alpha_" + std::to_string(k + 1), std::vector<double>(n, 0.0), 0.0};
    f.coeffs[k] = 1.0;
    f.coeffs[k + 1] = -1.0;
    out.push_back(f);
  }
  AffineFunctional last{"alpha_" + std::to_string(n), std::vector<double>(n, 0.0), 0.0};
  last.coeffs[0] = -2.0;
  out.push_back(last);
  return out;
}

// The functional listed as the minimal root: 2 x_n.
inline AffineFunctional minimal_root(std::size_t n) {
  require_rank(n);
  AffineFunctional f{"minimal", std::vector<double>(n, 0.0), 0.0};
  f.coeffs[n - 1] = 2.0;
  return f;
}

// Wall functionals, nonnegative exactly on the closed alcove.
inline std::vector<AffineFunctional> alcove_walls(std::size_t n) {
  require_rank(n);
  std::vector<AffineFunctional> w;
  AffineFunctional top{"x_1 = 1/2", std::vector<double>(n, 0.0), 0.5};
  top.coeffs[0] = -1.0;
  w.push_back(top);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    AffineFunctional f{"x_" + std::to_string(k + 1) + " = x_" + std::to_string(k + 2), std::vector<double>(n, 0.0), 0.0};
    f.coeffs[k] = 1.0;
    f.coeffs[k + 1] = -1.0;
    w.push_back(f);
  }
  AffineFunctional bottom{"x_" + std::to_string(n) + " = 0", std::vector<double>(n, 0.0), 0.0};
  bottom.coeffs[n - 1] = 1.0;
  w.push_back(bottom);
  return w;
}

inline bool alcove_contains(const std::vector<double>& x, double tol = kFaceTolerance) {
  if (x.empty()) return false;
  for (const auto& w : alcove_walls(x.size()))
    if (w(x) < -tol) return false;
  return true;
}

inline std::vector<double> alcove_vertex(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("alcove_vertex: index out of range");
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < k; ++i) v[i] = 0.5;
  return v;
}

struct AlcoveFace {
  std::size_t n = 0;
  std::vector<std::size_t> active;  // sorted wall indices

  static AlcoveFace sigma0(std::size_t n) {
    require_rank(n);
    AlcoveFace f{n, {}};
    for (std::size_t k = 1; k <= n; ++k) f.active.push_back(k);
    return f;
  }
  static AlcoveFace sigma01(std::size_t n) {
    require_rank(n);
    AlcoveFace f{n, {}};
    for (std::size_t k = 2; k <= n; ++k) f.active.push_back(k);
    return f;
  }
  static AlcoveFace sigma1(std::size_t n) {
    require_rank(n);
    AlcoveFace f{n, {0}};
    for (std::size_t k = 2; k <= n; ++k) f.active.push_back(k);
    return f;
  }
  static AlcoveFace interior(std::size_t n) {
    require_rank(n);
    return AlcoveFace{n, {}};
  }

  bool is_active(std::size_t wall) const { return std::binary_search(active.begin(), active.end(), wall); }

  // Vertices spanning the face: those v_k whose missing wall k is not active.
  std::vector<std::vector<double>> vertices() const {
    std::vector<std::vector<double>> vs;
    for (std::size_t k = 0; k <= n; ++k)
      if (!is_active(k)) vs.push_back(alcove_vertex(n, k));
    return vs;
  }
  std::size_t dimension() const { return n - active.size(); }

  std::vector<double> barycenter() const {
    const auto vs = vertices();
    std::vector<double> b(n, 0.0);
    for (const auto& v : vs)
      for (std::size_t i = 0; i < n; ++i) b[i] += v[i] / static_cast<double>(vs.size());
    return b;
  }

  // Orthonormal basis (in x-coordinates) of the face's direction space.
  std::vector<std::vector<double>> directions() const {
    const auto vs = vertices();
    std::vector<std::vector<double>> out;
    for (std::size_t k = 1; k < vs.size(); ++k) {
      std::vector<double> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = vs[k][i] - vs[0][i];
      for (const auto& e : out) {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += e[i] * d[i];
        for (std::size_t i = 0; i < n; ++i) d[i] -= c * e[i];
      }
      double nd = 0.0;
      for (double v : d) nd += v * v;
      nd = std::sqrt(nd);
      for (double& v : d) v /= nd;
      out.push_back(d);
    }
    return out;
  }

  std::string name() const {
    if (*this == sigma0(n)) return "sigma0";
    if (*this == sigma01(n)) return "sigma01";
    if (*this == sigma1(n)) return "sigma1";
    if (active.empty()) return "interior";
    std::string s = "face{";
    for (std::size_t k = 0; k < active.size(); ++k) s += (k ? "," : "") + std::to_string(active[k]);
    return s + "}";
  }

  bool operator==(const AlcoveFace&) const = default;
};

inline AlcoveFace face_of(const std::vector<double>& x, double tol = kFaceTolerance) {
  if (!alcove_contains(x, tol)) throw std::domain_error("face_of: point outside the closed alcove");
  AlcoveFace f{x.size(), {}};
  const auto walls = alcove_walls(x.size());
  for (std::size_t k = 0; k < walls.size(); ++k)
    if (std::abs(walls[k](x)) <= tol) f.active.push_back(k);
  return f;
}

inline std::vector<AlgebraElement> basis_from_coordinates(std::size_t n, const Eigen::MatrixXd& cols) {
  std::vector<AlgebraElement> out;
  for (Eigen::Index c = 0; c < cols.cols(); ++c) out.push_back(from_coordinates(n, cols.col(c)));
  return out;
}

// Kernel of (Ad_{exp x} - I) on sp(n), as orthonormal coordinate columns.
inline Eigen::MatrixXd centralizer_coordinates(const TorusCoordinates& x) {
  const GroupElement g = x.to_group();
  const Eigen::MatrixXd m = operator_matrix(x.rank(), [&](const AlgebraElement& a) { return adjoint(g, a); });
  return linalg::null_space(m - Eigen::MatrixXd::Identity(m.rows(), m.cols()), tol::kernel);
}

inline std::vector<AlgebraElement> centralizer_algebra(const TorusCoordinates& x) {
  if (!alcove_contains(x.x)) throw std::domain_error("centralizer_algebra: point outside the closed alcove");
  return basis_from_coordinates(x.rank(), centralizer_coordinates(x));
}

struct CenterCommutator {
  std::vector<AlgebraElement> center;
  std::vector<AlgebraElement> commutator;
  Eigen::MatrixXd center_coords;      // columns in the sp(n) basis
  Eigen::MatrixXd commutator_coords;  // columns in the sp(n) basis
};

// Center z(g_sigma) as the joint kernel of ad(b), b in g_sigma; commutator
// [g_sigma, g_sigma] as its orthogonal complement inside g_sigma.
inline CenterCommutator center_and_commutator(const AlcoveFace& face) {
  const std::size_t n = face.n;
  const Eigen::MatrixXd k = centralizer_coordinates(TorusCoordinates(face.barycenter()));
  const auto gs = basis_from_coordinates(n, k);
  const Eigen::Index m = k.cols();
  const auto d = static_cast<Eigen::Index>(algebra_dimension(n));
  Eigen::MatrixXd stacked(d * m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      stacked.block(i * d, j, d, 1) = algebra_coordinates(bracket(gs[static_cast<std::size_t>(i)], gs[static_cast<std::size_t>(j)]));
  const Eigen::MatrixXd z = linalg::null_space(stacked, tol::kernel);  // coefficients in the g_sigma basis
  const Eigen::MatrixXd zc = k * z;
  const Eigen::MatrixXd cc = k * linalg::complement(z, m);
  CenterCommutator out;
  out.center_coords = zc;
  out.commutator_coords = cc;
  out.center = basis_from_coordinates(n, zc);
  out.commutator = basis_from_coordinates(n, cc);
  return out;
}

}  // namespace qmoment
