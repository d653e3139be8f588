#pragma once

// Quaternionic projective space HP^n as the closure of the stratum X_01 of the
// imploded double of Sp(n): the maps G: closure(X_01) -> HP^n and F = G^{-1},
// the Sp(n) x T action, the 2-form in chart and homogeneous presentations,
// and the moment map.
//
// Points are nonzero columns Z in H^{n+1} modulo right scalars. Tangent vectors
// are columns W; the canonical lift is horizontal (sum conj(Z_l) W_l = 0).
// The torus factor acts on Z_1 from the left, so the action commutes with the
// right scalars defining HP^n.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "implosion.hpp"
#include "linalg.hpp"
#include "qhspace.hpp"

namespace qmoment {

// Nonzero column of H^{n+1}.
struct HPPoint {
  QuatMatrix z;

  HPPoint() = default;
  explicit HPPoint(QuatMatrix v) : z(std::move(v)) {
    if (z.cols() != 1 || z.rows() < 2) throw std::invalid_argument("HPPoint: expected a column of length n+1 >= 2");
    if (!z.finite() || norm2(z) == 0.0) throw std::invalid_argument("HPPoint: zero or non-finite vector");
  }
  std::size_t n() const { return z.rows() - 1; }
  HPPoint normalized() const { return HPPoint(z * (1.0 / std::sqrt(norm2(z)))); }
};

inline void require_hp_vector(const QuatMatrix& z) {
  if (z.cols() != 1 || z.rows() < 2) throw std::invalid_argument("HP^n: expected a column of length n+1 >= 2");
  if (norm2(z) == 0.0) throw std::invalid_argument("HP^n: zero vector");
}

inline QuatMatrix tail(const QuatMatrix& z) { return z.block(1, 0, z.rows() - 1, 1); }
inline double head_norm2(const QuatMatrix& z) { return z(0, 0).norm2(); }
inline double tail_norm2(const QuatMatrix& z) {
  double s = 0.0;
  for (std::size_t l = 1; l < z.rows(); ++l) s += z(l, 0).norm2();
  return s;
}

inline double lambda_of(const QuatMatrix& z) {
  require_hp_vector(z);
  const double t2 = tail_norm2(z);
  return t2 / (t2 + head_norm2(z));
}
inline double mu_of(const QuatMatrix& z) {
  require_hp_vector(z);
  const double a2 = head_norm2(z);
  return a2 / (a2 + tail_norm2(z));
}
inline double t_of(const QuatMatrix& z) {
  require_hp_vector(z);
  const double t2 = tail_norm2(z);
  if (t2 == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(head_norm2(z) / t2);
}

// W minus its vertical part Z (Z^dag W)/|Z|^2.
inline QuatMatrix horizontal_part(const QuatMatrix& z, const QuatMatrix& w) {
  return w - z * (hdot(z, w) * (1.0 / norm2(z)));
}

// Distance between [a] and [b] after aligning b by the optimal right unit scalar.
inline double projective_distance(const QuatMatrix& a, const QuatMatrix& b) { return projective_column_distance(a, b); }

// First column of the coset representative: Z_{p+1} conj(Z_1) / (|Z_1| |tail|).
inline QuatMatrix coset_column(const QuatMatrix& z) {
  require_hp_vector(z);
  const double a = std::sqrt(head_norm2(z));
  const double t = std::sqrt(tail_norm2(z));
  if (a == 0.0 || t == 0.0) throw std::domain_error("coset_column: boundary point");
  return tail(z) * (z(0, 0).conj() * (1.0 / (a * t)));
}

// Deterministic completion of a unit column to an element of Sp(n): greedy
// Gram-Schmidt over the standard basis, taking at each step the basis vector
// with the largest residual (ties to the lowest index).
inline GroupElement sp_completion(const QuatMatrix& c) {
  if (c.cols() != 1 || c.rows() == 0) throw std::invalid_argument("sp_completion: expected a column");
  if (std::abs(norm2(c) - 1.0) > tol::membership) throw std::invalid_argument("sp_completion: input is not a unit vector");
  const std::size_t n = c.rows();
  std::vector<QuatMatrix> cols{c};
  while (cols.size() < n) {
    double best = -1.0;
    QuatMatrix pick;
    for (std::size_t k = 0; k < n; ++k) {
      QuatMatrix r = QuatMatrix::unit(n, k);
      for (const auto& u : cols) r -= u * hdot(u, r);
      const double nr = std::sqrt(norm2(r));
      if (nr > best + 1e-12) {
        best = nr;
        pick = r * (1.0 / nr);
      }
    }
    // One re-orthogonalization pass keeps the residual at machine precision.
    for (const auto& u : cols) pick -= u * hdot(u, pick);
    pick *= 1.0 / std::sqrt(norm2(pick));
    cols.push_back(pick);
  }
  QuatMatrix g(n, n);
  for (std::size_t k = 0; k < n; ++k) g.set_col(k, cols[k]);
  return GroupElement(g);
}

// The case table f_{p,n-q}(Z) for the coset representative, entry (p, n-q)
// with p = 1..n and q = 0..n-1 (1-based). Returned as is; may fail unitarity.
inline QuatMatrix f_table(const QuatMatrix& z) {
  require_hp_vector(z);
  const std::size_t n = z.rows() - 1;
  auto Z = [&](std::size_t l) { return z(l - 1, 0); };  // 1-based
  auto partial = [&](std::size_t from, std::size_t to) {
    double s = 0.0;
    for (std::size_t l = from; l <= to; ++l) s += Z(l).norm2();
    return std::sqrt(s);
  };
  QuatMatrix a(n, n);
  const double z1 = Z(1).norm();
  for (std::size_t p = 1; p <= n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      Quaternion v;
      const long diff = static_cast<long>(p) - static_cast<long>(q);
      if (q == n - 1) {
        v = Z(p + 1) * Z(1).conj() / (z1 * partial(2, n + 1));
      } else if (diff < 2) {
        v = Z(p + 1) * (Z(q + 3).norm() / (partial(2, q + 2) * partial(2, q + 3)));
      } else if (diff == 2) {
        v = Z(p + 1) * (partial(2, p) / (partial(2, p + 1) * Z(p + 1).norm()));
      }
      a(p - 1, n - q - 1) = v;
    }
  return a;
}

inline constexpr double kTableUnitarityGuard = 1e-8;

// G: (g, x) |-> [sqrt(1 - 2 x_1), sqrt(2 x_1) g.v] = [sqrt((1 - 2 x_1) / (2 x_1)), g.v].
inline QuatMatrix map_G(const StratumPoint& p) {
  require_supported_face(p.face);
  const std::size_t n = p.face.n;
  const double x1 = std::clamp(p.x.x.at(0), 0.0, 0.5);
  QuatMatrix z(n + 1, 1);
  z(0, 0) = std::sqrt(1.0 - 2.0 * x1);
  z.set_block(1, 0, p.g.matrix().col(0) * std::sqrt(2.0 * x1));
  return z;
}

struct MapFResult {
  StratumPoint point;
  bool used_table = false;
};

// F = G^{-1}: torus coordinate x_1 = lambda / 2 (torus entry e^{i pi lambda}),
// coset representative from the case table when it is quaternion-unitary,
// otherwise the completion of the first column.
inline MapFResult map_F_detail(const QuatMatrix& z) {
  require_hp_vector(z);
  const std::size_t n = z.rows() - 1;
  const double lam = lambda_of(z);
  std::vector<double> x(n, 0.0);
  if (lam == 0.0) return {{AlcoveFace::sigma0(n), GroupElement::identity(n), TorusCoordinates(x)}, false};
  if (lam == 1.0) {
    const QuatMatrix t = tail(z);
    x[0] = 0.5;
    return {{AlcoveFace::sigma1(n), sp_completion(t * (1.0 / std::sqrt(norm2(t)))), TorusCoordinates(x)}, false};
  }
  x[0] = 0.5 * lam;
  const QuatMatrix c = coset_column(z);
  const QuatMatrix table = f_table(z);
  if (table.finite() && membership_residual(table) <= kTableUnitarityGuard &&
      frobenius(table.col(0) - c) <= kTableUnitarityGuard)
    return {{AlcoveFace::sigma01(n), GroupElement(table), TorusCoordinates(x)}, true};
  return {{AlcoveFace::sigma01(n), sp_completion(c), TorusCoordinates(x)}, false};
}

inline StratumPoint map_F(const QuatMatrix& z) { return map_F_detail(z).point; }

// blockdiag(t_1, g) acting on columns.
inline QuatMatrix hp_action_matrix(const GroupElement& g, const TorusCoordinates& t) {
  const std::size_t n = g.rank();
  if (t.rank() != n) throw std::invalid_argument("hp_action: rank mismatch");
  QuatMatrix k(n + 1, n + 1);
  k(0, 0) = Quaternion::cis(2.0 * std::numbers::pi * t.x[0]);
  k.set_block(1, 1, g.matrix());
  return k;
}

inline QuatMatrix hp_action(const GroupElement& g, const TorusCoordinates& t, const QuatMatrix& z) {
  require_hp_vector(z);
  if (z.rows() != g.rank() + 1) throw std::invalid_argument("hp_action: rank mismatch");
  return hp_action_matrix(g, t) * z;
}

struct NormalForm {
  QuatMatrix z0;     // [t, 1, 0, ..., 0] / norm
  GroupElement g;
  TorusCoordinates t;
  Quaternion scale;  // Z * scale = (g, t).[t, 1, 0, ..., 0] as vectors
};

// Writes [Z] = (g, 0).[t, 1, 0, ..., 0] with g the completion of the coset column.
inline NormalForm normal_form(const QuatMatrix& z) {
  require_hp_vector(z);
  const std::size_t n = z.rows() - 1;
  const double a = std::sqrt(head_norm2(z));
  const double tn = std::sqrt(tail_norm2(z));
  if (a == 0.0 || tn == 0.0) throw std::domain_error("normal_form: boundary point");
  const double t = a / tn;
  QuatMatrix z0(n + 1, 1);
  z0(0, 0) = t;
  z0(1, 0) = 1.0;
  z0 *= 1.0 / std::sqrt(1.0 + t * t);
  return {z0, sp_completion(coset_column(z)), TorusCoordinates::zero(n), z(0, 0).conj() * (1.0 / (a * tn))};
}

// sin(2 pi a) / a, continuous at a = 0.
inline double sin2pi_over(double a) { return a == 0.0 ? 2.0 * std::numbers::pi : std::sin(2.0 * std::numbers::pi * a) / a; }

// Coefficient of dx13 dx14 at z0 = [t, 1, 0, ..., 0]: -sin(2 pi lambda)(t + 1/t)^2,
// evaluated as -sin(2 pi lambda) / (lambda mu) with mu = 1 - lambda.
inline double chart_coefficient_1314(double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("chart coefficient: t must be nonnegative");
  if (std::isinf(t)) return -2.0 * std::numbers::pi;
  const double lam = 1.0 / (1.0 + t * t);
  const double mu = t * t / (1.0 + t * t);
  if (lam <= 0.5) return -sin2pi_over(lam) / mu;
  return sin2pi_over(mu) / lam;
}

// Coefficient 2 sin(pi lambda) of the p >= 3 blocks.
inline double chart_coefficient_tail(double t) {
  if (std::isinf(t)) return 0.0;
  const double lam = 1.0 / (1.0 + t * t);
  const double mu = t * t / (1.0 + t * t);
  return 2.0 * std::sin(std::numbers::pi * std::min(lam, mu));
}

// Reference coefficient -2 sin(2 pi lambda)(t + 1/t), reported next to the closed form.
inline double printed_coefficient_1314(double t) {
  const double lam = 1.0 / (1.0 + t * t);
  return -2.0 * std::sin(2.0 * std::numbers::pi * lam) * (t + 1.0 / t);
}

// dx_{pa} dx_{pb} (v, w) for real components a, b of entry p.
inline double wedge(const QuatMatrix& v, const QuatMatrix& w, std::size_t p, int a, int b) {
  const auto comp = [](const Quaternion& q, int c) { return c == 0 ? q.w : c == 1 ? q.x : c == 2 ? q.y : q.z; };
  return comp(v(p, 0), a) * comp(w(p, 0), b) - comp(v(p, 0), b) * comp(w(p, 0), a);
}

// The 2-form at z0 = [t, 1, 0, ..., 0] on chart vectors (t w_1 + w_2 = 0):
//   2 pi dx11 dx12 + c(t) dx13 dx14 + 2 sin(pi lambda) sum_{p>=3} (dx_p1 dx_p2 - dx_p3 dx_p4).
inline double omega_chart(double t, const QuatMatrix& v, const QuatMatrix& w) {
  if (v.cols() != 1 || v.rows() < 2) throw std::invalid_argument("omega_chart: expected columns of length n+1");
  v.check_same_shape(w, "omega_chart");
  for (const auto* u : {&v, &w})
    if (((*u)(0, 0) * t + (*u)(1, 0)).norm() > 1e-10 * std::max(1.0, frobenius(*u)))
      throw std::domain_error("omega_chart: tangent violates t w_1 + w_2 = 0");
  double s = 2.0 * std::numbers::pi * wedge(v, w, 0, 0, 1) + chart_coefficient_1314(t) * wedge(v, w, 0, 2, 3);
  const double ct = chart_coefficient_tail(t);
  for (std::size_t p = 2; p < v.rows(); ++p) s += ct * (wedge(v, w, p, 0, 1) - wedge(v, w, p, 2, 3));
  return s;
}

// Differential of the coset column along W.
inline QuatMatrix coset_column_differential(const QuatMatrix& z, const QuatMatrix& w) {
  const double a = std::sqrt(head_norm2(z));
  const double tn = std::sqrt(tail_norm2(z));
  const double da = real_dot(z(0, 0), w(0, 0)) / a;
  double dt = 0.0;
  for (std::size_t l = 1; l < z.rows(); ++l) dt += real_dot(z(l, 0), w(l, 0));
  dt /= tn;
  const QuatMatrix c = coset_column(z);
  QuatMatrix dc = (tail(w) * z(0, 0).conj() + tail(z) * w(0, 0).conj()) * (1.0 / (a * tn));
  dc -= c * (da / a + dt / tn);
  return dc;
}

inline double lambda_differential(const QuatMatrix& z, const QuatMatrix& w) {
  const double n2 = norm2(z);
  const double t2 = tail_norm2(z);
  double dt2 = 0.0;
  for (std::size_t l = 1; l < z.rows(); ++l) dt2 += 2.0 * real_dot(z(l, 0), w(l, 0));
  const double dn2 = 2.0 * mat_ip(z, w);
  return dt2 / n2 - t2 * dn2 / (n2 * n2);
}

// Homogeneous closed form on interior points, for arbitrary (not necessarily
// horizontal) lifts W, W'. With c the coset column, y = c^dag dc, theta = pi lambda:
//   Q = Re[(e y e* - e* y e) conj(y')] - 4 sin(theta) Re(i (dc'^dag dc - conj(y') y)),
//   omega = -Q/2 - pi dlambda' Im_i(y) + pi dlambda Im_i(y').
inline double omega_homogeneous(const QuatMatrix& z, const QuatMatrix& w1, const QuatMatrix& w2) {
  require_hp_vector(z);
  z.check_same_shape(w1, "omega_homogeneous");
  z.check_same_shape(w2, "omega_homogeneous");
  if (head_norm2(z) == 0.0 || tail_norm2(z) == 0.0) throw std::domain_error("omega_homogeneous: boundary point");
  const QuatMatrix c = coset_column(z);
  const QuatMatrix d1 = coset_column_differential(z, w1);
  const QuatMatrix d2 = coset_column_differential(z, w2);
  const double theta = std::numbers::pi * lambda_of(z);
  const Quaternion e = Quaternion::cis(theta);
  const Quaternion eb = e.conj();
  const Quaternion y1 = hdot(c, d1);
  const Quaternion y2 = hdot(c, d2);
  const Quaternion s = hdot(d2, d1) - y2.conj() * y1;
  const double q = ((e * y1 * eb - eb * y1 * e) * y2.conj()).w - 4.0 * std::sin(theta) * (Quaternion::i() * s).w;
  return -0.5 * q - std::numbers::pi * lambda_differential(z, w2) * im_i(y1) +
         std::numbers::pi * lambda_differential(z, w1) * im_i(y2);
}

inline constexpr double kBoundaryDispatch = 1e-6;

// Chart presentation after transport to the normal form.
inline double omega_via_chart(const QuatMatrix& z, const QuatMatrix& w1, const QuatMatrix& w2) {
  const NormalForm nf = normal_form(z);
  const double tn = std::sqrt(tail_norm2(z));
  const double a = std::sqrt(head_norm2(z));
  const QuatMatrix kinv = mat_dagger(hp_action_matrix(nf.g, nf.t));
  QuatMatrix chart_point(z.rows(), 1);
  chart_point(0, 0) = a / tn;
  chart_point(1, 0) = 1.0;
  // Re-projecting at the chart point removes the rounding amplified by the 1/|tail| scale.
  auto to_chart = [&](const QuatMatrix& w) {
    return horizontal_part(chart_point, kinv * horizontal_part(z, w) * nf.scale);
  };
  return omega_chart(a / tn, to_chart(w1), to_chart(w2));
}

// The 2-form everywhere on HP^n. Interior: normal form + chart. Near Z_1 = 0:
// -2 pi Im_i(W_1 conj(W'_1)) / |tail|^2. Near tail = 0: 2 pi sum_p Im_i(conj(du_p) du'_p)
// with du = W_tail Z_1^{-1}. Both use horizontal lifts.
inline double hp_omega(const QuatMatrix& z, const QuatMatrix& w1, const QuatMatrix& w2) {
  require_hp_vector(z);
  z.check_same_shape(w1, "hp_omega");
  z.check_same_shape(w2, "hp_omega");
  const double nz = std::sqrt(norm2(z));
  const double a = std::sqrt(head_norm2(z));
  const double tn = std::sqrt(tail_norm2(z));
  if (a < kBoundaryDispatch * nz) {
    const QuatMatrix h1 = horizontal_part(z, w1);
    const QuatMatrix h2 = horizontal_part(z, w2);
    return -2.0 * std::numbers::pi * im_i(h1(0, 0) * h2(0, 0).conj()) / (tn * tn);
  }
  if (tn < kBoundaryDispatch * nz) {
    const QuatMatrix h1 = horizontal_part(z, w1);
    const QuatMatrix h2 = horizontal_part(z, w2);
    const Quaternion zi = z(0, 0).inverse();
    double s = 0.0;
    for (std::size_t p = 1; p < z.rows(); ++p) s += im_i((h1(p, 0) * zi).conj() * (h2(p, 0) * zi));
    return 2.0 * std::numbers::pi * s;
  }
  return omega_via_chart(z, w1, w2);
}

// (I + C, x_1 = lambda/2) with C_pq = Z_{p+1} [conj(u) (e^{-i pi lambda} - 1) u] conj(Z_{q+1}) / |tail|^2,
// u = Z_1 / |Z_1|; the bracket is the real number -2 when Z_1 = 0.
inline std::pair<GroupElement, TorusCoordinates> hp_moment(const QuatMatrix& z) {
  require_hp_vector(z);
  const std::size_t n = z.rows() - 1;
  const double lam = lambda_of(z);
  const double half = 0.5 * std::numbers::pi * lam;
  const Quaternion m(-2.0 * std::sin(half) * std::sin(half), -std::sin(std::numbers::pi * lam));
  const double a = std::sqrt(head_norm2(z));
  const double t2 = tail_norm2(z);
  Quaternion mid = m;
  if (a > 0.0) {
    const Quaternion u = z(0, 0) / a;
    mid = u.conj() * m * u;
  }
  QuatMatrix phi = QuatMatrix::identity(n);
  if (t2 > 0.0)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) phi(p, q) += z(p + 1, 0) * mid * z(q + 1, 0).conj() / t2;
  std::vector<double> x(n, 0.0);
  x[0] = 0.5 * lam;
  return {GroupElement(phi), TorusCoordinates(x)};
}

// Pullback of the stratum form through F by central differences of the coset
// column and of lambda; evaluated on the sigma01 stratum upstairs at F(Z).
inline double omega_fd_pullback(const QuatMatrix& z, const QuatMatrix& w1, const QuatMatrix& w2, double h = 1e-5) {
  require_hp_vector(z);
  const std::size_t n = z.rows() - 1;
  const StratumPoint base = map_F(z);
  if (!(base.face == AlcoveFace::sigma01(n))) throw std::domain_error("omega_fd_pullback: boundary point");
  auto lift = [&](const QuatMatrix& w) {
    const QuatMatrix zp = z + w * h;
    const QuatMatrix zm = z - w * h;
    const QuatMatrix y = mat_dagger(base.g.matrix()) * ((coset_column(zp) - coset_column(zm)) * (0.5 / h));
    QuatMatrix xi(n, n);
    xi(0, 0) = y(0, 0).imag();
    for (std::size_t p = 1; p < n; ++p) {
      xi(p, 0) = y(p, 0);
      xi(0, p) = -y(p, 0).conj();
    }
    std::vector<double> eta(n, 0.0);
    eta[0] = (lambda_of(zp) - lambda_of(zm)) / (4.0 * h);
    return StratumTangent{AlgebraElement(xi), eta};
  };
  const StratumTangent t1 = lift(w1);
  const StratumTangent t2 = lift(w2);
  return stratum_omega_upstairs(base.x, t1.xi, t1.eta, t2.xi, t2.eta);
}

struct BoundaryRow {
  double t = 0.0;
  double lambda = 0.0;
  double closed_form = 0.0;
  double fd_pullback = 0.0;
  double printed = 0.0;
};

// dx13 dx14 coefficient along z0 = [t, 1, 0, ..., 0], probed with the chart
// vectors (j, -t j, 0, ...) and (k, -t k, 0, ...).
inline std::vector<BoundaryRow> boundary_coefficient_scan(const std::vector<double>& ts, std::size_t n = 1, double h = 1e-5) {
  std::vector<BoundaryRow> rows;
  for (double t : ts) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("boundary_coefficient_scan: t must be positive");
    QuatMatrix z(n + 1, 1), v(n + 1, 1), w(n + 1, 1);
    z(0, 0) = t;
    z(1, 0) = 1.0;
    v(0, 0) = Quaternion::j();
    v(1, 0) = Quaternion::j() * (-t);
    w(0, 0) = Quaternion::k();
    w(1, 0) = Quaternion::k() * (-t);
    rows.push_back({t, 1.0 / (1.0 + t * t), omega_chart(t, v, w), omega_fd_pullback(z, v, w, h), printed_coefficient_1314(t)});
  }
  return rows;
}

// Real vectorization of a quaternionic column.
inline Eigen::VectorXd real_vector(const QuatMatrix& w) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(4 * w.rows()));
  for (std::size_t l = 0; l < w.rows(); ++l) {
    const auto i = static_cast<Eigen::Index>(4 * l);
    v(i) = w(l, 0).w;
    v(i + 1) = w(l, 0).x;
    v(i + 2) = w(l, 0).y;
    v(i + 3) = w(l, 0).z;
  }
  return v;
}

inline QuatMatrix quat_vector(const Eigen::VectorXd& v) {
  QuatMatrix w(static_cast<std::size_t>(v.size() / 4), 1);
  for (std::size_t l = 0; l < w.rows(); ++l) {
    const auto i = static_cast<Eigen::Index>(4 * l);
    w(l, 0) = {v(i), v(i + 1), v(i + 2), v(i + 3)};
  }
  return w;
}

// Orthonormal real basis (columns) of the horizontal space at Z.
inline Eigen::MatrixXd horizontal_basis(const QuatMatrix& z) {
  const double nz = std::sqrt(norm2(z));
  Eigen::MatrixXd vert(static_cast<Eigen::Index>(4 * z.rows()), 4);
  const Quaternion units[4] = {Quaternion(1), Quaternion::i(), Quaternion::j(), Quaternion::k()};
  for (int k = 0; k < 4; ++k) vert.col(k) = real_vector(z * units[k]) / nz;
  return linalg::complement(vert, vert.rows());
}

// Skew-Hermitian a in sp(n+1) with a Z = W for horizontal W.
inline QuatMatrix frame_for(const QuatMatrix& z, const QuatMatrix& w) {
  return (w * mat_dagger(z) - z * mat_dagger(w)) * (1.0 / norm2(z));
}

class HPnSpace final : public QHSpace {
 public:
  explicit HPnSpace(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("HPnSpace: rank must be at least 1");
  }
  std::size_t rank() const { return n_; }

  std::string name() const override { return "hpn"; }
  std::size_t dim() const override { return 4 * n_; }
  std::vector<FactorSpec> symmetry() const override {
    return {{FactorKind::group, n_}, {FactorKind::torus, n_}};
  }

  Point sample(Rng& rng) const override {
    QuatMatrix z = rng.gaussian_matrix(n_ + 1, 1);
    return {{z * (1.0 / std::sqrt(norm2(z)))}, {}};
  }
  FrameVec random_frame(const Point&, Rng& rng) const override { return {{random_algebra(n_ + 1, rng).matrix()}, {}}; }
  FrameVec frame_bracket(const FrameVec& a, const FrameVec& b) const override {
    return {{(-bracket(AlgebraElement(a.parts.at(0)), AlgebraElement(b.parts.at(0)))).matrix()}, {}};
  }
  Point flow(const Point& p, const FrameVec& v, double s) const override {
    return {{mat_exp(v.parts.at(0) * s) * p.parts.at(0)}, {}};
  }

  double omega(const Point& p, const FrameVec& v, const FrameVec& w) const override {
    const QuatMatrix& z = p.parts.at(0);
    return hp_omega(z, v.parts.at(0) * z, w.parts.at(0) * z);
  }
  MomentValue moment(const Point& p) const override {
    const auto [phi, x] = hp_moment(p.parts.at(0));
    return {phi, x.to_group()};
  }

  Point act(const SymmetryGroup& g, const Point& p) const override {
    return {{action_matrix(g) * p.parts.at(0)}, {}};
  }
  FrameVec fundamental(const Point&, const SymmetryAlgebra& xi) const override {
    QuatMatrix a(n_ + 1, n_ + 1);
    a(0, 0) = xi.at(1)(0, 0);
    a.set_block(1, 1, xi.at(0).matrix());
    return {{a}, {}};
  }
  FrameVec transport(const SymmetryGroup& g, const Point&, const FrameVec& v) const override {
    const QuatMatrix k = action_matrix(g);
    return {{k * v.parts.at(0) * mat_dagger(k)}, {}};
  }

  std::vector<FrameVec> tangent_basis(const Point& p) const override {
    const QuatMatrix& z = p.parts.at(0);
    const Eigen::MatrixXd b = horizontal_basis(z);
    std::vector<FrameVec> out;
    for (Eigen::Index k = 0; k < b.cols(); ++k) out.push_back({{frame_for(z, quat_vector(b.col(k)))}, {}});
    return out;
  }
  Eigen::VectorXd tangent_coordinates(const Point& p, const FrameVec& v) const override {
    const QuatMatrix& z = p.parts.at(0);
    return horizontal_basis(z).transpose() * real_vector(horizontal_part(z, v.parts.at(0) * z));
  }

  double point_distance(const Point& a, const Point& b) const override {
    return projective_distance(a.parts.at(0), b.parts.at(0));
  }

 private:
  QuatMatrix action_matrix(const SymmetryGroup& g) const {
    QuatMatrix k(n_ + 1, n_ + 1);
    k(0, 0) = g.at(1)(0, 0);
    k.set_block(1, 1, g.at(0).matrix());
    return k;
  }

  std::size_t n_;
};

}  // namespace qmoment
