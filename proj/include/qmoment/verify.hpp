#pragma once

// Finite-difference exterior calculus and the numeric checks for the
// quasi-Hamiltonian axioms, equivariance, roundtrips and form agreement.
//
//   (i)   d omega = -Phi^* chi
//   (ii)  ker omega_x = { xi_M(x) : xi in ker(Ad_{Phi(x)} + 1) }
//   (iii) iota(xi_M) omega = 1/2 Phi^* (theta_L + theta_R, xi)
//
// Samples are evaluated independently, each with its own counter-derived seed,
// so results do not depend on thread count or evaluation order.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "hpn.hpp"
#include "implosion.hpp"
#include "linalg.hpp"
#include "qhspace.hpp"

namespace qmoment {

struct SampleConfig {
  std::size_t n = 1;
  std::size_t samples = 50;
  std::uint64_t seed = 42;
  double h_second = 1e-3;  // exterior derivative of omega
  double h_first = 1e-5;   // first derivatives (moment differentials, pullbacks)
  unsigned threads = 0;    // 0: QMOMENT_THREADS, else hardware concurrency

  void validate() const {
    if (n == 0) throw std::invalid_argument("SampleConfig: n must be at least 1");
    if (samples == 0) throw std::invalid_argument("SampleConfig: samples must be at least 1");
    if (!(h_second > 0.0) || !(h_first > 0.0)) throw std::invalid_argument("SampleConfig: step sizes must be positive");
  }
};

struct VerificationReport {
  std::string name;
  std::vector<double> residuals;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::string> notes;
};

inline VerificationReport make_report(std::string name, std::vector<double> residuals, double tolerance) {
  VerificationReport r;
  r.name = std::move(name);
  r.tolerance = tolerance;
  double sum = 0.0;
  bool finite = true;
  for (double v : residuals) {
    if (!std::isfinite(v)) finite = false;
    r.max_residual = std::max(r.max_residual, v);
    sum += v;
  }
  r.mean_residual = residuals.empty() ? 0.0 : sum / static_cast<double>(residuals.size());
  r.pass = finite && !residuals.empty() && r.max_residual <= tolerance;
  if (!finite) r.max_residual = std::numeric_limits<double>::infinity();
  r.residuals = std::move(residuals);
  return r;
}

// FNV-1a, used to give every check its own random stream.
constexpr std::uint64_t stream_tag(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QMOMENT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Evaluates fn(index) for index in [0, count) with a static partition across
// threads; results are stored by index.
inline std::vector<double> parallel_samples(std::size_t count, unsigned threads,
                                            const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(count, 0.0);
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (t == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(t);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += t) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// Runs a per-sample defect function with a per-sample generator.
inline VerificationReport check_samples(const std::string& name, const SampleConfig& cfg, double tolerance,
                                        const std::function<double(Rng&, std::size_t)>& defect) {
  cfg.validate();
  const std::uint64_t tag = stream_tag(name);
  auto residuals = parallel_samples(cfg.samples, resolve_threads(cfg.threads), [&](std::size_t i) {
    Rng rng(sample_seed(cfg.seed, tag, i));
    return defect(rng, i);
  });
  return make_report(name, std::move(residuals), tolerance);
}

// ---- finite differences ---------------------------------------------------

inline double fd_scalar_derivative(const std::function<double(double)>& f, double h) {
  return (f(h) - f(-h)) / (2.0 * h);
}

// Left-trivialized derivative g(0)^{-1} g'(0) of a group-valued curve.
inline AlgebraElement fd_group_derivative(const std::function<GroupElement(double)>& curve, double h) {
  const QuatMatrix d = (curve(h).matrix() - curve(-h).matrix()) * (0.5 / h);
  return AlgebraElement::project(mat_dagger(curve(0.0).matrix()) * d);
}

// Differential of a group-valued map along the exact flow of a frame vector.
inline AlgebraElement fd_differential(const std::function<GroupElement(const Point&)>& map, const QHSpace& space,
                                      const Point& p, const FrameVec& v, double h) {
  return fd_group_derivative([&](double s) { return map(space.flow(p, v, s)); }, h);
}

// Invariant-frame exterior derivative of a 2-form:
//   d omega(X,Y,Z) = X omega(Y,Z) - Y omega(X,Z) + Z omega(X,Y)
//                    - omega([X,Y],Z) + omega([X,Z],Y) - omega([Y,Z],X),
// with directional derivatives by central differences along the frame flows.
template <class P, class V, class Omega, class Flow, class Bracket>
double palais_d2form(const Omega& omega, const Flow& flow, const Bracket& br, const P& p, const V& x, const V& y,
                     const V& z, double h) {
  auto d = [&](const V& a, const V& b, const V& c) {
    return (omega(flow(p, a, h), b, c) - omega(flow(p, a, -h), b, c)) / (2.0 * h);
  };
  return d(x, y, z) - d(y, x, z) + d(z, x, y) - omega(p, br(x, y), z) + omega(p, br(x, z), y) -
         omega(p, br(y, z), x);
}

inline double fd_d2form(const QHSpace& space, const Point& p, const FrameVec& x, const FrameVec& y, const FrameVec& z,
                        double h) {
  return palais_d2form(
      [&](const Point& q, const FrameVec& a, const FrameVec& b) { return space.omega(q, a, b); },
      [&](const Point& q, const FrameVec& a, double s) { return space.flow(q, a, s); },
      [&](const FrameVec& a, const FrameVec& b) { return space.frame_bracket(a, b); }, p, x, y, z, h);
}

// ---- axioms ----------------------------------------------------------------

inline double axiom_one_residual(const QHSpace& space, const Point& p, const FrameVec& x, const FrameVec& y,
                                 const FrameVec& z, const SampleConfig& cfg) {
  const double d = fd_d2form(space, p, x, y, z, cfg.h_second);
  const auto dx = space.moment_differential(p, x, cfg.h_first);
  const auto dy = space.moment_differential(p, y, cfg.h_first);
  const auto dz = space.moment_differential(p, z, cfg.h_first);
  double chi = 0.0;
  for (std::size_t i = 0; i < dx.size(); ++i) chi += cartan_three_form(dx[i], dy[i], dz[i]);
  return std::abs(d + chi);
}

inline VerificationReport check_axiom_one(const QHSpace& space, const SampleConfig& cfg, double tolerance = 1e-4) {
  return check_samples("axiom_one", cfg, tolerance, [&](Rng& rng, std::size_t) {
    const Point p = space.sample(rng);
    const FrameVec x = space.random_frame(p, rng);
    const FrameVec y = space.random_frame(p, rng);
    const FrameVec z = space.random_frame(p, rng);
    return axiom_one_residual(space, p, x, y, z, cfg);
  });
}

inline double axiom_three_residual(const QHSpace& space, const Point& p, const SymmetryAlgebra& xi, const FrameVec& w,
                                   const SampleConfig& cfg) {
  const double lhs = space.omega(p, space.fundamental(p, xi), w);
  const auto dw = space.moment_differential(p, w, cfg.h_first);
  const MomentValue phi = space.moment(p);
  double rhs = 0.0;
  for (std::size_t i = 0; i < dw.size(); ++i) rhs += 0.5 * ip(dw[i] + adjoint(phi[i], dw[i]), xi[i]);
  return std::abs(lhs - rhs);
}

inline VerificationReport check_axiom_three(const QHSpace& space, const SampleConfig& cfg, double tolerance = 1e-5) {
  return check_samples("axiom_three", cfg, tolerance, [&](Rng& rng, std::size_t) {
    const Point p = space.sample(rng);
    const SymmetryAlgebra xi = random_symmetry_algebra(space.symmetry(), rng);
    const FrameVec w = space.random_frame(p, rng);
    return axiom_three_residual(space, p, xi, w, cfg);
  });
}

struct AxiomTwoData {
  linalg::SubspaceComparison comparison;
  Eigen::MatrixXd form_kernel;    // orthonormal columns, tangent coordinates
  Eigen::MatrixXd moment_kernel;  // orthonormal columns, tangent coordinates
};

// Orthonormal basis of the column span, dropping singular values <= threshold.
inline Eigen::MatrixXd span_basis(const Eigen::MatrixXd& m, double threshold) {
  if (m.cols() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  Eigen::Index r = 0;
  while (r < svd.singularValues().size() && svd.singularValues()(r) > threshold) ++r;
  return svd.matrixU().leftCols(r);
}

inline AxiomTwoData axiom_two_at(const QHSpace& space, const Point& p) {
  const auto basis = space.tangent_basis(p);
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd gram(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      gram(i, j) = space.omega(p, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
  Eigen::MatrixXd form_kernel;
  if (d == 0) {
    form_kernel = Eigen::MatrixXd(0, 0);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
    // Relative threshold, floored at scale 1 so an identically vanishing form is not
    // judged against its own rounding noise.
    const double smax = svd.singularValues()(0);
    form_kernel = linalg::null_space(gram, tol::kernel * std::max(1.0, smax));
  }

  const auto factors = space.symmetry();
  const MomentValue phi = space.moment(p);
  std::vector<Eigen::VectorXd> pushed;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const auto fb = factor_basis(factors[f]);
    const auto m = static_cast<Eigen::Index>(fb.size());
    Eigen::MatrixXd ad(m, m);
    for (Eigen::Index c = 0; c < m; ++c) {
      const AlgebraElement img = adjoint(phi[f], fb[static_cast<std::size_t>(c)]);
      for (Eigen::Index r = 0; r < m; ++r) ad(r, c) = ip(img, fb[static_cast<std::size_t>(r)]);
    }
    const Eigen::MatrixXd k = linalg::null_space(ad + Eigen::MatrixXd::Identity(m, m), tol::kernel);
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
      SymmetryAlgebra xi;
      for (const auto& g : factors) xi.push_back(AlgebraElement::zero(g.n));
      AlgebraElement v = AlgebraElement::zero(factors[f].n);
      for (Eigen::Index r = 0; r < m; ++r) v += k(r, c) * fb[static_cast<std::size_t>(r)];
      xi[f] = v;
      pushed.push_back(space.tangent_coordinates(p, space.fundamental(p, xi)));
    }
  }
  Eigen::MatrixXd cols(d, static_cast<Eigen::Index>(pushed.size()));
  for (std::size_t c = 0; c < pushed.size(); ++c) cols.col(static_cast<Eigen::Index>(c)) = pushed[c];
  const Eigen::MatrixXd moment_kernel = span_basis(cols, tol::kernel);
  return {linalg::principal_angles(form_kernel, moment_kernel), form_kernel, moment_kernel};
}

inline double axiom_two_residual(const linalg::SubspaceComparison& c) {
  return c.same_dimension() ? c.max_angle() : std::numbers::pi / 2;
}

inline VerificationReport check_axiom_two(const QHSpace& space, const SampleConfig& cfg, double tolerance = 1e-6) {
  return check_samples("axiom_two", cfg, tolerance, [&](Rng& rng, std::size_t) {
    return axiom_two_residual(axiom_two_at(space, space.sample(rng)).comparison);
  });
}

// ---- equivariance and invariance -----------------------------------------

inline VerificationReport check_equivariance(const QHSpace& space, const SampleConfig& cfg, double tolerance = 1e-10) {
  return check_samples("moment_equivariance", cfg, tolerance, [&](Rng& rng, std::size_t) {
    const Point p = space.sample(rng);
    const SymmetryGroup g = random_symmetry(space.symmetry(), rng);
    const MomentValue lhs = space.moment(space.act(g, p));
    const MomentValue base = space.moment(p);
    MomentValue rhs;
    for (std::size_t i = 0; i < base.size(); ++i) rhs.push_back(conjugate(g[i], base[i]));
    return moment_distance(lhs, rhs);
  });
}

inline VerificationReport check_omega_invariance(const QHSpace& space, const SampleConfig& cfg, double tolerance = 1e-10) {
  return check_samples("omega_invariance", cfg, tolerance, [&](Rng& rng, std::size_t) {
    const Point p = space.sample(rng);
    const FrameVec v = space.random_frame(p, rng);
    const FrameVec w = space.random_frame(p, rng);
    const SymmetryGroup g = random_symmetry(space.symmetry(), rng);
    const Point gp = space.act(g, p);
    return std::abs(space.omega(gp, space.transport(g, p, v), space.transport(g, p, w)) - space.omega(p, v, w));
  });
}

// Generating vector fields: the frame representation xi_M agrees with central
// differences of the action along t -> exp(t xi), compared in ambient coordinates.
inline double ambient_velocity_gap(const Point& ap, const Point& am, const Point& fp, const Point& fm, double h) {
  double d = 0.0;
  for (std::size_t k = 0; k < ap.parts.size(); ++k)
    d += frobenius((ap.parts[k] - am.parts[k]) - (fp.parts[k] - fm.parts[k])) / (2.0 * h);
  for (std::size_t k = 0; k < ap.reals.size(); ++k)
    d += std::abs((ap.reals[k] - am.reals[k]) - (fp.reals[k] - fm.reals[k])) / (2.0 * h);
  return d;
}

inline VerificationReport check_fundamental_fields(const QHSpace& space, const SampleConfig& cfg, double tolerance = 1e-6) {
  return check_samples("fundamental_fields", cfg, tolerance, [&](Rng& rng, std::size_t) {
    const Point p = space.sample(rng);
    const SymmetryAlgebra xi = random_symmetry_algebra(space.symmetry(), rng);
    const double h = 1e-4;
    auto along = [&](double s) {
      SymmetryGroup g;
      for (const auto& x : xi) g.push_back(exp(s * x));
      return space.act(g, p);
    };
    const FrameVec v = space.fundamental(p, xi);
    return ambient_velocity_gap(along(h), along(-h), space.flow(p, v, h), space.flow(p, v, -h), h);
  });
}

inline VerificationReport check_roundtrip(const std::string& name, const SampleConfig& cfg, double tolerance,
                                          const std::function<double(Rng&, std::size_t)>& defect) {
  return check_samples(name, cfg, tolerance, defect);
}

// ---- HP^n checks -----------------------------------------------------------

inline QuatMatrix random_hp_point(std::size_t n, Rng& rng) {
  QuatMatrix z = rng.gaussian_matrix(n + 1, 1);
  return z * (1.0 / std::sqrt(norm2(z)));
}

inline QuatMatrix random_horizontal(const QuatMatrix& z, Rng& rng) {
  QuatMatrix w = horizontal_part(z, rng.gaussian_matrix(z.rows(), 1));
  return w * (1.0 / std::sqrt(norm2(w)));
}

// Stratum points on the closure of sigma01; every tenth sample is on sigma0,
// every tenth shifted by five on sigma1.
inline StratumPoint random_closure_point(std::size_t n, Rng& rng, std::size_t index) {
  const GroupElement g = random_group(n, rng);
  std::vector<double> x(n, 0.0);
  if (index % 10 == 0) return {AlcoveFace::sigma0(n), GroupElement::identity(n), TorusCoordinates(x)};
  if (index % 10 == 5) {
    x[0] = 0.5;
    return {AlcoveFace::sigma1(n), g, TorusCoordinates(x)};
  }
  x[0] = rng.uniform(0.01, 0.49);
  return {AlcoveFace::sigma01(n), g, TorusCoordinates(x)};
}

inline VerificationReport check_roundtrip_FG(const SampleConfig& cfg, double tolerance = 1e-10) {
  return check_roundtrip("roundtrip_F_after_G", cfg, tolerance, [&](Rng& rng, std::size_t i) {
    const StratumPoint p = random_closure_point(cfg.n, rng, i);
    return stratum_distance(map_F(map_G(p)), p);
  });
}

inline VerificationReport check_roundtrip_GF(const SampleConfig& cfg, double tolerance = 1e-10) {
  return check_roundtrip("roundtrip_G_after_F", cfg, tolerance, [&](Rng& rng, std::size_t) {
    const QuatMatrix z = random_hp_point(cfg.n, rng);
    return projective_distance(map_G(map_F(z)), z);
  });
}

inline VerificationReport check_G_equivariance(const SampleConfig& cfg, double tolerance = 1e-10) {
  return check_samples("map_G_equivariance", cfg, tolerance, [&](Rng& rng, std::size_t i) {
    const StratumPoint p = random_closure_point(cfg.n, rng, i);
    const GroupElement g = random_group(cfg.n, rng);
    std::vector<double> tx(cfg.n);
    for (auto& v : tx) v = rng.uniform(-0.5, 0.5);
    const TorusCoordinates t(tx);
    const StratumPoint moved = stratum_g_action(g, stratum_t_action(t, p));
    return projective_distance(map_G(moved), hp_action(g, t, map_G(p)));
  });
}

// Every exported HP^n evaluator is unchanged under Z -> Z q, W -> W q.
inline VerificationReport check_projective_invariance(const SampleConfig& cfg, double tolerance = 1e-10) {
  return check_samples("projective_invariance", cfg, tolerance, [&](Rng& rng, std::size_t) {
    const QuatMatrix z = random_hp_point(cfg.n, rng);
    const QuatMatrix w1 = random_horizontal(z, rng);
    const QuatMatrix w2 = random_horizontal(z, rng);
    const Quaternion q = rng.unit_quaternion();
    const QuatMatrix zq = z * q;
    double d = std::abs(lambda_of(z) - lambda_of(zq)) + std::abs(t_of(z) - t_of(zq));
    d += stratum_distance(map_F(z), map_F(zq));
    const auto m1 = hp_moment(z);
    const auto m2 = hp_moment(zq);
    d += max_abs_diff(m1.first.matrix(), m2.first.matrix()) + std::abs(m1.second.x[0] - m2.second.x[0]);
    d += std::abs(hp_omega(z, w1, w2) - hp_omega(zq, w1 * q, w2 * q));
    d += std::abs(omega_homogeneous(z, w1, w2) - omega_homogeneous(zq, w1 * q, w2 * q));
    d += projective_distance(map_G(map_F(zq)), z);
    return d;
  });
}

enum class FormPair { chart_homogeneous, chart_fd, homogeneous_fd };

inline VerificationReport check_form_agreement(FormPair which, const SampleConfig& cfg, double tolerance) {
  const char* names[] = {"forms_chart_vs_homogeneous", "forms_chart_vs_fd_pullback", "forms_homogeneous_vs_fd_pullback"};
  const std::string name = names[static_cast<int>(which)];
  return check_samples(name, cfg, tolerance, [&](Rng& rng, std::size_t) {
    const QuatMatrix z = random_hp_point(cfg.n, rng);
    const QuatMatrix w1 = random_horizontal(z, rng);
    const QuatMatrix w2 = random_horizontal(z, rng);
    switch (which) {
      case FormPair::chart_homogeneous:
        return std::abs(omega_via_chart(z, w1, w2) - omega_homogeneous(z, w1, w2));
      case FormPair::chart_fd:
        return std::abs(omega_via_chart(z, w1, w2) - omega_fd_pullback(z, w1, w2, cfg.h_first));
      case FormPair::homogeneous_fd:
        return std::abs(omega_homogeneous(z, w1, w2) - omega_fd_pullback(z, w1, w2, cfg.h_first));
    }
    return 0.0;
  });
}

inline VerificationReport check_moment_consistency(const SampleConfig& cfg, double tolerance = 1e-8) {
  return check_samples("moment_vs_stratum_moment", cfg, tolerance, [&](Rng& rng, std::size_t) {
    const QuatMatrix z = random_hp_point(cfg.n, rng);
    const auto [phi, x] = hp_moment(z);
    const auto [sphi, sx] = stratum_moment(map_F(z));
    double d = max_abs_diff(phi.matrix(), sphi.matrix());
    for (std::size_t k = 0; k < x.rank(); ++k) d += std::abs(x.x[k] - sx.x[k]);
    return d;
  });
}

inline VerificationReport check_moment_at_base(const SampleConfig& cfg, double tolerance = 1e-6) {
  SampleConfig one = cfg;
  one.samples = 1;
  return check_samples("moment_at_base_point", one, tolerance, [&](Rng&, std::size_t) {
    const auto [phi, x] = hp_moment(QuatMatrix::unit(cfg.n + 1, 0));
    double d = max_abs_diff(phi.matrix(), QuatMatrix::identity(cfg.n));
    for (double v : x.x) d += std::abs(v);
    return d;
  });
}

enum class BoundarySide { head, tail };

// The point with |Z_1| = e (head) or |tail| = e (tail), the other block normalized to 1.
inline QuatMatrix boundary_ray_point(const QuatMatrix& z, BoundarySide side, double e) {
  const double hn = std::sqrt(head_norm2(z));
  const double tn = std::sqrt(tail_norm2(z));
  QuatMatrix p = z;
  const double head = side == BoundarySide::head ? e : 1.0;
  const double rest = side == BoundarySide::head ? 1.0 : e;
  p(0, 0) = z(0, 0) * (head / hn);
  for (std::size_t l = 1; l < z.rows(); ++l) p(l, 0) = z(l, 0) * (rest / tn);
  return p;
}

// Largest ratio gap_{k+1} / gap_k of successive gaps along a ray approaching a
// boundary face; gaps below 1e-13 count as converged.
inline double gap_ratio(const std::vector<double>& gaps) {
  double worst = 0.0;
  for (std::size_t k = 1; k < gaps.size(); ++k) {
    if (gaps[k] < 1e-13) continue;
    worst = std::max(worst, gaps[k - 1] > 0.0 ? gaps[k] / gaps[k - 1] : std::numeric_limits<double>::infinity());
  }
  return worst;
}

// Points with |Z_1| = 10^{-k} (head) or |tail| = 10^{-k} (tail), k = 3..6,
// the remaining block normalized to 1.
inline std::vector<QuatMatrix> boundary_ray(const QuatMatrix& z, BoundarySide side) {
  std::vector<QuatMatrix> out;
  for (int k = 3; k <= 6; ++k) out.push_back(boundary_ray_point(z, side, std::pow(10.0, -k)));
  return out;
}

// Gaps |f(ray_k) - f(limit)| to the value of the extension on the boundary face.
inline std::vector<double> boundary_gaps(const QuatMatrix& z, BoundarySide side,
                                         const std::function<double(const QuatMatrix&, const QuatMatrix&)>& dist) {
  const QuatMatrix limit = boundary_ray_point(z, side, 0.0);
  std::vector<double> gaps;
  for (const auto& p : boundary_ray(z, side)) gaps.push_back(dist(p, limit));
  return gaps;
}

// Residual: largest ratio of successive gaps to the boundary value; a pass
// means the gaps shrink by a fixed factor at every step.
inline VerificationReport check_cauchy_omega(BoundarySide side, const SampleConfig& cfg, double tolerance = 0.9) {
  const std::string name = side == BoundarySide::head ? "cauchy_omega_head" : "cauchy_omega_tail";
  return check_samples(name, cfg, tolerance, [&](Rng& rng, std::size_t) {
    const QuatMatrix z = random_hp_point(cfg.n, rng);
    const QuatMatrix w1 = rng.gaussian_matrix(cfg.n + 1, 1);
    const QuatMatrix w2 = rng.gaussian_matrix(cfg.n + 1, 1);
    return gap_ratio(boundary_gaps(z, side, [&](const QuatMatrix& a, const QuatMatrix& b) {
      return std::abs(hp_omega(a, w1, w2) - hp_omega(b, w1, w2));
    }));
  });
}

inline VerificationReport check_cauchy_moment(BoundarySide side, const SampleConfig& cfg, double tolerance = 0.9) {
  const std::string name = side == BoundarySide::head ? "cauchy_moment_head" : "cauchy_moment_tail";
  return check_samples(name, cfg, tolerance, [&](Rng& rng, std::size_t) {
    const QuatMatrix z = random_hp_point(cfg.n, rng);
    return gap_ratio(boundary_gaps(z, side, [](const QuatMatrix& a, const QuatMatrix& b) {
      const auto ma = hp_moment(a);
      const auto mb = hp_moment(b);
      double d = max_abs_diff(ma.first.matrix(), mb.first.matrix());
      for (std::size_t k = 0; k < ma.second.rank(); ++k) d = std::max(d, std::abs(ma.second.x[k] - mb.second.x[k]));
      return d;
    }));
  });
}

inline VerificationReport check_boundary_scan(const std::vector<BoundaryRow>& rows, double tolerance = 1e-4) {
  std::vector<double> residuals;
  for (const auto& r : rows)
    if (r.t >= 0.2 && r.t <= 5.0) residuals.push_back(std::abs(r.closed_form - r.fd_pullback));
  return make_report("boundary_closed_form_vs_fd", residuals, tolerance);
}

inline std::vector<std::string> hpn_conformance_notes() {
  return {
      "map_G orientation: the first homogeneous coordinate is sqrt((1-2x1)/(2x1)), the reciprocal of "
      "sqrt(2x1/(1-2x1)); this sends x1=0 to [1,0,...,0] and x1=1/2 to [0,g.v] and makes map_F o map_G = id.",
      "torus entry: map_F uses diag(e^{i pi lambda},1,...,1), i.e. x1 = lambda/2, not e^{2 i pi lambda}; only this "
      "choice stays in the closed edge and reaches diag(-1,1,...,1) at lambda = 1.",
      "boundary limit: the dx13 dx14 coefficient at [t,1,0,...,0] is -sin(2 pi lambda)(t+1/t)^2, which agrees with the "
      "FD pullback of the stratum form; it tends to +2 pi as t->0 and -2 pi as t->inf. The expression "
      "-2 sin(2 pi lambda)(t+1/t) tends to 0 in both limits, and neither matches a limit of -4 pi.",
      "torus action: t acts on Z_1 by left multiplication e^{2 pi i x1} Z_1, which is well defined on HP^n; "
      "right multiplication Z_1 t_1 does not commute with the right scalars.",
      "C_pq uses exp(-i pi lambda), consistent with (A B^{-1} A^{-1}, B) for B = diag(exp(i pi lambda),1,...,1).",
  };
}

inline std::vector<std::string> general_conformance_notes() {
  return {
      "generating vector fields: xi_M(x) = d/dt exp(t xi).x; with exp(-t xi) axiom (iii) fails by an overall sign.",
      "1-form pairing: (a,b)(X,Y) = (aX,bY) - (aY,bX), inner product (A,B) = Re tr(A B^dag).",
  };
}

}  // namespace qmoment
