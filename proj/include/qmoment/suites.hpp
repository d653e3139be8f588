#pragma once
// Named verification suites: the per-space axiom suite, the HP^n suite, and
// the stratum and centralizer checks.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "alcove.hpp"
#include "conjclass.hpp"
#include "double.hpp"
#include "fusion.hpp"
#include "hpn.hpp"
#include "implosion.hpp"
#include "verify.hpp"

namespace qmoment {

struct Tolerances {
  double axiom_one = 1e-4;
  double axiom_two = 1e-6;
  double axiom_three = 1e-5;
  double equivariance = 1e-10;
  double fundamental = 1e-6;
  double roundtrip = 1e-10;
  double forms_exact = 1e-8;
  double forms_fd = 1e-4;
  double moment = 1e-8;
  double moment_base = 1e-6;
  double cauchy = 0.9;
  double representative = 1e-10;
};

struct Suite {
  std::string name;
  std::vector<VerificationReport> checks;
  std::vector<std::string> notes;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
};

// The three axioms plus equivariance, invariance of omega and the fundamental fields.
inline std::vector<VerificationReport> space_checks(const QHSpace& space, const SampleConfig& cfg, const Tolerances& tol) {
  return {check_axiom_one(space, cfg, tol.axiom_one),        check_axiom_two(space, cfg, tol.axiom_two),
          check_axiom_three(space, cfg, tol.axiom_three),    check_equivariance(space, cfg, tol.equivariance),
          check_omega_invariance(space, cfg, tol.equivariance), check_fundamental_fields(space, cfg, tol.fundamental)};
}

// xi-representative and coset-representative independence of stratum_omega.
inline VerificationReport check_stratum_representatives(const AlcoveFace& face, const SampleConfig& cfg,
                                                        double tolerance = 1e-10) {
  require_supported_face(face);
  const FaceData fd(face);
  const StratumSpace space(face);
  const auto commutator = basis_from_coordinates(face.n, fd.commutator);
  return check_samples("stratum_representative_independence", cfg, tolerance, [&](Rng& rng, std::size_t) {
    const Point pt = space.sample(rng);
    const StratumPoint p = space.unpack(pt);
    const StratumTangent t1 = space.tangent(space.random_frame(pt, rng));
    const StratumTangent t2 = space.tangent(space.random_frame(pt, rng));
    const StratumTangent c1{fd.canonicalize(t1.xi), t1.eta};
    const StratumTangent c2{fd.canonicalize(t2.xi), t2.eta};
    const double base = stratum_omega(fd, p, c1, c2);

    AlgebraElement shift = AlgebraElement::zero(face.n);
    for (const auto& b : commutator) shift = shift + rng.normal() * b;
    double d = std::abs(stratum_omega_upstairs(p.x, c1.xi + shift, c1.eta, c2.xi, c2.eta) - base);
    d = std::max(d, std::abs(stratum_omega_upstairs(p.x, c1.xi, c1.eta, c2.xi - shift, c2.eta) - base));

    // Coset change g -> g k with k in the commutator subgroup; left-invariant
    // frames transform by Ad_{k^{-1}}.
    const GroupElement k = exp(0.7 * shift);
    const StratumPoint q{face, p.g * k, p.x};
    const StratumTangent k1{adjoint(k.inverse(), c1.xi), c1.eta};
    const StratumTangent k2{adjoint(k.inverse(), c2.xi), c2.eta};
    d = std::max(d, std::abs(stratum_omega(fd, q, k1, k2) - base));
    d = std::max(d, stratum_distance(p, q));
    return d;
  });
}

inline std::size_t expected_centralizer_dimension(const AlcoveFace& face) {
  const std::size_t n = face.n;
  if (face == AlcoveFace::sigma0(n)) return n * (2 * n + 1);
  if (face == AlcoveFace::sigma01(n)) return 1 + (n - 1) * (2 * n - 1);
  if (face == AlcoveFace::sigma1(n)) return 3 + (n - 1) * (2 * n - 1);
  throw std::invalid_argument("expected_centralizer_dimension: face has no closed form");
}

// |numeric kernel dimension - closed form| at the barycenters of sigma0, sigma01, sigma1.
inline VerificationReport check_centralizer_dimensions(std::size_t n) {
  std::vector<double> residuals;
  for (const auto& face : {AlcoveFace::sigma0(n), AlcoveFace::sigma01(n), AlcoveFace::sigma1(n)}) {
    const auto numeric = centralizer_algebra(TorusCoordinates(face.barycenter())).size();
    residuals.push_back(std::abs(static_cast<double>(numeric) - static_cast<double>(expected_centralizer_dimension(face))));
  }
  return make_report("centralizer_dimensions", residuals, 0.0);
}

inline std::vector<std::string> space_kinds() { return {"double", "conjclass", "fused", "stratum", "hpn"}; }

// Space selector used by the CLI and the acceptance binary. For "fused" the
// double of Sp(n) is fused internally; "stratum" takes the face name.
inline SpacePtr make_space(const std::string& kind, std::size_t n, const std::string& face = "sigma01") {
  require_rank(n);
  if (kind == "double") return std::make_shared<DoubleSpace>(n);
  if (kind == "conjclass") return conjclass_make(generic_torus_point(n).to_group());
  if (kind == "fused") return fuse_double(std::make_shared<DoubleSpace>(n));
  if (kind == "stratum") {
    if (face == "sigma01") return stratum_space(AlcoveFace::sigma01(n));
    if (face == "sigma1") return stratum_space(AlcoveFace::sigma1(n));
    throw std::invalid_argument("make_space: unsupported face '" + face + "'");
  }
  if (kind == "hpn") return std::make_shared<HPnSpace>(n);
  throw std::invalid_argument("make_space: unknown space '" + kind + "'");
}

// HP^n: axioms on the space, roundtrips, equivariance, the three form agreements,
// moment consistency, and Cauchy scans towards both boundary faces.
inline Suite hpn_suite(const SampleConfig& cfg, const Tolerances& tol) {
  Suite s{"hpn", {}, hpn_conformance_notes()};
  const HPnSpace space(cfg.n);
  for (auto& r : space_checks(space, cfg, tol)) s.checks.push_back(std::move(r));
  s.checks.push_back(check_roundtrip_FG(cfg, tol.roundtrip));
  s.checks.push_back(check_roundtrip_GF(cfg, tol.roundtrip));
  s.checks.push_back(check_G_equivariance(cfg, tol.equivariance));
  s.checks.push_back(check_projective_invariance(cfg, tol.equivariance));
  s.checks.push_back(check_form_agreement(FormPair::chart_homogeneous, cfg, tol.forms_exact));
  s.checks.push_back(check_form_agreement(FormPair::chart_fd, cfg, tol.forms_fd));
  s.checks.push_back(check_form_agreement(FormPair::homogeneous_fd, cfg, tol.forms_fd));
  s.checks.push_back(check_moment_consistency(cfg, tol.moment));
  s.checks.push_back(check_moment_at_base(cfg, tol.moment_base));
  for (auto side : {BoundarySide::head, BoundarySide::tail}) {
    s.checks.push_back(check_cauchy_omega(side, cfg, tol.cauchy));
    s.checks.push_back(check_cauchy_moment(side, cfg, tol.cauchy));
  }
  return s;
}

inline Suite verify_suite(const std::string& kind, const SampleConfig& cfg, const Tolerances& tol,
                          const std::string& face = "sigma01") {
  cfg.validate();
  if (kind == "hpn") return hpn_suite(cfg, tol);
  const SpacePtr space = make_space(kind, cfg.n, face);
  Suite s{kind, space_checks(*space, cfg, tol), general_conformance_notes()};
  if (kind == "stratum") {
    const AlcoveFace f = face == "sigma1" ? AlcoveFace::sigma1(cfg.n) : AlcoveFace::sigma01(cfg.n);
    s.checks.push_back(check_stratum_representatives(f, cfg, tol.representative));
    s.checks.push_back(check_centralizer_dimensions(cfg.n));
  }
  return s;
}

inline Suite roundtrip_suite(const SampleConfig& cfg, const Tolerances& tol) {
  Suite s{"roundtrip", {}, hpn_conformance_notes()};
  s.checks.push_back(check_roundtrip_FG(cfg, tol.roundtrip));
  s.checks.push_back(check_roundtrip_GF(cfg, tol.roundtrip));
  s.checks.push_back(check_G_equivariance(cfg, tol.equivariance));
  s.checks.push_back(check_projective_invariance(cfg, tol.equivariance));
  return s;
}

inline Suite forms_suite(const SampleConfig& cfg, const Tolerances& tol) {
  Suite s{"forms", {}, hpn_conformance_notes()};
  s.checks.push_back(check_form_agreement(FormPair::chart_homogeneous, cfg, tol.forms_exact));
  s.checks.push_back(check_form_agreement(FormPair::chart_fd, cfg, tol.forms_fd));
  s.checks.push_back(check_form_agreement(FormPair::homogeneous_fd, cfg, tol.forms_fd));
  return s;
}

}  // namespace qmoment
