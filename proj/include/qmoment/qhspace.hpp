#pragma once

// Uniform contract for quasi-Hamiltonian spaces.
//
// Every space carries a Lie algebra of "frame" vector fields with exact flows
// and exact brackets (left-invariant fields on group factors, fundamental
// fields for homogeneous models). Forms are evaluated on frame vectors, so the
// exterior derivative can be taken with the invariant-frame formula.

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "liegroup.hpp"
#include "quat.hpp"
#include "random.hpp"

namespace qmoment {

struct Point {
  std::vector<QuatMatrix> parts;
  std::vector<double> reals;
};

// Element of the frame algebra; also used as a tangent vector at a point.
struct FrameVec {
  std::vector<QuatMatrix> parts;
  std::vector<double> reals;

  FrameVec& operator+=(const FrameVec& o) {
    check(o);
    for (std::size_t k = 0; k < parts.size(); ++k) parts[k] += o.parts[k];
    for (std::size_t k = 0; k < reals.size(); ++k) reals[k] += o.reals[k];
    return *this;
  }
  FrameVec& operator*=(double s) {
    for (auto& m : parts) m *= s;
    for (auto& r : reals) r *= s;
    return *this;
  }
  void check(const FrameVec& o) const {
    if (parts.size() != o.parts.size() || reals.size() != o.reals.size())
      throw std::invalid_argument("FrameVec: layout mismatch");
  }
};

inline FrameVec operator+(FrameVec a, const FrameVec& b) { return a += b; }
inline FrameVec operator*(double s, FrameVec a) { return a *= s; }
inline FrameVec operator-(const FrameVec& a, const FrameVec& b) { return a + (-1.0) * b; }

inline double dot(const FrameVec& a, const FrameVec& b) {
  a.check(b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.parts.size(); ++k) s += mat_ip(a.parts[k], b.parts[k]);
  for (std::size_t k = 0; k < a.reals.size(); ++k) s += a.reals[k] * b.reals[k];
  return s;
}

enum class FactorKind { group, torus };

struct FactorSpec {
  FactorKind kind = FactorKind::group;
  std::size_t n = 1;
  bool operator==(const FactorSpec&) const = default;
};

// Elements of the acting group / algebra, one per factor. Torus factors use
// diagonal complex matrices (group) and diagonal i-imaginary matrices (algebra).
using SymmetryGroup = std::vector<GroupElement>;
using SymmetryAlgebra = std::vector<AlgebraElement>;
using MomentValue = std::vector<GroupElement>;

inline std::vector<AlgebraElement> factor_basis(const FactorSpec& f) {
  return f.kind == FactorKind::group ? algebra_basis(f.n) : torus_basis(f.n);
}

inline SymmetryGroup random_symmetry(const std::vector<FactorSpec>& fs, Rng& rng) {
  SymmetryGroup out;
  for (const auto& f : fs) {
    if (f.kind == FactorKind::group) {
      out.push_back(random_group(f.n, rng));
    } else {
      std::vector<double> x(f.n);
      for (auto& v : x) v = rng.uniform(-0.5, 0.5);
      out.push_back(TorusCoordinates(x).to_group());
    }
  }
  return out;
}

inline SymmetryAlgebra random_symmetry_algebra(const std::vector<FactorSpec>& fs, Rng& rng) {
  SymmetryAlgebra out;
  for (const auto& f : fs) {
    if (f.kind == FactorKind::group) {
      out.push_back(random_algebra(f.n, rng));
    } else {
      QuatMatrix d(f.n, f.n);
      for (std::size_t k = 0; k < f.n; ++k) d(k, k) = Quaternion(0, rng.normal());
      out.emplace_back(d);
    }
  }
  return out;
}

class QHSpace {
 public:
  virtual ~QHSpace() = default;

  virtual std::string name() const = 0;
  virtual std::size_t dim() const = 0;
  // Factors of the acting group, which is also the codomain of the moment map.
  virtual std::vector<FactorSpec> symmetry() const = 0;

  virtual Point sample(Rng& rng) const = 0;
  virtual FrameVec random_frame(const Point& p, Rng& rng) const = 0;
  virtual FrameVec frame_bracket(const FrameVec& a, const FrameVec& b) const = 0;
  virtual Point flow(const Point& p, const FrameVec& v, double s) const = 0;

  virtual double omega(const Point& p, const FrameVec& v, const FrameVec& w) const = 0;
  virtual MomentValue moment(const Point& p) const = 0;

  // Left-trivialized differential of each moment factor along v.
  virtual std::vector<AlgebraElement> moment_differential(const Point& p, const FrameVec& v, double h) const {
    const MomentValue plus = moment(flow(p, v, h));
    const MomentValue minus = moment(flow(p, v, -h));
    const MomentValue base = moment(p);
    std::vector<AlgebraElement> out;
    for (std::size_t i = 0; i < base.size(); ++i) {
      const QuatMatrix d = (plus[i].matrix() - minus[i].matrix()) * (0.5 / h);
      out.push_back(AlgebraElement::project(mat_dagger(base[i].matrix()) * d));
    }
    return out;
  }

  virtual Point act(const SymmetryGroup& g, const Point& p) const = 0;
  // Frame vector whose value at p is the generating vector field of xi.
  virtual FrameVec fundamental(const Point& p, const SymmetryAlgebra& xi) const = 0;
  // Induced action on frame vectors: the pushforward of v at p is transport(g, p, v) at g.p.
  virtual FrameVec transport(const SymmetryGroup& g, const Point& p, const FrameVec& v) const = 0;

  // dim() frame vectors whose values at p form a basis of T_pM.
  virtual std::vector<FrameVec> tangent_basis(const Point& p) const = 0;
  // Coordinates of the value of v at p in the tangent_basis(p).
  virtual Eigen::VectorXd tangent_coordinates(const Point& p, const FrameVec& v) const = 0;

  virtual double point_distance(const Point& a, const Point& b) const = 0;
};

using SpacePtr = std::shared_ptr<const QHSpace>;

inline double moment_distance(const MomentValue& a, const MomentValue& b) {
  if (a.size() != b.size()) throw std::invalid_argument("moment_distance: factor count mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += max_abs_diff(a[i].matrix(), b[i].matrix());
  return s;
}

}  // namespace qmoment
