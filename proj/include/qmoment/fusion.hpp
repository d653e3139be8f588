#pragma once

// Internal fusion of two group factors and products of spaces.
//
// Fusing factors i < j of a G x G x H-space gives a G x H-space with the
// diagonal action, moment Phi_i Phi_j (placed at position i), and 2-form
//   omega + 1/2 (Phi_i^* theta_L, Phi_j^* theta_R).

#include <memory>

#include "qhspace.hpp"

namespace qmoment {

class FusedSpace final : public QHSpace {
 public:
  FusedSpace(SpacePtr base, std::size_t i = 0, std::size_t j = 1) : base_(std::move(base)), i_(i), j_(j) {
    const auto fs = base_->symmetry();
    if (i_ >= j_ || j_ >= fs.size())
      throw std::invalid_argument("fuse: moment codomain lacks the two factors to fuse");
    if (fs[i_].kind != FactorKind::group || fs[j_].kind != FactorKind::group || fs[i_].n != fs[j_].n)
      throw std::invalid_argument("fuse: factors must be equal-rank Sp(n) factors");
  }

  const QHSpace& base() const { return *base_; }

  std::string name() const override { return "fused(" + base_->name() + ")"; }
  std::size_t dim() const override { return base_->dim(); }
  std::vector<FactorSpec> symmetry() const override {
    auto fs = base_->symmetry();
    fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(j_));
    return fs;
  }

  Point sample(Rng& rng) const override { return base_->sample(rng); }
  FrameVec random_frame(const Point& p, Rng& rng) const override { return base_->random_frame(p, rng); }
  FrameVec frame_bracket(const FrameVec& a, const FrameVec& b) const override { return base_->frame_bracket(a, b); }
  Point flow(const Point& p, const FrameVec& v, double s) const override { return base_->flow(p, v, s); }

  double omega(const Point& p, const FrameVec& v, const FrameVec& w) const override {
    const double h = kMomentStep;
    const auto dv = base_->moment_differential(p, v, h);
    const auto dw = base_->moment_differential(p, w, h);
    const GroupElement phi_j = base_->moment(p)[j_];
    const double correction = ip(dv[i_], adjoint(phi_j, dw[j_])) - ip(dw[i_], adjoint(phi_j, dv[j_]));
    return base_->omega(p, v, w) + 0.5 * correction;
  }
  MomentValue moment(const Point& p) const override { return fuse(base_->moment(p)); }
  std::vector<AlgebraElement> moment_differential(const Point& p, const FrameVec& v, double h) const override {
    auto d = base_->moment_differential(p, v, h);
    const GroupElement phi_j = base_->moment(p)[j_];
    d[i_] = adjoint(phi_j.inverse(), d[i_]) + d[j_];
    d.erase(d.begin() + static_cast<std::ptrdiff_t>(j_));
    return d;
  }

  Point act(const SymmetryGroup& g, const Point& p) const override { return base_->act(expand(g), p); }
  FrameVec fundamental(const Point& p, const SymmetryAlgebra& xi) const override {
    return base_->fundamental(p, expand(xi));
  }
  FrameVec transport(const SymmetryGroup& g, const Point& p, const FrameVec& v) const override {
    return base_->transport(expand(g), p, v);
  }

  std::vector<FrameVec> tangent_basis(const Point& p) const override { return base_->tangent_basis(p); }
  Eigen::VectorXd tangent_coordinates(const Point& p, const FrameVec& v) const override {
    return base_->tangent_coordinates(p, v);
  }
  double point_distance(const Point& a, const Point& b) const override { return base_->point_distance(a, b); }

  // FD step used when the base space has no exact moment differential.
  static constexpr double kMomentStep = 1e-5;

 private:
  MomentValue fuse(MomentValue m) const {
    m[i_] = m[i_] * m[j_];
    m.erase(m.begin() + static_cast<std::ptrdiff_t>(j_));
    return m;
  }
  template <class T>
  std::vector<T> expand(const std::vector<T>& g) const {
    std::vector<T> out = g;
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(j_), g.at(i_));
    return out;
  }

  SpacePtr base_;
  std::size_t i_;
  std::size_t j_;
};

inline std::shared_ptr<FusedSpace> fuse_double(SpacePtr d, std::size_t i = 0, std::size_t j = 1) {
  return std::make_shared<FusedSpace>(std::move(d), i, j);
}

// Cartesian product M1 x M2 with the product of the two symmetry groups.
class ProductSpace final : public QHSpace {
 public:
  // Point and frame layouts of the first factor are read off from a sample.
  ProductSpace(SpacePtr a, SpacePtr b) : a_(std::move(a)), b_(std::move(b)) {
    Rng rng(0);
    const Point la = a_->sample(rng);
    const FrameVec fa = a_->random_frame(la, rng);
    pa_ = la.parts.size();
    ra_ = la.reals.size();
    fpa_ = fa.parts.size();
    fra_ = fa.reals.size();
  }

  std::string name() const override { return a_->name() + "x" + b_->name(); }
  std::size_t dim() const override { return a_->dim() + b_->dim(); }
  std::vector<FactorSpec> symmetry() const override {
    auto fs = a_->symmetry();
    for (const auto& f : b_->symmetry()) fs.push_back(f);
    return fs;
  }

  Point sample(Rng& rng) const override { return join(a_->sample(rng), b_->sample(rng)); }
  FrameVec random_frame(const Point& p, Rng& rng) const override {
    auto [pa, pb] = split(p);
    return join(a_->random_frame(pa, rng), b_->random_frame(pb, rng));
  }
  FrameVec frame_bracket(const FrameVec& x, const FrameVec& y) const override {
    auto [xa, xb] = split(x);
    auto [ya, yb] = split(y);
    return join(a_->frame_bracket(xa, ya), b_->frame_bracket(xb, yb));
  }
  Point flow(const Point& p, const FrameVec& v, double s) const override {
    auto [pa, pb] = split(p);
    auto [va, vb] = split(v);
    return join(a_->flow(pa, va, s), b_->flow(pb, vb, s));
  }
  double omega(const Point& p, const FrameVec& v, const FrameVec& w) const override {
    auto [pa, pb] = split(p);
    auto [va, vb] = split(v);
    auto [wa, wb] = split(w);
    return a_->omega(pa, va, wa) + b_->omega(pb, vb, wb);
  }
  MomentValue moment(const Point& p) const override {
    auto [pa, pb] = split(p);
    auto m = a_->moment(pa);
    for (auto& g : b_->moment(pb)) m.push_back(g);
    return m;
  }
  std::vector<AlgebraElement> moment_differential(const Point& p, const FrameVec& v, double h) const override {
    auto [pa, pb] = split(p);
    auto [va, vb] = split(v);
    auto d = a_->moment_differential(pa, va, h);
    for (auto& x : b_->moment_differential(pb, vb, h)) d.push_back(x);
    return d;
  }
  Point act(const SymmetryGroup& g, const Point& p) const override {
    auto [pa, pb] = split(p);
    auto [ga, gb] = split_sym(g);
    return join(a_->act(ga, pa), b_->act(gb, pb));
  }
  FrameVec fundamental(const Point& p, const SymmetryAlgebra& xi) const override {
    auto [pa, pb] = split(p);
    auto [xa, xb] = split_sym(xi);
    return join(a_->fundamental(pa, xa), b_->fundamental(pb, xb));
  }
  FrameVec transport(const SymmetryGroup& g, const Point& p, const FrameVec& v) const override {
    auto [pa, pb] = split(p);
    auto [ga, gb] = split_sym(g);
    auto [va, vb] = split(v);
    return join(a_->transport(ga, pa, va), b_->transport(gb, pb, vb));
  }
  std::vector<FrameVec> tangent_basis(const Point& p) const override {
    auto [pa, pb] = split(p);
    const auto ba = a_->tangent_basis(pa);
    const auto bb = b_->tangent_basis(pb);
    Rng rng(0);
    const FrameVec za = 0.0 * a_->random_frame(pa, rng);
    const FrameVec zb = 0.0 * b_->random_frame(pb, rng);
    std::vector<FrameVec> out;
    for (const auto& x : ba) out.push_back(join(x, zb));
    for (const auto& x : bb) out.push_back(join(za, x));
    return out;
  }
  Eigen::VectorXd tangent_coordinates(const Point& p, const FrameVec& v) const override {
    auto [pa, pb] = split(p);
    auto [va, vb] = split(v);
    const Eigen::VectorXd ca = a_->tangent_coordinates(pa, va);
    const Eigen::VectorXd cb = b_->tangent_coordinates(pb, vb);
    Eigen::VectorXd c(ca.size() + cb.size());
    c << ca, cb;
    return c;
  }
  double point_distance(const Point& x, const Point& y) const override {
    auto [xa, xb] = split(x);
    auto [ya, yb] = split(y);
    return a_->point_distance(xa, ya) + b_->point_distance(xb, yb);
  }

 private:
  template <class T>
  static T join(T a, const T& b) {
    a.parts.insert(a.parts.end(), b.parts.begin(), b.parts.end());
    a.reals.insert(a.reals.end(), b.reals.begin(), b.reals.end());
    return a;
  }
  template <class T>
  static std::pair<T, T> split_at(const T& x, std::size_t np, std::size_t nr) {
    T a, b;
    a.parts.assign(x.parts.begin(), x.parts.begin() + static_cast<std::ptrdiff_t>(np));
    b.parts.assign(x.parts.begin() + static_cast<std::ptrdiff_t>(np), x.parts.end());
    a.reals.assign(x.reals.begin(), x.reals.begin() + static_cast<std::ptrdiff_t>(nr));
    b.reals.assign(x.reals.begin() + static_cast<std::ptrdiff_t>(nr), x.reals.end());
    return {a, b};
  }
  std::pair<Point, Point> split(const Point& p) const { return split_at(p, pa_, ra_); }
  std::pair<FrameVec, FrameVec> split(const FrameVec& v) const { return split_at(v, fpa_, fra_); }
  template <class T>
  std::pair<std::vector<T>, std::vector<T>> split_sym(const std::vector<T>& g) const {
    const std::size_t k = a_->symmetry().size();
    return {std::vector<T>(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(k)),
            std::vector<T>(g.begin() + static_cast<std::ptrdiff_t>(k), g.end())};
  }

  SpacePtr a_;
  SpacePtr b_;
  std::size_t pa_ = 0, ra_ = 0, fpa_ = 0, fra_ = 0;
};

inline std::shared_ptr<ProductSpace> product_space(SpacePtr a, SpacePtr b) {
  return std::make_shared<ProductSpace>(std::move(a), std::move(b));
}

}  // namespace qmoment
