#pragma once

// Real dense linear-algebra helpers: kernels, ranges, principal angles.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace qmoment::linalg {

// Orthonormal basis (columns) of ker M; singular values <= threshold count as zero.
inline Eigen::MatrixXd null_space(const Eigen::MatrixXd& m, double threshold) {
  if (m.cols() == 0) return Eigen::MatrixXd(0, 0);
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    if (j >= sv.size() || sv(j) <= threshold) keep.push_back(j);
  Eigen::MatrixXd k(m.cols(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) k.col(static_cast<Eigen::Index>(c)) = svd.matrixV().col(keep[c]);
  return k;
}

// Orthonormal basis of the column space; singular values <= rel * sigma_max are dropped.
inline Eigen::MatrixXd range_basis(const Eigen::MatrixXd& m, double rel) {
  if (m.cols() == 0 || m.rows() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < sv.size() && smax > 0.0 && sv(rank) > rel * smax) ++rank;
  return svd.matrixU().leftCols(rank);
}

// Orthonormal complement of the column span of an orthonormal Q inside R^d.
inline Eigen::MatrixXd complement(const Eigen::MatrixXd& q, Eigen::Index d) {
  if (q.cols() == 0) return Eigen::MatrixXd::Identity(d, d);
  return null_space(q.transpose(), 1e-10);
}

struct SubspaceComparison {
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;
  std::vector<double> angles;  // ascending, in [0, pi/2]

  bool same_dimension() const { return dim_a == dim_b; }
  double max_angle() const { return angles.empty() ? 0.0 : angles.back(); }
};

// Principal angles between span(A) and span(B), both given by orthonormal columns.
// Small angles come from the sines (residual of projecting B onto A), large ones
// from the cosines, so both ends are resolved to working precision.
inline SubspaceComparison principal_angles(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  SubspaceComparison out;
  out.dim_a = a.cols();
  out.dim_b = b.cols();
  const Eigen::Index k = std::min(a.cols(), b.cols());
  if (k == 0) return out;
  const Eigen::MatrixXd& small = a.cols() <= b.cols() ? a : b;
  const Eigen::MatrixXd& large = a.cols() <= b.cols() ? b : a;
  Eigen::JacobiSVD<Eigen::MatrixXd> cos_svd(large.transpose() * small);
  const Eigen::MatrixXd resid = small - large * (large.transpose() * small);
  Eigen::JacobiSVD<Eigen::MatrixXd> sin_svd(resid);
  const auto& c = cos_svd.singularValues();  // descending
  const auto& s = sin_svd.singularValues();  // descending
  for (Eigen::Index t = 0; t < k; ++t) {
    const double cv = std::clamp(c(t), 0.0, 1.0);
    const double sv = std::clamp(s(k - 1 - t), 0.0, 1.0);
    out.angles.push_back(std::atan2(sv, cv));
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

}  // namespace qmoment::linalg
