#pragma once

namespace qmoment::tol {

// Algebraic identities (products, embeddings, skew-Hermitian membership).
inline constexpr double algebraic = 1e-12;
// Membership of Sp(n): ||A^dag A - I||.
inline constexpr double membership = 1e-10;
// Singular-value threshold for numerically computed kernels.
inline constexpr double kernel = 1e-8;
// Block-symmetry check when leaving the complex embedding.
inline constexpr double embedding = 1e-10;

}  // namespace qmoment::tol
