#pragma once

#include <vector>

#include "quatdmd/quaternion_matrix.hpp"

namespace quatdmd {

/// Reduced quaternion SVD  Q = U diag(sigma) V^H  truncated to numerical rank.
struct Qsvd {
  QuaternionMatrix u;          // M x r, orthonormal columns
  std::vector<double> sigma;   // r entries, descending, all > 0
  QuaternionMatrix v;          // N x r, orthonormal columns

  std::size_t rank() const noexcept { return sigma.size(); }
};

/// Computes the QSVD through the complex SVD of chi(Q).
///
/// Singular values of chi(Q) come in equal pairs, and the left/right singular
/// vectors of each pair are related by the antilinear map J(a; b) = (-b*; a*),
/// which corresponds to right-multiplication by j. One vector per pair is kept
/// and mapped back to H^M via (a; b) -> a - b* j. When pairs are well
/// separated this is the odd-column extraction; for repeated singular values
/// the kept vectors are additionally orthogonalised against the J-images of
/// earlier ones so the quaternion columns stay independent.
///
/// Rank truncation keeps sigma_k > max(M, N) * sigma_1 * eps. The zero matrix
/// yields r = 0.
Qsvd qsvd(const QuaternionMatrix& q);

/// Moore-Penrose pseudoinverse V diag(1/sigma) U^H.
QuaternionMatrix pseudoinverse(const QuaternionMatrix& q);

/// Right eigenpairs in standard form: Q v_k = v_k lambda_k, lambda_k complex
/// with Im >= 0 (stored as quaternions with zero j, k parts).
struct QEigen {
  std::vector<Quaternion> values;
  QuaternionMatrix vectors;  // column k pairs with values[k]
};

/// Standard eigenvalues and right eigenvectors of a square quaternion matrix,
/// from the eigendecomposition of chi(Q).
///
/// The 2M eigenvalues of chi(Q) are matched into conjugate pairs (tolerance
/// 1e-7 * ||Q||_F); one representative with Im >= 0 is kept per pair. Each
/// eigenvector is scaled to unit 2-norm and phase-fixed so its first
/// largest-magnitude entry has a real positive complex part (fully real for
/// real eigenvalues).
///
/// Throws Error(shape) for non-square input, Error(pairing_failure) when the
/// spectrum of chi(Q) does not pair up.
QEigen standard_eigen(const QuaternionMatrix& q);

struct SpectralDecomposition {
  QuaternionMatrix phi;              // eigenvectors, M x M
  std::vector<Quaternion> lambda;    // standard eigenvalues
  double inverse_condition = 0.0;    // sigma_min / sigma_max of phi
};

/// Q = Phi diag(Lambda) Phi^+. Throws NonDiagonalizableError when the
/// eigenvector basis has sigma_min <= 1e-10 * sigma_max.
SpectralDecomposition spectral_decomposition(const QuaternionMatrix& q);

/// Phi diag(Lambda) Phi^+ (Lambda multiplies from the right of each column).
QuaternionMatrix spectral_reconstruct(const QuaternionMatrix& phi,
                                      const std::vector<Quaternion>& lambda);

}  // namespace quatdmd
