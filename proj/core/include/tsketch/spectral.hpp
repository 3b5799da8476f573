#pragma once

#include <Eigen/Dense>

#include "tsketch/toeplitz.hpp"

namespace tsketch {

/// Dense symmetric eigendecomposition, eigenvalues sorted descending.
struct SpectralSummary {
  Eigen::VectorXd eigenvalues;   // nonincreasing
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, aligned with eigenvalues
  bool psd = false;              // lambda_min >= -1e-9 * lambda_max
};

/// Best rank-k approximation (projection onto top-k eigenvectors).
struct RankKApprox {
  Eigen::MatrixXd matrix;
  double error = 0.0;  // ||T - T_k||_F = sqrt(sum_{i>k} lambda_i^2)
};

/// Best rank-1 *Toeplitz* approximation found by exhaustive sign-pattern
/// search (c * s s^T with s in {+-1}^d and s s^T Toeplitz).
struct Rank1ToeplitzApprox {
  SymToeplitz approx;
  double error = 0.0;
};

/// Full symmetric eigendecomposition of a Toeplitz matrix (dense oracle).
/// Eigenvector sign convention: first entry of magnitude > 1e-12 is positive,
/// making results reproducible under eigenvalue ties.
/// Throws NonFiniteInput if the first column contains NaN/inf.
SpectralSummary eig_sym(const SymToeplitz& T);

/// Projection of T onto its top-k eigenvectors plus the exact Frobenius
/// error sqrt(sum_{i>k} lambda_i^2). Throws BadRank unless 0 <= k <= d.
RankKApprox best_rank_k(const SymToeplitz& T, int k);

/// Minimizer of ||T - c s s^T||_F over scalars c and sign vectors s with
/// s s^T symmetric Toeplitz, by exhaustive enumeration of all 2^{d-1} sign
/// patterns (s[0] = +1) filtered to the Toeplitz-valid ones.
/// Throws TooLargeForBruteForce when d > 14.
Rank1ToeplitzApprox best_rank1_toeplitz_bruteforce(const SymToeplitz& T);

}  // namespace tsketch
