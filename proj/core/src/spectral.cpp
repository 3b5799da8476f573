#include "tsketch/spectral.hpp"

#include <cmath>
#include <cstdint>

namespace tsketch {

SpectralSummary eig_sym(const SymToeplitz& T) {
  if (!T.first_column.allFinite()) {
    throw NonFiniteInput("eig_sym: first column contains NaN or infinity");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(T.dense());
  if (solver.info() != Eigen::Success) {
    throw Error("eig_sym: eigensolver failed to converge");
  }

  const int d = T.d;
  SpectralSummary out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  // Eigen returns ascending order; flip to descending.
  for (int i = 0; i < d; ++i) {
    out.eigenvalues[i] = solver.eigenvalues()[d - 1 - i];
    out.eigenvectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  // Deterministic sign convention: first entry of magnitude > 1e-12 positive.
  for (int i = 0; i < d; ++i) {
    for (int row = 0; row < d; ++row) {
      const double v = out.eigenvectors(row, i);
      if (std::abs(v) > 1e-12) {
        if (v < 0) out.eigenvectors.col(i) = -out.eigenvectors.col(i);
        break;
      }
    }
  }
  const double lambda_max = out.eigenvalues[0];
  const double lambda_min = out.eigenvalues[d - 1];
  out.psd = lambda_min >= -1e-9 * std::max(lambda_max, 0.0);
  return out;
}

RankKApprox best_rank_k(const SymToeplitz& T, int k) {
  if (k < 0 || k > T.d) throw BadRank("best_rank_k: k must lie in [0, d]");
  const SpectralSummary s = eig_sym(T);

  RankKApprox out;
  out.matrix = Eigen::MatrixXd::Zero(T.d, T.d);
  for (int i = 0; i < k; ++i) {
    out.matrix.noalias() +=
        s.eigenvalues[i] * (s.eigenvectors.col(i) * s.eigenvectors.col(i).transpose());
  }
  double tail = 0.0;
  for (int i = k; i < T.d; ++i) tail += s.eigenvalues[i] * s.eigenvalues[i];
  out.error = std::sqrt(tail);
  return out;
}

Rank1ToeplitzApprox best_rank1_toeplitz_bruteforce(const SymToeplitz& T) {
  const int d = T.d;
  if (d > 14) {
    throw TooLargeForBruteForce("best_rank1_toeplitz_bruteforce: d must be <= 14");
  }
  const Eigen::MatrixXd dense = T.dense();
  const double frob_sq = dense.squaredNorm();
  const double dd = static_cast<double>(d) * static_cast<double>(d);

  double best_quad = 0.0;  // s^T T s of the best Toeplitz-valid pattern
  std::vector<int> best_s(d, 1);
  bool found = false;

  std::vector<int> s(d);
  const std::uint32_t patterns = d == 1 ? 1u : (1u << (d - 1));
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    s[0] = 1;
    for (int i = 1; i < d; ++i) s[i] = (mask >> (i - 1)) & 1u ? -1 : 1;

    // Keep only patterns whose outer product is Toeplitz: s_i * s_{i+m}
    // must be constant in i for every offset m.
    bool toeplitz = true;
    for (int m = 1; m < d && toeplitz; ++m) {
      const int ref = s[0] * s[m];
      for (int i = 1; i + m < d; ++i) {
        if (s[i] * s[i + m] != ref) {
          toeplitz = false;
          break;
        }
      }
    }
    if (!toeplitz) continue;

    double quad = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) quad += dense(i, j) * s[i] * s[j];

    // error^2 = ||T||_F^2 - (s^T T s)^2 / d^2: maximize |s^T T s|.
    if (!found || std::abs(quad) > std::abs(best_quad)) {
      found = true;
      best_quad = quad;
      best_s = s;
    }
  }

  const double c = best_quad / dd;
  Eigen::VectorXd col(d);
  for (int t = 0; t < d; ++t) col[t] = c * best_s[0] * best_s[t];

  Rank1ToeplitzApprox out;
  out.approx = SymToeplitz(d, std::move(col));
  out.error = std::sqrt(std::max(0.0, frob_sq - best_quad * best_quad / dd));
  return out;
}

}  // namespace tsketch
