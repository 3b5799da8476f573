#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "tsketch/errors.hpp"

namespace tsketch {

/// Per-row leverage upper bounds for the weighted Fourier column space.
struct LevBounds {
  int d = 0;
  int r = 0;                 ///< rank parameter the bounds were built for
  Eigen::VectorXd tau;       ///< one entry per row, each in (0, 1]
  double total = 0.0;        ///< sum of tau
};

/// A reproducible i.i.d.-with-replacement row sampling plan.
///
/// Row i is drawn with probability p_i each draw; the sketch scales a picked
/// row by (m * p_i)^{-1/2}. The same (d, m, seed, probabilities) regenerate
/// the plan bit-for-bit.
struct SamplingPlan {
  int d = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::vector<int> indices;          ///< m sampled row indices
  Eigen::VectorXd probabilities;     ///< per-draw probability of each sampled row
};

/// @brief Exact leverage scores of the rows of A (squared row norms of an
/// orthonormal column-basis factor, via SVD with a relative cutoff).
Eigen::VectorXd exact_leverage_scores(const Eigen::MatrixXd& A);

/// @brief Closed-form, instance-independent leverage upper bounds for any
/// d x r weighted Fourier system, laid out over geometrically shrinking row
/// blocks. Throws BadShape when r < 1 or r > d.
LevBounds universal_tau_bounds(int d, int r);

/// @brief Draws an m-row sampling plan from the distribution induced by
/// bounds: p_i = (tau_i / total + 1/d) / 2. Deterministic in seed.
SamplingPlan draw_sampling_plan(const LevBounds& bounds, int m, std::uint64_t seed);

/// @brief Applies the sketch to a vector: picks plan.indices entries and
/// rescales each by (m * p)^{-1/2}. Throws DimMismatch when x.size() != d.
Eigen::VectorXd apply_sampling(const SamplingPlan& plan, const Eigen::VectorXd& x);

/// @brief Sketch an entire matrix row-wise (each column treated as a vector).
Eigen::MatrixXd apply_sampling_matrix(const SamplingPlan& plan, const Eigen::MatrixXd& A);

/// Result of a subspace-embedding audit for one sketch against one matrix.
struct EmbeddingCheck {
  double worst_low = 1.0;    ///< min ||Sx||/||x|| over the probe set
  double worst_high = 1.0;   ///< max ||Sx||/||x|| over the probe set
  bool pass = false;         ///< both within [1-beta, 1+beta]
};

/// @brief Audits whether the sketch preserves column-space norms of A to
/// relative error beta, probing the right singular vectors and seeded random
/// combinations. Columns with negligible norm are skipped.
EmbeddingCheck subspace_embedding_check(const SamplingPlan& plan, const Eigen::MatrixXd& A,
                                        double beta, std::uint64_t probe_seed = 12345);

}  // namespace tsketch
