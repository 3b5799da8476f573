#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tsketch/leverage.hpp"
#include "tsketch/toeplitz.hpp"

namespace tsketch {

/// Candidate frequency-support family: multisets of up to r1 centers, each
/// expanded into the 2*r2 grid points {center +- j*gamma, j = 1..r2}.
struct SearchSpace {
  int d = 0;
  int r1 = 1;
  int r2 = 1;
  double gamma = 0.0;
  std::vector<double> centers;  ///< (2j+1)/(2d) for 2j+1 < d, in (0, 1/2)
};

/// @brief Builds the search space over the canonical off-grid centers.
/// Throws BadShape on non-positive parameters.
SearchSpace make_search_space(int d, int r1, int r2, double gamma);

/// @brief All multisets of r1 center indices (nondecreasing index tuples).
/// Throws ExplosionGuard when |centers|^r1 exceeds 1e6.
std::vector<std::vector<int>> enumerate_candidates(const SearchSpace& space);

/// @brief Expands a multiset of center indices into its frequency set:
/// union of {center +- j*gamma}, clamped inward into (0, 1/2) by gamma steps
/// and deduplicated at tolerance gamma/4. The centers themselves are not
/// included.
FrequencySet candidate_frequencies(const SearchSpace& space, const std::vector<int>& multiset);

/// Least-squares fit of a frequency set against sampled column entries.
struct RegressionResult {
  FrequencySet freqs;
  Eigen::VectorXd weights;
  double sampled_residual = 0.0;
  bool underdetermined = false;  ///< fewer samples than unknowns (min-norm fit)
};

/// @brief Solves min_a || S W (F_S R_S a - t) || over the plan's sampled
/// rows, where target_at_samples holds the raw column values t at
/// plan.indices. Uses an SVD with relative cutoff sv_cutoff; reports the
/// min-norm solution and flags underdetermined systems.
RegressionResult solve_sampled_regression(const FrequencySet& S, const SamplingPlan& plan,
                                          const Eigen::VectorXd& target_at_samples, int d,
                                          double sv_cutoff = 1e-10);

/// How a stage scans the candidate family.
enum class RecoveryMode { kExhaustive, kGreedy };

/// Winner of one recovery stage.
struct StageResult {
  FourierFactor factor;
  double sampled_residual = 0.0;
  bool underdetermined = false;
  std::vector<int> chosen;  ///< center-index multiset of the winner
};

/// @brief Stage 1: constant-factor fit. Scans the candidate family against
/// one fixed sampling plan and returns the candidate with the smallest
/// sampled residual (ties broken by enumeration order, i.e. lexicographically
/// by center indices).
StageResult stage1_constant(const SearchSpace& space, const SamplingPlan& plan,
                            const Eigen::VectorXd& target_at_samples, RecoveryMode mode,
                            double sv_cutoff = 1e-10);

/// @brief Stage 2: residual refinement over the doubled family (the caller
/// passes a space whose r1 is already doubled). Also considers the empty
/// candidate, so a pure-noise residual can be left alone.
StageResult stage2_refine(const SearchSpace& space, const SamplingPlan& plan,
                          const Eigen::VectorXd& residual_at_samples, RecoveryMode mode,
                          double sv_cutoff = 1e-10);

/// @brief Greedy scan: budget rounds of best-single-center addition, then
/// one backtracking sweep that retries every chosen slot. budget == 0 yields
/// the empty candidate.
StageResult greedy_search(const SearchSpace& space, const SamplingPlan& plan,
                          const Eigen::VectorXd& target_at_samples, int budget,
                          double sv_cutoff = 1e-10);

/// Knobs for end-to-end recovery. Zero-valued sizes mean "use the default
/// formula documented in recover()".
struct RecoveryConfig {
  int k = 1;
  double eps = 0.5;
  double delta = 1e-3;
  RecoveryMode mode = RecoveryMode::kExhaustive;
  int m1 = 0;
  int m2 = 0;
  int r1 = 0;
  int r2 = 0;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  double sv_cutoff = 1e-10;
  bool project_psd = false;
};

/// Result of recover(): the factor, what it cost in matrix reads, the two
/// stage residuals, and the fully resolved configuration.
struct RecoveredFactor {
  FourierFactor factor;
  QueryLedger ledger;
  std::array<double, 2> stage_errors = {0.0, 0.0};
  RecoveryConfig config;  ///< with all defaults resolved
};

/// @brief Two-stage sublinear recovery of a near-optimal Toeplitz Fourier
/// factor. Matrix entries are read only at the lags of the two sampling
/// plans (seeded from config.seed streams 1 and 2); the ledger records every
/// read. Defaults: r1 = k*ceil(log2 d), r2 = ceil(log2 d + log2(1/delta)),
/// gamma = 1/(8 d r2), m1 = min(d, ceil(16 * tau_total * ln(1/eta))) with
/// eta = 1/(100 |centers|^r1) capped so ln(1/eta) <= 64, m2 = min(d, 4 m1).
RecoveredFactor recover(const SymToeplitz& T, const RecoveryConfig& config);

/// @brief Exact Frobenius distance || T - synth(factor) ||_F via the
/// weighted-column identity. Reads T directly (no ledger) — oracle use only.
double evaluate_true_error(const SymToeplitz& T, const FourierFactor& factor);

}  // namespace tsketch
