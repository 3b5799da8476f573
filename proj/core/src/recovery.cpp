#include "tsketch/recovery.hpp"

#include <algorithm>
#include <cmath>

#include "tsketch/rng.hpp"

namespace tsketch {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double clamp_inward(double f, double lo, double hi, double gamma) {
  while (f <= lo) f += gamma;
  while (f >= hi) f -= gamma;
  return f;
}

/// Synthesized first-column value sum_f 2 a_f cos(2 pi f t) at one lag.
double factor_column_at(const FourierFactor& factor, int t) {
  const auto& freqs = factor.freqs.values();
  double acc = 0.0;
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    acc += 2.0 * factor.weights[static_cast<int>(j)] * std::cos(kTwoPi * freqs[j] * t);
  }
  return acc;
}

FourierFactor result_factor(int d, const RegressionResult& reg) {
  return FourierFactor(d, reg.freqs, reg.weights);
}

StageResult to_stage(int d, const RegressionResult& reg, std::vector<int> chosen) {
  StageResult out;
  out.factor = result_factor(d, reg);
  out.sampled_residual = reg.sampled_residual;
  out.underdetermined = reg.underdetermined;
  out.chosen = std::move(chosen);
  return out;
}

RegressionResult empty_fit(const SamplingPlan& plan, const Eigen::VectorXd& target, int d) {
  RegressionResult out;
  out.freqs = FrequencySet();
  out.weights = Eigen::VectorXd();
  Eigen::VectorXd b(plan.m);
  const Eigen::VectorXd w = weight_vector(d).w;
  for (int j = 0; j < plan.m; ++j) {
    const int i = plan.indices[static_cast<std::size_t>(j)];
    b[j] = w[i] * target[j] / std::sqrt(plan.m * plan.probabilities[j]);
  }
  out.sampled_residual = b.norm();
  return out;
}

RegressionResult fit_multiset(const SearchSpace& space, const SamplingPlan& plan,
                              const Eigen::VectorXd& target, const std::vector<int>& multiset,
                              double sv_cutoff) {
  const FrequencySet S = candidate_frequencies(space, multiset);
  if (S.empty()) return empty_fit(plan, target, space.d);
  return solve_sampled_regression(S, plan, target, space.d, sv_cutoff);
}

}  // namespace

SearchSpace make_search_space(int d, int r1, int r2, double gamma) {
  if (d < 1) throw BadShape("make_search_space: d must be >= 1");
  if (r1 < 1 || r2 < 1) throw BadShape("make_search_space: r1 and r2 must be >= 1");
  if (!(gamma > 0.0)) throw BadShape("make_search_space: gamma must be positive");
  SearchSpace space;
  space.d = d;
  space.r1 = r1;
  space.r2 = r2;
  space.gamma = gamma;
  for (int j = 0; 2 * j + 1 < d; ++j) {
    space.centers.push_back((2.0 * j + 1.0) / (2.0 * d));
  }
  return space;
}

std::vector<std::vector<int>> enumerate_candidates(const SearchSpace& space) {
  const double n = static_cast<double>(space.centers.size());
  if (std::pow(n, space.r1) > 1e6) {
    throw ExplosionGuard("enumerate_candidates: |centers|^r1 exceeds 1e6");
  }
  std::vector<std::vector<int>> out;
  if (space.centers.empty()) return out;
  std::vector<int> cur(space.r1, 0);
  // Nondecreasing index tuples = multisets, in lexicographic order.
  while (true) {
    out.push_back(cur);
    int pos = space.r1 - 1;
    while (pos >= 0 && cur[pos] == static_cast<int>(space.centers.size()) - 1) --pos;
    if (pos < 0) break;
    const int next = cur[pos] + 1;
    for (int i = pos; i < space.r1; ++i) cur[i] = next;
  }
  return out;
}

FrequencySet candidate_frequencies(const SearchSpace& space, const std::vector<int>& multiset) {
  std::vector<double> freqs;
  for (int idx : multiset) {
    if (idx < 0 || idx >= static_cast<int>(space.centers.size())) {
      throw BadShape("candidate_frequencies: center index out of range");
    }
    const double b = space.centers[static_cast<std::size_t>(idx)];
    for (int j = 1; j <= space.r2; ++j) {
      freqs.push_back(clamp_inward(b + j * space.gamma, 0.0, 0.5, space.gamma));
      freqs.push_back(clamp_inward(b - j * space.gamma, 0.0, 0.5, space.gamma));
    }
  }
  std::sort(freqs.begin(), freqs.end());
  std::vector<double> dedup;
  for (double f : freqs) {
    if (dedup.empty() || f - dedup.back() > space.gamma / 4.0) dedup.push_back(f);
  }
  return FrequencySet(std::move(dedup));
}

RegressionResult solve_sampled_regression(const FrequencySet& S, const SamplingPlan& plan,
                                          const Eigen::VectorXd& target_at_samples, int d,
                                          double sv_cutoff) {
  if (target_at_samples.size() != plan.m) {
    throw DimMismatch("solve_sampled_regression: one target value per sampled row required");
  }
  const int cols = static_cast<int>(S.size());
  if (cols == 0) {
    RegressionResult out = {};
    Eigen::VectorXd b(plan.m);
    const Eigen::VectorXd w = weight_vector(d).w;
    for (int j = 0; j < plan.m; ++j) {
      const int i = plan.indices[static_cast<std::size_t>(j)];
      b[j] = w[i] * target_at_samples[j] / std::sqrt(plan.m * plan.probabilities[j]);
    }
    out.sampled_residual = b.norm();
    return out;
  }

  const Eigen::VectorXd w = weight_vector(d).w;
  Eigen::MatrixXd A(plan.m, cols);
  Eigen::VectorXd b(plan.m);
  for (int j = 0; j < plan.m; ++j) {
    const int i = plan.indices[static_cast<std::size_t>(j)];
    const double scale = w[i] / std::sqrt(plan.m * plan.probabilities[j]);
    for (int c = 0; c < cols; ++c) {
      A(j, c) = scale * 2.0 * std::cos(kTwoPi * S.values()[static_cast<std::size_t>(c)] * i);
    }
    b[j] = scale * target_at_samples[j];
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(sv_cutoff);
  const Eigen::VectorXd a = svd.solve(b);

  RegressionResult out;
  out.freqs = S;
  out.weights = a;
  out.sampled_residual = (A * a - b).norm();
  out.underdetermined = plan.m < cols;
  return out;
}

StageResult stage1_constant(const SearchSpace& space, const SamplingPlan& plan,
                            const Eigen::VectorXd& target_at_samples, RecoveryMode mode,
                            double sv_cutoff) {
  if (mode == RecoveryMode::kGreedy) {
    return greedy_search(space, plan, target_at_samples, space.r1, sv_cutoff);
  }
  const std::vector<std::vector<int>> candidates = enumerate_candidates(space);
  RegressionResult best = empty_fit(plan, target_at_samples, space.d);
  std::vector<int> best_chosen;
  bool have = candidates.empty();  // fall back to the empty fit only if forced
  for (const auto& cand : candidates) {
    const RegressionResult reg = fit_multiset(space, plan, target_at_samples, cand, sv_cutoff);
    if (!have || reg.sampled_residual < best.sampled_residual) {
      best = reg;
      best_chosen = cand;
      have = true;
    }
  }
  return to_stage(space.d, best, best_chosen);
}

StageResult stage2_refine(const SearchSpace& space, const SamplingPlan& plan,
                          const Eigen::VectorXd& residual_at_samples, RecoveryMode mode,
                          double sv_cutoff) {
  StageResult best = mode == RecoveryMode::kGreedy
                         ? greedy_search(space, plan, residual_at_samples, space.r1, sv_cutoff)
                         : stage1_constant(space, plan, residual_at_samples,
                                           RecoveryMode::kExhaustive, sv_cutoff);
  // The empty candidate: leaving the residual alone must always be an option.
  const RegressionResult none = empty_fit(plan, residual_at_samples, space.d);
  if (none.sampled_residual < best.sampled_residual) {
    return to_stage(space.d, none, {});
  }
  return best;
}

StageResult greedy_search(const SearchSpace& space, const SamplingPlan& plan,
                          const Eigen::VectorXd& target_at_samples, int budget,
                          double sv_cutoff) {
  const int n = static_cast<int>(space.centers.size());
  std::vector<int> chosen;
  RegressionResult current = empty_fit(plan, target_at_samples, space.d);
  if (budget <= 0 || n == 0) return to_stage(space.d, current, chosen);

  for (int round = 0; round < budget; ++round) {
    int best_idx = -1;
    RegressionResult best = current;
    for (int c = 0; c < n; ++c) {
      std::vector<int> trial = chosen;
      trial.push_back(c);
      std::sort(trial.begin(), trial.end());
      const RegressionResult reg =
          fit_multiset(space, plan, target_at_samples, trial, sv_cutoff);
      if (reg.sampled_residual < best.sampled_residual) {
        best = reg;
        best_idx = c;
      }
    }
    if (best_idx < 0) break;  // no center improves the fit
    chosen.push_back(best_idx);
    std::sort(chosen.begin(), chosen.end());
    current = best;
  }

  // One backtracking sweep: retry each slot against every alternative.
  for (std::size_t pos = 0; pos < chosen.size(); ++pos) {
    for (int c = 0; c < n; ++c) {
      if (c == chosen[pos]) continue;
      std::vector<int> trial = chosen;
      trial[pos] = c;
      std::sort(trial.begin(), trial.end());
      const RegressionResult reg =
          fit_multiset(space, plan, target_at_samples, trial, sv_cutoff);
      if (reg.sampled_residual < current.sampled_residual) {
        current = reg;
        chosen = trial;
      }
    }
  }
  return to_stage(space.d, current, chosen);
}

RecoveredFactor recover(const SymToeplitz& T, const RecoveryConfig& config) {
  RecoveryConfig cfg = config;
  const int d = T.d;
  if (cfg.k < 1) throw BadRank("recover: k must be >= 1");

  const int log2d = std::max(1, static_cast<int>(std::ceil(std::log2(std::max(d, 2)))));
  if (cfg.r1 <= 0) cfg.r1 = cfg.k * log2d;
  if (cfg.r2 <= 0) {
    cfg.r2 = static_cast<int>(
        std::ceil(std::log2(std::max(d, 2)) + std::log2(1.0 / std::max(cfg.delta, 1e-300))));
    cfg.r2 = std::max(cfg.r2, 1);
  }
  if (!(cfg.gamma > 0.0)) cfg.gamma = 1.0 / (8.0 * d * cfg.r2);

  const SearchSpace space1 = make_search_space(d, cfg.r1, cfg.r2, cfg.gamma);
  const SearchSpace space2 = make_search_space(d, 2 * cfg.r1, cfg.r2, cfg.gamma);

  // Sample counts from the embedding lemma; eta is the union-bound failure
  // probability over the candidate family.
  const int r_s1 = std::min(d, 4 * cfg.r1 * cfg.r2);
  const int r_s2 = std::min(d, 8 * cfg.r1 * cfg.r2);
  const LevBounds bounds1 = universal_tau_bounds(d, r_s1);
  const LevBounds bounds2 = universal_tau_bounds(d, r_s2);
  if (cfg.m1 <= 0) {
    const double n = static_cast<double>(space1.centers.size());
    const double log_inv_eta =
        std::min(64.0, std::log(100.0) + cfg.r1 * std::log(std::max(n, 2.0)));
    cfg.m1 = std::min(d, static_cast<int>(std::ceil(16.0 * bounds1.total * log_inv_eta)));
    cfg.m1 = std::max(cfg.m1, 1);
  }
  if (cfg.m2 <= 0) cfg.m2 = std::min(d, 4 * cfg.m1);

  QueryAccess access(T);
  const SamplingPlan plan1 = draw_sampling_plan(bounds1, cfg.m1, derive_seed(cfg.seed, 1));
  const SamplingPlan plan2 = draw_sampling_plan(bounds2, cfg.m2, derive_seed(cfg.seed, 2));

  Eigen::VectorXd t1(plan1.m);
  for (int j = 0; j < plan1.m; ++j) {
    t1[j] = access.read_lag(plan1.indices[static_cast<std::size_t>(j)]);
  }
  const StageResult stage1 = stage1_constant(space1, plan1, t1, cfg.mode, cfg.sv_cutoff);

  Eigen::VectorXd t2(plan2.m);
  for (int j = 0; j < plan2.m; ++j) {
    const int lag = plan2.indices[static_cast<std::size_t>(j)];
    t2[j] = access.read_lag(lag) - factor_column_at(stage1.factor, lag);
  }
  const StageResult stage2 = stage2_refine(space2, plan2, t2, cfg.mode, cfg.sv_cutoff);

  // Merge the two supports; coinciding frequencies add their weights.
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < stage1.factor.freqs.size(); ++i) {
    pairs.emplace_back(stage1.factor.freqs.values()[i],
                       stage1.factor.weights[static_cast<int>(i)]);
  }
  for (std::size_t i = 0; i < stage2.factor.freqs.size(); ++i) {
    pairs.emplace_back(stage2.factor.freqs.values()[i],
                       stage2.factor.weights[static_cast<int>(i)]);
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<double> freqs;
  std::vector<double> weights;
  for (const auto& [f, a] : pairs) {
    if (!freqs.empty() && f - freqs.back() <= cfg.gamma / 4.0) {
      weights.back() += a;
    } else {
      freqs.push_back(f);
      weights.push_back(a);
    }
  }

  if (cfg.project_psd) {
    // Clip negative weights and refit the survivors against the stage-1
    // samples until every weight is nonnegative.
    for (int pass = 0; pass <= static_cast<int>(freqs.size()) + 1; ++pass) {
      std::vector<double> kept;
      for (std::size_t i = 0; i < freqs.size(); ++i) {
        if (weights[i] > 0.0) kept.push_back(freqs[i]);
      }
      if (kept.size() == freqs.size()) break;
      freqs = kept;
      weights.assign(freqs.size(), 0.0);
      if (freqs.empty()) break;
      const RegressionResult refit =
          solve_sampled_regression(FrequencySet(freqs), plan1, t1, d, cfg.sv_cutoff);
      for (std::size_t i = 0; i < freqs.size(); ++i) {
        weights[i] = refit.weights[static_cast<int>(i)];
      }
    }
  }

  Eigen::VectorXd a(static_cast<int>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) a[static_cast<int>(i)] = weights[i];

  RecoveredFactor out;
  out.factor = FourierFactor(d, FrequencySet(std::move(freqs)), std::move(a));
  out.ledger = access.ledger();
  out.stage_errors = {stage1.sampled_residual, stage2.sampled_residual};
  out.config = cfg;
  return out;
}

double evaluate_true_error(const SymToeplitz& T, const FourierFactor& factor) {
  return frobenius_via_weighted_column(T, vandermonde_synthesize(factor));
}

}  // namespace tsketch
