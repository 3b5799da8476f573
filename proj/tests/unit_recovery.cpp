#include <tsketch/errors.hpp>
#include <tsketch/generate.hpp>
#include <tsketch/recovery.hpp>
#include <tsketch/rng.hpp>
#include <tsketch/toeplitz.hpp>

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

using namespace tsketch;

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;

SamplingPlan full_plan(int d) {
  SamplingPlan plan;
  plan.d = d;
  plan.m = d;
  plan.seed = 0;
  plan.probabilities = Eigen::VectorXd::Constant(d, 1.0 / d);
  for (int i = 0; i < d; ++i) plan.indices.push_back(i);
  return plan;
}

Eigen::VectorXd synthesized_column(int d, const std::vector<double>& freqs,
                                   const std::vector<double>& weights) {
  Eigen::VectorXd col = Eigen::VectorXd::Zero(d);
  for (std::size_t j = 0; j < freqs.size(); ++j)
    for (int t = 0; t < d; ++t) col(t) += 2.0 * weights[j] * std::cos(kTwoPi * freqs[j] * t);
  return col;
}
}  // namespace

TEST_CASE("search space centers are the odd half-grid points") {
  const SearchSpace space = make_search_space(8, 2, 1, 1.0 / 128.0);
  REQUIRE(space.centers.size() == 4);
  CHECK(space.centers[0] == doctest::Approx(1.0 / 16.0));
  CHECK(space.centers[1] == doctest::Approx(3.0 / 16.0));
  CHECK(space.centers[2] == doctest::Approx(5.0 / 16.0));
  CHECK(space.centers[3] == doctest::Approx(7.0 / 16.0));

  CHECK(make_search_space(9, 1, 1, 1e-3).centers.size() == 4);

  CHECK_THROWS_AS(make_search_space(0, 1, 1, 1e-3), BadShape);
  CHECK_THROWS_AS(make_search_space(8, 0, 1, 1e-3), BadShape);
  CHECK_THROWS_AS(make_search_space(8, 1, 0, 1e-3), BadShape);
  CHECK_THROWS_AS(make_search_space(8, 1, 1, 0.0), BadShape);
}

TEST_CASE("candidate enumeration lists multisets and guards explosions") {
  SearchSpace space = make_search_space(6, 1, 1, 1e-3);  // 3 centers
  CHECK(enumerate_candidates(space).size() == 3);

  space.r1 = 2;
  const std::vector<std::vector<int>> pairs = enumerate_candidates(space);
  CHECK(pairs.size() == 6);  // multisets of size 2 over 3 centers
  for (const auto& cand : pairs) {
    REQUIRE(cand.size() == 2);
    CHECK(cand[0] <= cand[1]);
  }

  const SearchSpace big = make_search_space(256, 3, 1, 1e-4);  // 128^3 > 1e6
  CHECK_THROWS_AS(enumerate_candidates(big), ExplosionGuard);
}

TEST_CASE("candidate frequencies form a deduplicated in-band grid") {
  const double gamma = 1.0 / 256.0;
  const SearchSpace space = make_search_space(16, 2, 3, gamma);
  const FrequencySet S = candidate_frequencies(space, {0, 0, 7});
  CHECK(S.size() <= 2 * 3 * 2);  // 2 r2 per *distinct* center after dedup
  for (double f : S.values()) {
    CHECK(f > 0.0);
    CHECK(f < 0.5);
  }
  // The duplicated center contributes its grid once.
  const FrequencySet single = candidate_frequencies(space, {0});
  CHECK(single.size() == 6);
  CHECK_THROWS_AS(candidate_frequencies(space, {99}), BadShape);
}

TEST_CASE("sampled regression recovers an exactly representable column") {
  const int d = 16;
  const double gamma = 1.0 / (8.0 * d);
  const SearchSpace space = make_search_space(d, 2, 1, gamma);
  const double f1 = space.centers[2] + gamma;
  const double f2 = space.centers[5] - gamma;
  const Eigen::VectorXd target = synthesized_column(d, {f1, f2}, {1.2, 0.8});

  const FrequencySet S = candidate_frequencies(space, {2, 5});
  const RegressionResult reg = solve_sampled_regression(S, full_plan(d), target, d);
  CHECK(reg.sampled_residual < 1e-8);
  CHECK_FALSE(reg.underdetermined);
  REQUIRE(reg.freqs.size() == 4);

  // The planted frequencies carry the planted weights; the extras vanish.
  const std::vector<double>& vals = reg.freqs.values();
  for (std::size_t j = 0; j < vals.size(); ++j) {
    if (std::abs(vals[j] - f1) < 1e-12)
      CHECK(reg.weights(static_cast<int>(j)) == doctest::Approx(1.2).epsilon(1e-6));
    else if (std::abs(vals[j] - f2) < 1e-12)
      CHECK(reg.weights(static_cast<int>(j)) == doctest::Approx(0.8).epsilon(1e-6));
    else
      CHECK(std::abs(reg.weights(static_cast<int>(j))) < 1e-6);
  }
}

TEST_CASE("sampled regression edge cases") {
  const int d = 12;
  const SamplingPlan plan = full_plan(d);
  Eigen::VectorXd target(d);
  for (int i = 0; i < d; ++i) target(i) = 1.0 + i;

  // Empty candidate set: the residual is the weighted norm of the target.
  const RegressionResult empty = solve_sampled_regression(FrequencySet(), plan, target, d);
  const Eigen::VectorXd w = weight_vector(d).w;
  CHECK(empty.sampled_residual ==
        doctest::Approx((w.array() * target.array()).matrix().norm()).epsilon(1e-12));

  // More columns than samples flags the fit as underdetermined.
  SamplingPlan tiny = plan;
  tiny.m = 2;
  tiny.indices = {0, 1};
  const FrequencySet S(std::vector<double>{0.1, 0.2, 0.3});
  Eigen::VectorXd two(2);
  two << 1.0, 2.0;
  CHECK(solve_sampled_regression(S, tiny, two, d).underdetermined);

  CHECK_THROWS_AS(solve_sampled_regression(S, plan, two, d), DimMismatch);
}

TEST_CASE("exhaustive stage 1 finds the planted multiset") {
  const int d = 16;
  const double gamma = 1.0 / (8.0 * d);
  const SearchSpace space = make_search_space(d, 2, 1, gamma);
  const Eigen::VectorXd target = synthesized_column(
      d, {space.centers[2] + gamma, space.centers[5] - gamma}, {1.0, 0.9});
  const StageResult stage = stage1_constant(space, full_plan(d), target,
                                            RecoveryMode::kExhaustive);
  CHECK(stage.chosen == std::vector<int>{2, 5});
  CHECK(stage.sampled_residual < 1e-8);
}

TEST_CASE("greedy search respects its budget and finds planted structure") {
  const int d = 16;
  const double gamma = 1.0 / (8.0 * d);
  const SearchSpace space = make_search_space(d, 1, 1, gamma);
  const Eigen::VectorXd target =
      synthesized_column(d, {space.centers[3] + gamma}, {1.4});

  const StageResult none = greedy_search(space, full_plan(d), target, 0);
  CHECK(none.chosen.empty());
  const Eigen::VectorXd w = weight_vector(d).w;
  CHECK(none.sampled_residual ==
        doctest::Approx((w.array() * target.array()).matrix().norm()).epsilon(1e-12));

  const StageResult one = greedy_search(space, full_plan(d), target, 1);
  CHECK(one.chosen == std::vector<int>{3});
  CHECK(one.sampled_residual < 1e-8);
  CHECK(one.sampled_residual <= none.sampled_residual);
}

TEST_CASE("stage 2 never loses to the empty refinement") {
  const int d = 16;
  const SearchSpace space = make_search_space(d, 2, 1, 1.0 / (8.0 * d));
  Rng rng(33);
  Eigen::VectorXd residual(d);
  for (int i = 0; i < d; ++i) residual(i) = rng.gaussian();
  const Eigen::VectorXd w = weight_vector(d).w;
  const double empty_res = (w.array() * residual.array()).matrix().norm();
  for (RecoveryMode mode : {RecoveryMode::kExhaustive, RecoveryMode::kGreedy}) {
    const StageResult stage = stage2_refine(space, full_plan(d), residual, mode);
    CHECK(stage.sampled_residual <= empty_res + 1e-12);
  }
}

TEST_CASE("recover resolves defaults, reads few lags, and stays deterministic") {
  InstanceSpec spec;
  spec.family = InstanceFamily::kCirculant;
  spec.d = 64;
  spec.k = 1;
  spec.seed = 2;
  const GeneratedInstance inst = gen_instance(spec);

  RecoveryConfig cfg;
  cfg.k = 1;
  cfg.mode = RecoveryMode::kExhaustive;
  cfg.r1 = 1;
  cfg.r2 = 2;
  cfg.m1 = 24;
  cfg.m2 = 24;
  cfg.seed = 10;
  const RecoveredFactor rec = recover(inst.matrix, cfg);

  CHECK(rec.ledger.total_reads == cfg.m1 + cfg.m2);
  CHECK(rec.ledger.distinct_lags() <= cfg.m1 + cfg.m2);
  CHECK(static_cast<int>(rec.factor.freqs.size()) <= 6 * cfg.r1 * cfg.r2);
  CHECK(rec.config.gamma == doctest::Approx(1.0 / (8.0 * spec.d * cfg.r2)));

  // Byte-for-byte replay.
  const RecoveredFactor again = recover(inst.matrix, cfg);
  CHECK(rec.factor.freqs.values() == again.factor.freqs.values());
  CHECK((rec.factor.weights.array() == again.factor.weights.array()).all());
  CHECK(rec.stage_errors == again.stage_errors);

  // Defaults kick in when the knobs are zero, and are echoed back.
  RecoveryConfig defaults;
  defaults.k = 1;
  defaults.seed = 10;
  defaults.mode = RecoveryMode::kGreedy;
  const RecoveredFactor auto_rec = recover(inst.matrix, defaults);
  CHECK(auto_rec.config.r1 == 6);   // k * ceil(log2 64)
  CHECK(auto_rec.config.r2 >= 1);
  CHECK(auto_rec.config.m1 > 0);
  CHECK(auto_rec.config.m2 > 0);
  CHECK(auto_rec.config.gamma > 0.0);

  CHECK_THROWS_AS(recover(inst.matrix, RecoveryConfig{0, 0.5, 1e-3,
                                                      RecoveryMode::kExhaustive, 0, 0, 0, 0,
                                                      0.0, 0, 1e-10, false}),
                  BadRank);
}

TEST_CASE("recovery commutes with scaling the matrix by two") {
  InstanceSpec spec;
  spec.family = InstanceFamily::kRandomVandermonde;
  spec.d = 32;
  spec.k = 2;
  spec.seed = 14;
  const GeneratedInstance inst = gen_instance(spec);
  const SymToeplitz doubled(spec.d, 2.0 * inst.matrix.first_column);

  RecoveryConfig cfg;
  cfg.k = 2;
  cfg.mode = RecoveryMode::kGreedy;
  cfg.r1 = 2;
  cfg.r2 = 2;
  cfg.m1 = 24;
  cfg.m2 = 24;
  cfg.seed = 3;
  const RecoveredFactor base = recover(inst.matrix, cfg);
  const RecoveredFactor scaled = recover(doubled, cfg);

  CHECK(base.factor.freqs.values() == scaled.factor.freqs.values());
  REQUIRE(base.factor.weights.size() == scaled.factor.weights.size());
  for (int i = 0; i < base.factor.weights.size(); ++i)
    CHECK(scaled.factor.weights(i) ==
          doctest::Approx(2.0 * base.factor.weights(i)).epsilon(1e-9));
  CHECK(scaled.stage_errors[0] == doctest::Approx(2.0 * base.stage_errors[0]).epsilon(1e-9));
}

TEST_CASE("PSD projection leaves no negative weights behind") {
  InstanceSpec spec;
  spec.family = InstanceFamily::kClustered;
  spec.d = 32;
  spec.k = 1;
  spec.sigma = 0.3;  // noise invites negative fitted weights
  spec.seed = 8;
  const GeneratedInstance inst = gen_instance(spec);

  RecoveryConfig cfg;
  cfg.k = 1;
  cfg.mode = RecoveryMode::kExhaustive;
  cfg.r1 = 2;
  cfg.r2 = 2;
  cfg.m1 = 32;
  cfg.m2 = 32;
  cfg.seed = 4;
  cfg.project_psd = true;
  const RecoveredFactor rec = recover(inst.matrix, cfg);
  if (rec.factor.weights.size() > 0) CHECK(rec.factor.weights.minCoeff() > 0.0);
}

TEST_CASE("true-error evaluation against the dense oracle") {
  InstanceSpec spec;
  spec.family = InstanceFamily::kRandomVandermonde;
  spec.d = 24;
  spec.k = 2;
  spec.seed = 21;
  const GeneratedInstance inst = gen_instance(spec);

  // The truth factor reproduces its own synthesis exactly.
  CHECK(evaluate_true_error(inst.matrix, inst.truth) < 1e-10);

  // A zero-weight factor measures the full weighted norm of T.
  const FourierFactor zero(spec.d, FrequencySet(std::vector<double>{0.2}),
                           Eigen::VectorXd::Zero(1));
  CHECK(evaluate_true_error(inst.matrix, zero) ==
        doctest::Approx(inst.matrix.dense().norm()).epsilon(1e-10));

  // Any other factor matches the dense Frobenius distance.
  const FourierFactor off(spec.d, FrequencySet(std::vector<double>{0.11, 0.31}),
                          (Eigen::VectorXd(2) << 0.9, 0.4).finished());
  const double dense = (inst.matrix.dense() - vandermonde_synthesize(off).dense()).norm();
  CHECK(evaluate_true_error(inst.matrix, off) == doctest::Approx(dense).epsilon(1e-10));
}
