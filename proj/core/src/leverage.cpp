#include "tsketch/leverage.hpp"

#include <algorithm>
#include <cmath>

#include "tsketch/rng.hpp"

namespace tsketch {

Eigen::VectorXd exact_leverage_scores(const Eigen::MatrixXd& A) {
  if (!A.allFinite()) throw NonFiniteInput("exact_leverage_scores: non-finite input");
  if (A.rows() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? 1e-12 * sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > 0.0) ++rank;
  }
  Eigen::VectorXd tau = Eigen::VectorXd::Zero(A.rows());
  if (rank > 0) {
    tau = svd.matrixU().leftCols(rank).rowwise().squaredNorm();
  }
  return tau;
}

LevBounds universal_tau_bounds(int d, int r) {
  if (r < 1 || r > d) throw BadShape("universal_tau_bounds: need 1 <= r <= d");
  LevBounds out;
  out.d = d;
  out.r = r;
  out.tau = Eigen::VectorXd::Ones(d);
  if (r == d) {
    out.total = static_cast<double>(d);
    return out;
  }

  // Geometric row blocks: block i covers 1-based rows
  // [floor(d(1 - 2^{1-i})) + 1, floor(d(1 - 2^{-i}))]; the shaped bound
  // applies while i <= floor(log2(d/r)), later blocks and the uncovered tail
  // keep the trivial bound 1.
  constexpr double kCcor = 1.0;
  const int i_max = static_cast<int>(std::floor(std::log2(static_cast<double>(d) / r)));
  const double rd = static_cast<double>(r);
  const double corr = kCcor * std::pow(rd, 6) * std::pow(std::log2(rd + 1.0), 3);
  for (int i = 1; i <= i_max; ++i) {
    const int lo = static_cast<int>(std::floor(d * (1.0 - std::pow(2.0, 1 - i)))) + 1;
    const int hi = static_cast<int>(std::floor(d * (1.0 - std::pow(2.0, -i))));
    if (hi < lo) continue;
    const int n = hi - lo + 1;
    for (int j = 1; j <= n; ++j) {
      const double edge = rd / std::min(j, n + 1 - j);
      const double interior = corr / n;
      out.tau[lo - 1 + (j - 1)] = std::min(1.0, std::min(edge, interior));
    }
  }
  out.total = out.tau.sum();
  return out;
}

SamplingPlan draw_sampling_plan(const LevBounds& bounds, int m, std::uint64_t seed) {
  if (m < 1) throw BadShape("draw_sampling_plan: m must be >= 1");
  if (bounds.d < 1 || bounds.tau.size() != bounds.d) {
    throw BadShape("draw_sampling_plan: malformed bounds");
  }
  const int d = bounds.d;
  Eigen::VectorXd p(d);
  for (int i = 0; i < d; ++i) {
    p[i] = 0.5 * (bounds.tau[i] / bounds.total + 1.0 / d);
  }
  std::vector<double> cum(d);
  double acc = 0.0;
  for (int i = 0; i < d; ++i) {
    acc += p[i];
    cum[static_cast<std::size_t>(i)] = acc;
  }

  SamplingPlan plan;
  plan.d = d;
  plan.m = m;
  plan.seed = seed;
  plan.indices.reserve(m);
  plan.probabilities.resize(m);
  Rng rng(seed);
  for (int j = 0; j < m; ++j) {
    const double u = rng.uniform01() * acc;
    const int idx = static_cast<int>(inverse_cdf_index(cum, u));
    plan.indices.push_back(idx);
    plan.probabilities[j] = p[idx];
  }
  return plan;
}

Eigen::VectorXd apply_sampling(const SamplingPlan& plan, const Eigen::VectorXd& x) {
  if (x.size() != plan.d) throw DimMismatch("apply_sampling: vector length != plan dimension");
  Eigen::VectorXd y(plan.m);
  for (int j = 0; j < plan.m; ++j) {
    y[j] = x[plan.indices[static_cast<std::size_t>(j)]] /
           std::sqrt(plan.m * plan.probabilities[j]);
  }
  return y;
}

Eigen::MatrixXd apply_sampling_matrix(const SamplingPlan& plan, const Eigen::MatrixXd& A) {
  if (A.rows() != plan.d) throw DimMismatch("apply_sampling_matrix: row count != plan dimension");
  Eigen::MatrixXd Y(plan.m, A.cols());
  for (int j = 0; j < plan.m; ++j) {
    Y.row(j) = A.row(plan.indices[static_cast<std::size_t>(j)]) /
               std::sqrt(plan.m * plan.probabilities[j]);
  }
  return Y;
}

EmbeddingCheck subspace_embedding_check(const SamplingPlan& plan, const Eigen::MatrixXd& A,
                                        double beta, std::uint64_t probe_seed) {
  if (A.rows() != plan.d) {
    throw DimMismatch("subspace_embedding_check: row count != plan dimension");
  }
  EmbeddingCheck out;
  if (A.cols() == 0) {
    out.pass = true;
    return out;
  }

  // Probe set: every significant right singular direction (these witness the
  // extreme norms), plus seeded random combinations for coverage.
  std::vector<Eigen::VectorXd> probes;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double sv_cut = sv.size() > 0 ? 1e-12 * sv(0) : 0.0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > sv_cut && sv(i) > 0.0) probes.push_back(A * svd.matrixV().col(i));
  }
  Rng rng(probe_seed);
  for (int trial = 0; trial < 64; ++trial) {
    Eigen::VectorXd c(A.cols());
    for (int i = 0; i < c.size(); ++i) c[i] = rng.gaussian();
    probes.push_back(A * c);
  }

  const double norm_floor = 1e-14 * std::max(A.norm(), 1e-300);
  double lo = 1.0;
  double hi = 1.0;
  bool any = false;
  for (const auto& x : probes) {
    const double nx = x.norm();
    if (nx <= norm_floor) continue;  // direction in (or near) the kernel
    const double ratio = apply_sampling(plan, x).norm() / nx;
    if (!any) {
      lo = hi = ratio;
      any = true;
    } else {
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  out.worst_low = lo;
  out.worst_high = hi;
  out.pass = lo >= 1.0 - beta && hi <= 1.0 + beta;
  return out;
}

}  // namespace tsketch
