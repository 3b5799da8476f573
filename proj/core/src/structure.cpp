#include "tsketch/structure.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "tsketch/spectral.hpp"

namespace tsketch {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double log2d(int d) { return std::log2(static_cast<double>(std::max(d, 2))); }

/// 2 * sum_{m > ell} x^m / m!  (tail of the two-sided exponential series).
double taylor_tail(double x, int ell) {
  if (x <= 0.0) return 0.0;
  double term = 1.0;
  for (int m = 1; m <= ell; ++m) term *= x / m;
  double sum = 0.0;
  for (int m = ell + 1; m < ell + 400; ++m) {
    term *= x / m;
    sum += term;
    if (term < 1e-300 || (sum > 0 && term < 1e-17 * sum)) break;
  }
  return 2.0 * sum;
}

/// Sorts (frequency, weight) pairs, merges frequencies closer than tol
/// (weights add), and builds a factor.
FourierFactor merge_to_factor(int d, std::vector<std::pair<double, double>> pairs, double tol) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<double> freqs;
  std::vector<double> weights;
  for (const auto& [f, w] : pairs) {
    if (!freqs.empty() && f - freqs.back() <= tol) {
      weights.back() += w;
    } else {
      freqs.push_back(f);
      weights.push_back(w);
    }
  }
  Eigen::VectorXd a(static_cast<int>(weights.size()));
  for (std::size_t i = 0; i < weights.size(); ++i) a[static_cast<int>(i)] = weights[i];
  return FourierFactor(d, FrequencySet(std::move(freqs)), std::move(a));
}

/// Steps f inward by gamma until it lies in (lo, hi).
double clamp_inward(double f, double lo, double hi, double gamma) {
  while (f <= lo) f += gamma;
  while (f >= hi) f -= gamma;
  return f;
}

/// T_1(t) for real t from a factor's frequencies/weights.
double factor_column_at(const FourierFactor& factor, double t) {
  const auto& freqs = factor.freqs.values();
  double acc = 0.0;
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    acc += 2.0 * factor.weights[static_cast<int>(j)] * std::cos(kTwoPi * freqs[j] * t);
  }
  return acc;
}

/// Dense spectral norm of (T - Ttilde) for the spectral existence report.
double spectral_error(const SymToeplitz& T, const FourierFactor& approx) {
  const SymToeplitz Ta = vandermonde_synthesize(approx);
  Eigen::MatrixXd diff = T.dense() - Ta.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diff);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

ClusterSearchPick search_cluster_approx(const FourierFactor& bucket_factor,
                                        double pointwise_target) {
  const int d = bucket_factor.d;
  const auto& freqs = bucket_factor.freqs.values();
  const double f_star = (freqs.front() + freqs.back()) / 2.0;
  double width = 0.0;
  for (double f : freqs) width = std::max(width, std::abs(f - f_star));
  const double weight_sum = bucket_factor.weights.cwiseAbs().sum();

  // Tail-rule degree: smallest ell whose series tail meets half the budget.
  const double tail_target =
      std::max(weight_sum > 0 ? pointwise_target / 2.0 / weight_sum : 1.0, 1e-12);
  const double x = kTwoPi * width * static_cast<double>(d);
  int tail_ell = 1;
  while (tail_ell < 24 && taylor_tail(x, tail_ell) > tail_target) ++tail_ell;

  std::vector<int> degrees = {tail_ell};
  for (int alt : {12, 10, 8, 6, 4, 2, 1}) {
    if (alt < tail_ell) degrees.push_back(alt);
  }
  const double reach = std::min(f_star, 0.5 - f_star);  // keep the grid inside (0, 1/2)

  ClusterSearchPick best;
  bool have = false;
  for (int ell : degrees) {
    ClusterApproxParams params;
    params.ell = ell;
    params.delta = tail_target;
    params.eps_taylor = pointwise_target / 2.0;
    const double base = std::max(width, 1.0 / (64.0 * d)) / (ell + 1);
    std::vector<double> ladder = {1.0 / (64.0 * d * (ell + 1))};
    for (int e = -10; e <= 10; ++e) ladder.push_back(base * std::pow(2.0, e));
    for (double gamma : ladder) {
      if (gamma * (ell + 1) >= reach) continue;
      params.gamma = gamma;
      ClusteredApprox attempt;
      try {
        attempt = clustered_approx(bucket_factor, f_star, params);
      } catch (const IllConditionedGamma&) {
        continue;
      }
      if (!have || attempt.pointwise_residual < best.approx.pointwise_residual) {
        have = true;
        best.approx = attempt;
        best.gamma = gamma;
        best.ell = ell;
      }
    }
    if (have && best.approx.pointwise_residual <= pointwise_target / 2.0) break;
  }
  if (!have) {
    throw IllConditionedGamma("search_cluster_approx: no usable grid spacing for this cluster");
  }
  return best;
}

namespace {

/// Shared heavy-bucket replacement used by both existence constructions.
FourierFactor replace_heavy_buckets(const FourierFactor& factor, double lambda,
                                    double pointwise_total, int* heavy_count) {
  const Buckets buckets = bucketize(factor);
  std::vector<int> heavy;
  for (int j : buckets.occupied()) {
    if (buckets.bucket_weight(j) > lambda) heavy.push_back(j);
  }
  *heavy_count = static_cast<int>(heavy.size());

  std::vector<std::pair<double, double>> pairs;
  if (!heavy.empty()) {
    const double per_bucket = pointwise_total / static_cast<double>(heavy.size());
    for (int j : heavy) {
      const auto& members = buckets.assignments.at(j);
      std::vector<double> freqs;
      Eigen::VectorXd weights(static_cast<int>(members.size()));
      for (std::size_t i = 0; i < members.size(); ++i) {
        freqs.push_back(members[i].first);
        weights[static_cast<int>(i)] = members[i].second;
      }
      const FourierFactor bucket_factor(factor.d, FrequencySet(freqs), weights);
      const ClusterSearchPick pick = search_cluster_approx(bucket_factor, per_bucket);
      const auto& out_freqs = pick.approx.factor.freqs.values();
      for (std::size_t i = 0; i < out_freqs.size(); ++i) {
        pairs.emplace_back(out_freqs[i], pick.approx.factor.weights[static_cast<int>(i)]);
      }
    }
  }
  if (pairs.empty()) {
    return FourierFactor(factor.d, FrequencySet(), Eigen::VectorXd());
  }
  return merge_to_factor(factor.d, std::move(pairs), 1e-12);
}

}  // namespace

double Buckets::bucket_weight(int j) const {
  auto it = assignments.find(j);
  if (it == assignments.end()) return 0.0;
  double sum = 0.0;
  for (const auto& [f, w] : it->second) sum += w;
  return sum;
}

double Buckets::total_weight() const {
  double sum = 0.0;
  for (const auto& [j, members] : assignments) {
    for (const auto& [f, w] : members) sum += w;
  }
  return sum;
}

std::vector<int> Buckets::occupied() const {
  std::vector<int> out;
  out.reserve(assignments.size());
  for (const auto& [j, members] : assignments) {
    if (!members.empty()) out.push_back(j);
  }
  return out;
}

Buckets bucketize(const FourierFactor& factor) {
  Buckets out;
  out.d = factor.d;
  const auto& freqs = factor.freqs.values();
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    // f in [(j-1)/d, j/d)  <=>  j = floor(f d) + 1.
    const int j = static_cast<int>(std::floor(freqs[i] * factor.d)) + 1;
    out.assignments[j].emplace_back(freqs[i], factor.weights[static_cast<int>(i)]);
  }
  for (auto& [j, members] : out.assignments) std::sort(members.begin(), members.end());
  return out;
}

std::pair<FourierFactor, FourierFactor> heavy_light_split(const FourierFactor& factor,
                                                          double lambda) {
  const Buckets buckets = bucketize(factor);
  std::vector<std::pair<double, double>> heavy_pairs;
  std::vector<std::pair<double, double>> light_pairs;
  for (const auto& [j, members] : buckets.assignments) {
    const bool is_heavy = buckets.bucket_weight(j) > lambda;
    auto& dst = is_heavy ? heavy_pairs : light_pairs;
    dst.insert(dst.end(), members.begin(), members.end());
  }
  auto build = [&](std::vector<std::pair<double, double>>& pairs) {
    std::sort(pairs.begin(), pairs.end());
    std::vector<double> freqs;
    Eigen::VectorXd weights(static_cast<int>(pairs.size()));
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      freqs.push_back(pairs[i].first);
      weights[static_cast<int>(i)] = pairs[i].second;
    }
    return FourierFactor(factor.d, FrequencySet(std::move(freqs)), std::move(weights));
  };
  return {build(heavy_pairs), build(light_pairs)};
}

TaylorPolys taylor_cluster_polys(int d, const std::vector<double>& freqs,
                                 const Eigen::VectorXd& weights, double f_star, int ell) {
  if (ell < 1) throw BadShape("taylor_cluster_polys: ell must be >= 1");
  if (freqs.empty() || static_cast<int>(freqs.size()) != weights.size()) {
    throw DimMismatch("taylor_cluster_polys: one weight per frequency required");
  }
  for (double f : freqs) {
    if (std::abs(f - f_star) > 1.0 / d) {
      throw NotClustered("taylor_cluster_polys: cluster width exceeds 1/d");
    }
  }

  TaylorPolys out;
  out.p1 = Eigen::VectorXcd::Zero(ell + 1);
  out.p2 = Eigen::VectorXcd::Zero(ell + 1);
  out.weight_sum = weights.cwiseAbs().sum();
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    const double r = freqs[i] - f_star;
    const std::complex<double> step(0.0, kTwoPi * r);  // 2 pi i r_f
    std::complex<double> term(weights[static_cast<int>(i)], 0.0);
    out.p1[0] += term;
    out.p2[0] += term;
    for (int m = 1; m <= ell; ++m) {
      term *= step / static_cast<double>(m);
      out.p1[m] += term;
      out.p2[m] += std::conj(term);
    }
  }

  // Certify by direct evaluation on the integer grid t in [-d, d].
  double max_err = 0.0;
  for (int t = -d; t <= d; ++t) {
    const double td = static_cast<double>(t);
    double exact = 0.0;
    for (std::size_t i = 0; i < freqs.size(); ++i) {
      exact += 2.0 * weights[static_cast<int>(i)] * std::cos(kTwoPi * freqs[i] * td);
    }
    // e^{2 pi i f* t} p1(t) + conj; p2 has conjugate coefficients.
    std::complex<double> p1val(0.0, 0.0);
    for (int m = ell; m >= 0; --m) p1val = p1val * td + out.p1[m];
    const double phase = kTwoPi * f_star * td;
    const std::complex<double> rot(std::cos(phase), std::sin(phase));
    const double approx = 2.0 * (rot * p1val).real();
    max_err = std::max(max_err, std::abs(exact - approx));
  }
  out.certified_residual = max_err;
  return out;
}

PolyToFourier poly_to_fourier(const Eigen::VectorXd& coeffs, Parity parity, double gamma,
                              int d, double eps) {
  (void)eps;  // acceptance threshold owned by the caller; residual is returned
  if (gamma <= 0.0) throw IllConditionedGamma("poly_to_fourier: gamma must be positive");
  if (coeffs.size() < 1) throw BadShape("poly_to_fourier: empty coefficient vector");
  const int n = static_cast<int>(coeffs.size());  // ell + 1
  const int want = parity == Parity::kEven ? 0 : 1;

  const double scale = coeffs.cwiseAbs().maxCoeff();
  for (int k = 0; k < n; ++k) {
    if (k % 2 != want && std::abs(coeffs[k]) > 1e-10 * std::max(scale, 1.0)) {
      throw BadShape("poly_to_fourier: coefficient of the opposite parity present");
    }
  }

  // Moment system: sum_j alpha_j j^k = c'_k with
  //   c'_k = c_k k! (-1)^{floor(k/2)} / (2 (2 pi gamma)^k)   (matching parity)
  //   c'_k = 0                                               (opposite parity)
  Eigen::VectorXd rhs(n);
  const double log_2pg = std::log(kTwoPi * gamma);
  for (int k = 0; k < n; ++k) {
    if (k % 2 != want || coeffs[k] == 0.0) {
      rhs[k] = 0.0;
      continue;
    }
    const double log_mag = std::lgamma(k + 1.0) - k * log_2pg;
    if (log_mag > 690.0) {  // exp() would overflow: gamma far too small
      throw IllConditionedGamma("poly_to_fourier: gamma too small for this degree");
    }
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    rhs[k] = coeffs[k] * sign * std::exp(log_mag) / 2.0;
  }
  if (!rhs.allFinite()) {
    throw IllConditionedGamma("poly_to_fourier: non-finite moment right-hand side");
  }

  Eigen::MatrixXd V(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 1; j <= n; ++j) V(k, j - 1) = std::pow(static_cast<double>(j), k);
  }
  // Column scaling + relative singular-value cutoff to tame the Vandermonde.
  Eigen::VectorXd col_scale(n);
  for (int j = 0; j < n; ++j) col_scale[j] = 1.0 / V.col(j).norm();
  const Eigen::MatrixXd Vs = V * col_scale.asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Vs, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues()(0) <= 0.0) {
    throw IllConditionedGamma("poly_to_fourier: singular moment system");
  }
  svd.setThreshold(1e-12);
  const Eigen::VectorXd alpha = col_scale.asDiagonal() * svd.solve(rhs);

  PolyToFourier out;
  out.coeffs = alpha;

  double max_err = 0.0;
  for (int t = -d; t <= d; ++t) {
    const double td = static_cast<double>(t);
    double exact = 0.0;
    for (int k = n - 1; k >= 0; --k) exact = exact * td + coeffs[k];
    double approx = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double phase = kTwoPi * j * gamma * td;
      approx += parity == Parity::kEven ? 2.0 * alpha[j - 1] * std::cos(phase)
                                        : 2.0 * alpha[j - 1] * std::sin(phase);
    }
    max_err = std::max(max_err, std::abs(exact - approx));
  }
  out.certified_residual = max_err;
  return out;
}

ClusteredApprox clustered_approx(const FourierFactor& factor, double f_star,
                                 const ClusterApproxParams& params) {
  if (params.ell < 1) throw BadShape("clustered_approx: ell must be >= 1");
  const int d = factor.d;
  const int ell = params.ell;
  const double gamma = params.gamma > 0 ? params.gamma : 1.0 / (64.0 * d * (ell + 1));

  const TaylorPolys taylor =
      taylor_cluster_polys(d, factor.freqs.values(), factor.weights, f_star, ell);

  // p1 = pe + i po with pe holding the (real) even powers and po the odd.
  Eigen::VectorXd pe = Eigen::VectorXd::Zero(ell + 1);
  Eigen::VectorXd po = Eigen::VectorXd::Zero(ell + 1);
  for (int m = 0; m <= ell; ++m) {
    if (m % 2 == 0) {
      pe[m] = taylor.p1[m].real();
    } else {
      po[m] = taylor.p1[m].imag();
    }
  }
  const double eps_each = params.eps_taylor / 4.0;
  const PolyToFourier even = poly_to_fourier(pe, Parity::kEven, gamma, d, eps_each);
  const PolyToFourier odd = poly_to_fourier(po, Parity::kOdd, gamma, d, eps_each);

  // Ttilde(t) = sum_j (alpha_j + beta_j) e^{2 pi i (f* + j gamma) t}
  //           + (alpha_j - beta_j) e^{2 pi i (f* - j gamma) t} + c.c.
  std::vector<std::pair<double, double>> pairs;
  const double lo = gamma / 2.0;
  const double hi = 0.5 - gamma / 2.0;
  for (int j = 1; j <= ell + 1; ++j) {
    const double a_plus = even.coeffs[j - 1] + odd.coeffs[j - 1];
    const double a_minus = even.coeffs[j - 1] - odd.coeffs[j - 1];
    pairs.emplace_back(clamp_inward(f_star + j * gamma, lo, hi, gamma), a_plus);
    pairs.emplace_back(clamp_inward(f_star - j * gamma, lo, hi, gamma), a_minus);
  }

  ClusteredApprox out;
  out.factor = merge_to_factor(d, std::move(pairs), gamma / 4.0);
  out.taylor_residual = taylor.certified_residual;
  out.conversion_residual = std::max(even.certified_residual, odd.certified_residual);
  out.coeff_norm = out.factor.weights.size() > 0 ? out.factor.weights.cwiseAbs().sum() : 0.0;

  double max_err = 0.0;
  for (int t = -d; t <= d; ++t) {
    const double td = static_cast<double>(t);
    max_err = std::max(max_err,
                       std::abs(factor_column_at(factor, td) - factor_column_at(out.factor, td)));
  }
  out.pointwise_residual = max_err;
  out.frobenius_error =
      frobenius_via_weighted_column(vandermonde_synthesize(factor),
                                    vandermonde_synthesize(out.factor));
  return out;
}

ExistenceResult existence_frobenius(const FourierFactor& factor, int k, double eps,
                                    double delta, const StructureConfig& cfg) {
  if (k < 0) throw BadRank("existence_frobenius: k must be nonnegative");
  const int d = factor.d;
  const SymToeplitz T = vandermonde_synthesize(factor);
  const SpectralSummary spec = eig_sym(T);
  const double frob = spec.eigenvalues.norm();

  // Threshold from the (C k log^5 d / eps)-th eigenvalue; indexes past d mean
  // a zero threshold (every occupied bucket is heavy).
  const double raw_idx = cfg.C * k * std::pow(log2d(d), 5) / eps;
  const int idx = static_cast<int>(std::ceil(raw_idx));
  const double lambda_src =
      (idx >= 1 && idx <= d) ? std::max(spec.eigenvalues[idx - 1], 0.0) : 0.0;
  const double lambda = lambda_src * log2d(d) / (cfg.c_prime * d);

  ExistenceResult out;
  out.threshold = lambda;
  out.factor = replace_heavy_buckets(factor, lambda, delta * frob / (2.0 * d),
                                     &out.heavy_buckets);

  double tail = 0.0;
  for (int i = k; i < d; ++i) tail += spec.eigenvalues[i] * spec.eigenvalues[i];
  out.report.bound = (1.0 + eps) * std::sqrt(tail) + delta * frob;
  out.report.measured = out.factor.freqs.empty()
                            ? frob
                            : frobenius_via_weighted_column(T, vandermonde_synthesize(out.factor));
  out.report.constant = cfg.C;
  out.report.pass = out.report.measured <= out.report.bound;
  return out;
}

ExistenceResult existence_spectral(const FourierFactor& factor, int k, double delta,
                                   const StructureConfig& cfg) {
  if (k < 0) throw BadRank("existence_spectral: k must be nonnegative");
  const int d = factor.d;
  const SymToeplitz T = vandermonde_synthesize(factor);
  const SpectralSummary spec = eig_sym(T);
  const double frob = spec.eigenvalues.norm();

  const double lambda_src = (k + 1 <= d) ? std::max(spec.eigenvalues[k], 0.0) : 0.0;
  const double lambda = lambda_src * log2d(d) / (cfg.c_prime * d);

  ExistenceResult out;
  out.threshold = lambda;
  out.factor = replace_heavy_buckets(factor, lambda, delta * frob / (2.0 * d),
                                     &out.heavy_buckets);

  // Light-side envelope: dropped buckets are all <= lambda, so the light
  // lemma bounds their spectral mass by O(d lambda log d).
  const double c_light = 16.0;
  out.report.bound = c_light * d * lambda * log2d(d) + delta * frob;
  out.report.measured = out.factor.freqs.empty() ? spec.eigenvalues.cwiseAbs().maxCoeff()
                                                 : spectral_error(T, out.factor);
  out.report.constant = c_light;
  out.report.pass = out.report.measured <= out.report.bound;
  return out;
}

double block_gershgorin_bound(const Eigen::MatrixXcd& A, const std::vector<int>& block_sizes) {
  int total = 0;
  for (int s : block_sizes) {
    if (s <= 0) throw BadShape("block_gershgorin_bound: block sizes must be positive");
    total += s;
  }
  if (total != A.rows() || A.rows() != A.cols()) {
    throw DimMismatch("block_gershgorin_bound: block sizes must tile a square matrix");
  }
  const double herm_tol = 1e-10 * std::max(1.0, A.norm());
  if ((A - A.adjoint()).norm() > herm_tol) {
    throw NotHermitian("block_gershgorin_bound: matrix is not Hermitian");
  }

  std::vector<int> offsets(block_sizes.size());
  int off = 0;
  for (std::size_t i = 0; i < block_sizes.size(); ++i) {
    offsets[i] = off;
    off += block_sizes[i];
  }

  double bound = 0.0;
  for (std::size_t i = 0; i < block_sizes.size(); ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < block_sizes.size(); ++j) {
      const Eigen::MatrixXcd block =
          A.block(offsets[i], offsets[j], block_sizes[i], block_sizes[j]);
      row_sum += block.jacobiSvd().singularValues()(0);
    }
    bound = std::max(bound, row_sum);
  }
  return bound;
}

BucketEigenReport verify_bucket_eigen_bounds(const FourierFactor& factor, double c_heavy,
                                             double c_light) {
  const int d = factor.d;
  if (d > 512) throw BadShape("verify_bucket_eigen_bounds: d must be <= 512 (dense oracle)");
  const SymToeplitz T = vandermonde_synthesize(factor);
  const SpectralSummary spec = eig_sym(T);
  const Buckets buckets = bucketize(factor);
  const double logd = log2d(d);
  const double log3 = logd * logd * logd;

  std::vector<double> weights;
  for (int j : buckets.occupied()) weights.push_back(buckets.bucket_weight(j));
  std::sort(weights.begin(), weights.end(), std::greater<>());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());

  BucketEigenReport out;
  bool all_pass = true;
  for (double lambda : weights) {
    if (lambda <= 0.0) continue;
    BucketEigenRow row;
    row.lambda = lambda;
    int count = 0;
    for (int j : buckets.occupied()) {
      if (buckets.bucket_weight(j) >= lambda) ++count;
    }
    row.buckets_at_least = count;
    row.required_eigs = static_cast<int>(std::ceil(count / log3));
    const double eig_cut = d * lambda / (c_heavy * logd);
    int eigs = 0;
    for (int i = 0; i < d; ++i) {
      if (spec.eigenvalues[i] >= eig_cut) ++eigs;
    }
    row.eigs_at_least = eigs;
    row.pass = eigs >= row.required_eigs;
    // Smallest constant making the claim hold: the required_eigs-th largest
    // eigenvalue must reach d lambda / (C log d).
    const double pivot =
        row.required_eigs >= 1 && row.required_eigs <= d ? spec.eigenvalues[row.required_eigs - 1]
                                                         : 0.0;
    row.empirical_c = pivot > 0 ? d * lambda / (pivot * logd)
                                : std::numeric_limits<double>::infinity();
    all_pass = all_pass && row.pass;
    out.heavy.push_back(row);
  }

  const double max_weight = weights.empty() ? 0.0 : weights.front();
  out.light_lambda = max_weight * (1.0 + 1e-12) + 1e-300;
  const double top = spec.eigenvalues.cwiseAbs().maxCoeff();
  out.light_ratio = top / (d * out.light_lambda * logd);
  const bool light_pass = out.light_ratio <= c_light;
  out.pass = all_pass && light_pass;
  return out;
}

Buckets well_separated_subsample(const Buckets& buckets, double w) {
  if (!(w > 0.0 && w <= 0.5)) throw BadShape("well_separated_subsample: w must be in (0, 1/2]");
  const int stride = static_cast<int>(std::ceil(buckets.d * w));
  const std::vector<int> occ = buckets.occupied();
  Buckets out;
  out.d = buckets.d;
  for (std::size_t pos = 0; pos < occ.size(); pos += static_cast<std::size_t>(std::max(stride, 1))) {
    out.assignments[occ[pos]] = buckets.assignments.at(occ[pos]);
  }
  return out;
}

CrossBlockReport cross_block_frobenius_bound(const Eigen::VectorXd& D1, const FrequencySet& S1,
                                             int sigma1, const Eigen::VectorXd& D2,
                                             const FrequencySet& S2, int sigma2, int d) {
  if (static_cast<std::size_t>(D1.size()) != S1.size() ||
      static_cast<std::size_t>(D2.size()) != S2.size()) {
    throw DimMismatch("cross_block_frobenius_bound: one weight per frequency required");
  }
  if (D1.minCoeff() < 0 || D2.minCoeff() < 0) {
    throw Error("cross_block_frobenius_bound: diagonal weights must be nonnegative");
  }
  const double s1 = sigma1 >= 0 ? 1.0 : -1.0;
  const double s2 = sigma2 >= 0 ? 1.0 : -1.0;

  CrossBlockReport out;
  out.distance = 0.5;
  for (double f : S1.values()) {
    for (double g : S2.values()) {
      out.distance = std::min(out.distance, wrap_distance(s1 * f, s2 * g));
    }
  }
  const double lambda = std::max(D1.sum(), D2.sum());
  constexpr double kC = 0.5;  // from |<v(f), v(g)>| <= 1/(2 dist)

  // Materialized norm, always computed: sum_{ij} D1_i D2_j |<v_i, v_j>|^2.
  double frob_sq = 0.0;
  for (std::size_t i = 0; i < S1.size(); ++i) {
    for (std::size_t j = 0; j < S2.size(); ++j) {
      const double ip =
          inner_product_magnitude(s1 * S1.values()[i], s2 * S2.values()[j], d);
      frob_sq += D1[static_cast<int>(i)] * D2[static_cast<int>(j)] * ip * ip;
    }
  }
  out.measured = std::sqrt(frob_sq);

  if (out.distance <= 0.0) {
    out.infinite = true;
    out.bound = std::numeric_limits<double>::infinity();
  } else {
    out.bound = kC * lambda / out.distance;
  }
  return out;
}

}  // namespace tsketch
