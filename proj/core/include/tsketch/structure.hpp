#pragma once

#include <Eigen/Dense>
#include <map>
#include <utility>
#include <vector>

#include "tsketch/toeplitz.hpp"

namespace tsketch {

/// Frequencies of a factor grouped into the d half-open intervals
/// [(j-1)/d, j/d), indexed by j in {1..d}.
struct Buckets {
  int d = 0;
  /// bucket index -> (frequency, weight) pairs, sorted by frequency.
  std::map<int, std::vector<std::pair<double, double>>> assignments;

  /// w(B_j): sum of the weights in bucket j (0 when empty).
  double bucket_weight(int j) const;
  /// Sum of all bucket weights (= sum of the factor's weights).
  double total_weight() const;
  /// Sorted indices of nonempty buckets.
  std::vector<int> occupied() const;
  /// Center of bucket j: (j - 1/2) / d.
  double center(int j) const { return (static_cast<double>(j) - 0.5) / d; }
};

/// Parameters of the clustered-case low-rank replacement.
struct ClusterApproxParams {
  int ell = 1;              // Taylor degree (>= 1)
  double gamma = 0.0;       // output grid spacing; 0 selects 1/(64 d (ell+1))
  double eps_taylor = 0.0;  // pointwise budget for the polynomial-to-exponential step
  double delta = 1e-6;      // relative budget for the Taylor truncation
};

/// Taylor expansion of a frequency cluster around f_star.
struct TaylorPolys {
  Eigen::VectorXcd p1;              // coefficient m: sum_f a_f (2 pi i r_f)^m / m!
  Eigen::VectorXcd p2;              // same with -r_f (conjugate coefficients)
  double certified_residual = 0.0;  // max |T_1(t) - approx(t)| over integer t in [-d, d]
  double weight_sum = 0.0;          // sum of |a_f|
};

enum class Parity { kEven, kOdd };

/// Result of converting a parity-restricted polynomial into a short
/// symmetric exponential sum on the grid {±j gamma}.
struct PolyToFourier {
  Eigen::VectorXd coeffs;           // alpha_j (even) or beta_j (odd), j = 1..ell+1
  double certified_residual = 0.0;  // max |p(t) - ptilde(t)| over integer t in [-d, d]
};

/// Output of clustered_approx with its certificates.
struct ClusteredApprox {
  FourierFactor factor;              // frequencies {f_star ± j gamma}, possibly signed weights
  double frobenius_error = 0.0;      // || T - Ttilde ||_F via the weighted-column identity
  double pointwise_residual = 0.0;   // max_t | T_1(t) - Ttilde_1(t) |, integer t in [-d, d]
  double taylor_residual = 0.0;      // certificate from the Taylor step
  double conversion_residual = 0.0;  // max of the two poly-to-Fourier certificates
  double coeff_norm = 0.0;           // l1 norm of the output weights (blow-up diagnostic)
};

/// Unspecified constants of the existence construction, surfaced as
/// configuration and echoed in reports instead of silently assumed.
struct StructureConfig {
  double C = 4.0;        // eigenvalue-index constant in the Frobenius threshold
  double c_prime = 1.0;  // denominator constant in both thresholds
};

/// Bound/measured pair in the shape every structural report shares.
struct StructureReport {
  double bound = 0.0;
  double measured = 0.0;
  double constant = 0.0;
  bool pass = false;
};

/// Existence-construction output: the replacement factor plus its report.
struct ExistenceResult {
  FourierFactor factor;
  StructureReport report;
  double threshold = 0.0;  // the bucket-weight threshold lambda used
  int heavy_buckets = 0;
};

/// Per-threshold row of verify_bucket_eigen_bounds.
struct BucketEigenRow {
  double lambda = 0.0;
  int buckets_at_least = 0;   // #{j : w(B_j) >= lambda}
  int required_eigs = 0;      // ceil(buckets_at_least / log2(d)^3)
  int eigs_at_least = 0;      // #{i : lambda_i(T) >= d lambda / (C log2 d)}
  double empirical_c = 0.0;   // smallest C making the heavy claim hold
  bool pass = false;
};

/// Report of verify_bucket_eigen_bounds.
struct BucketEigenReport {
  std::vector<BucketEigenRow> heavy;
  double light_lambda = 0.0;  // threshold above every bucket weight
  double light_ratio = 0.0;   // ||T||_2 / (d * lambda * log2 d)
  bool pass = false;
};

/// Certified cross-block bound C*lambda/dist and the materialized norm.
struct CrossBlockReport {
  double bound = 0.0;     // +infinity when the sign-adjusted sets touch
  double measured = 0.0;  // || D1^{1/2} F1^* F2 D2^{1/2} ||_F
  double distance = 0.0;  // min wrap distance between sigma1*S1 and sigma2*S2
  bool infinite = false;  // InfiniteBound sentinel
};

/// Groups a factor's frequencies into buckets of width 1/d.
Buckets bucketize(const FourierFactor& factor);

/// Splits a factor into (heavy, light) by bucket weight: heavy keeps every
/// bucket with w(B_j) > lambda. Frequency multisets are disjoint and
/// reconstruct the input exactly.
std::pair<FourierFactor, FourierFactor> heavy_light_split(const FourierFactor& factor,
                                                          double lambda);

/// Degree-ell Taylor polynomials of the cluster {a_f at f = f_star + r_f}:
/// p1 coefficient m is sum_f a_f (2 pi i r_f)^m / m!, p2 uses -r_f. The
/// residual |T_1(t) - e^{2 pi i f* t} p1(t) - e^{-2 pi i f* t} p2(t)| is
/// certified by direct evaluation on integer t in [-d, d].
/// Throws NotClustered when some |f - f_star| exceeds 1/d.
TaylorPolys taylor_cluster_polys(int d, const std::vector<double>& freqs,
                                 const Eigen::VectorXd& weights, double f_star, int ell);

/// Solves the (ell+1) x (ell+1) moment system V_{k,j} = j^k matching p's
/// coefficients, returning alpha with
///   even: ptilde(t) = sum_j alpha_j (e^{2 pi i j gamma t} + e^{-...})
///   odd:  ptilde(t) = -i sum_j alpha_j (e^{2 pi i j gamma t} - e^{-...})
/// The system is solved with column scaling and a relative singular-value
/// cutoff of 1e-12; the residual is certified on integer t in [-d, d].
/// `coeffs[m]` is the t^m coefficient; opposite-parity entries must be ~0.
/// Throws IllConditionedGamma when gamma <= 0 or the scaled system is
/// numerically singular.
PolyToFourier poly_to_fourier(const Eigen::VectorXd& coeffs, Parity parity, double gamma,
                              int d, double eps);

/// Replaces a cluster (all frequencies within 1/d of f_star) by a factor on
/// the grid {f_star ± j gamma}, j = 1..ell+1 (rank <= 4(ell+1)), certifying
/// || T - Ttilde ||_F <= delta * sum a_f + eps * d by direct evaluation.
ClusteredApprox clustered_approx(const FourierFactor& factor, double f_star,
                                 const ClusterApproxParams& params);

/// Winner of the joint degree/spacing search for one cluster.
struct ClusterSearchPick {
  ClusteredApprox approx;
  double gamma = 0.0;
  int ell = 0;
};

/// Runs clustered_approx over a deterministic ladder of Taylor degrees and
/// grid spacings (centered at the tail-rule degree for pointwise_target) and
/// returns the attempt with the smallest certified pointwise residual.
/// Larger degrees shrink the Taylor tail but make the moment conversion
/// cancellation-bound, so the certified optimum decides.
ClusterSearchPick search_cluster_approx(const FourierFactor& cluster, double pointwise_target);

/// Constructive near-optimal replacement: thresholds bucket weights at
/// lambda = lambda_{ceil(C k log2(d)^5 / eps)}(T) * log2(d) / (c' d), keeps
/// heavy buckets and replaces each by clustered_approx. The report compares
/// the measured Frobenius error against (1+eps) ||T - T_k||_F + delta ||T||_F
/// from the dense oracle.
ExistenceResult existence_frobenius(const FourierFactor& factor, int k, double eps,
                                    double delta, const StructureConfig& cfg = {});

/// Spectral variant: lambda = lambda_{k+1}(T) * log2(d) / (c' d); the report
/// compares the measured spectral error against
/// C_light * d * lambda * log2(d) + delta ||T||_F.
ExistenceResult existence_spectral(const FourierFactor& factor, int k, double delta,
                                   const StructureConfig& cfg = {});

/// max_i ( ||A_ii||_2 + sum_{j != i} ||A_ij||_2 ) over the given square
/// diagonal blocks; always >= ||A||_2. Throws NotHermitian when A is not
/// Hermitian (tolerance 1e-10 * ||A||_F) and DimMismatch when the block
/// sizes do not tile A.
double block_gershgorin_bound(const Eigen::MatrixXcd& A, const std::vector<int>& block_sizes);

/// Directional numeric check of the heavy- and light-bucket eigenvalue
/// lemmas for one factor (d <= 512; dense eigensolve).
BucketEigenReport verify_bucket_eigen_bounds(const FourierFactor& factor,
                                             double c_heavy = 16.0, double c_light = 16.0);

/// Keeps every ceil(d w)-th occupied bucket in sorted-center order, so
/// retained centers are >= w apart.
Buckets well_separated_subsample(const Buckets& buckets, double w);

/// Certified bound C * lambda / dist (C = 1/2 from the inner-product decay)
/// on || D1^{1/2} F_{sigma1 S1}^* F_{sigma2 S2} D2^{1/2} ||_F, with the
/// materialized norm. lambda = max(sum D1, sum D2). Zero distance yields the
/// InfiniteBound sentinel (bound = +infinity).
CrossBlockReport cross_block_frobenius_bound(const Eigen::VectorXd& D1, const FrequencySet& S1,
                                             int sigma1, const Eigen::VectorXd& D2,
                                             const FrequencySet& S2, int sigma2, int d);

}  // namespace tsketch
