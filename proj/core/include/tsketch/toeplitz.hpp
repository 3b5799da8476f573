#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <set>
#include <vector>

#include "tsketch/errors.hpp"

namespace tsketch {

/// A real symmetric Toeplitz matrix represented by its first column.
/// Entry (i, j) of the materialized matrix is first_column[|i - j|].
struct SymToeplitz {
  int d = 0;
  Eigen::VectorXd first_column;

  SymToeplitz() = default;
  SymToeplitz(int dim, Eigen::VectorXd col);

  /// Materializes the dense matrix (oracle/test paths only).
  Eigen::MatrixXd dense() const;

  /// Entry accessor through the first column (0-based).
  double entry(int i, int j) const { return first_column[std::abs(i - j)]; }

  /// trace = d * first_column[0].
  double trace() const { return static_cast<double>(d) * first_column[0]; }
};

/// A strictly increasing set of frequencies, each in the open interval
/// (0, 1/2). Each f is implicitly paired with -f by the symmetric Fourier
/// matrix. The empty set is allowed as a neutral element (zero factor);
/// operations that cannot accept it say so.
class FrequencySet {
public:
  FrequencySet() = default;
  /// Sorts and validates (strictly increasing after sort, all in (0, 1/2)).
  explicit FrequencySet(std::vector<double> freqs);
  /// Sorts, merges values closer than `tol`, then validates.
  static FrequencySet merged(std::vector<double> freqs, double tol);

  const std::vector<double>& values() const { return freqs_; }
  std::size_t size() const { return freqs_.size(); }
  bool empty() const { return freqs_.empty(); }

private:
  std::vector<double> freqs_;
};

/// Frequency set plus one real weight per conjugate pair; induces
/// T = F_S diag(a, a) F_S^*. Weights are nonnegative for PSD instances and
/// may be signed for post-regression factors.
struct FourierFactor {
  int d = 0;
  FrequencySet freqs;
  Eigen::VectorXd weights;

  FourierFactor() = default;
  FourierFactor(int dim, FrequencySet s, Eigen::VectorXd a);
};

/// The diagonal weighting w with w_0 = sqrt(d), w_t = sqrt(2(d - t)) for
/// t >= 1 (0-based); satisfies sum w_t^2 = d^2 and turns first-column
/// 2-norm error into Frobenius error.
struct WeightVector {
  int d = 0;
  Eigen::VectorXd w;
};

/// Exact accounting of which lags (first-column entries) were read.
struct QueryLedger {
  std::set<int> read_lags;
  std::int64_t total_reads = 0;

  std::int64_t distinct_lags() const {
    return static_cast<std::int64_t>(read_lags.size());
  }
};

/// Query access to a Toeplitz matrix through its first column, recording
/// every read in a ledger. The recovery pipeline sees T only through this.
class QueryAccess {
public:
  explicit QueryAccess(const SymToeplitz& T) : T_(&T) {}

  int d() const { return T_->d; }

  /// Reads lag t (0-based first-column index), recording it.
  double read_lag(int t) {
    ledger_.read_lags.insert(t);
    ++ledger_.total_reads;
    return T_->first_column[t];
  }

  const QueryLedger& ledger() const { return ledger_; }

private:
  const SymToeplitz* T_;
  QueryLedger ledger_;
};

/// v(f): entry t equals e^{2 pi i f t}, t = 0..d-1.
Eigen::VectorXcd frequency_vector(double f, int d);

/// F_S = [F_{+S}; F_{-S}] in C^{d x 2|S|}: first |S| columns are v(f_j), the
/// last |S| columns are v(-f_j). Throws EmptyFrequencySet for empty S.
Eigen::MatrixXcd build_symmetric_fourier(const FrequencySet& S, int d);

/// F_S R_S in R^{d x |S|}: column j has entries 2 cos(2 pi f_j t). Throws
/// EmptyFrequencySet for empty S.
Eigen::MatrixXd real_collapsed_fourier(const FrequencySet& S, int d);

/// Synthesizes the Toeplitz matrix induced by a factor:
/// first_column[t] = sum_f 2 a_f cos(2 pi f t). The imaginary residue of the
/// complex-exponential sum is checked (< 1e-12 * sum |a_f|) and discarded.
SymToeplitz vandermonde_synthesize(const FourierFactor& factor);

/// The weighting of the norm identity ||A - B||_F = ||W(A_1 - B_1)||_2.
WeightVector weight_vector(int d);

/// ||W(A_1 - B_1)||_2, which equals ||A - B||_F exactly.
/// Throws DimMismatch when dimensions differ.
double frobenius_via_weighted_column(const SymToeplitz& A, const SymToeplitz& B);

/// Wrap-around distance on the frequency torus: min(|f-g|, 1-|f-g|).
double wrap_distance(double f, double g);

/// |v(f)^* v(g)| in closed form: |sin(pi delta d) / sin(pi delta)| with
/// delta = wrap_distance(f, g); returns d when f = g (mod 1).
double inner_product_magnitude(double f, double g, int d);

}  // namespace tsketch
