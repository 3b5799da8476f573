#include "tsketch/toeplitz.hpp"

#include <algorithm>
#include <cmath>

namespace tsketch {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

SymToeplitz::SymToeplitz(int dim, Eigen::VectorXd col) : d(dim), first_column(std::move(col)) {
  if (d < 1) throw BadShape("SymToeplitz: dimension must be positive");
  if (first_column.size() != d) {
    throw DimMismatch("SymToeplitz: first_column length must equal d");
  }
}

Eigen::MatrixXd SymToeplitz::dense() const {
  Eigen::MatrixXd M(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M(i, j) = first_column[std::abs(i - j)];
  return M;
}

FrequencySet::FrequencySet(std::vector<double> freqs) : freqs_(std::move(freqs)) {
  std::sort(freqs_.begin(), freqs_.end());
  for (std::size_t i = 0; i < freqs_.size(); ++i) {
    if (!(freqs_[i] > 0.0 && freqs_[i] < 0.5)) {
      throw Error("FrequencySet: frequencies must lie in the open interval (0, 1/2)");
    }
    if (i > 0 && !(freqs_[i] > freqs_[i - 1])) {
      throw Error("FrequencySet: frequencies must be strictly increasing (duplicates found)");
    }
  }
}

FrequencySet FrequencySet::merged(std::vector<double> freqs, double tol) {
  std::sort(freqs.begin(), freqs.end());
  std::vector<double> kept;
  kept.reserve(freqs.size());
  for (double f : freqs) {
    if (kept.empty() || f - kept.back() > tol) kept.push_back(f);
  }
  return FrequencySet(std::move(kept));
}

FourierFactor::FourierFactor(int dim, FrequencySet s, Eigen::VectorXd a)
    : d(dim), freqs(std::move(s)), weights(std::move(a)) {
  if (d < 1) throw BadShape("FourierFactor: dimension must be positive");
  if (static_cast<std::size_t>(weights.size()) != freqs.size()) {
    throw DimMismatch("FourierFactor: one weight per frequency required");
  }
}

Eigen::VectorXcd frequency_vector(double f, int d) {
  if (d < 1) throw BadShape("frequency_vector: d must be positive");
  Eigen::VectorXcd v(d);
  for (int t = 0; t < d; ++t) {
    const double phase = kTwoPi * f * static_cast<double>(t);
    v[t] = std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return v;
}

Eigen::MatrixXcd build_symmetric_fourier(const FrequencySet& S, int d) {
  if (S.empty()) throw EmptyFrequencySet();
  const auto& freqs = S.values();
  const int s = static_cast<int>(freqs.size());
  Eigen::MatrixXcd F(d, 2 * s);
  for (int j = 0; j < s; ++j) {
    F.col(j) = frequency_vector(freqs[j], d);
    F.col(s + j) = frequency_vector(-freqs[j], d);
  }
  return F;
}

Eigen::MatrixXd real_collapsed_fourier(const FrequencySet& S, int d) {
  if (S.empty()) throw EmptyFrequencySet();
  const auto& freqs = S.values();
  const int s = static_cast<int>(freqs.size());
  Eigen::MatrixXd M(d, s);
  for (int j = 0; j < s; ++j) {
    for (int t = 0; t < d; ++t) {
      M(t, j) = 2.0 * std::cos(kTwoPi * freqs[j] * static_cast<double>(t));
    }
  }
  return M;
}

SymToeplitz vandermonde_synthesize(const FourierFactor& factor) {
  const int d = factor.d;
  const auto& freqs = factor.freqs.values();
  const int s = static_cast<int>(freqs.size());
  const double weight_scale = factor.weights.size() > 0 ? factor.weights.cwiseAbs().sum() : 0.0;

  Eigen::VectorXd col = Eigen::VectorXd::Zero(d);
  double max_imag = 0.0;
  for (int t = 0; t < d; ++t) {
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < s; ++j) {
      const double phase = kTwoPi * freqs[j] * static_cast<double>(t);
      const std::complex<double> plus(std::cos(phase), std::sin(phase));
      // e^{i phase} + e^{-i phase}: imaginary parts cancel; the residue is
      // checked below and the real part kept.
      acc += factor.weights[j] * (plus + std::conj(plus));
    }
    max_imag = std::max(max_imag, std::abs(acc.imag()));
    col[t] = acc.real();
  }
  if (weight_scale > 0.0 && max_imag >= 1e-12 * weight_scale) {
    throw Error("vandermonde_synthesize: imaginary residue exceeds tolerance");
  }
  return SymToeplitz(d, std::move(col));
}

WeightVector weight_vector(int d) {
  if (d < 1) throw BadShape("weight_vector: d must be positive");
  WeightVector wv;
  wv.d = d;
  wv.w.resize(d);
  wv.w[0] = std::sqrt(static_cast<double>(d));
  for (int t = 1; t < d; ++t) wv.w[t] = std::sqrt(2.0 * static_cast<double>(d - t));
  return wv;
}

double frobenius_via_weighted_column(const SymToeplitz& A, const SymToeplitz& B) {
  if (A.d != B.d) throw DimMismatch("frobenius_via_weighted_column: dimension mismatch");
  const WeightVector wv = weight_vector(A.d);
  double acc = 0.0;
  for (int t = 0; t < A.d; ++t) {
    const double diff = wv.w[t] * (A.first_column[t] - B.first_column[t]);
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double wrap_distance(double f, double g) {
  double diff = std::abs(f - g);
  diff -= std::floor(diff);  // reduce mod 1 into [0, 1)
  return std::min(diff, 1.0 - diff);
}

double inner_product_magnitude(double f, double g, int d) {
  const double delta = wrap_distance(f, g);
  if (delta == 0.0) return static_cast<double>(d);
  const double denom = std::sin(M_PI * delta);
  if (denom == 0.0) return static_cast<double>(d);
  return std::abs(std::sin(M_PI * delta * static_cast<double>(d)) / denom);
}

}  // namespace tsketch
