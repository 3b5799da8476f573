#include <tsketch/errors.hpp>
#include <tsketch/rng.hpp>
#include <tsketch/toeplitz.hpp>

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

using namespace tsketch;

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

TEST_CASE("SymToeplitz dense/entry/trace agree with the first column") {
  Eigen::VectorXd col(4);
  col << 5.0, 2.0, -1.0, 0.5;
  const SymToeplitz T(4, col);
  const Eigen::MatrixXd D = T.dense();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(D(i, j) == col(std::abs(i - j)));
      CHECK(T.entry(i, j) == D(i, j));
    }
  CHECK(T.trace() == doctest::Approx(4.0 * 5.0));
  CHECK(D == D.transpose().eval());
}

TEST_CASE("SymToeplitz rejects bad shapes") {
  CHECK_THROWS_AS(SymToeplitz(0, Eigen::VectorXd::Zero(0)), BadShape);
  CHECK_THROWS_AS(SymToeplitz(3, Eigen::VectorXd::Zero(2)), DimMismatch);
}

TEST_CASE("weight vector entries and total mass") {
  const int d = 11;
  const WeightVector wv = weight_vector(d);
  REQUIRE(wv.d == d);
  REQUIRE(wv.w.size() == d);
  CHECK(wv.w(0) == doctest::Approx(std::sqrt(static_cast<double>(d))));
  for (int t = 1; t < d; ++t)
    CHECK(wv.w(t) == doctest::Approx(std::sqrt(2.0 * (d - t))));
  CHECK(wv.w.squaredNorm() == doctest::Approx(static_cast<double>(d) * d));
  CHECK_THROWS_AS(weight_vector(0), BadShape);
}

TEST_CASE("weighted first-column distance equals the dense Frobenius distance") {
  Rng rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + static_cast<int>(rng.uniform_index(40));
    Eigen::VectorXd a(d), b(d);
    for (int i = 0; i < d; ++i) {
      a(i) = rng.gaussian();
      b(i) = rng.gaussian();
    }
    const SymToeplitz A(d, a), B(d, b);
    const double dense = (A.dense() - B.dense()).norm();
    CHECK(frobenius_via_weighted_column(A, B) == doctest::Approx(dense).epsilon(1e-12));
  }
  CHECK_THROWS_AS(frobenius_via_weighted_column(SymToeplitz(2, Eigen::VectorXd::Zero(2)),
                                                SymToeplitz(3, Eigen::VectorXd::Zero(3))),
                  DimMismatch);
}

TEST_CASE("frequency vector walks the unit circle") {
  const Eigen::VectorXcd v = frequency_vector(0.25, 4);
  REQUIRE(v.size() == 4);
  CHECK(std::abs(v(0) - std::complex<double>(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(v(1) - std::complex<double>(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(v(2) - std::complex<double>(-1.0, 0.0)) < 1e-15);
  CHECK(std::abs(v(3) - std::complex<double>(0.0, -1.0)) < 1e-15);
  CHECK_THROWS_AS(frequency_vector(0.1, 0), BadShape);
}

TEST_CASE("FrequencySet validates, sorts, and merges") {
  const FrequencySet S(std::vector<double>{0.3, 0.1, 0.2});
  REQUIRE(S.size() == 3);
  CHECK(S.values() == std::vector<double>{0.1, 0.2, 0.3});
  CHECK_FALSE(S.empty());

  CHECK_THROWS_AS(FrequencySet(std::vector<double>{0.0}), Error);
  CHECK_THROWS_AS(FrequencySet(std::vector<double>{0.5}), Error);
  CHECK_THROWS_AS(FrequencySet(std::vector<double>{-0.1}), Error);
  CHECK_THROWS_AS(FrequencySet(std::vector<double>{0.2, 0.2}), Error);

  const FrequencySet merged =
      FrequencySet::merged(std::vector<double>{0.1, 0.1 + 1e-9, 0.3}, 1e-6);
  CHECK(merged.size() == 2);
  CHECK(merged.values()[0] == doctest::Approx(0.1).epsilon(1e-8));
  CHECK(merged.values()[1] == doctest::Approx(0.3));
}

TEST_CASE("FourierFactor checks its shape") {
  const FrequencySet S(std::vector<double>{0.1, 0.2});
  CHECK_THROWS_AS(FourierFactor(4, S, Eigen::VectorXd::Ones(3)), DimMismatch);
  CHECK_THROWS_AS(FourierFactor(0, S, Eigen::VectorXd::Ones(2)), BadShape);
  const FourierFactor ok(4, S, Eigen::VectorXd::Ones(2));
  CHECK(ok.d == 4);
  CHECK(ok.freqs.size() == 2);
}

TEST_CASE("symmetric Fourier matrix stacks conjugate frequency pairs") {
  const FrequencySet S(std::vector<double>{0.1, 0.3});
  const int d = 6;
  const Eigen::MatrixXcd F = build_symmetric_fourier(S, d);
  REQUIRE(F.rows() == d);
  REQUIRE(F.cols() == 4);
  for (int j = 0; j < 2; ++j) {
    const double f = S.values()[static_cast<std::size_t>(j)];
    for (int t = 0; t < d; ++t) {
      CHECK(std::abs(F(t, j) - std::polar(1.0, kTwoPi * f * t)) < 1e-14);
      CHECK(std::abs(F(t, 2 + j) - std::polar(1.0, -kTwoPi * f * t)) < 1e-14);
    }
  }
  CHECK_THROWS_AS(build_symmetric_fourier(FrequencySet(std::vector<double>{}), d),
                  EmptyFrequencySet);
}

TEST_CASE("real collapsed Fourier matrix is the cosine table") {
  const FrequencySet S(std::vector<double>{0.05, 0.22, 0.4});
  const int d = 8;
  const Eigen::MatrixXd R = real_collapsed_fourier(S, d);
  REQUIRE(R.rows() == d);
  REQUIRE(R.cols() == 3);
  for (int j = 0; j < 3; ++j)
    for (int t = 0; t < d; ++t)
      CHECK(R(t, j) ==
            doctest::Approx(2.0 * std::cos(kTwoPi * S.values()[static_cast<std::size_t>(j)] * t))
                .epsilon(1e-14));
}

TEST_CASE("Vandermonde synthesis of a single quarter-wave frequency") {
  const double a = 0.7;
  const FourierFactor factor(4, FrequencySet(std::vector<double>{0.25}),
                             Eigen::VectorXd::Constant(1, a));
  const SymToeplitz T = vandermonde_synthesize(factor);
  CHECK(T.first_column(0) == doctest::Approx(2.0 * a));
  CHECK(std::abs(T.first_column(1)) < 1e-14);
  CHECK(T.first_column(2) == doctest::Approx(-2.0 * a));
  CHECK(std::abs(T.first_column(3)) < 1e-14);
}

TEST_CASE("synthesis matches the explicit factor product") {
  Rng rng(7);
  const int d = 12;
  const std::vector<double> freqs{0.07, 0.19, 0.33};
  Eigen::VectorXd w(3);
  for (int i = 0; i < 3; ++i) w(i) = rng.uniform(0.5, 1.5);
  const FourierFactor factor(d, FrequencySet(freqs), w);
  const SymToeplitz T = vandermonde_synthesize(factor);

  const Eigen::MatrixXcd F = build_symmetric_fourier(factor.freqs, d);
  Eigen::VectorXd diag(6);
  diag << w(0), w(1), w(2), w(0), w(1), w(2);
  const Eigen::MatrixXcd product = F * diag.asDiagonal() * F.adjoint();
  CHECK((T.dense() - product.real()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(product.imag().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("wrap distance folds onto the circle") {
  CHECK(wrap_distance(0.1, 0.9) == doctest::Approx(0.2));
  CHECK(wrap_distance(0.3, 0.4) == doctest::Approx(0.1));
  CHECK(wrap_distance(0.25, 0.25) == doctest::Approx(0.0));
  CHECK(wrap_distance(0.9, 0.1) == doctest::Approx(0.2));
}

TEST_CASE("inner product magnitude: diagonal and on-grid orthogonality") {
  const int d = 16;
  CHECK(inner_product_magnitude(0.2, 0.2, d) == doctest::Approx(static_cast<double>(d)));
  // Distinct grid frequencies j/d are exactly orthogonal over d samples.
  CHECK(inner_product_magnitude(1.0 / d, 3.0 / d, d) == doctest::Approx(0.0).scale(1.0));
  // Closed form agrees with the direct geometric sum off grid.
  const double f = 0.123, g = 0.371;
  std::complex<double> acc(0.0, 0.0);
  for (int t = 0; t < d; ++t) acc += std::polar(1.0, kTwoPi * (g - f) * t);
  CHECK(inner_product_magnitude(f, g, d) == doctest::Approx(std::abs(acc)).epsilon(1e-12));
}

TEST_CASE("query ledger counts reads and distinct lags") {
  Eigen::VectorXd col(5);
  col << 3.0, 1.0, 0.5, 0.25, 0.1;
  const SymToeplitz T(5, col);
  QueryAccess access(T);
  CHECK(access.read_lag(2) == doctest::Approx(0.5));
  CHECK(access.read_lag(2) == doctest::Approx(0.5));
  CHECK(access.read_lag(4) == doctest::Approx(0.1));
  const QueryLedger& ledger = access.ledger();
  CHECK(ledger.total_reads == 3);
  CHECK(ledger.distinct_lags() == 2);
  CHECK(ledger.read_lags.count(2) == 1);
  CHECK(ledger.read_lags.count(4) == 1);
  CHECK(ledger.read_lags.count(0) == 0);
}
