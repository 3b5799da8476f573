#include <tsketch/errors.hpp>
#include <tsketch/generate.hpp>
#include <tsketch/spectral.hpp>
#include <tsketch/toeplitz.hpp>

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

using namespace tsketch;

TEST_CASE("generation is deterministic in the spec") {
  InstanceSpec spec;
  spec.family = InstanceFamily::kClustered;
  spec.d = 48;
  spec.k = 2;
  spec.sigma = 0.1;
  spec.seed = 5;
  const GeneratedInstance a = gen_instance(spec);
  const GeneratedInstance b = gen_instance(spec);
  CHECK((a.matrix.first_column.array() == b.matrix.first_column.array()).all());
  CHECK(a.truth.freqs.values() == b.truth.freqs.values());
  CHECK((a.truth.weights.array() == b.truth.weights.array()).all());

  spec.seed = 6;
  const GeneratedInstance c = gen_instance(spec);
  CHECK(a.truth.freqs.values() != c.truth.freqs.values());
}

TEST_CASE("circulant instances sit on the frequency grid") {
  InstanceSpec spec;
  spec.family = InstanceFamily::kCirculant;
  spec.d = 64;
  spec.k = 5;
  spec.seed = 3;
  const GeneratedInstance inst = gen_instance(spec);
  REQUIRE(inst.truth.freqs.size() == 5);
  for (double f : inst.truth.freqs.values()) {
    const double j = f * spec.d;
    CHECK(j == doctest::Approx(std::round(j)).epsilon(1e-12));
    CHECK(f > 0.0);
    CHECK(f < 0.5);
  }
  for (int i = 0; i < 5; ++i) {
    CHECK(inst.truth.weights(i) >= 0.5);
    CHECK(inst.truth.weights(i) <= 1.5);
  }
  // sigma = 0: the matrix is exactly the synthesized truth and is PSD.
  const SymToeplitz synth = vandermonde_synthesize(inst.truth);
  CHECK((inst.matrix.first_column - synth.first_column).cwiseAbs().maxCoeff() == 0.0);
  CHECK(eig_sym(inst.matrix).psd);
}

TEST_CASE("clustered instances form k tight well-separated clusters") {
  InstanceSpec spec;
  spec.family = InstanceFamily::kClustered;
  spec.d = 128;
  spec.k = 3;
  spec.seed = 9;
  const GeneratedInstance inst = gen_instance(spec);
  const std::vector<double>& freqs = inst.truth.freqs.values();
  REQUIRE(static_cast<int>(freqs.size()) == 3 * spec.k);

  // Greedy grouping by gaps: consecutive freqs more than 2/d apart start a
  // new cluster. The law guarantees width <= 0.9/d and separation >= 3.1/d.
  std::vector<std::pair<double, double>> clusters;  // (min, max)
  for (double f : freqs) {
    if (clusters.empty() || f - clusters.back().second > 2.0 / spec.d) {
      clusters.emplace_back(f, f);
    } else {
      clusters.back().second = f;
    }
  }
  REQUIRE(static_cast<int>(clusters.size()) == spec.k);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    CHECK(clusters[c].second - clusters[c].first <= 0.9 / spec.d);
    if (c > 0) CHECK(clusters[c].first - clusters[c - 1].second >= 3.1 / spec.d - 1e-12);
  }
}

TEST_CASE("random Vandermonde instances stay inside the open band") {
  InstanceSpec spec;
  spec.family = InstanceFamily::kRandomVandermonde;
  spec.d = 32;
  spec.k = 7;
  spec.seed = 17;
  const GeneratedInstance inst = gen_instance(spec);
  REQUIRE(inst.truth.freqs.size() == 7);
  for (double f : inst.truth.freqs.values()) {
    CHECK(f > 0.0);
    CHECK(f < 0.5);
  }
}

TEST_CASE("noise perturbs the matrix but never the recorded truth") {
  InstanceSpec spec;
  spec.family = InstanceFamily::kCirculant;
  spec.d = 64;
  spec.k = 3;
  spec.sigma = 0.2;
  spec.seed = 44;
  const GeneratedInstance noisy = gen_instance(spec);
  const SymToeplitz clean = vandermonde_synthesize(noisy.truth);
  CHECK((noisy.matrix.first_column - clean.first_column).cwiseAbs().maxCoeff() > 0.0);

  // The noise budget is sigma * ||T||_F spread across the weighted lags; the
  // realized perturbation lands within a small factor of it.
  const double frob = clean.dense().norm();
  const double dist = frobenius_via_weighted_column(noisy.matrix, clean);
  CHECK(dist > 0.0);
  CHECK(dist < 5.0 * spec.sigma * frob);
}

TEST_CASE("generator input validation") {
  InstanceSpec spec;
  spec.family = InstanceFamily::kCirculant;
  spec.d = 1;
  CHECK_THROWS_AS(gen_instance(spec), BadShape);
  spec.d = 16;
  spec.k = 0;
  CHECK_THROWS_AS(gen_instance(spec), BadShape);
  spec.k = 2;
  spec.sigma = -0.1;
  CHECK_THROWS_AS(gen_instance(spec), BadShape);
  spec.sigma = 0.0;
  spec.k = 8;  // circulant grid for d=16 holds at most 7 usable frequencies
  CHECK_THROWS_AS(gen_instance(spec), BadShape);
}

TEST_CASE("family names round-trip and reject unknowns") {
  for (InstanceFamily family : {InstanceFamily::kCirculant, InstanceFamily::kClustered,
                                InstanceFamily::kRandomVandermonde}) {
    CHECK(family_from_string(family_to_string(family)) == family);
  }
  CHECK_THROWS_AS(family_from_string("fourier"), Error);
}
