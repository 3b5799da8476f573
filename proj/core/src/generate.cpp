#include "tsketch/generate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "tsketch/errors.hpp"
#include "tsketch/rng.hpp"

namespace tsketch {

namespace {

FourierFactor pairs_to_factor(int d, std::vector<std::pair<double, double>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::vector<double> freqs;
  Eigen::VectorXd weights(static_cast<int>(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    freqs.push_back(pairs[i].first);
    weights[static_cast<int>(i)] = pairs[i].second;
  }
  return FourierFactor(d, FrequencySet(std::move(freqs)), std::move(weights));
}

FourierFactor gen_circulant(int d, int k, Rng& rng) {
  const int grid_max = (d + 1) / 2 - 1;  // on-grid indices j with 0 < j/d < 1/2
  if (k > grid_max) throw BadShape("gen_instance: circulant needs k <= ceil(d/2) - 1");
  std::vector<int> grid(grid_max);
  std::iota(grid.begin(), grid.end(), 1);
  // Partial Fisher-Yates: the first k entries become the chosen indices.
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.uniform_index(grid.size() - i));
    std::swap(grid[i], grid[j]);
  }
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < k; ++i) {
    pairs.emplace_back(static_cast<double>(grid[i]) / d, rng.uniform(0.5, 1.5));
  }
  return pairs_to_factor(d, std::move(pairs));
}

FourierFactor gen_clustered(int d, int k, Rng& rng) {
  std::vector<double> centers;
  for (int c = 0; c < k; ++c) {
    double center = 0.25;
    bool ok = false;
    for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
      center = rng.uniform(1.0 / 16.0, 7.0 / 16.0);
      ok = true;
      for (double other : centers) {
        if (std::abs(center - other) < 4.0 / d) ok = false;
      }
    }
    if (!ok) throw BadShape("gen_instance: could not separate this many clusters");
    centers.push_back(center);
  }
  std::vector<std::pair<double, double>> pairs;
  const double half_width = 0.9 / (2.0 * d);
  for (double center : centers) {
    std::vector<double> offsets;
    while (offsets.size() < 3) {
      const double off = rng.uniform(-half_width, half_width);
      bool distinct = true;
      for (double o : offsets) {
        if (std::abs(off - o) < 1e-6 / d) distinct = false;
      }
      if (distinct) offsets.push_back(off);
    }
    for (double off : offsets) pairs.emplace_back(center + off, rng.uniform(0.5, 1.5) / 3.0);
  }
  return pairs_to_factor(d, std::move(pairs));
}

FourierFactor gen_random_vandermonde(int d, int k, Rng& rng) {
  std::vector<std::pair<double, double>> pairs;
  std::vector<double> freqs;
  while (static_cast<int>(freqs.size()) < k) {
    const double f = rng.uniform(0.0, 0.5);
    if (f < 1e-9 || f > 0.5 - 1e-9) continue;
    bool distinct = true;
    for (double g : freqs) {
      if (std::abs(f - g) < 1e-9) distinct = false;
    }
    if (!distinct) continue;
    freqs.push_back(f);
    pairs.emplace_back(f, rng.uniform(0.5, 1.5));
  }
  return pairs_to_factor(d, std::move(pairs));
}

}  // namespace

std::string family_to_string(InstanceFamily family) {
  switch (family) {
    case InstanceFamily::kCirculant:
      return "circulant";
    case InstanceFamily::kClustered:
      return "clustered";
    case InstanceFamily::kRandomVandermonde:
      return "random-vandermonde";
  }
  throw Error("family_to_string: unknown family");
}

InstanceFamily family_from_string(const std::string& name) {
  if (name == "circulant") return InstanceFamily::kCirculant;
  if (name == "clustered") return InstanceFamily::kClustered;
  if (name == "random-vandermonde") return InstanceFamily::kRandomVandermonde;
  throw Error("family_from_string: unknown family '" + name + "'");
}

GeneratedInstance gen_instance(const InstanceSpec& spec) {
  if (spec.d < 2) throw BadShape("gen_instance: d must be >= 2");
  if (spec.k < 1) throw BadShape("gen_instance: k must be >= 1");
  if (spec.sigma < 0) throw BadShape("gen_instance: sigma must be >= 0");

  Rng rng(derive_seed(spec.seed, 7));
  FourierFactor truth(spec.d, FrequencySet(), Eigen::VectorXd());
  switch (spec.family) {
    case InstanceFamily::kCirculant:
      truth = gen_circulant(spec.d, spec.k, rng);
      break;
    case InstanceFamily::kClustered:
      truth = gen_clustered(spec.d, spec.k, rng);
      break;
    case InstanceFamily::kRandomVandermonde:
      truth = gen_random_vandermonde(spec.d, spec.k, rng);
      break;
  }

  SymToeplitz T = vandermonde_synthesize(truth);
  if (spec.sigma > 0) {
    const double frob =
        frobenius_via_weighted_column(T, SymToeplitz(spec.d, Eigen::VectorXd::Zero(spec.d)));
    const double scale = spec.sigma * frob / spec.d;
    Rng noise(derive_seed(spec.seed, 99));
    for (int t = 0; t < spec.d; ++t) {
      T.first_column[t] += scale * noise.gaussian();
    }
  }
  return GeneratedInstance{spec, std::move(T), std::move(truth)};
}

}  // namespace tsketch
