#pragma once

#include <cstdint>
#include <string>

#include "tsketch/toeplitz.hpp"

namespace tsketch {

/// Test-instance families.
enum class InstanceFamily { kCirculant, kClustered, kRandomVandermonde };

/// @brief "circulant", "clustered" or "random-vandermonde".
std::string family_to_string(InstanceFamily family);

/// @brief Inverse of family_to_string. Throws Error on unknown names.
InstanceFamily family_from_string(const std::string& name);

/// Recipe for a reproducible synthetic instance.
struct InstanceSpec {
  InstanceFamily family = InstanceFamily::kCirculant;
  int d = 64;
  int k = 2;
  double sigma = 0.0;        ///< noise level, relative to ||T||_F / d per lag
  std::uint64_t seed = 0;
};

/// A generated matrix together with its pre-noise ground-truth factor.
struct GeneratedInstance {
  InstanceSpec spec;
  SymToeplitz matrix;        ///< noisy when sigma > 0
  FourierFactor truth;       ///< exact factor of the pre-noise matrix
};

/// @brief Deterministically generates an instance. The matrix is PSD before
/// noise; when sigma > 0, i.i.d. Gaussian noise scaled by
/// sigma * ||T||_F / d is added to every first-column entry.
///
/// circulant: k distinct on-grid frequencies j/d, weights in [0.5, 1.5].
/// clustered: k well-separated clusters of 3 frequencies within +-0.9/(2d).
/// random-vandermonde: k frequencies uniform in (0, 1/2).
GeneratedInstance gen_instance(const InstanceSpec& spec);

}  // namespace tsketch
