#pragma once

#include <stdexcept>
#include <string>

namespace tsketch {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A frequency set operation received an empty set where one is required.
class EmptyFrequencySet : public Error {
public:
  EmptyFrequencySet() : Error("frequency set must be nonempty") {}
};

/// Two objects that must share a dimension do not.
class DimMismatch : public Error {
public:
  explicit DimMismatch(const std::string& what) : Error(what) {}
};

/// Input contains NaN or infinity where finite values are required.
class NonFiniteInput : public Error {
public:
  explicit NonFiniteInput(const std::string& what) : Error(what) {}
};

/// Rank parameter outside [0, d].
class BadRank : public Error {
public:
  explicit BadRank(const std::string& what) : Error(what) {}
};

/// Exhaustive sign-pattern search refused beyond its dimension gate.
class TooLargeForBruteForce : public Error {
public:
  explicit TooLargeForBruteForce(const std::string& what) : Error(what) {}
};

/// Cluster width exceeds one bucket width (1/d).
class NotClustered : public Error {
public:
  explicit NotClustered(const std::string& what) : Error(what) {}
};

/// The moment-matching system is numerically singular for the given spacing.
class IllConditionedGamma : public Error {
public:
  explicit IllConditionedGamma(const std::string& what) : Error(what) {}
};

/// Shape constraint violated (e.g. column budget exceeds row count).
class BadShape : public Error {
public:
  explicit BadShape(const std::string& what) : Error(what) {}
};

/// Exhaustive candidate enumeration would exceed the hard size guard.
class ExplosionGuard : public Error {
public:
  explicit ExplosionGuard(const std::string& what) : Error(what) {}
};

/// A block matrix expected to be Hermitian is not.
class NotHermitian : public Error {
public:
  explicit NotHermitian(const std::string& what) : Error(what) {}
};

}  // namespace tsketch
