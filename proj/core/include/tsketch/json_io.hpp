#pragma once

#include <json.hpp>
#include <string>

#include "tsketch/generate.hpp"
#include "tsketch/leverage.hpp"
#include "tsketch/recovery.hpp"
#include "tsketch/toeplitz.hpp"

namespace tsketch {

/// @brief {"d": ..., "first_column": [...]}.
nlohmann::json toeplitz_to_json(const SymToeplitz& T);
SymToeplitz toeplitz_from_json(const nlohmann::json& j);

/// @brief {"d": ..., "frequencies": [...], "weights": [...]}.
nlohmann::json factor_to_json(const FourierFactor& factor);
FourierFactor factor_from_json(const nlohmann::json& j);

/// @brief {"d", "m", "seed", "indices", "probabilities"}; probabilities are
/// per draw (length m).
nlohmann::json plan_to_json(const SamplingPlan& plan);
SamplingPlan plan_from_json(const nlohmann::json& j);

/// @brief {"d", "r", "tau", "total"}.
nlohmann::json bounds_to_json(const LevBounds& bounds);

/// @brief {"family", "d", "k", "sigma", "seed"}.
nlohmann::json spec_to_json(const InstanceSpec& spec);
InstanceSpec spec_from_json(const nlohmann::json& j);

/// @brief {"spec", "matrix", "truth"} — the on-disk instance format.
nlohmann::json instance_to_json(const GeneratedInstance& inst);
GeneratedInstance instance_from_json(const nlohmann::json& j);

/// @brief {"factor", "ledger": {"distinct_lags", "total_reads"},
/// "stage_errors": [e1, e2], "config": {...}} — the recover output format.
nlohmann::json recovered_to_json(const RecoveredFactor& rec);

/// @brief Reads a matrix from either a bare SymToeplitz object or an
/// instance file (takes the "matrix" field when present).
SymToeplitz matrix_from_any_json(const nlohmann::json& j);

/// @brief Loads and parses a JSON file. Throws Error on I/O or parse
/// failure.
nlohmann::json load_json_file(const std::string& path);

/// @brief Writes JSON with 2-space indentation and a trailing newline.
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace tsketch
