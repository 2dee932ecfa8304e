#pragma once

#include <filesystem>

#include <json.hpp>

#include "swarm_svr/dataio.hpp"
#include "swarm_svr/metrics.hpp"
#include "swarm_svr/svr.hpp"
#include "swarm_svr/tuner.hpp"

namespace swarm_svr {

/// Rounds to `digits` decimals for display output.
double round_to(double v, int digits);

nlohmann::json to_json(const MissingReport& report);
nlohmann::json to_json(const ScalerParams& scaler);
ScalerParams scaler_from_json(const nlohmann::json& j);

/// Display fields rounded to 4 decimals, plus an "exact" object carrying
/// full precision.
nlohmann::json to_json(const EvalReport& report);

nlohmann::json to_json(const KernelSpec& spec);
KernelSpec kernel_from_json(const nlohmann::json& j);

/// {kernel, support_vectors, beta, sv_indices, bias, scaler, training}
nlohmann::json to_json(const SvrModel& model);
SvrModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const tuning::TuneResult& result);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace swarm_svr
