#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarm_svr/dataio.hpp"
#include "swarm_svr/metrics.hpp"
#include "swarm_svr/tuner.hpp"

namespace swarm_svr::experiment {

struct ExperimentConfig {
  std::filesystem::path data_path;
  std::string station = "Aotizhongxin";
  int year = 2013;
  double split_ratio = kDefaultSplitRatio;
  std::uint64_t seed = 42;
  tuning::OptimizerKind optimizer = tuning::OptimizerKind::kNone;
  pso::PsoParams pso;
  gwo::GwoParams gwo;
  tuning::FitnessConfig svr;
  std::string search_space = "default";
  bool log_space = false;
  YearWindow year_window = YearWindow::kMeasurementYear;
  std::size_t subsample = 0;  // 0 keeps every row of the year
  std::filesystem::path output_dir = "out";
  int threads = 0;
};

/// Every key is optional; absent keys keep the defaults above. Unknown keys
/// are rejected so typos do not silently fall back to defaults.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& config);

/// Deterministic per-purpose seed from the base seed, e.g. ("split", 2013).
std::uint64_t derive_seed(std::uint64_t base, std::string_view purpose, int year);

struct IngestResult {
  MissingReport missing;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

/// Writes missing_report_<year>.json (before imputation), then the imputed,
/// encoded, standardized and split train_<year>.csv / test_<year>.csv and
/// scaler_<year>.json.
IngestResult cmd_ingest(const ExperimentConfig& config);

struct RunResult {
  std::string model;  // "svr", "pso", "gwo"
  int year = 0;
  EvalReport report;
  double rmse_ugm3 = 0.0;
  double mae_ugm3 = 0.0;
  double c = 0.0;
  double gamma = 0.0;
  std::optional<tuning::TuneResult> tune;
  std::size_t n_test = 0;
};

/// Trains the configured model on train_<year>.csv (running ingest first when
/// the processed files are absent), evaluates on test_<year>.csv, and writes
/// eval_<model>_<year>.json, predictions_<model>_<year>.csv,
/// model_<model>_<year>.json and, for tuned models, trace_<model>_<year>.csv.
RunResult cmd_run(const ExperimentConfig& config);

/// Published R², RMSE, MAE of each model and year.
struct PublishedCell {
  std::string model;
  int year;
  double r2, rmse, mae;
};
const std::array<PublishedCell, 6>& published_table4();

struct ReproduceCell {
  PublishedCell published;
  std::optional<RunResult> computed;
  std::string failure;
  bool r2_within_tolerance = false;
};

struct ReproduceReport {
  std::vector<ReproduceCell> cells;
  std::array<bool, 2> rmse_ordering_matches{};  // per year: same model order as the published table
  bool all_completed = false;
};

inline constexpr double kTable4R2Tolerance = 0.05;

/// Runs all six (model, year) cells and writes table4_comparison.json and
/// table4_comparison.txt with the published numbers beside the computed ones.
ReproduceReport cmd_reproduce(const ExperimentConfig& config);

std::string format_table(const ReproduceReport& report);

}  // namespace swarm_svr::experiment
