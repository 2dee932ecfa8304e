#include "swarm_svr/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "swarm_svr/errors.hpp"
#include "swarm_svr/serialize.hpp"

namespace swarm_svr::experiment {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
  std::set<std::string> allowed(known.begin(), known.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.contains(it.key())) {
      throw InvalidArgument("unknown config key '" + where + it.key() + "'");
    }
  }
}

std::string year_file(const std::string& stem, int year, const std::string& ext) {
  return stem + "_" + std::to_string(year) + ext;
}

std::string model_file(const std::string& stem, std::string_view model, int year,
                       const std::string& ext) {
  return stem + "_" + std::string(model) + "_" + std::to_string(year) + ext;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::string_view purpose, int year) {
  std::uint64_t h = splitmix64(base);
  for (char ch : purpose) h = splitmix64(h ^ static_cast<unsigned char>(ch));
  return splitmix64(h ^ static_cast<std::uint64_t>(year));
}

ExperimentConfig config_from_json(const json& j) {
  reject_unknown(j,
                 {"data_path", "station", "year", "split_ratio", "seed", "optimizer", "pso", "gwo",
                  "svr", "search_space", "log_space", "year_window", "subsample", "output_dir",
                  "threads"},
                 "");
  ExperimentConfig c;
  if (j.contains("data_path")) c.data_path = j.at("data_path").get<std::string>();
  read_if(j, "station", c.station);
  read_if(j, "year", c.year);
  read_if(j, "split_ratio", c.split_ratio);
  read_if(j, "seed", c.seed);
  if (j.contains("optimizer")) c.optimizer = tuning::parse_optimizer(j.at("optimizer").get<std::string>());
  if (j.contains("pso")) {
    const auto& p = j.at("pso");
    reject_unknown(p, {"population", "iterations", "c1", "c2", "inertia", "omega", "omega_max",
                       "omega_min", "v_max_fraction"},
                   "pso.");
    read_if(p, "population", c.pso.population);
    read_if(p, "iterations", c.pso.iterations);
    read_if(p, "c1", c.pso.c1);
    read_if(p, "c2", c.pso.c2);
    read_if(p, "omega", c.pso.omega);
    read_if(p, "omega_max", c.pso.omega_max);
    read_if(p, "omega_min", c.pso.omega_min);
    read_if(p, "v_max_fraction", c.pso.v_max_fraction);
    if (p.contains("inertia")) {
      auto mode = p.at("inertia").get<std::string>();
      if (mode == "constant") c.pso.inertia_mode = pso::InertiaMode::kConstant;
      else if (mode == "linear_decay") c.pso.inertia_mode = pso::InertiaMode::kLinearDecay;
      else throw InvalidArgument("pso.inertia must be 'constant' or 'linear_decay'");
    }
  }
  if (j.contains("gwo")) {
    const auto& g = j.at("gwo");
    reject_unknown(g, {"population", "iterations"}, "gwo.");
    read_if(g, "population", c.gwo.population);
    read_if(g, "iterations", c.gwo.iterations);
  }
  if (j.contains("svr")) {
    const auto& s = j.at("svr");
    reject_unknown(s, {"epsilon", "tol", "max_passes", "inner_ratio", "folds"}, "svr.");
    read_if(s, "epsilon", c.svr.epsilon);
    read_if(s, "tol", c.svr.tol);
    read_if(s, "max_passes", c.svr.max_passes);
    read_if(s, "inner_ratio", c.svr.inner_ratio);
    read_if(s, "folds", c.svr.folds);
  }
  read_if(j, "search_space", c.search_space);
  read_if(j, "log_space", c.log_space);
  if (j.contains("year_window")) {
    auto w = j.at("year_window").get<std::string>();
    if (w == "measurement") c.year_window = YearWindow::kMeasurementYear;
    else if (w == "calendar") c.year_window = YearWindow::kCalendar;
    else throw InvalidArgument("year_window must be 'measurement' or 'calendar'");
  }
  read_if(j, "subsample", c.subsample);
  if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  read_if(j, "threads", c.threads);
  SearchSpace::svr_preset(c.search_space);  // validates the name
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  auto j = read_json(path);
  auto c = config_from_json(j);
  // Relative data paths resolve against the config file's directory.
  if (!c.data_path.empty() && c.data_path.is_relative()) {
    c.data_path = path.parent_path() / c.data_path;
  }
  return c;
}

json to_json(const ExperimentConfig& c) {
  return {{"data_path", c.data_path.string()},
          {"station", c.station},
          {"year", c.year},
          {"split_ratio", c.split_ratio},
          {"seed", c.seed},
          {"optimizer", c.optimizer == tuning::OptimizerKind::kNone
                            ? "none"
                            : std::string(tuning::optimizer_tag(c.optimizer))},
          {"pso",
           {{"population", c.pso.population},
            {"iterations", c.pso.iterations},
            {"c1", c.pso.c1},
            {"c2", c.pso.c2},
            {"inertia", c.pso.inertia_mode == pso::InertiaMode::kConstant ? "constant" : "linear_decay"},
            {"omega", c.pso.omega},
            {"omega_max", c.pso.omega_max},
            {"omega_min", c.pso.omega_min},
            {"v_max_fraction", c.pso.v_max_fraction}}},
          {"gwo", {{"population", c.gwo.population}, {"iterations", c.gwo.iterations}}},
          {"svr",
           {{"epsilon", c.svr.epsilon},
            {"tol", c.svr.tol},
            {"max_passes", c.svr.max_passes},
            {"inner_ratio", c.svr.inner_ratio},
            {"folds", c.svr.folds}}},
          {"search_space", c.search_space},
          {"log_space", c.log_space},
          {"year_window", c.year_window == YearWindow::kMeasurementYear ? "measurement" : "calendar"},
          {"subsample", c.subsample},
          {"output_dir", c.output_dir.string()},
          {"threads", c.threads}};
}

IngestResult cmd_ingest(const ExperimentConfig& config) {
  if (config.data_path.empty()) throw InvalidArgument("config has no data_path");
  fs::create_directories(config.output_dir);

  auto all = load_csv(config.data_path);
  std::vector<RawRecord> records;
  for (auto& r : all) {
    if (r.station == config.station) records.push_back(std::move(r));
  }
  if (records.empty()) throw EmptyReportError("no rows for station " + config.station);

  IngestResult result;
  result.missing = count_missing(records, config.year, config.year_window);
  write_json(config.output_dir / year_file("missing_report", config.year, ".json"),
             swarm_svr::to_json(result.missing));

  auto imputed = impute_mode(records, config.year, config.year_window);
  auto encoded = encode_features(imputed);
  if (config.subsample > 0) {
    encoded = subsample(encoded, config.subsample, derive_seed(config.seed, "subsample", config.year));
  }
  auto standardized = standardize(encoded.x, encoded.y);
  auto parts = split(standardized.data.x, standardized.data.y, config.split_ratio,
                     derive_seed(config.seed, "split", config.year));
  write_dataset_csv(config.output_dir / year_file("train", config.year, ".csv"), parts.train.data);
  write_dataset_csv(config.output_dir / year_file("test", config.year, ".csv"), parts.test.data);
  write_json(config.output_dir / year_file("scaler", config.year, ".json"),
             swarm_svr::to_json(standardized.scaler));
  result.n_train = parts.train.data.y.size();
  result.n_test = parts.test.data.y.size();
  return result;
}

RunResult cmd_run(const ExperimentConfig& config) {
  const auto train_path = config.output_dir / year_file("train", config.year, ".csv");
  const auto test_path = config.output_dir / year_file("test", config.year, ".csv");
  const auto scaler_path = config.output_dir / year_file("scaler", config.year, ".json");
  if (!fs::exists(train_path) || !fs::exists(test_path) || !fs::exists(scaler_path)) {
    cmd_ingest(config);
  }
  const Dataset train_set = read_dataset_csv(train_path);
  const Dataset test_set = read_dataset_csv(test_path);
  const ScalerParams scaler = scaler_from_json(read_json(scaler_path));

  RunResult result;
  result.year = config.year;
  result.model = std::string(tuning::optimizer_tag(config.optimizer));
  tuning::FitnessConfig fit = config.svr;
  fit.inner_seed = derive_seed(config.seed, "inner", config.year);

  SvrModel model;
  if (config.optimizer == tuning::OptimizerKind::kNone) {
    auto params = tuning::default_svr_params(train_set.x.cols(), fit);
    model = train(train_set.x, train_set.y, params);
    result.c = params.c;
    result.gamma = params.kernel.gamma();
  } else {
    tuning::TuneConfig tc;
    tc.optimizer = config.optimizer;
    tc.pso = config.pso;
    tc.gwo = config.gwo;
    tc.pso.seed = derive_seed(config.seed, "pso", config.year);
    tc.gwo.seed = derive_seed(config.seed, "gwo", config.year);
    tc.space = SearchSpace::svr_preset(config.search_space);
    tc.fitness = fit;
    tc.log_space = config.log_space;
    auto tuned = tuning::tune(train_set, tc);
    model = tuning::final_fit(train_set, tuned, fit);
    result.c = tuned.best_c;
    result.gamma = tuned.best_gamma;
    write_trace_csv(config.output_dir / model_file("trace", result.model, config.year, ".csv"),
                    tuned.trace, {"C", "gamma"}, "best_fitness");
    result.tune = std::move(tuned);
  }
  model.scaler = scaler;
  model.info.seed = config.seed;

  const auto predicted = predict_batch(model, test_set.x);
  result.report = evaluate(test_set.y, predicted);
  result.rmse_ugm3 = result.report.rmse * scaler.target_std;
  result.mae_ugm3 = result.report.mae * scaler.target_std;
  result.n_test = test_set.y.size();

  json eval = {{"model", result.model},
               {"year", config.year},
               {"station", config.station},
               {"seed", config.seed},
               {"n_train", train_set.y.size()},
               {"n_test", result.n_test},
               {"params", {{"C", result.c}, {"gamma", result.gamma}, {"epsilon", fit.epsilon}}},
               {"metrics", swarm_svr::to_json(result.report)},
               {"metrics_ugm3",
                {{"rmse", round_to(result.rmse_ugm3, 4)}, {"mae", round_to(result.mae_ugm3, 4)}}}};
  if (result.tune) eval["tune"] = swarm_svr::to_json(*result.tune);
  write_json(config.output_dir / model_file("eval", result.model, config.year, ".json"), eval);
  write_json(config.output_dir / model_file("model", result.model, config.year, ".json"),
             swarm_svr::to_json(model));

  std::ofstream pred(config.output_dir / model_file("predictions", result.model, config.year, ".csv"));
  if (!pred) throw IoError("cannot write predictions CSV");
  pred.precision(17);
  pred << "observed,predicted\n";
  for (std::size_t i = 0; i < predicted.size(); ++i) pred << test_set.y[i] << ',' << predicted[i] << '\n';
  return result;
}

const std::array<PublishedCell, 6>& published_table4() {
  static const std::array<PublishedCell, 6> cells = {{
      {"svr", 2013, 0.9312, 0.2646, 0.176},
      {"pso", 2013, 0.9397, 0.2477, 0.165},
      {"gwo", 2013, 0.9389, 0.2493, 0.166},
      {"svr", 2014, 0.9257, 0.2662, 0.1559},
      {"pso", 2014, 0.9401, 0.2390, 0.1368},
      {"gwo", 2014, 0.9408, 0.2376, 0.1373},
  }};
  return cells;
}

namespace {

// Model names sorted by RMSE, ascending.
std::vector<std::string> rmse_order(std::vector<std::pair<double, std::string>> v) {
  std::stable_sort(v.begin(), v.end());
  std::vector<std::string> out;
  for (auto& [_, name] : v) out.push_back(name);
  return out;
}

std::string display_name(const std::string& model) {
  if (model == "pso") return "PSO-SVR";
  if (model == "gwo") return "GWO-SVR";
  return "SVR";
}

}  // namespace

std::string format_table(const ReproduceReport& report) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  os << std::left << std::setw(9) << "Model" << std::setw(6) << "Year" << std::right
     << std::setw(9) << "R2" << std::setw(9) << "RMSE" << std::setw(9) << "MAE" << std::setw(11)
     << "pub R2" << std::setw(11) << "pub RMSE" << std::setw(11) << "pub MAE" << "  R2 +-"
     << kTable4R2Tolerance << '\n';
  for (const auto& cell : report.cells) {
    os << std::left << std::setw(9) << display_name(cell.published.model) << std::setw(6)
       << cell.published.year << std::right;
    if (cell.computed) {
      const auto& r = cell.computed->report;
      os << std::setw(9) << r.r2.value_or(std::nan("")) << std::setw(9) << r.rmse << std::setw(9)
         << r.mae;
    } else {
      os << std::setw(27) << "FAILED";
    }
    os << std::setw(11) << cell.published.r2 << std::setw(11) << cell.published.rmse << std::setw(11)
       << cell.published.mae << "  " << (cell.r2_within_tolerance ? "ok" : "OUTSIDE") << '\n';
  }
  for (int k = 0; k < 2; ++k) {
    os << "RMSE ordering " << (2013 + k) << ": "
       << (report.rmse_ordering_matches[static_cast<std::size_t>(k)] ? "matches" : "differs")
       << '\n';
  }
  return os.str();
}

ReproduceReport cmd_reproduce(const ExperimentConfig& config) {
  ReproduceReport report;
  fs::create_directories(config.output_dir);
  for (const auto& pub : published_table4()) {
    ReproduceCell cell{pub, std::nullopt, "", false};
    ExperimentConfig cfg = config;
    cfg.year = pub.year;
    cfg.optimizer = tuning::parse_optimizer(pub.model);
    try {
      if (pub.model == "svr") cmd_ingest(cfg);
      auto t0 = std::chrono::steady_clock::now();
      cell.computed = cmd_run(cfg);
      auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cerr << "reproduce: " << pub.model << " " << pub.year << " done in " << secs << " s\n";
      const auto& r2 = cell.computed->report.r2;
      cell.r2_within_tolerance = r2 && std::abs(*r2 - pub.r2) <= kTable4R2Tolerance;
    } catch (const std::exception& e) {
      cell.failure = e.what();
      std::cerr << "reproduce: " << pub.model << " " << pub.year << " failed: " << e.what() << '\n';
    }
    report.cells.push_back(std::move(cell));
  }

  report.all_completed = true;
  for (const auto& c : report.cells) report.all_completed = report.all_completed && c.computed;
  for (int k = 0; k < 2; ++k) {
    const int year = 2013 + k;
    std::vector<std::pair<double, std::string>> ours, theirs;
    bool complete = true;
    for (const auto& c : report.cells) {
      if (c.published.year != year) continue;
      theirs.emplace_back(c.published.rmse, c.published.model);
      if (c.computed) ours.emplace_back(c.computed->report.rmse, c.published.model);
      else complete = false;
    }
    report.rmse_ordering_matches[static_cast<std::size_t>(k)] =
        complete && rmse_order(ours) == rmse_order(theirs);
  }

  json rows = json::array();
  for (const auto& c : report.cells) {
    json row = {{"model", c.published.model},
                {"year", c.published.year},
                {"published", {{"r2", c.published.r2}, {"rmse", c.published.rmse}, {"mae", c.published.mae}}},
                {"r2_within_tolerance", c.r2_within_tolerance}};
    if (c.computed) {
      row["computed"] = swarm_svr::to_json(c.computed->report);
      row["params"] = {{"C", c.computed->c}, {"gamma", c.computed->gamma}};
    } else {
      row["computed"] = nullptr;
      row["failure"] = c.failure;
    }
    rows.push_back(row);
  }
  json out = {{"cells", rows},
              {"r2_tolerance", kTable4R2Tolerance},
              {"rmse_ordering_matches",
               {{"2013", report.rmse_ordering_matches[0]}, {"2014", report.rmse_ordering_matches[1]}}},
              {"all_completed", report.all_completed},
              {"config", to_json(config)}};
  write_json(config.output_dir / "table4_comparison.json", out);
  std::ofstream txt(config.output_dir / "table4_comparison.txt");
  txt << format_table(report);
  return report;
}

}  // namespace swarm_svr::experiment
