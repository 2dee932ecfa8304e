#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "swarm_svr/experiment.hpp"
#include "swarm_svr/parallel.hpp"
#include "swarm_svr/serialize.hpp"

namespace {

using swarm_svr::experiment::ExperimentConfig;

struct Overrides {
  std::optional<std::string> optimizer;
  std::optional<int> year;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> data;
  std::optional<std::string> output_dir;
};

ExperimentConfig resolve(const std::string& config_path, const Overrides& o) {
  auto config = swarm_svr::experiment::load_config(config_path);
  if (o.optimizer) config.optimizer = swarm_svr::tuning::parse_optimizer(*o.optimizer);
  if (o.year) config.year = *o.year;
  if (o.seed) config.seed = *o.seed;
  if (o.data) config.data_path = *o.data;
  if (o.output_dir) config.output_dir = *o.output_dir;
  swarm_svr::configure_threads(config.threads > 0 ? std::optional<int>(config.threads) : std::nullopt);
  return config;
}

void print_report(const swarm_svr::experiment::RunResult& r) {
  std::cout << r.model << " " << r.year << ": " << swarm_svr::to_json(r.report).dump()
            << "  (C=" << r.c << ", gamma=" << r.gamma << ", RMSE " << r.rmse_ugm3
            << " ug/m3, MAE " << r.mae_ugm3 << " ug/m3)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SVR with PSO/GWO hyperparameter tuning for hourly PM2.5 forecasting"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--data", o.data, "override data_path");
    sub->add_option("--output-dir", o.output_dir, "override output_dir");
    sub->add_option("--seed", o.seed, "override the base seed");
  };

  auto* ingest = app.add_subcommand("ingest", "missing-value report and processed train/test CSVs");
  add_common(ingest);
  ingest->add_option("--year", o.year, "2013 or 2014");

  auto* run = app.add_subcommand("run", "train (optionally tuned) SVR and evaluate on the test split");
  add_common(run);
  run->add_option("--year", o.year, "2013 or 2014");
  run->add_option("--optimizer", o.optimizer, "none, pso or gwo")
      ->check(CLI::IsMember({"none", "pso", "gwo"}));

  auto* reproduce = app.add_subcommand("reproduce", "all three models for 2013 and 2014");
  add_common(reproduce);

  CLI11_PARSE(app, argc, argv);

  try {
    auto config = resolve(config_path, o);
    if (*ingest) {
      auto r = swarm_svr::experiment::cmd_ingest(config);
      std::cout << swarm_svr::to_json(r.missing).dump(2) << '\n'
                << "train rows " << r.n_train << ", test rows " << r.n_test << '\n';
    } else if (*run) {
      print_report(swarm_svr::experiment::cmd_run(config));
    } else if (*reproduce) {
      auto report = swarm_svr::experiment::cmd_reproduce(config);
      std::cout << swarm_svr::experiment::format_table(report);
      return report.all_completed ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
