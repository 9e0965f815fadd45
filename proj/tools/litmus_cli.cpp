#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "litmus/acceptance.hpp"
#include "litmus/harness.hpp"

namespace {

litmus::ScenarioConfig make_config(const std::string& config_path, const std::string& method,
                                   std::uint64_t seed, bool seed_set) {
  litmus::ScenarioConfig cfg;
  if (!config_path.empty()) {
    cfg = litmus::load_config(config_path);
  }
  if (!method.empty()) {
    cfg.sharing_method = litmus::sharing_method_from_string(method);
  }
  if (seed_set) {
    cfg.seed = seed;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congestion-aware serverless pricing simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string method;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd, bool with_seed) {
    cmd->add_option("--config", config_path, "Scenario config file (key=value)");
    cmd->add_option("--out", out_dir, "Output directory");
    cmd->add_option("--method", method, "Sharing method override: none|method1|method2");
    if (with_seed) {
      cmd->add_option("--seed", seed, "Seed override");
    }
  };

  CLI::App* cal = app.add_subcommand("calibrate", "Build calibration tables and discount models");
  add_common(cal, false);
  CLI::App* run = app.add_subcommand("run", "Run a pricing scenario and write the report");
  add_common(run, true);
  app.add_subcommand("check", "Run the acceptance suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cal->parsed()) {
      const auto cfg = make_config(config_path, method, 0, false);
      const auto art = litmus::calibrate(cfg);
      std::filesystem::create_directories(out_dir);
      const auto dir = std::filesystem::path(out_dir);
      litmus::save_congestion_csv(art.congestion, (dir / "congestion_table.csv").string());
      litmus::save_performance_csv(art.performance, (dir / "performance_table.csv").string());
      litmus::save_models_json(art.models, (dir / "models.json").string());
      std::cout << "wrote congestion_table.csv, performance_table.csv, models.json to "
                << out_dir << '\n';
    } else if (run->parsed()) {
      const bool seed_set = run->count("--seed") > 0;
      const auto cfg = make_config(config_path, method, seed, seed_set);
      const auto report = litmus::run_scenario(cfg);
      std::filesystem::create_directories(out_dir);
      const auto path = (std::filesystem::path(out_dir) / "report.csv").string();
      litmus::emit_report(report, path);
      std::cout << "seed " << report.seed << ": mean ideal discount "
                << report.mean_ideal_discount << ", mean litmus discount "
                << report.mean_litmus_discount << ", mean |weighted error| "
                << report.mean_abs_weighted_error << '\n'
                << "wrote " << path << " and " << path << ".json\n";
    } else {
      return litmus::acceptance::run_and_print(std::cout) ? 0 : 1;
    }
  } catch (const litmus::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const litmus::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
