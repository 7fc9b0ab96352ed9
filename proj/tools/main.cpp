#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cdsxva/errors.hpp"
#include "cdsxva/harness.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> paths;
  std::optional<double> grid_step;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--seed", args.seed, "override the run seed");
  cmd->add_option("--paths", args.paths, "override the path count");
  cmd->add_option("--grid-step", args.grid_step,
                  "override the simulation grid step (years)");
}

cdsxva::RunConfig load(const CommonArgs& args) {
  cdsxva::ConfigOverrides overrides;
  overrides.seed = args.seed;
  overrides.paths = args.paths;
  overrides.grid_step = args.grid_step;
  return cdsxva::load_run_config(args.config_path, overrides);
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  std::cerr << "wrote " << path.string() << "\n";
}

void emit_error(const std::string& type, const std::string& path,
                const std::string& message) {
  std::cerr << "{\"error\": {\"type\": \"" << type << "\", \"path\": \"" << path
            << "\", \"message\": \"" << message << "\"}}\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo pricer for counterparty risk on collateralized CDS"};
  app.require_subcommand(1);

  CommonArgs price_args, table_args, profile_args, forward_args;
  CLI::App* price = app.add_subcommand(
      "price", "fair spread, counterparty-risky spread, SVA and CVA/UCVA/DVA");
  add_common_options(price, price_args);
  CLI::App* table = app.add_subcommand(
      "case-table", "CVA/UCVA/DVA/SVA across the collateralization cases");
  add_common_options(table, table_args);
  CLI::App* profiles = app.add_subcommand(
      "profiles", "EPE/ENE/collateral profiles plus the forward CVA curve");
  add_common_options(profiles, profile_args);
  CLI::App* forward = app.add_subcommand(
      "forward-cva", "mean forward CVA path by nested simulation");
  add_common_options(forward, forward_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (price->parsed()) {
      const auto cfg = load(price_args);
      const auto result = cdsxva::run_price(cfg);
      const std::string json = cdsxva::price_report_json(result);
      std::cout << json;
      write_file(price_args.out_dir, "price_report.json", json);
    } else if (table->parsed()) {
      const auto cfg = load(table_args);
      const auto rows = cdsxva::run_case_table(cfg);
      const std::string csv = cdsxva::case_table_csv(rows);
      std::cout << csv;
      write_file(table_args.out_dir, "case_table.csv", csv);
    } else if (profiles->parsed()) {
      const auto cfg = load(profile_args);
      const auto result = cdsxva::run_profiles(cfg, /*with_forward=*/true);
      write_file(profile_args.out_dir, "exposure_profiles.csv",
                 cdsxva::profiles_csv(result.buckets));
      write_file(profile_args.out_dir, "forward_cva.csv",
                 cdsxva::forward_cva_csv(result.forward));
    } else if (forward->parsed()) {
      const auto cfg = load(forward_args);
      const auto result = cdsxva::run_profiles(cfg, /*with_forward=*/true);
      write_file(forward_args.out_dir, "forward_cva.csv",
                 cdsxva::forward_cva_csv(result.forward));
    }
  } catch (const cdsxva::ConfigError& e) {
    emit_error("config", e.path(), e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("runtime", "", e.what());
    return 1;
  }
  return 0;
}
