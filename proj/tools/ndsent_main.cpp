// Command-line driver.  One experiment per invocation: load a JSON config,
// run the named computation, write a CSV trace and a JSON report into the
// output directory, and (with --verify) check the headline value against the
// expectations declared in the system catalog.  Subcommands `list` and
// `export` expose the built-in catalog.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 budget exhausted,
// 4 verification failure, 1 anything else.  Failures emit one JSON object
// per line on stderr: {"error": <category>, "message": <text>}.
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ndsent/budget.hpp"
#include "ndsent/catalog.hpp"
#include "ndsent/errors.hpp"
#include "ndsent/report.hpp"
#include "ndsent/serialize.hpp"

namespace fs = std::filesystem;

namespace {

void diagnostic(const std::string& category, const std::string& message) {
  nlohmann::json j{{"error", category}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw nds::ConfigError("cannot open output file: " + path.generic_string());
  }
  out << text;
  out.flush();
  if (!out) {
    throw nds::ConfigError("failed writing output file: " +
                           path.generic_string());
  }
}

int run_list() {
  const auto entries = nds::full_catalog();
  std::size_t width = 0;
  for (const auto& e : entries) width = std::max(width, e.id.size());
  for (const auto& e : entries) {
    std::cout << e.id << std::string(width - e.id.size() + 2, ' ') << e.title
              << "\n";
    std::string parts;
    for (const auto& [name, seq] : e.partitions) {
      if (!parts.empty()) parts += ", ";
      parts += name;
    }
    std::cout << std::string(width + 2, ' ') << "partitions: "
              << (parts.empty() ? "(none)" : parts)
              << "; declared expectations: " << e.expected.size() << "\n";
  }
  return 0;
}

int run_export(const std::string& id, const fs::path& out_dir) {
  nds::CatalogEntry entry = nds::catalog_entry(id);
  fs::create_directories(out_dir);
  const fs::path path = out_dir / (id + ".system.json");
  write_file(path, nds::system_to_json(*entry.system));
  std::cout << "wrote " << path.generic_string() << "\n";
  return 0;
}

int run_experiment_command(const std::string& config_path,
                           const fs::path& out_dir, long long workers,
                           std::int64_t budget_cells, bool verify) {
  nds::ExperimentConfig cfg = nds::load_experiment_config(config_path);
  nds::Budget budget(budget_cells);
  nds::ExperimentResult result = nds::run_experiment(cfg, budget, workers);

  fs::create_directories(out_dir);
  const fs::path csv_path = out_dir / (cfg.out + ".csv");
  const fs::path json_path = out_dir / (cfg.out + ".json");
  write_file(csv_path, nds::to_csv(result));
  write_file(json_path, nds::to_json_report(cfg, result));
  std::cout << "wrote " << csv_path.generic_string() << "\n";
  std::cout << "wrote " << json_path.generic_string() << "\n";
  std::cout << cfg.kind << " headline " << nds::format_g12(result.value_bits)
            << " bits (" << result.value_desc << ")\n";
  std::cout << "budget used " << budget.used() << " of " << budget.limit()
            << " cells\n";

  if (verify) {
    nds::VerifyOutcome outcome = nds::verify_experiment(cfg, result);
    for (const auto& [line, ok] : outcome.lines) std::cout << line << "\n";
    if (!outcome.pass) return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Entropy toolkit for time-varying interval and circle maps: runs one "
      "experiment per invocation and writes deterministic CSV/JSON reports."};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out_dir = ".";
  long long workers = 1;
  std::int64_t budget_cells = nds::Budget::kDefaultLimit;
  bool verify = false;

  app.add_option("--config", config_path,
                 "experiment config (JSON file; see README for the schema)");
  app.add_option("--out", out_dir,
                 "output directory for reports (default: current directory)");
  app.add_option("--workers", workers, "worker threads for grid sweeps")
      ->check(CLI::Range(1LL, 256LL));
  app.add_option("--budget", budget_cells,
                 "interval-cell work budget (default 50000000)")
      ->check(CLI::Range(static_cast<std::int64_t>(1),
                         std::numeric_limits<std::int64_t>::max()));
  app.add_flag("--verify", verify,
               "after the run, check the headline value against the declared "
               "expectations (exit 4 on violation)");

  CLI::App* list_cmd = app.add_subcommand("list", "list the built-in systems");
  list_cmd->fallthrough();
  std::string export_id;
  CLI::App* export_cmd = app.add_subcommand(
      "export", "write a built-in system to <out>/<id>.system.json");
  export_cmd->fallthrough();
  export_cmd->add_option("id", export_id, "catalog id (see `list`)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    diagnostic("usage", e.what());
    return 2;
  }

  try {
    if (*list_cmd) return run_list();
    if (*export_cmd) return run_export(export_id, out_dir);
    if (config_path.empty()) {
      throw nds::UsageError(
          "nothing to do: pass --config <file>, or a subcommand (list, "
          "export)");
    }
    return run_experiment_command(config_path, out_dir, workers, budget_cells,
                                  verify);
  } catch (const nds::ConfigError& e) {
    diagnostic("config", e.what());
    return 2;
  } catch (const nds::UsageError& e) {
    diagnostic("usage", e.what());
    return 2;
  } catch (const nds::BudgetError& e) {
    diagnostic("budget", e.what());
    return 3;
  } catch (const nds::VerifyError& e) {
    diagnostic("verify", e.what());
    return 4;
  } catch (const nds::DomainError& e) {
    diagnostic("config", e.what());
    return 2;
  } catch (const std::exception& e) {
    diagnostic("internal", e.what());
    return 1;
  }
}
