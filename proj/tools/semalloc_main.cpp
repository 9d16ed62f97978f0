// semalloc: semantic-aware channel / symbol allocation experiments.
//
//   semalloc run <scenario> [--out results.csv] [--drops N] [--seed S]
//   semalloc fig3 <scenario> --k 1,2,3 [--out results.csv]
//   semalloc tables --check [--lte file.csv] [--nr file.csv]
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semalloc/errors.hpp"
#include "semalloc/experiment.hpp"
#include "semalloc/link_adaptation.hpp"
#include "semalloc/scenario.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

void write_records(const std::vector<semalloc::SweepRecord>& records, const std::string& out) {
  if (out.empty()) {
    semalloc::write_csv(records, std::cout);
  } else {
    semalloc::emit_csv(records, out);
  }
}

bool check_table(const char* label, const semalloc::CqiTable& table, std::string_view pinned) {
  const auto digest = semalloc::efficiency_digest(table);
  const bool ok = digest == pinned;
  std::cout << label << ": " << (ok ? "OK" : "MISMATCH") << " sha256=" << digest << '\n';
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic spectral efficiency resource allocation simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::optional<std::size_t> drops;
  std::optional<std::uint64_t> seed;
  std::string crossover_path;
  auto* run = app.add_subcommand("run", "Monte-Carlo run of a scenario (with optional sweep)");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--out", out_path, "Results CSV (stdout if omitted)");
  run->add_option("--drops", drops, "Override n_drops")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Override base_seed");
  run->add_option("--crossover-out", crossover_path,
                  "For mu sweeps: write the crossover mu of each conventional system here");

  std::vector<int> fixed_k;
  auto* fig3 = app.add_subcommand(
      "fig3", "Conventional (Shannon-optimal) assignment with fixed k vs. the joint optimum");
  fig3->add_option("scenario", scenario_path, "Scenario file")->required();
  fig3->add_option("--k", fixed_k, "Fixed symbols-per-word values")->delimiter(',');
  fig3->add_option("--out", out_path, "Results CSV (stdout if omitted)");
  fig3->add_option("--drops", drops, "Override n_drops")->check(CLI::PositiveNumber);
  fig3->add_option("--seed", seed, "Override base_seed");

  bool check = false;
  std::string lte_path;
  std::string nr_path;
  auto* tables = app.add_subcommand("tables", "CQI table utilities");
  tables->add_flag("--check", check, "Verify CQI efficiency transcriptions against pinned hashes");
  tables->add_option("--lte", lte_path, "Also check a 4G table CSV");
  tables->add_option("--nr", nr_path, "Also check a 5G table CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*tables) {
      if (!check) {
        std::cerr << "tables: nothing to do (use --check)\n";
        return kExitValidation;
      }
      bool ok = check_table("builtin 4g", semalloc::lte_cqi_table(),
                            semalloc::kLteEfficiencyDigest);
      ok &= check_table("builtin 5g", semalloc::nr_cqi_table(), semalloc::kNrEfficiencyDigest);
      if (!lte_path.empty()) {
        ok &= check_table(lte_path.c_str(), semalloc::load_cqi_table(lte_path),
                          semalloc::kLteEfficiencyDigest);
      }
      if (!nr_path.empty()) {
        ok &= check_table(nr_path.c_str(), semalloc::load_cqi_table(nr_path),
                          semalloc::kNrEfficiencyDigest);
      }
      return ok ? 0 : kExitValidation;
    }

    auto cfg = semalloc::load_scenario(scenario_path);
    if (drops) cfg.n_drops = *drops;
    if (seed) cfg.base_seed = *seed;
    cfg.validate();
    const auto models = semalloc::load_models(cfg);

    if (*run) {
      const auto records = semalloc::run_scenario(cfg, models);
      write_records(records, out_path);
      const auto crossovers = semalloc::crossover_mu(records);
      for (const auto& c : crossovers) {
        std::cerr << "crossover_mu " << semalloc::to_string(c.system) << ' ' << c.mu << '\n';
      }
      if (!crossover_path.empty()) {
        std::ofstream cross(crossover_path);
        if (!cross) throw semalloc::IoError("cannot write '" + crossover_path + "'");
        cross << "system,crossover_mu\n";
        for (const auto& c : crossovers) {
          cross << semalloc::to_string(c.system) << ',' << c.mu << '\n';
        }
      }
    } else {
      write_records(semalloc::run_fig3_comparison(cfg, models, fixed_k), out_path);
    }
    return 0;
  } catch (const semalloc::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const semalloc::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const semalloc::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}
