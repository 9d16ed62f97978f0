#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semalloc/link_adaptation.hpp"
#include "semalloc/scenario.hpp"
#include "semalloc/similarity.hpp"

namespace semalloc {

/// Surface and CQI tables a scenario refers to, loaded once.
struct Models {
  SimilaritySurface surface;
  CqiTable cqi_4g;
  CqiTable cqi_5g;
};

/// Throws ValidationError / IoError from the underlying loaders, and
/// ValidationError if the surface does not cover k = 1..k_max.
Models load_models(const ScenarioConfig& cfg);

struct SweepRecord {
  SystemKind system = SystemKind::Semantic;
  SweepParam sweep_param = SweepParam::None;
  double sweep_value = 0.0;
  double mean_total_sse = 0.0;  // suts/s/Hz, scaled by i_over_l
  double std_error = 0.0;
  std::size_t n_drops = 0;

  bool operator==(const SweepRecord&) const = default;
};

inline std::uint64_t drop_seed(const ScenarioConfig& cfg, std::size_t drop_index) {
  return cfg.base_seed + drop_index;
}

/// Optimal total (I/L units) of one system on the drop with the given seed.
double solve_drop(const ScenarioConfig& cfg, const Models& models, SystemKind system,
                  std::uint64_t seed);

/// Per-drop optimal totals, index d using seed base_seed + d.
std::vector<double> drop_totals(const ScenarioConfig& cfg, const Models& models,
                                SystemKind system);

/// Mean and standard error of per-drop totals, scaled by i_over_l.
SweepRecord summarize(SystemKind system, SweepParam param, double value,
                      std::span<const double> totals, double i_over_l);

/// Every sweep value x every configured system, paired seeds throughout.
/// Records are ordered by system, then sweep value.
std::vector<SweepRecord> run_scenario(const ScenarioConfig& cfg, const Models& models);
std::vector<SweepRecord> run_scenario(const ScenarioConfig& cfg);

struct Fig3Drop {
  double proposed = 0.0;
  std::vector<double> fixed_k;  // one per requested k
};

/// The Ideal-system assignment evaluated semantically with a common k for
/// every user (pairs violating the similarity or S-SE threshold count 0),
/// next to the jointly optimized semantic allocation.
Fig3Drop fig3_drop(const ScenarioConfig& cfg, const Models& models, std::span<const int> fixed_k,
                   std::uint64_t seed);

/// One record for the proposed model (semantic, FixedK, 0) followed by one
/// per fixed k (ideal, FixedK, k). Ignores any sweep in `cfg`.
std::vector<SweepRecord> run_fig3_comparison(const ScenarioConfig& cfg, const Models& models,
                                             std::span<const int> fixed_k);
std::vector<SweepRecord> run_fig3_comparison(const ScenarioConfig& cfg,
                                             std::span<const int> fixed_k);

struct Crossover {
  SystemKind system = SystemKind::Ideal;
  double mu = 0.0;  // bits/word at which the conventional curve meets Semantic
};

/// For a mu sweep containing Semantic: each conventional curve scales as
/// C / mu, so it meets the semantic mean S at mu* = C / S. C is taken from
/// the sweep point whose implied mu* lies closest to its own mu.
std::vector<Crossover> crossover_mu(std::span<const SweepRecord> records);

/// Header "system,sweep_param,sweep_value,mean_total_sse,std_error,n_drops",
/// numbers to 6 significant digits.
void write_csv(std::span<const SweepRecord> records, std::ostream& out);
/// Throws IoError if the file cannot be written.
void emit_csv(std::span<const SweepRecord> records, const std::filesystem::path& path);
std::vector<SweepRecord> read_csv(std::istream& in);

}  // namespace semalloc
