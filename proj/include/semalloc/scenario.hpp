#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semalloc/allocator.hpp"
#include "semalloc/channel_model.hpp"
#include "semalloc/link_adaptation.hpp"
#include "semalloc/semantic_metrics.hpp"

namespace semalloc {

/// FixedK only labels fixed-k comparison rows; it cannot be swept.
enum class SweepParam { None, NChannels, TxPowerDbm, Mu, FixedK };

/// "none", "n_channels", "tx_power_dbm", "mu", "fixed_k".
std::string_view to_string(SweepParam param);
SweepParam parse_sweep_param(std::string_view name);

struct Sweep {
  SweepParam param = SweepParam::None;
  std::vector<double> values;
};

inline constexpr std::string_view kSurrogate = "surrogate";
inline constexpr std::string_view kBuiltin = "builtin";

/// Everything needed to reproduce one experiment. Defaults give the
/// reference 5-user, 5-channel cell.
struct ScenarioConfig {
  std::size_t n_users = 5;
  std::size_t n_channels = 5;
  RadioParams radio;
  Constraints constraints;
  TransformFactor tf;
  SourceStats src;
  std::vector<SystemKind> systems{kAllSystems.begin(), kAllSystems.end()};
  std::string surface_source{kSurrogate};  // "surrogate" or a CSV path
  std::string cqi_4g{kBuiltin};            // "builtin" or a CSV path
  std::string cqi_5g{kBuiltin};
  std::size_t n_drops = 500;
  std::uint64_t base_seed = 1;
  std::optional<Sweep> sweep;

  /// Throws ValidationError.
  void validate() const;
};

/// Flat "key = value" text, one entry per line, '#' starts a comment, lists
/// are comma-separated. Unknown or repeated keys are rejected. The result is
/// validated.
ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig load_scenario(const std::filesystem::path& path);
void write_scenario(const ScenarioConfig& cfg, std::ostream& out);

/// Copy of `cfg` with one swept parameter set to `value`.
ScenarioConfig with_parameter(const ScenarioConfig& cfg, SweepParam param, double value);

}  // namespace semalloc
