#include "semalloc/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>

#include "semalloc/errors.hpp"
#include "text_util.hpp"

namespace semalloc {

namespace {

std::string key_error(std::string_view key, std::string_view value, std::string_view expected) {
  return "scenario key '" + std::string(key) + "': '" + std::string(value) + "' is not " +
         std::string(expected);
}

double as_double(std::string_view key, std::string_view value) {
  const auto v = detail::parse_number<double>(value);
  if (!v || !std::isfinite(*v)) throw ValidationError(key_error(key, value, "a finite number"));
  return *v;
}

std::uint64_t as_u64(std::string_view key, std::string_view value) {
  const auto v = detail::parse_number<std::uint64_t>(value);
  if (!v) throw ValidationError(key_error(key, value, "a non-negative integer"));
  return *v;
}

int as_int(std::string_view key, std::string_view value) {
  const auto v = detail::parse_number<int>(value);
  if (!v) throw ValidationError(key_error(key, value, "an integer"));
  return *v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using Setter = std::function<void(ScenarioConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"n_users", [](auto& c, auto k, auto v) { c.n_users = as_u64(k, v); }},
      {"n_channels", [](auto& c, auto k, auto v) { c.n_channels = as_u64(k, v); }},
      {"bandwidth_hz", [](auto& c, auto k, auto v) { c.radio.bandwidth_hz = as_double(k, v); }},
      {"noise_psd_dbm_hz",
       [](auto& c, auto k, auto v) { c.radio.noise_psd_dbm_hz = as_double(k, v); }},
      {"tx_power_dbm", [](auto& c, auto k, auto v) { c.radio.tx_power_dbm = as_double(k, v); }},
      {"pathloss_a", [](auto& c, auto k, auto v) { c.radio.pathloss_a = as_double(k, v); }},
      {"pathloss_b", [](auto& c, auto k, auto v) { c.radio.pathloss_b = as_double(k, v); }},
      {"shadow_sigma_db",
       [](auto& c, auto k, auto v) { c.radio.shadow_sigma_db = as_double(k, v); }},
      {"cell_radius_km", [](auto& c, auto k, auto v) { c.radio.cell_radius_km = as_double(k, v); }},
      {"k_max", [](auto& c, auto k, auto v) { c.constraints.k_max = as_int(k, v); }},
      {"xi_threshold",
       [](auto& c, auto k, auto v) { c.constraints.xi_threshold = as_double(k, v); }},
      {"sse_threshold",
       [](auto& c, auto k, auto v) { c.constraints.sse_threshold = as_double(k, v); }},
      {"mu", [](auto& c, auto k, auto v) { c.tf.mu = as_double(k, v); }},
      {"i_over_l", [](auto& c, auto k, auto v) { c.src.i_over_l = as_double(k, v); }},
      {"systems",
       [](auto& c, auto, auto v) {
         c.systems.clear();
         for (auto name : detail::split(v)) c.systems.push_back(parse_system_kind(name));
       }},
      {"surface", [](auto& c, auto, auto v) { c.surface_source = std::string(v); }},
      {"cqi_4g", [](auto& c, auto, auto v) { c.cqi_4g = std::string(v); }},
      {"cqi_5g", [](auto& c, auto, auto v) { c.cqi_5g = std::string(v); }},
      {"n_drops", [](auto& c, auto k, auto v) { c.n_drops = as_u64(k, v); }},
      {"base_seed", [](auto& c, auto k, auto v) { c.base_seed = as_u64(k, v); }},
      {"sweep_param",
       [](auto& c, auto, auto v) {
         const auto p = parse_sweep_param(v);
         if (p == SweepParam::None) {
           c.sweep.reset();
         } else {
           if (!c.sweep) c.sweep.emplace();
           c.sweep->param = p;
         }
       }},
      {"sweep_values",
       [](auto& c, auto k, auto v) {
         if (!c.sweep) c.sweep.emplace();
         c.sweep->values.clear();
         for (auto item : detail::split(v)) c.sweep->values.push_back(as_double(k, item));
       }},
  };
  return table;
}

}  // namespace

std::string_view to_string(SweepParam param) {
  switch (param) {
    case SweepParam::None: return "none";
    case SweepParam::NChannels: return "n_channels";
    case SweepParam::TxPowerDbm: return "tx_power_dbm";
    case SweepParam::Mu: return "mu";
    case SweepParam::FixedK: return "fixed_k";
  }
  return "unknown";
}

SweepParam parse_sweep_param(std::string_view name) {
  const auto n = detail::lower(detail::trim(name));
  for (auto p : {SweepParam::None, SweepParam::NChannels, SweepParam::TxPowerDbm, SweepParam::Mu,
                 SweepParam::FixedK}) {
    if (n == to_string(p)) return p;
  }
  throw ValidationError("unknown sweep parameter '" + std::string(name) + "'");
}

void ScenarioConfig::validate() const {
  try {
    if (n_users < 1) throw ValidationError("n_users must be >= 1");
    if (n_channels < 1) throw ValidationError("n_channels must be >= 1");
    if (n_drops < 1) throw ValidationError("n_drops must be >= 1");
    radio.validate();
    constraints.validate();
    if (!(tf.mu > 0.0)) throw ValidationError("mu must be > 0");
    if (!(src.i_over_l > 0.0)) throw ValidationError("i_over_l must be > 0");
    if (systems.empty()) throw ValidationError("systems list is empty");
    if (std::set<SystemKind>(systems.begin(), systems.end()).size() != systems.size()) {
      throw ValidationError("systems list has duplicates");
    }
    if (surface_source.empty() || cqi_4g.empty() || cqi_5g.empty()) {
      throw ValidationError("surface / cqi sources must not be empty");
    }
    if (sweep) {
      if (sweep->param == SweepParam::None || sweep->param == SweepParam::FixedK) {
        throw ValidationError("sweep_param must be n_channels, tx_power_dbm or mu");
      }
      if (sweep->values.empty()) throw ValidationError("sweep_values is empty");
      for (double v : sweep->values) {
        if (!std::isfinite(v)) throw ValidationError("sweep values must be finite");
        if (sweep->param == SweepParam::NChannels && (v < 1.0 || v != std::floor(v))) {
          throw ValidationError("n_channels sweep values must be integers >= 1");
        }
        if (sweep->param == SweepParam::Mu && !(v > 0.0)) {
          throw ValidationError("mu sweep values must be > 0");
        }
      }
    }
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
}

ScenarioConfig parse_scenario(std::istream& in) {
  ScenarioConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = detail::trim(text);
    if (text.empty()) continue;
    const auto where = "scenario line " + std::to_string(line_no) + ": ";
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ValidationError(where + "expected 'key = value'");
    const auto key = detail::trim(text.substr(0, eq));
    const auto value = detail::trim(text.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ValidationError(where + "unknown key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) {
      throw ValidationError(where + "duplicate key '" + std::string(key) + "'");
    }
    try {
      it->second(cfg, key, value);
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  if (cfg.sweep && !seen.contains("sweep_param")) {
    throw ValidationError("sweep_values given without sweep_param");
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario '" + path.string() + "'");
  auto cfg = parse_scenario(in);
  // Data files are looked up relative to the scenario file.
  const auto base = path.parent_path();
  auto resolve = [&](std::string& source, std::string_view keyword) {
    if (source == keyword) return;
    const std::filesystem::path p(source);
    if (p.is_relative() && !base.empty()) source = (base / p).string();
  };
  resolve(cfg.surface_source, kSurrogate);
  resolve(cfg.cqi_4g, kBuiltin);
  resolve(cfg.cqi_5g, kBuiltin);
  return cfg;
}

void write_scenario(const ScenarioConfig& cfg, std::ostream& out) {
  out << "n_users = " << cfg.n_users << '\n'
      << "n_channels = " << cfg.n_channels << '\n'
      << "bandwidth_hz = " << fmt(cfg.radio.bandwidth_hz) << '\n'
      << "noise_psd_dbm_hz = " << fmt(cfg.radio.noise_psd_dbm_hz) << '\n'
      << "tx_power_dbm = " << fmt(cfg.radio.tx_power_dbm) << '\n'
      << "pathloss_a = " << fmt(cfg.radio.pathloss_a) << '\n'
      << "pathloss_b = " << fmt(cfg.radio.pathloss_b) << '\n'
      << "shadow_sigma_db = " << fmt(cfg.radio.shadow_sigma_db) << '\n'
      << "cell_radius_km = " << fmt(cfg.radio.cell_radius_km) << '\n'
      << "k_max = " << cfg.constraints.k_max << '\n'
      << "xi_threshold = " << fmt(cfg.constraints.xi_threshold) << '\n'
      << "sse_threshold = " << fmt(cfg.constraints.sse_threshold) << '\n'
      << "mu = " << fmt(cfg.tf.mu) << '\n'
      << "i_over_l = " << fmt(cfg.src.i_over_l) << '\n'
      << "systems = ";
  for (std::size_t i = 0; i < cfg.systems.size(); ++i) {
    out << (i ? ", " : "") << to_string(cfg.systems[i]);
  }
  out << '\n'
      << "surface = " << cfg.surface_source << '\n'
      << "cqi_4g = " << cfg.cqi_4g << '\n'
      << "cqi_5g = " << cfg.cqi_5g << '\n'
      << "n_drops = " << cfg.n_drops << '\n'
      << "base_seed = " << cfg.base_seed << '\n';
  if (cfg.sweep) {
    out << "sweep_param = " << to_string(cfg.sweep->param) << '\n' << "sweep_values = ";
    for (std::size_t i = 0; i < cfg.sweep->values.size(); ++i) {
      out << (i ? ", " : "") << fmt(cfg.sweep->values[i]);
    }
    out << '\n';
  }
}

ScenarioConfig with_parameter(const ScenarioConfig& cfg, SweepParam param, double value) {
  ScenarioConfig out = cfg;
  switch (param) {
    case SweepParam::None: break;
    case SweepParam::NChannels: out.n_channels = static_cast<std::size_t>(value); break;
    case SweepParam::TxPowerDbm: out.radio.tx_power_dbm = value; break;
    case SweepParam::Mu: out.tf.mu = value; break;
    case SweepParam::FixedK: throw ValidationError("fixed_k is not a scenario parameter");
  }
  return out;
}

}  // namespace semalloc
