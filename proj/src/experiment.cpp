#include "semalloc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <string>

#include "semalloc/allocator.hpp"
#include "semalloc/errors.hpp"
#include "text_util.hpp"

namespace semalloc {

namespace {

constexpr SourceStats kUnitSource{1.0};

/// Runs body(d) for d in [0, n) on all threads, rethrowing the first failure.
template <typename Body>
void parallel_drops(std::size_t n, Body&& body) {
  std::exception_ptr error;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t d = 0; d < count; ++d) {
    try {
      body(static_cast<std::size_t>(d));
    } catch (...) {
#pragma omp critical(semalloc_drop_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

void sort_records(std::vector<SweepRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    if (a.system != b.system) return a.system < b.system;
    return a.sweep_value < b.sweep_value;
  });
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

Models load_models(const ScenarioConfig& cfg) {
  auto surface = cfg.surface_source == kSurrogate ? default_surrogate(cfg.constraints.k_max)
                                                  : load_surface(cfg.surface_source);
  if (!surface.covers(cfg.constraints.k_max)) {
    throw ValidationError("similarity surface does not tabulate every k in 1.." +
                          std::to_string(cfg.constraints.k_max));
  }
  auto cqi_4g = cfg.cqi_4g == kBuiltin ? lte_cqi_table() : load_cqi_table(cfg.cqi_4g);
  auto cqi_5g = cfg.cqi_5g == kBuiltin ? nr_cqi_table() : load_cqi_table(cfg.cqi_5g);
  return {std::move(surface), cqi_4g, cqi_5g};
}

double solve_drop(const ScenarioConfig& cfg, const Models& models, SystemKind system,
                  std::uint64_t seed) {
  const auto drop = sample_drop(cfg.n_users, cfg.n_channels, cfg.radio, seed);
  if (system == SystemKind::Semantic) {
    return solve_semantic(drop, models.surface, cfg.constraints).total_weight;
  }
  return solve_benchmark(drop, system, models.cqi_4g, models.cqi_5g, cfg.tf, cfg.constraints)
      .total_weight;
}

std::vector<double> drop_totals(const ScenarioConfig& cfg, const Models& models,
                                SystemKind system) {
  cfg.validate();
  std::vector<double> totals(cfg.n_drops);
  parallel_drops(cfg.n_drops, [&](std::size_t d) {
    totals[d] = solve_drop(cfg, models, system, drop_seed(cfg, d));
  });
  return totals;
}

SweepRecord summarize(SystemKind system, SweepParam param, double value,
                      std::span<const double> totals, double i_over_l) {
  SweepRecord r{system, param, value, 0.0, 0.0, totals.size()};
  if (totals.empty()) return r;
  double sum = 0.0;
  for (double t : totals) sum += t;
  const double n = static_cast<double>(totals.size());
  const double mean = sum / n;
  double sq = 0.0;
  for (double t : totals) sq += (t - mean) * (t - mean);
  const double std_error = totals.size() > 1 ? std::sqrt(sq / (n - 1.0)) / std::sqrt(n) : 0.0;
  r.mean_total_sse = mean * i_over_l;
  r.std_error = std_error * i_over_l;
  return r;
}

std::vector<SweepRecord> run_scenario(const ScenarioConfig& cfg, const Models& models) {
  cfg.validate();
  const SweepParam param = cfg.sweep ? cfg.sweep->param : SweepParam::None;
  const std::vector<double> values = cfg.sweep ? cfg.sweep->values : std::vector<double>{0.0};

  std::vector<SweepRecord> records;
  for (double value : values) {
    const auto point = with_parameter(cfg, param, value);
    for (auto system : cfg.systems) {
      const auto totals = drop_totals(point, models, system);
      records.push_back(summarize(system, param, value, totals, cfg.src.i_over_l));
    }
  }
  sort_records(records);
  return records;
}

std::vector<SweepRecord> run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  return run_scenario(cfg, load_models(cfg));
}

Fig3Drop fig3_drop(const ScenarioConfig& cfg, const Models& models, std::span<const int> fixed_k,
                   std::uint64_t seed) {
  const auto& cons = cfg.constraints;
  for (int k : fixed_k) {
    if (k < 1 || k > cons.k_max) {
      throw ValidationError("fixed k=" + std::to_string(k) + " outside 1.." +
                            std::to_string(cons.k_max));
    }
  }
  const auto drop = sample_drop(cfg.n_users, cfg.n_channels, cfg.radio, seed);
  const auto conventional = solve_benchmark(drop, SystemKind::Ideal, models.cqi_4g, models.cqi_5g,
                                            cfg.tf, cons);
  Fig3Drop out;
  out.proposed = solve_semantic(drop, models.surface, cons).total_weight;
  for (int k : fixed_k) {
    std::vector<double> weights;
    for (const auto& pair : conventional.pairs) {
      const double xi = models.surface.query(k, drop.links(pair.user, pair.channel).snr_db);
      const double w = semantic_se(xi, k, kUnitSource);
      if (xi >= cons.xi_threshold && w >= cons.sse_threshold) weights.push_back(w);
    }
    out.fixed_k.push_back(canonical_sum(std::move(weights)));
  }
  return out;
}

std::vector<SweepRecord> run_fig3_comparison(const ScenarioConfig& cfg, const Models& models,
                                             std::span<const int> fixed_k) {
  cfg.validate();
  std::vector<Fig3Drop> drops(cfg.n_drops);
  parallel_drops(cfg.n_drops, [&](std::size_t d) {
    drops[d] = fig3_drop(cfg, models, fixed_k, drop_seed(cfg, d));
  });

  std::vector<double> totals(cfg.n_drops);
  for (std::size_t d = 0; d < drops.size(); ++d) totals[d] = drops[d].proposed;
  std::vector<SweepRecord> records{
      summarize(SystemKind::Semantic, SweepParam::FixedK, 0.0, totals, cfg.src.i_over_l)};
  for (std::size_t i = 0; i < fixed_k.size(); ++i) {
    for (std::size_t d = 0; d < drops.size(); ++d) totals[d] = drops[d].fixed_k[i];
    records.push_back(summarize(SystemKind::Ideal, SweepParam::FixedK, fixed_k[i], totals,
                                cfg.src.i_over_l));
  }
  sort_records(records);
  return records;
}

std::vector<SweepRecord> run_fig3_comparison(const ScenarioConfig& cfg,
                                             std::span<const int> fixed_k) {
  cfg.validate();
  return run_fig3_comparison(cfg, load_models(cfg), fixed_k);
}

std::vector<Crossover> crossover_mu(std::span<const SweepRecord> records) {
  std::map<double, double> semantic;
  for (const auto& r : records) {
    if (r.sweep_param == SweepParam::Mu && r.system == SystemKind::Semantic) {
      semantic[r.sweep_value] = r.mean_total_sse;
    }
  }
  std::vector<Crossover> out;
  for (auto system : {SystemKind::Ideal, SystemKind::FourG, SystemKind::FiveG}) {
    std::optional<double> best;
    double best_gap = std::numeric_limits<double>::infinity();
    for (const auto& r : records) {
      if (r.sweep_param != SweepParam::Mu || r.system != system) continue;
      const auto it = semantic.find(r.sweep_value);
      if (it == semantic.end() || !(it->second > 0.0) || !(r.mean_total_sse > 0.0)) continue;
      const double implied = r.mean_total_sse * r.sweep_value / it->second;
      const double gap = std::abs(implied - r.sweep_value);
      if (gap < best_gap) {
        best_gap = gap;
        best = implied;
      }
    }
    if (best) out.push_back({system, *best});
  }
  return out;
}

void write_csv(std::span<const SweepRecord> records, std::ostream& out) {
  out << "system,sweep_param,sweep_value,mean_total_sse,std_error,n_drops\n";
  for (const auto& r : records) {
    out << to_string(r.system) << ',' << to_string(r.sweep_param) << ',' << fmt6(r.sweep_value)
        << ',' << fmt6(r.mean_total_sse) << ',' << fmt6(r.std_error) << ',' << r.n_drops << '\n';
  }
}

void emit_csv(std::span<const SweepRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(records, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<SweepRecord> read_csv(std::istream& in) {
  std::vector<SweepRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty()) continue;
    if (line_no == 1) {
      if (text != "system,sweep_param,sweep_value,mean_total_sse,std_error,n_drops") {
        throw ValidationError("unexpected results CSV header");
      }
      continue;
    }
    const auto f = detail::split(text);
    if (f.size() != 6) {
      throw ValidationError("results CSV line " + std::to_string(line_no) + ": expected 6 fields");
    }
    SweepRecord r;
    r.system = parse_system_kind(f[0]);
    r.sweep_param = parse_sweep_param(f[1]);
    const auto value = detail::parse_number<double>(f[2]);
    const auto mean = detail::parse_number<double>(f[3]);
    const auto se = detail::parse_number<double>(f[4]);
    const auto n = detail::parse_number<std::size_t>(f[5]);
    if (!value || !mean || !se || !n) {
      throw ValidationError("results CSV line " + std::to_string(line_no) + ": bad number");
    }
    r.sweep_value = *value;
    r.mean_total_sse = *mean;
    r.std_error = *se;
    r.n_drops = *n;
    records.push_back(r);
  }
  return records;
}

}  // namespace semalloc
