// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "semalloc/allocator.hpp"
#include "semalloc/channel_model.hpp"
#include "semalloc/experiment.hpp"
#include "semalloc/link_adaptation.hpp"
#include "semalloc/semantic_metrics.hpp"
#include "semalloc/similarity.hpp"

using namespace semalloc;
using semalloc::testing::drop_with_snr_db;
using semalloc::testing::ks_statistic;
using semalloc::testing::permutation_max;
using semalloc::testing::random_weights;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, double limit_s,
               const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool pass = out.ok && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %s %s: %s (%.2f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", id, title,
              out.detail.c_str(), secs, limit_s, in_time ? "" : ", too slow");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double rel_spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return (*hi - *lo) / *hi;
}

const SweepRecord& pick(const std::vector<SweepRecord>& recs, SystemKind s, double v) {
  for (const auto& r : recs) {
    if (r.system == s && r.sweep_value == v) return r;
  }
  throw std::logic_error("missing record");
}

Outcome ac1() {
  RadioParams p;
  const double g = large_scale_gain(0.5, 0.0, p);
  const double db = snr(p, g, 1.0).db;
  return {std::abs(db - 14.666) <= 0.01, fmt("SNR at 0.5 km = %.4f dB, want 14.666 +- 0.01", db)};
}

Outcome ac2() {
  std::mt19937_64 rng(20240601);
  int bad = 0, total = 0;
  auto check = [&](std::size_t r, std::size_t c) {
    const auto w = random_weights(r, c, rng, total % 4 == 0 ? 0.3 : 0.0);
    const auto a = hungarian_max(w);
    ++total;
    if (a.total_weight != permutation_max(w) || !is_valid_matching(a, r, c)) ++bad;
  };
  for (int i = 0; i < 1000; ++i) check(5, 5);
  for (int i = 0; i < 100; ++i) check(3, 6);
  for (int i = 0; i < 100; ++i) check(6, 3);
  return {bad == 0, std::to_string(total - bad) + "/" + std::to_string(total) +
                        " matrices equal the exhaustive maximum"};
}

Outcome ac3() {
  const auto surface = default_surrogate(5);
  const Constraints cons{5, 0.9, 0.025};
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> snr_db(-10.0, 25.0);
  int bad = 0;
  for (int i = 0; i < 500; ++i) {
    NetworkDrop drop;
    if (i % 2 == 0) {
      drop = sample_drop(4, 4, RadioParams{}, 10000 + i);
    } else {
      Matrix<double> s(4, 4);
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) s(r, c) = snr_db(rng);
      drop = drop_with_snr_db(s);
    }
    const auto fast = solve_semantic(drop, surface, cons);
    const auto slow = brute_force_joint(drop, surface, cons);
    if (fast.total_weight != slow.total_weight || !is_valid_matching(fast, 4, 4)) ++bad;
  }
  return {bad == 0, std::to_string(500 - bad) + "/500 instances match the joint search exactly"};
}

Outcome ac4() {
  RadioParams p;
  const auto link = make_link(p, large_scale_gain(0.5, 0.0, p), 1.0);
  const double eq = benchmark_weight(link, SystemKind::Ideal, lte_cqi_table(), nr_cqi_table(),
                                     TransformFactor{40.0});
  const auto lte = lte_cqi_table();
  const auto nr = nr_cqi_table();
  const std::array<double, 15> lte_eff{0.1523, 0.2344, 0.3770, 0.6016, 0.8770,
                                       1.1758, 1.4766, 1.9141, 2.4063, 2.7305,
                                       3.3223, 3.9023, 4.5234, 5.1152, 5.5547};
  const std::array<double, 15> nr_eff{0.1523, 0.3770, 0.8770, 1.4766, 1.9141,
                                      2.4063, 2.7305, 3.3223, 3.9023, 4.5234,
                                      5.1152, 5.5547, 6.2266, 6.9141, 7.4063};
  int entries = 0;
  for (int i = 1; i <= 15; ++i) {
    entries += lte.efficiency(i) == lte_eff[i - 1];
    entries += nr.efficiency(i) == nr_eff[i - 1];
  }
  const bool hashes = efficiency_digest(lte) == kLteEfficiencyDigest &&
                      efficiency_digest(nr) == kNrEfficiencyDigest;
  const bool ok = std::abs(eq - 0.1229) <= 0.001 && entries == 30 && hashes;
  return {ok, fmt("Ideal equivalent S-SE = %.5f (I/L), want 0.1229 +- 0.001; ", eq) +
                  std::to_string(entries) + "/30 entries; digests " +
                  (hashes ? "match" : "DIFFER")};
}

Outcome ac5() {
  ScenarioConfig cfg;
  cfg.n_drops = 500;
  const auto models = load_models(cfg);
  const std::vector<int> ks{1, 2, 3, 4, 5};
  std::size_t violations = 0;
  std::vector<double> fixed_sum(ks.size(), 0.0);
  for (std::size_t d = 0; d < cfg.n_drops; ++d) {
    const auto r = fig3_drop(cfg, models, ks, drop_seed(cfg, d));
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (r.fixed_k[i] > r.proposed) ++violations;
      fixed_sum[i] += r.fixed_k[i];
    }
  }
  const auto recs = run_fig3_comparison(cfg, models, ks);
  bool aggregate = true;
  int zero_ks = 0;
  std::string means = "means";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    aggregate = aggregate && recs[0].mean_total_sse >= recs[i + 1].mean_total_sse;
    if (fixed_sum[i] == 0.0 && recs[i + 1].mean_total_sse == 0.0) ++zero_ks;
    means += " k=" + std::to_string(ks[i]) + ":" + fmt("%.4f", recs[i + 1].mean_total_sse);
  }
  means += fmt(" proposed:%.4f", recs[0].mean_total_sse);
  return {violations == 0 && aggregate && zero_ks >= 1,
          std::to_string(violations) + " per-drop violations, " + std::to_string(zero_ks) +
              " fixed k with total 0; " + means};
}

Outcome ac6() {
  ScenarioConfig cfg;
  cfg.n_drops = 500;
  const auto models = load_models(cfg);
  std::size_t violations = 0;
  bool means_ok = true;
  for (auto system : kAllSystems) {
    std::vector<double> prev;
    double prev_mean = -1.0;
    for (std::size_t m = 1; m <= 10; ++m) {
      const auto c = with_parameter(cfg, SweepParam::NChannels, static_cast<double>(m));
      const auto totals = drop_totals(c, models, system);
      for (std::size_t d = 0; d < prev.size(); ++d) violations += totals[d] < prev[d];
      const double mean = summarize(system, SweepParam::NChannels, m, totals, 1.0).mean_total_sse;
      means_ok = means_ok && mean >= prev_mean;
      prev_mean = mean;
      prev = totals;
    }
  }
  return {violations == 0 && means_ok,
          std::to_string(violations) + " per-drop decreases over M = 1..10, 4 systems x 500 drops"};
}

Outcome ac7() {
  ScenarioConfig cfg;
  cfg.n_drops = 500;
  cfg.sweep = Sweep{SweepParam::TxPowerDbm, {40.0, 60.0}};
  const auto recs = run_scenario(cfg);
  bool ok = true;
  std::string detail;
  for (auto s : {SystemKind::Semantic, SystemKind::FourG, SystemKind::FiveG}) {
    const double a = pick(recs, s, 40.0).mean_total_sse;
    const double b = pick(recs, s, 60.0).mean_total_sse;
    const double gap = std::abs(b - a) / b;
    ok = ok && gap <= 0.01;
    detail += std::string(to_string(s)) + fmt(" gap %.2e; ", gap);
  }
  const double i40 = pick(recs, SystemKind::Ideal, 40.0).mean_total_sse;
  const double i60 = pick(recs, SystemKind::Ideal, 60.0).mean_total_sse;
  ok = ok && i60 > 1.1 * i40;
  detail += fmt("ideal 60/40 dBm ratio %.4f", i60 / i40);
  return {ok, detail};
}

struct MuCheck {
  bool semantic_identical = true;
  double worst_spread = 0.0;
  std::string detail;
  std::vector<SweepRecord> recs;
};

MuCheck mu_sweep(double sse_threshold) {
  const std::vector<double> mus{10.0, 19.0, 27.0, 40.0, 60.0};
  ScenarioConfig cfg;
  cfg.n_drops = 500;
  cfg.constraints.sse_threshold = sse_threshold;
  cfg.sweep = Sweep{SweepParam::Mu, mus};
  MuCheck out;
  out.recs = run_scenario(cfg);
  const auto& base = pick(out.recs, SystemKind::Semantic, mus[0]);
  for (double mu : mus) {
    auto r = pick(out.recs, SystemKind::Semantic, mu);
    r.sweep_value = base.sweep_value;
    out.semantic_identical = out.semantic_identical && r == base;
  }
  for (auto s : {SystemKind::Ideal, SystemKind::FourG, SystemKind::FiveG}) {
    std::vector<double> scaled;
    for (double mu : mus) scaled.push_back(pick(out.recs, s, mu).mean_total_sse * mu);
    const double spread = rel_spread(scaled);
    out.worst_spread = std::max(out.worst_spread, spread);
    out.detail += std::string(to_string(s)) + fmt(" mean*mu spread %.3e; ", spread);
  }
  return out;
}

Outcome ac8() {
  const auto m = mu_sweep(ScenarioConfig{}.constraints.sse_threshold);
  for (const auto& x : crossover_mu(m.recs)) {
    std::printf("  crossover_mu %s %.4g\n", std::string(to_string(x.system)).c_str(), x.mu);
  }
  const auto diag = mu_sweep(0.0);
  std::printf("  with sse_threshold = 0: semantic %s; %s\n",
              diag.semantic_identical ? "identical" : "DIFFERS", diag.detail.c_str());
  return {m.semantic_identical && m.worst_spread <= 1e-9,
          std::string("semantic ") + (m.semantic_identical ? "identical" : "DIFFERS") +
              " across mu; " + m.detail + "want <= 1e-9"};
}

Outcome ac9() {
  std::vector<std::string> bad;

  // similarity range and monotonicity on a fine grid
  const auto surface = default_surrogate(20);
  for (int k = 1; k <= 20; ++k) {
    double prev = -1.0;
    for (double s = -15.0; s <= 25.0; s += 0.05) {
      const double x = surface.query(k, s);
      if (!(x >= 0.0 && x <= 1.0) || x < prev) {
        bad.push_back("similarity");
        break;
      }
      prev = x;
    }
  }

  // SNR linear in transmit power (mW) and in fading power
  {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    RadioParams p;
    for (int i = 0; i < 10000; ++i) {
      const double g = large_scale_gain(u(rng) / 20.0, 0.0, p), h = u(rng), c = u(rng);
      RadioParams q = p;
      q.tx_power_dbm = p.tx_power_dbm + 10.0 * std::log10(c);
      const double base = snr(p, g, h).linear;
      if (std::abs(snr(q, g, h).linear / (c * base) - 1.0) > 1e-12 ||
          std::abs(snr(p, g, c * h).linear / (c * base) - 1.0) > 1e-12) {
        bad.push_back("snr linearity");
        break;
      }
    }
  }

  // Rayleigh power ~ Exp(1), user radius CDF (r/R)^2
  {
    RadioParams p;
    std::vector<double> fading, radius;
    for (std::uint64_t seed = 0; seed < 4000; ++seed) {
      const auto drop = sample_drop(5, 5, p, seed);
      for (std::size_t n = 0; n < 5; ++n) {
        radius.push_back(drop.user_distances_km[n]);
        for (std::size_t m = 0; m < 5; ++m) fading.push_back(drop.links(n, m).fading_power);
      }
    }
    const double d_exp = ks_statistic(fading, [](double x) { return 1.0 - std::exp(-x); });
    const double d_disc = ks_statistic(radius, [&](double r) {
      const double t = std::clamp(r / p.cell_radius_km, 0.0, 1.0);
      return t * t;
    });
    double mean = 0.0;
    for (double x : fading) mean += x;
    mean /= fading.size();
    // 1.63 / sqrt(n) is the 1% KS critical value.
    if (d_exp > 1.63 / std::sqrt(fading.size()) || std::abs(mean - 1.0) > 0.01) {
      bad.push_back("rayleigh");
    }
    if (d_disc > 1.63 / std::sqrt(radius.size())) bad.push_back("disc");
  }

  // structural matching checks on solver output
  {
    std::mt19937_64 rng(9);
    const auto lte = lte_cqi_table();
    const auto nr = nr_cqi_table();
    const Constraints cons;
    for (int i = 0; i < 300; ++i) {
      const std::size_t n = 1 + i % 7, m = 1 + (i / 7) % 7;
      if (!is_valid_matching(hungarian_max(random_weights(n, m, rng, 0.2)), n, m)) {
        bad.push_back("hungarian structure");
        break;
      }
      const auto drop = sample_drop(n, m, RadioParams{}, 900 + i);
      const auto sem = solve_semantic(drop, surface, cons);
      bool ok = is_valid_matching(sem, n, m) && sem.per_user.size() == sem.pairs.size();
      for (std::size_t j = 0; ok && j < sem.pairs.size(); ++j) {
        const auto& plan = sem.per_user[j];
        ok = plan.user == sem.pairs[j].user && plan.channel == sem.pairs[j].channel &&
             plan.feasible && plan.k_opt && plan.xi >= cons.xi_threshold &&
             plan.xi / *plan.k_opt >= cons.sse_threshold;
      }
      for (auto s : {SystemKind::Ideal, SystemKind::FourG, SystemKind::FiveG}) {
        const auto a = solve_benchmark(drop, s, lte, nr, {40.0}, cons);
        ok = ok && is_valid_matching(a, n, m);
        for (const auto& pair : a.pairs) ok = ok && pair.weight >= cons.sse_threshold;
      }
      if (!ok) {
        bad.push_back("allocation structure");
        break;
      }
    }
  }

  // seed determinism
  {
    ScenarioConfig cfg;
    cfg.n_drops = 50;
    cfg.sweep = Sweep{SweepParam::TxPowerDbm, {0.0, 20.0}};
    if (sample_drop(5, 5, RadioParams{}, 42) != sample_drop(5, 5, RadioParams{}, 42) ||
        run_scenario(cfg) != run_scenario(cfg)) {
      bad.push_back("determinism");
    }
  }

  std::string detail = bad.empty() ? "similarity, SNR linearity, Rayleigh, disc, matching "
                                     "structure, determinism all hold"
                                   : "failed:";
  for (const auto& b : bad) detail += " " + b;
  return {bad.empty(), detail};
}

}  // namespace

int main() {
  criterion("AC1", "link budget", 1.0, ac1);
  criterion("AC2", "hungarian optimality", 5.0, ac2);
  criterion("AC3", "decomposition equivalence", 30.0, ac3);
  criterion("AC4", "transform method and CQI tables", 1.0, ac4);
  criterion("AC5", "fixed-k dominance", 120.0, ac5);
  criterion("AC6", "monotone in channel count", 300.0, ac6);
  criterion("AC7", "power saturation", 300.0, ac7);
  criterion("AC8", "transform factor sweep", 300.0, ac8);
  criterion("AC9", "invariant suites", 60.0, ac9);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
