#include "semalloc/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "semalloc/errors.hpp"

namespace semalloc {

namespace {

constexpr SourceStats kUnitSource{1.0};

void require_coverage(const SimilaritySurface& surface, int k_max) {
  for (int k = 1; k <= k_max; ++k) {
    if (!surface.has_k(k)) {
      throw DomainError("similarity surface has no row for k=" + std::to_string(k) +
                        " (k_max=" + std::to_string(k_max) + ")");
    }
  }
}

Assignment finish(std::vector<MatchedPair> pairs) {
  std::sort(pairs.begin(), pairs.end(),
            [](const MatchedPair& a, const MatchedPair& b) { return a.user < b.user; });
  std::vector<double> weights;
  weights.reserve(pairs.size());
  for (const auto& p : pairs) weights.push_back(p.weight);
  Assignment out;
  out.total_weight = canonical_sum(std::move(weights));
  out.pairs = std::move(pairs);
  return out;
}

}  // namespace

void Constraints::validate() const {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  if (!(xi_threshold >= 0.0 && xi_threshold <= 1.0)) {
    throw DomainError("xi_threshold must lie in [0, 1]");
  }
  if (!(sse_threshold >= 0.0) || !std::isfinite(sse_threshold)) {
    throw DomainError("sse_threshold must be finite and >= 0");
  }
}

double canonical_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::accumulate(values.begin(), values.end(), 0.0);
}

PairPlan solve_p2(const SimilaritySurface& surface, double snr_db, const Constraints& cons) {
  cons.validate();
  require_coverage(surface, cons.k_max);
  PairPlan plan;
  for (int k = 1; k <= cons.k_max; ++k) {
    const double xi = surface.query(k, snr_db);
    if (xi < cons.xi_threshold) continue;
    const double w = semantic_se(xi, k, kUnitSource);
    if (w < cons.sse_threshold) continue;
    // Strict comparison keeps the smallest k on ties.
    if (!plan.feasible || w > plan.weight) {
      plan.feasible = true;
      plan.k_opt = k;
      plan.xi = xi;
      plan.weight = w;
    }
  }
  return plan;
}

Matrix<PairPlan> build_weights(const NetworkDrop& drop, const SimilaritySurface& surface,
                               const Constraints& cons) {
  cons.validate();
  require_coverage(surface, cons.k_max);
  Matrix<PairPlan> plans(drop.n_users(), drop.n_channels());
  for (std::size_t n = 0; n < drop.n_users(); ++n) {
    for (std::size_t m = 0; m < drop.n_channels(); ++m) {
      auto plan = solve_p2(surface, drop.links(n, m).snr_db, cons);
      plan.user = n;
      plan.channel = m;
      plans(n, m) = plan;
    }
  }
  return plans;
}

Assignment hungarian_max(const Matrix<double>& weights) {
  for (double w : weights.values()) {
    if (!std::isfinite(w) || w < 0.0) {
      throw DomainError("matching weights must be finite and non-negative");
    }
  }
  const std::size_t rows = weights.rows();
  const std::size_t cols = weights.cols();
  const std::size_t n = std::max(rows, cols);
  if (n == 0) return {};

  // Minimum-cost assignment on -w over the zero-padded n x n matrix, with row
  // and column potentials (1-based; index 0 is the virtual start column).
  auto cost = [&](std::size_t i, std::size_t j) {
    return (i < rows && j < cols) ? -weights(i, j) : 0.0;
  };
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<MatchedPair> pairs;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = match[j] - 1;
    const std::size_t c = j - 1;
    if (i < rows && c < cols && weights(i, c) > 0.0) pairs.push_back({i, c, weights(i, c)});
  }
  return finish(std::move(pairs));
}

Assignment solve_semantic(const NetworkDrop& drop, const SimilaritySurface& surface,
                          const Constraints& cons) {
  const auto plans = build_weights(drop, surface, cons);
  Matrix<double> weights(plans.rows(), plans.cols());
  for (std::size_t n = 0; n < plans.rows(); ++n) {
    for (std::size_t m = 0; m < plans.cols(); ++m) weights(n, m) = plans(n, m).weight;
  }
  auto out = hungarian_max(weights);
  for (const auto& p : out.pairs) out.per_user.push_back(plans(p.user, p.channel));
  return out;
}

double benchmark_weight(const LinkRealization& link, SystemKind system, const CqiTable& lte,
                        const CqiTable& nr, TransformFactor tf) {
  double se_bits = 0.0;
  switch (system) {
    case SystemKind::Ideal: se_bits = shannon_se(link.snr_linear); break;
    case SystemKind::FourG: se_bits = lte.table_se(link.snr_db); break;
    case SystemKind::FiveG: se_bits = nr.table_se(link.snr_db); break;
    case SystemKind::Semantic:
      throw DomainError("the semantic system is not a conventional benchmark");
  }
  return equivalent_semantic_se(se_bits, tf, kUnitSource);
}

Assignment solve_benchmark(const NetworkDrop& drop, SystemKind system, const CqiTable& lte,
                           const CqiTable& nr, TransformFactor tf, const Constraints& cons) {
  if (system == SystemKind::Semantic) {
    throw DomainError("solve_benchmark needs Ideal, FourG or FiveG");
  }
  cons.validate();
  Matrix<double> weights(drop.n_users(), drop.n_channels());
  for (std::size_t n = 0; n < drop.n_users(); ++n) {
    for (std::size_t m = 0; m < drop.n_channels(); ++m) {
      const double w = benchmark_weight(drop.links(n, m), system, lte, nr, tf);
      weights(n, m) = w >= cons.sse_threshold ? w : 0.0;
    }
  }
  return hungarian_max(weights);
}

namespace {

struct JointOption {
  std::size_t channel;
  int k;
  double xi;
  double weight;
};

class JointSearch {
 public:
  JointSearch(const NetworkDrop& drop, const SimilaritySurface& surface, const Constraints& cons)
      : n_users_(drop.n_users()),
        n_channels_(drop.n_channels()),
        options_(drop.n_users()),
        channel_used_(drop.n_channels(), 0) {
    for (std::size_t n = 0; n < n_users_; ++n) {
      for (std::size_t m = 0; m < n_channels_; ++m) {
        const double snr_db = drop.links(n, m).snr_db;
        for (int k = 1; k <= cons.k_max; ++k) {
          const double xi = surface.query(k, snr_db);
          const double w = xi / k;
          if (xi >= cons.xi_threshold && w >= cons.sse_threshold) {
            options_[n].push_back({m, k, xi, w});
          }
        }
      }
    }
  }

  Assignment run() {
    current_.assign(n_users_, nullptr);
    visit(0);
    Assignment out;
    out.total_weight = best_total_;
    for (std::size_t n = 0; n < n_users_; ++n) {
      const JointOption* o = best_[n];
      if (o == nullptr) continue;
      out.pairs.push_back({n, o->channel, o->weight});
      out.per_user.push_back({n, o->channel, o->k, o->xi, o->weight, true});
    }
    return out;
  }

 private:
  void visit(std::size_t n) {
    if (n == n_users_) {
      std::vector<double> ws;
      for (const auto* o : current_) {
        if (o != nullptr) ws.push_back(o->weight);
      }
      const double total = canonical_sum(std::move(ws));
      if (!have_best_ || total > best_total_) {
        have_best_ = true;
        best_total_ = total;
        best_ = current_;
      }
      return;
    }
    current_[n] = nullptr;
    visit(n + 1);
    for (const auto& o : options_[n]) {
      if (channel_used_[o.channel]) continue;
      channel_used_[o.channel] = 1;
      current_[n] = &o;
      visit(n + 1);
      current_[n] = nullptr;
      channel_used_[o.channel] = 0;
    }
  }

  std::size_t n_users_;
  std::size_t n_channels_;
  std::vector<std::vector<JointOption>> options_;
  std::vector<char> channel_used_;
  std::vector<const JointOption*> current_;
  std::vector<const JointOption*> best_;
  double best_total_ = 0.0;
  bool have_best_ = false;
};

}  // namespace

Assignment brute_force_joint(const NetworkDrop& drop, const SimilaritySurface& surface,
                             const Constraints& cons) {
  cons.validate();
  if (drop.n_users() > 6 || drop.n_channels() > 6 || cons.k_max > 20) {
    throw DomainError("brute_force_joint is limited to N, M <= 6 and k_max <= 20");
  }
  require_coverage(surface, cons.k_max);
  return JointSearch(drop, surface, cons).run();
}

bool is_valid_matching(const Assignment& assignment, std::size_t n_users, std::size_t n_channels) {
  std::vector<char> user_seen(n_users, 0), channel_seen(n_channels, 0);
  std::vector<double> weights;
  for (const auto& p : assignment.pairs) {
    if (p.user >= n_users || p.channel >= n_channels) return false;
    if (user_seen[p.user] || channel_seen[p.channel]) return false;
    user_seen[p.user] = channel_seen[p.channel] = 1;
    weights.push_back(p.weight);
  }
  return canonical_sum(std::move(weights)) == assignment.total_weight;
}

}  // namespace semalloc
