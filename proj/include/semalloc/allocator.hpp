#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "semalloc/channel_model.hpp"
#include "semalloc/link_adaptation.hpp"
#include "semalloc/matrix.hpp"
#include "semalloc/semantic_metrics.hpp"
#include "semalloc/similarity.hpp"

namespace semalloc {

/// Per-link requirements. sse_threshold is in (I/L) suts/s/Hz, like every
/// objective value the allocator returns.
struct Constraints {
  int k_max = 20;
  double xi_threshold = 0.9;
  double sse_threshold = 0.025;

  void validate() const;
};

/// Best symbols-per-word choice for one (user, channel) link.
struct PairPlan {
  std::size_t user = 0;
  std::size_t channel = 0;
  std::optional<int> k_opt;
  double xi = 0.0;
  double weight = 0.0;  // xi / k_opt, 0 when infeasible
  bool feasible = false;
};

struct MatchedPair {
  std::size_t user = 0;
  std::size_t channel = 0;
  double weight = 0.0;

  bool operator==(const MatchedPair&) const = default;
};

/// A partial user <-> channel matching. `pairs` is ordered by user.
/// `per_user` carries the link plan of every matched user when the weights
/// came from a semantic plan; it is empty for conventional benchmarks.
struct Assignment {
  std::vector<MatchedPair> pairs;
  double total_weight = 0.0;
  std::vector<PairPlan> per_user;
};

/// Sum in ascending order, so equal multisets give bit-identical totals.
double canonical_sum(std::vector<double> values);

/// Exhaustive scan of k = 1..k_max at one SNR. Ties go to the smaller k.
PairPlan solve_p2(const SimilaritySurface& surface, double snr_db, const Constraints& cons);

Matrix<PairPlan> build_weights(const NetworkDrop& drop, const SimilaritySurface& surface,
                               const Constraints& cons);

/// Maximum-weight matching (Kuhn-Munkres on negated weights, padded square).
/// Zero-weight matches are reported as unmatched. Only the optimal value is
/// contractual when several matchings tie.
Assignment hungarian_max(const Matrix<double>& weights);

/// Joint channel and k optimization for the semantic system.
Assignment solve_semantic(const NetworkDrop& drop, const SimilaritySurface& surface,
                          const Constraints& cons);

/// Per-link equivalent S-SE of a conventional system, before thresholding.
double benchmark_weight(const LinkRealization& link, SystemKind system, const CqiTable& lte,
                        const CqiTable& nr, TransformFactor tf);

/// Channel assignment for Ideal / FourG / FiveG. Links below sse_threshold
/// get weight 0. Throws DomainError for SystemKind::Semantic.
Assignment solve_benchmark(const NetworkDrop& drop, SystemKind system, const CqiTable& lte,
                           const CqiTable& nr, TransformFactor tf, const Constraints& cons);

/// Reference optimum by enumerating every partial injective user -> channel
/// map together with every feasible k per matched user. Limited to N, M <= 6
/// and k_max <= 20 (DomainError beyond).
Assignment brute_force_joint(const NetworkDrop& drop, const SimilaritySurface& surface,
                             const Constraints& cons);

/// Row/column structure check of a matching against an N x M problem.
bool is_valid_matching(const Assignment& assignment, std::size_t n_users, std::size_t n_channels);

}  // namespace semalloc
