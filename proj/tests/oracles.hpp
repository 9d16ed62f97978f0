#pragma once

// Test-only reference computations. Nothing here calls into the solvers it
// is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "semalloc/allocator.hpp"
#include "semalloc/channel_model.hpp"
#include "semalloc/matrix.hpp"

namespace semalloc::testing {

/// Best total over every permutation of the zero-padded square matrix. Sums
/// the positive weights in ascending order, like the solver's reported total.
inline double permutation_max(const Matrix<double>& w) {
  const std::size_t n = std::max(w.rows(), w.cols());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    std::vector<double> picked;
    for (std::size_t i = 0; i < n; ++i) {
      if (i < w.rows() && perm[i] < w.cols() && w(i, perm[i]) > 0.0) {
        picked.push_back(w(i, perm[i]));
      }
    }
    std::sort(picked.begin(), picked.end());
    double total = 0.0;
    for (double x : picked) total += x;
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline Matrix<double> random_weights(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                                     double zero_probability = 0.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix<double> w(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      w(r, c) = unit(rng) < zero_probability ? 0.0 : unit(rng);
    }
  }
  return w;
}

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> sample, Cdf cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

/// A drop whose links have exactly the given SNRs (unit fading, gain chosen
/// to match under `params`).
inline NetworkDrop drop_with_snr_db(const Matrix<double>& snr_db,
                                    const RadioParams& params = RadioParams{}) {
  NetworkDrop drop;
  drop.user_distances_km.assign(snr_db.rows(), params.cell_radius_km);
  drop.links = Matrix<LinkRealization>(snr_db.rows(), snr_db.cols());
  const double p_over_noise = std::pow(10.0, (params.tx_power_dbm - params.noise_psd_dbm_hz -
                                              10.0 * std::log10(params.bandwidth_hz)) /
                                                 10.0);
  for (std::size_t n = 0; n < snr_db.rows(); ++n) {
    for (std::size_t m = 0; m < snr_db.cols(); ++m) {
      const double lin = std::pow(10.0, snr_db(n, m) / 10.0);
      drop.links(n, m) = {lin / p_over_noise, 1.0, lin, snr_db(n, m)};
    }
  }
  return drop;
}

}  // namespace semalloc::testing
