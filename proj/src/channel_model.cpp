#include "semalloc/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "semalloc/errors.hpp"

namespace semalloc {

namespace {

// Stream ids mixed into every per-drop seed.
constexpr std::uint32_t kGeometryStream = 0x67656f;  // "geo"
constexpr std::uint32_t kFadingStream = 0x666164;    // "fad"

std::mt19937_64 make_engine(std::uint64_t seed, std::uint32_t stream, std::uint32_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream, index};
  return std::mt19937_64(seq);
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

}  // namespace

void RadioParams::validate() const {
  require_positive(bandwidth_hz, "bandwidth_hz");
  require_positive(cell_radius_km, "cell_radius_km");
  if (!(pathloss_b >= 0.0)) throw DomainError("pathloss_b must be >= 0");
  if (!(shadow_sigma_db >= 0.0)) throw DomainError("shadow_sigma_db must be >= 0");
  for (double v : {noise_psd_dbm_hz, tx_power_dbm, pathloss_a, pathloss_b, shadow_sigma_db}) {
    if (!std::isfinite(v)) throw DomainError("radio parameters must be finite");
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
double dbm_to_mw(double dbm) { return db_to_linear(dbm); }

double pathloss_db(double distance_km, const RadioParams& params) {
  require_positive(distance_km, "distance_km");
  return params.pathloss_a + params.pathloss_b * std::log10(distance_km);
}

double large_scale_gain(double distance_km, double shadow_db, const RadioParams& params) {
  return db_to_linear(-(pathloss_db(distance_km, params) + shadow_db));
}

Snr snr(const RadioParams& params, double large_scale_gain, double fading_power) {
  require_positive(large_scale_gain, "large_scale_gain");
  require_positive(fading_power, "fading_power");
  const double noise_mw = params.bandwidth_hz * dbm_to_mw(params.noise_psd_dbm_hz);
  const double linear = dbm_to_mw(params.tx_power_dbm) * large_scale_gain * fading_power / noise_mw;
  return {linear, linear_to_db(linear)};
}

LinkRealization make_link(const RadioParams& params, double large_scale_gain,
                          double fading_power) {
  const Snr s = snr(params, large_scale_gain, fading_power);
  return {large_scale_gain, fading_power, s.linear, s.db};
}

NetworkDrop sample_drop(std::size_t n_users, std::size_t n_channels, const RadioParams& params,
                        std::uint64_t seed) {
  if (n_users == 0 || n_channels == 0) {
    throw DomainError("sample_drop needs at least one user and one channel");
  }
  params.validate();

  NetworkDrop drop;
  drop.user_distances_km.resize(n_users);
  drop.links = Matrix<LinkRealization>(n_users, n_channels);

  auto geometry = make_engine(seed, kGeometryStream);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> shadow(0.0, 1.0);
  std::exponential_distribution<double> rayleigh_power(1.0);

  for (std::size_t n = 0; n < n_users; ++n) {
    // Radius CDF (d/r)^2 for a uniform disc.
    const double d = params.cell_radius_km * std::sqrt(unit(geometry));
    drop.user_distances_km[n] = std::clamp(d, kMinDistanceKm, params.cell_radius_km);
    const double shadow_db = params.shadow_sigma_db * shadow(geometry);
    const double gain = large_scale_gain(drop.user_distances_km[n], shadow_db, params);

    auto fading = make_engine(seed, kFadingStream, static_cast<std::uint32_t>(n));
    for (std::size_t m = 0; m < n_channels; ++m) {
      double h2 = rayleigh_power(fading);
      // Exponential draws can be exactly 0 only with probability ~2^-53.
      if (h2 <= 0.0) h2 = std::numeric_limits<double>::min();
      drop.links(n, m) = make_link(params, gain, h2);
    }
  }
  return drop;
}

}  // namespace semalloc
