#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "semalloc/matrix.hpp"

namespace semalloc {

/// Uplink radio parameters shared by every user. Defaults are the reference
/// cellular scenario: 180 kHz channels, -174 dBm/Hz noise, 10 dBm users,
/// 128.1 + 37.6 log10(d[km]) pathloss, 6 dB log-normal shadowing, 500 m cell.
struct RadioParams {
  double bandwidth_hz = 180e3;
  double noise_psd_dbm_hz = -174.0;
  double tx_power_dbm = 10.0;
  double pathloss_a = 128.1;
  double pathloss_b = 37.6;
  double shadow_sigma_db = 6.0;
  double cell_radius_km = 0.5;

  /// Throws DomainError on a non-physical parameter set.
  void validate() const;

  bool operator==(const RadioParams&) const = default;
};

struct LinkRealization {
  double large_scale_gain = 0.0;  // linear, pathloss and shadowing combined
  double fading_power = 0.0;      // |h|^2
  double snr_linear = 0.0;
  double snr_db = 0.0;

  bool operator==(const LinkRealization&) const = default;
};

/// One Monte-Carlo realization: user placement plus every user x channel link.
struct NetworkDrop {
  std::vector<double> user_distances_km;
  Matrix<LinkRealization> links;

  std::size_t n_users() const { return links.rows(); }
  std::size_t n_channels() const { return links.cols(); }

  bool operator==(const NetworkDrop&) const = default;
};

struct Snr {
  double linear = 0.0;
  double db = 0.0;
};

/// Users closer than this are placed at it; keeps the log-distance law finite.
inline constexpr double kMinDistanceKm = 1e-3;

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_mw(double dbm);

double pathloss_db(double distance_km, const RadioParams& params);

/// 10^(-(pathloss + shadow)/10).
double large_scale_gain(double distance_km, double shadow_db, const RadioParams& params);

/// p * g * |h|^2 / (W * N0), all linear.
Snr snr(const RadioParams& params, double large_scale_gain, double fading_power);

LinkRealization make_link(const RadioParams& params, double large_scale_gain, double fading_power);

/// Draws a drop: users uniform over the disc, per-user log-normal shadowing,
/// per-(user, channel) Rayleigh power. Deterministic in `seed`. Channel m of a
/// user is drawn from that user's own stream, so the first M channels are the
/// same whatever `n_channels` is.
NetworkDrop sample_drop(std::size_t n_users, std::size_t n_channels, const RadioParams& params,
                        std::uint64_t seed);

}  // namespace semalloc
