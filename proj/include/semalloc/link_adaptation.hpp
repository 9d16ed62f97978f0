#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace semalloc {

enum class SystemKind { Semantic, Ideal, FourG, FiveG };

inline constexpr std::array<SystemKind, 4> kAllSystems = {SystemKind::Semantic, SystemKind::Ideal,
                                                          SystemKind::FourG, SystemKind::FiveG};

/// "semantic", "ideal", "4g", "5g".
std::string_view to_string(SystemKind kind);
/// Inverse of to_string (case-insensitive); throws ValidationError.
SystemKind parse_system_kind(std::string_view name);

struct CqiEntry {
  int index = 0;
  double efficiency = 0.0;    // bits/s/Hz
  double threshold_db = 0.0;  // lowest SNR at which this CQI is reported

  bool operator==(const CqiEntry&) const = default;
};

/// 4-bit CQI table: indices 1..15 with strictly increasing efficiencies and
/// SNR thresholds. CQI 0 (below the first threshold) is outage.
class CqiTable {
 public:
  static constexpr int kSize = 15;

  /// Throws ValidationError unless indices run 1..15 and both columns are
  /// strictly increasing.
  explicit CqiTable(std::array<CqiEntry, kSize> entries);

  /// Largest index whose threshold <= snr_db, 0 if none.
  int snr_to_cqi(double snr_db) const;
  /// Efficiency of the selected CQI; 0 in outage.
  double table_se(double snr_db) const;

  double efficiency(int cqi) const;
  double threshold_db(int cqi) const;
  std::span<const CqiEntry> entries() const { return entries_; }

  /// Same efficiencies, thresholds replaced.
  CqiTable with_thresholds(const std::array<double, kSize>& thresholds_db) const;

  bool operator==(const CqiTable&) const = default;

 private:
  std::array<CqiEntry, kSize> entries_;
};

double shannon_se(double snr_linear);
inline int snr_to_cqi(const CqiTable& table, double snr_db) { return table.snr_to_cqi(snr_db); }
inline double table_se(const CqiTable& table, double snr_db) { return table.table_se(snr_db); }

/// 3GPP TS 36.213 Table 7.2.3-1, thresholds -6.7..22.7 dB in 2.1 dB steps.
CqiTable lte_cqi_table();
/// 3GPP TS 38.214 256QAM CQI table (top efficiency 7.4063), each threshold
/// 1 dB above the Shannon requirement for its efficiency.
CqiTable nr_cqi_table();

/// CSV rows "index,efficiency,threshold_db" for CQI 1..15, optional header.
CqiTable parse_cqi_table(std::istream& in);
CqiTable load_cqi_table(const std::filesystem::path& path);
void write_cqi_table(const CqiTable& table, std::ostream& out);

/// SHA-256 (hex) of the efficiency column serialized as "index,eff\n" with
/// four decimals. Thresholds are configuration and are not hashed.
std::string efficiency_digest(const CqiTable& table);

inline constexpr std::string_view kLteEfficiencyDigest =
    "67f48de8b03bc37da48439567111d174a89b49d4cb7ee857b42e47c95e8b5af6";
inline constexpr std::string_view kNrEfficiencyDigest =
    "947a1de218caa3b43917427a804ea82c95d95e88e702e1db0dd5de2116529769";

}  // namespace semalloc
