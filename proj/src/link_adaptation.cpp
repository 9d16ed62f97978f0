#include "semalloc/link_adaptation.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <string>

#include "semalloc/errors.hpp"
#include "text_util.hpp"

namespace semalloc {

namespace {

// Reported-CQI thresholds: 15 points from -6.7 dB to 22.7 dB, 2.1 dB apart.
constexpr std::array<double, CqiTable::kSize> kLteThresholdsDb = {
    -6.7, -4.6, -2.5, -0.4, 1.7, 3.8, 5.9, 8.0, 10.1, 12.2, 14.3, 16.4, 18.5, 20.6, 22.7};

// 3GPP TS 36.213 Table 7.2.3-1 (QPSK, 16QAM, 64QAM).
constexpr std::array<double, CqiTable::kSize> kLteEfficiency = {
    0.1523, 0.2344, 0.3770, 0.6016, 0.8770, 1.1758, 1.4766, 1.9141,
    2.4063, 2.7305, 3.3223, 3.9023, 4.5234, 5.1152, 5.5547};

// 3GPP TS 38.214 4-bit CQI table with 256QAM.
constexpr std::array<double, CqiTable::kSize> kNrEfficiency = {
    0.1523, 0.3770, 0.8770, 1.4766, 1.9141, 2.4063, 2.7305, 3.3223,
    3.9023, 4.5234, 5.1152, 5.5547, 6.2266, 6.9141, 7.4063};

// SNR at which log2(1 + snr) reaches each efficiency, plus 1 dB, to 0.1 dB.
constexpr std::array<double, CqiTable::kSize> kNrThresholdsDb = {
    -8.5, -4.2, 0.2, 3.5, 5.4, 7.3, 8.5, 10.5, 12.4, 14.4, 16.3, 17.6, 19.7, 21.8, 23.3};

CqiTable build(const std::array<double, CqiTable::kSize>& eff,
               const std::array<double, CqiTable::kSize>& thresholds_db) {
  std::array<CqiEntry, CqiTable::kSize> entries{};
  for (int i = 0; i < CqiTable::kSize; ++i) {
    entries[i] = {i + 1, eff[i], thresholds_db[i]};
  }
  return CqiTable(entries);
}

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::Semantic: return "semantic";
    case SystemKind::Ideal: return "ideal";
    case SystemKind::FourG: return "4g";
    case SystemKind::FiveG: return "5g";
  }
  return "unknown";
}

SystemKind parse_system_kind(std::string_view name) {
  const auto n = detail::lower(detail::trim(name));
  for (auto kind : kAllSystems) {
    if (n == to_string(kind)) return kind;
  }
  throw ValidationError("unknown system '" + std::string(name) +
                        "' (expected semantic, ideal, 4g or 5g)");
}

CqiTable::CqiTable(std::array<CqiEntry, kSize> entries) : entries_(entries) {
  for (int i = 0; i < kSize; ++i) {
    const auto& e = entries_[i];
    if (e.index != i + 1) {
      throw ValidationError("CQI row " + std::to_string(i + 1) + " has index " +
                            std::to_string(e.index));
    }
    if (!std::isfinite(e.efficiency) || !std::isfinite(e.threshold_db) || e.efficiency <= 0.0) {
      throw ValidationError("CQI " + std::to_string(e.index) + " has a non-finite or non-positive value");
    }
    if (i > 0 && e.efficiency <= entries_[i - 1].efficiency) {
      throw ValidationError("CQI efficiencies not strictly increasing at CQI " +
                            std::to_string(e.index));
    }
    if (i > 0 && e.threshold_db <= entries_[i - 1].threshold_db) {
      throw ValidationError("CQI thresholds not strictly increasing at CQI " +
                            std::to_string(e.index));
    }
  }
}

int CqiTable::snr_to_cqi(double snr_db) const {
  const auto it = std::upper_bound(entries_.begin(), entries_.end(), snr_db,
                                   [](double s, const CqiEntry& e) { return s < e.threshold_db; });
  return static_cast<int>(it - entries_.begin());
}

double CqiTable::table_se(double snr_db) const {
  const int cqi = snr_to_cqi(snr_db);
  return cqi == 0 ? 0.0 : efficiency(cqi);
}

double CqiTable::efficiency(int cqi) const {
  if (cqi < 1 || cqi > kSize) throw DomainError("CQI index out of range");
  return entries_[cqi - 1].efficiency;
}

double CqiTable::threshold_db(int cqi) const {
  if (cqi < 1 || cqi > kSize) throw DomainError("CQI index out of range");
  return entries_[cqi - 1].threshold_db;
}

CqiTable CqiTable::with_thresholds(const std::array<double, kSize>& thresholds_db) const {
  auto entries = entries_;
  for (int i = 0; i < kSize; ++i) entries[i].threshold_db = thresholds_db[i];
  return CqiTable(entries);
}

double shannon_se(double snr_linear) {
  if (!(snr_linear >= 0.0)) throw DomainError("SNR must be >= 0");
  return std::log2(1.0 + snr_linear);
}

CqiTable lte_cqi_table() { return build(kLteEfficiency, kLteThresholdsDb); }
CqiTable nr_cqi_table() { return build(kNrEfficiency, kNrThresholdsDb); }

CqiTable parse_cqi_table(std::istream& in) {
  std::array<CqiEntry, CqiTable::kSize> entries{};
  int rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto f = detail::split(text);
    const auto where = "CQI CSV line " + std::to_string(line_no);
    if (f.size() != 3) throw ValidationError(where + ": expected 3 fields");
    const auto index = detail::parse_number<int>(f[0]);
    if (!index) {
      if (rows == 0 && detail::lower(f[0]) == "index") continue;  // header
      throw ValidationError(where + ": bad index '" + std::string(f[0]) + "'");
    }
    const auto eff = detail::parse_number<double>(f[1]);
    const auto thr = detail::parse_number<double>(f[2]);
    if (!eff || !thr) throw ValidationError(where + ": bad number");
    if (rows >= CqiTable::kSize) throw ValidationError(where + ": more than 15 rows");
    entries[rows++] = {*index, *eff, *thr};
  }
  if (rows != CqiTable::kSize) {
    throw ValidationError("CQI table has " + std::to_string(rows) + " rows, expected 15");
  }
  return CqiTable(entries);
}

CqiTable load_cqi_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CQI table '" + path.string() + "'");
  return parse_cqi_table(in);
}

void write_cqi_table(const CqiTable& table, std::ostream& out) {
  out << "index,efficiency,threshold_db\n";
  char buf[64];
  for (const auto& e : table.entries()) {
    std::snprintf(buf, sizeof buf, "%d,%.4f,%.17g\n", e.index, e.efficiency, e.threshold_db);
    out << buf;
  }
}

std::string efficiency_digest(const CqiTable& table) {
  std::string text;
  char buf[64];
  for (const auto& e : table.entries()) {
    std::snprintf(buf, sizeof buf, "%d,%.4f\n", e.index, e.efficiency);
    text += buf;
  }

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), text.data(), text.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md, &len) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace semalloc
