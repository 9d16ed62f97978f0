#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace semalloc {

/// Tabulated semantic similarity xi(k, snr_db).
///
/// Rows are symbols-per-word counts k, columns an SNR grid in dB. Queries
/// require an exact k and interpolate linearly along SNR, clamping outside
/// the grid. Immutable once constructed.
class SimilaritySurface {
 public:
  /// `xi` is row-major, |k_values| x |snr_grid_db|. Throws ValidationError
  /// if a grid is not strictly increasing, an entry leaves [0, 1], or a row
  /// decreases along SNR.
  SimilaritySurface(std::vector<int> k_values, std::vector<double> snr_grid_db,
                    std::vector<double> xi);

  /// Throws DomainError if `k` is not tabulated.
  double query(int k, double snr_db) const;

  bool has_k(int k) const;
  /// True when every k in 1..k_max is tabulated.
  bool covers(int k_max) const;

  std::span<const int> k_values() const { return k_values_; }
  std::span<const double> snr_grid_db() const { return snr_grid_db_; }
  double at(std::size_t k_index, std::size_t snr_index) const {
    return xi_[k_index * snr_grid_db_.size() + snr_index];
  }

  bool operator==(const SimilaritySurface&) const = default;

 private:
  std::span<const double> row(int k) const;

  std::vector<int> k_values_;
  std::vector<double> snr_grid_db_;
  std::vector<double> xi_;
};

/// CSV: header "k\snr,s1,s2,..." then one "k,xi1,xi2,..." row per k.
SimilaritySurface parse_surface(std::istream& in);
SimilaritySurface load_surface(const std::filesystem::path& path);
void write_surface(const SimilaritySurface& surface, std::ostream& out);

/// A(k) * logistic(0.3 * (snr_db - b(k))) with A(k) = 1 - 0.2 exp(-0.4 (k - 1))
/// and b(k) = 5 - k, so xi(1, 4 dB) = 0.4. Stand-in for a measured table.
double surrogate_similarity(int k, double snr_db);

/// The surrogate tabulated for k = 1..k_max over -10..20 dB in 1 dB steps.
SimilaritySurface default_surrogate(int k_max);

}  // namespace semalloc
