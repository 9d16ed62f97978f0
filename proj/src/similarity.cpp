#include "semalloc/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "semalloc/errors.hpp"
#include "text_util.hpp"

namespace semalloc {

namespace {

std::string cell_name(int k, double snr_db) {
  std::ostringstream os;
  os << "(k=" << k << ", snr=" << snr_db << " dB)";
  return os.str();
}

}  // namespace

SimilaritySurface::SimilaritySurface(std::vector<int> k_values, std::vector<double> snr_grid_db,
                                     std::vector<double> xi)
    : k_values_(std::move(k_values)), snr_grid_db_(std::move(snr_grid_db)), xi_(std::move(xi)) {
  if (k_values_.empty() || snr_grid_db_.empty()) {
    throw ValidationError("similarity surface needs at least one k and one SNR point");
  }
  if (xi_.size() != k_values_.size() * snr_grid_db_.size()) {
    throw ValidationError("similarity surface has " + std::to_string(xi_.size()) +
                          " entries, expected " +
                          std::to_string(k_values_.size() * snr_grid_db_.size()));
  }
  for (std::size_t i = 0; i < k_values_.size(); ++i) {
    if (k_values_[i] < 1) {
      throw ValidationError("k values must be >= 1, got " + std::to_string(k_values_[i]));
    }
    if (i > 0 && k_values_[i] <= k_values_[i - 1]) {
      throw ValidationError("k values not strictly increasing at k=" +
                            std::to_string(k_values_[i]));
    }
  }
  for (std::size_t j = 0; j < snr_grid_db_.size(); ++j) {
    if (!std::isfinite(snr_grid_db_[j])) throw ValidationError("SNR grid must be finite");
    if (j > 0 && snr_grid_db_[j] <= snr_grid_db_[j - 1]) {
      std::ostringstream os;
      os << "SNR grid not strictly increasing at column " << j << " (" << snr_grid_db_[j]
         << " dB)";
      throw ValidationError(os.str());
    }
  }
  for (std::size_t i = 0; i < k_values_.size(); ++i) {
    for (std::size_t j = 0; j < snr_grid_db_.size(); ++j) {
      const double v = at(i, j);
      if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << "similarity " << v << " at " << cell_name(k_values_[i], snr_grid_db_[j])
           << " outside [0, 1]";
        throw ValidationError(os.str());
      }
      if (j > 0 && v < at(i, j - 1)) {
        throw ValidationError("similarity decreases along SNR at " +
                              cell_name(k_values_[i], snr_grid_db_[j]));
      }
    }
  }
}

bool SimilaritySurface::has_k(int k) const {
  return std::binary_search(k_values_.begin(), k_values_.end(), k);
}

bool SimilaritySurface::covers(int k_max) const {
  for (int k = 1; k <= k_max; ++k) {
    if (!has_k(k)) return false;
  }
  return true;
}

std::span<const double> SimilaritySurface::row(int k) const {
  const auto it = std::lower_bound(k_values_.begin(), k_values_.end(), k);
  if (it == k_values_.end() || *it != k) {
    throw DomainError("k=" + std::to_string(k) + " is not tabulated in the similarity surface");
  }
  const auto i = static_cast<std::size_t>(it - k_values_.begin());
  return std::span<const double>(xi_).subspan(i * snr_grid_db_.size(), snr_grid_db_.size());
}

double SimilaritySurface::query(int k, double snr_db) const {
  if (k < 1) throw DomainError("k must be >= 1");
  const auto values = row(k);
  if (snr_db <= snr_grid_db_.front()) return values.front();
  if (snr_db >= snr_grid_db_.back()) return values.back();
  const auto hi = static_cast<std::size_t>(
      std::upper_bound(snr_grid_db_.begin(), snr_grid_db_.end(), snr_db) - snr_grid_db_.begin());
  const std::size_t lo = hi - 1;
  const double t = (snr_db - snr_grid_db_[lo]) / (snr_grid_db_[hi] - snr_grid_db_[lo]);
  return std::lerp(values[lo], values[hi], t);
}

SimilaritySurface parse_surface(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> grid;
  std::vector<int> ks;
  std::vector<double> xi;

  auto fail = [&](const std::string& msg) -> ValidationError {
    return ValidationError("similarity CSV line " + std::to_string(line_no) + ": " + msg);
  };

  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto fields = detail::split(text);
    if (!have_header) {
      if (fields.size() < 2) throw fail("header needs at least one SNR column");
      for (std::size_t j = 1; j < fields.size(); ++j) {
        const auto v = detail::parse_number<double>(fields[j]);
        if (!v) throw fail("bad SNR value '" + std::string(fields[j]) + "'");
        grid.push_back(*v);
      }
      have_header = true;
      continue;
    }
    if (fields.size() != grid.size() + 1) {
      throw fail("expected " + std::to_string(grid.size() + 1) + " fields, got " +
                 std::to_string(fields.size()));
    }
    const auto k = detail::parse_number<int>(fields[0]);
    if (!k) throw fail("bad k value '" + std::string(fields[0]) + "'");
    ks.push_back(*k);
    for (std::size_t j = 1; j < fields.size(); ++j) {
      const auto v = detail::parse_number<double>(fields[j]);
      if (!v) throw fail("bad similarity value '" + std::string(fields[j]) + "'");
      xi.push_back(*v);
    }
  }
  if (!have_header) throw ValidationError("similarity CSV is empty");
  return SimilaritySurface(std::move(ks), std::move(grid), std::move(xi));
}

SimilaritySurface load_surface(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open similarity surface '" + path.string() + "'");
  return parse_surface(in);
}

void write_surface(const SimilaritySurface& surface, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << "k\\snr";
  for (double s : surface.snr_grid_db()) out << ',' << s;
  out << '\n';
  for (std::size_t i = 0; i < surface.k_values().size(); ++i) {
    out << surface.k_values()[i];
    for (std::size_t j = 0; j < surface.snr_grid_db().size(); ++j) out << ',' << surface.at(i, j);
    out << '\n';
  }
  out.precision(old_precision);
}

double surrogate_similarity(int k, double snr_db) {
  const double amplitude = 1.0 - 0.2 * std::exp(-0.4 * (k - 1));
  const double midpoint = 5.0 - k;
  return amplitude / (1.0 + std::exp(-0.3 * (snr_db - midpoint)));
}

SimilaritySurface default_surrogate(int k_max) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  std::vector<int> ks;
  std::vector<double> grid;
  for (int s = -10; s <= 20; ++s) grid.push_back(s);
  std::vector<double> xi;
  xi.reserve(static_cast<std::size_t>(k_max) * grid.size());
  for (int k = 1; k <= k_max; ++k) {
    ks.push_back(k);
    for (double s : grid) xi.push_back(surrogate_similarity(k, s));
  }
  return SimilaritySurface(std::move(ks), std::move(grid), std::move(xi));
}

}  // namespace semalloc
