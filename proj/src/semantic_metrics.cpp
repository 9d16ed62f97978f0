#include "semalloc/semantic_metrics.hpp"

#include <cmath>
#include <string>

#include "semalloc/errors.hpp"

namespace semalloc {

namespace {

void check_semantic(double xi, int k) {
  if (k < 1) throw DomainError("symbols per word must be >= 1, got " + std::to_string(k));
  if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("similarity must lie in [0, 1]");
}

void check_conventional(double bits, TransformFactor tf) {
  if (!(bits >= 0.0)) throw DomainError("bit rate / spectral efficiency must be >= 0");
  if (!(tf.mu > 0.0)) throw DomainError("transforming factor mu must be > 0");
}

}  // namespace

double semantic_se(double xi, int k, SourceStats src) {
  check_semantic(xi, k);
  return src.i_over_l * xi / k;
}

double semantic_rate(double bandwidth_hz, double xi, int k, SourceStats src) {
  if (!(bandwidth_hz > 0.0)) throw DomainError("bandwidth must be > 0");
  return bandwidth_hz * semantic_se(xi, k, src);
}

double equivalent_semantic_rate(double bit_rate, double xi, TransformFactor tf,
                                SourceStats src) {
  check_conventional(bit_rate, tf);
  if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("similarity must lie in [0, 1]");
  return bit_rate * src.i_over_l / tf.mu * xi;
}

double equivalent_semantic_se(double se_bits, TransformFactor tf, SourceStats src) {
  check_conventional(se_bits, tf);
  return se_bits * src.i_over_l / tf.mu;
}

}  // namespace semalloc
