#pragma once

namespace semalloc {

/// Expected semantic information per sentence over expected words per
/// sentence. Only the ratio ever matters, so results are quoted in its units.
struct SourceStats {
  double i_over_l = 1.0;
};

/// Average source-coded bits per word.
struct TransformFactor {
  double mu = 40.0;
};

// Semantic system. xi in [0, 1], k >= 1; DomainError otherwise.

/// W * (I/L) * xi / k, in suts/s.
double semantic_rate(double bandwidth_hz, double xi, int k, SourceStats src);
/// (I/L) * xi / k, in suts/s/Hz.
double semantic_se(double xi, int k, SourceStats src);

// Conventional systems, mapped into the semantic domain by bits-per-word.

/// bit_rate * (I/L) / mu * xi, in suts/s.
double equivalent_semantic_rate(double bit_rate, double xi, TransformFactor tf, SourceStats src);
/// se_bits * (I/L) / mu, in suts/s/Hz. Error-free delivery (xi = 1).
double equivalent_semantic_se(double se_bits, TransformFactor tf, SourceStats src);

}  // namespace semalloc
