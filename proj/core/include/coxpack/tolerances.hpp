#pragma once

namespace coxpack {

// Numerical cutoffs used across the library. The defaults are deliberately
// far apart from the spectral gaps that actually occur for graphs with labels
// in {2..6, inf} and solved dotted weights, so classifications are stable.
struct Tolerances {
  // |x| below this counts as zero: eigenvalues, pairings, determinants.
  double zero = 1e-9;
  // Margin required from the max-margin LP before a subset counts as facial.
  double lp = 1e-7;
  // Band around 0 for the norm of a solved weight to count as light-like.
  double lightlike = 1e-6;
  // Band around -1 for a normalized pairing to count as tangent.
  double tangency = 1e-6;
  // Quantization step for orbit deduplication keys.
  double dedup_quantum = 1e-7;
};

inline const Tolerances& default_tol() {
  static const Tolerances t{};
  return t;
}

}  // namespace coxpack
