#pragma once

#include <memory>

#include "oldroyd/field.hpp"

namespace oldroyd {

/// FFTW-backed transforms between spectral coefficients and grid samples.
///
/// Plans are created once per grid with FFTW_ESTIMATE (deterministic plan
/// choice, so repeated runs are bit-identical) and guarded by a global
/// planner mutex; execution is thread-safe on distinct engines.
///
/// transform_forward normalizes by 1/N^2, zeroes the Nyquist row/column and
/// enforces Hermitian symmetry, so its output always satisfies the field
/// invariants regardless of the input samples.
class TransformEngine {
 public:
  explicit TransformEngine(const Grid& grid);
  ~TransformEngine();

  TransformEngine(const TransformEngine&) = delete;
  TransformEngine& operator=(const TransformEngine&) = delete;

  const Grid& grid() const { return grid_; }

  PhysicalField transform_inverse(const SpectralField& f) const;
  SpectralField transform_forward(const PhysicalField& f) const;

  /// Single-component helpers used by the model assembly.
  void component_inverse(std::span<const Complex> in, std::span<double> out) const;
  void component_forward(std::span<const double> in, std::span<Complex> out) const;

 private:
  struct Impl;

  Grid grid_;
  std::unique_ptr<Impl> impl_;
};

/// Zero the Nyquist row/column and project onto Hermitian-symmetric
/// coefficients (c(-k) = conj(c(k))) in place.
void enforce_reality(SpectralField& f);

/// Max deviation from Hermitian symmetry, as a diagnostic.
double reality_defect(const SpectralField& f);

}  // namespace oldroyd
