#pragma once

#include <cmath>
#include <stdexcept>

#include "oldroyd/field.hpp"

namespace oldroyd {

/// Applies the Fourier multiplier m(xi) componentwise:
/// out(xi) = m(xi1, xi2) * in(xi). The callable must return a finite value
/// at every grid wavevector, including xi = 0. Reality symmetry is preserved
/// when m(-xi) = conj(m(xi)).
template <class M>
SpectralField apply_multiplier(const SpectralField& f, M&& m) {
  const Grid& g = f.grid();
  SpectralField out(g, f.rank());
  for (int i = 0; i < g.n; ++i) {
    const double xi1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double xi2 = g.xi(j);
      const Complex mv = m(xi1, xi2);
      if (!std::isfinite(mv.real()) || !std::isfinite(mv.imag()))
        throw std::invalid_argument("apply_multiplier: non-finite multiplier value");
      for (int c = 0; c < f.components(); ++c)
        out.at(c, i, j) = mv * f.at(c, i, j);
    }
  }
  return out;
}

/// (-Delta)^beta: multiplier |xi|^{2 beta}, 0 at xi = 0. Requires
/// beta in [1/2, 1).
SpectralField fractional_laplacian(const SpectralField& f, double beta);

/// Lambda^s = |xi|^s with 0 at xi = 0. For s < 0 the field must have a
/// (numerically) zero mean; the mean mode of the output is zero for any s != 0.
SpectralField lambda_s(const SpectralField& f, double s);

/// Leray projection onto divergence-free vector fields:
/// uhat(xi) <- (I - xi xi^T / |xi|^2) uhat(xi) for xi != 0; xi = 0 untouched.
SpectralField leray_project(const SpectralField& v);

/// max over xi != 0 of |xi . uhat(xi)|, as a diagnostic of divergence.
double divergence_defect(const SpectralField& v);

/// Two-thirds rule: zero every coefficient with max(|k1|, |k2|) > N/3.
/// Idempotent; also re-zeroes the Nyquist row.
SpectralField dealias(const SpectralField& f);
void dealias_inplace(SpectralField& f);
bool mode_retained_by_dealias(const Grid& g, int i, int j);

/// d/dx_axis (axis 0 or 1): multiplier i*xi_axis, applied to one component.
SpectralField derivative(const SpectralField& f, int axis);

/// div tau for a symmetric tensor: (div tau)_j = i xi_k tauhat^{jk}.
SpectralField tensor_divergence(const SpectralField& tau);

/// Mean (xi = 0) magnitude relative to the field's L2 size; used by the
/// zero-mean guards.
double relative_mean(const SpectralField& f);

/// Zero-mean precondition used by negative-order multipliers and shell
/// norms. The tolerance is loose (1%) because nonlinear evolution generates
/// tiny mean components in tau through Q; see the guard comment in the
/// implementation.
void require_zero_mean(const SpectralField& f, const char* who);

}  // namespace oldroyd
