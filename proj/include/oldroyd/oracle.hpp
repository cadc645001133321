#pragma once

#include <array>
#include <functional>

#include "oldroyd/model.hpp"

namespace oldroyd {

using Vec4 = std::array<Complex, 4>;
using Mat4 = std::array<Complex, 16>;  // row-major 4x4

/// One Fourier mode of the linearized system, reduced to 4 degrees of
/// freedom (u_perp, tau_xx, tau_xy, tau_yy), where u_perp is the velocity
/// amplitude along xi_perp / |xi| (the compressible component is identically
/// zero after Leray projection). The generator's velocity row carries the
/// projected div tau coupling; its tau block is -(|xi|^{2 beta} + a) I plus
/// the D(u) coupling. At xi = 0 the velocity is frozen and tau decays at
/// rate a.
struct ModeSystem {
  double xi1 = 0.0, xi2 = 0.0;
  double a = 0.0, beta = 0.75;

  Mat4 generator() const;
};

/// exp(t * generator) * v0 via scaling-and-squaring matrix exponential.
Vec4 mode_propagator(double xi1, double xi2, double a, double beta, double t,
                     const Vec4& v0);

/// Exact linear evolution of a whole grid state: mode_propagator applied to
/// every wavevector. The velocity is Leray-projected first (its compressible
/// residue, if any, is discarded); the xi = 0 mode keeps u and damps tau by
/// e^{-a t}.
SimState linear_field_propagate(const SimState& s, double a, double beta, double t);

/// Radial spectral density rho(r) = |(uhat0, tauhat0)|^2 (r), nonnegative
/// with compact support [0, eta].
struct Profile {
  std::function<double(double)> density;
  double eta = 1.0;

  /// density = value on [0, eta].
  static Profile flat(double eta, double value);
  /// density = value on [0, r_plateau], mollified to zero at eta.
  static Profile plateau(double r_plateau, double eta, double value);
};

/// integral over R^2 of |xi|^{2 s1} e^{-2 |xi|^{2 beta} t} rho(|xi|) dxi,
/// by adaptive Gauss-Kronrod radial quadrature (relative tolerance 1e-10,
/// contract 1e-8). Throws on quadrature non-convergence.
double linear_decay_integral(const Profile& p, double s1, double beta, double t);

/// ( integral e^{-2 a t} e^{-2 |xi|^{2 beta} t} rho dxi )^{1/2}.
double trtau_linear_decay(const Profile& p, double a, double beta, double t);

struct DampingEnvelope {
  double profile_sup = 0.0;  // sup_{t >= 1} (1 - e^{-a t}) * profile decay norm
  double profile_argmax = 0.0;
  double pure_sup = 0.0;     // sup_{t > 0} (1 - e^{-a t}) t^{-1/(2 beta)}
  double pure_argmax = 0.0;
};

/// The vanishing-damping envelopes. The pure envelope is maximized directly
/// in t for each a (grid scan plus golden-section refinement), so its exact
/// scaling law pure_sup = a^{1/(2 beta)} * M_beta is measured, not assumed.
/// At beta = 1/2 the supremum is approached as t -> 0+; the search clamps at
/// a tiny positive t.
DampingEnvelope damping_envelope(double a, double beta, const Profile& p);

struct ConvolutionCheck {
  double integral = 0.0;  // integral_0^t (1+t-s)^{-s1} (1+s)^{-s2} ds
  double envelope = 0.0;  // the predicted bound for the (s1, s2) case
  double ratio = 0.0;
};

/// Time-convolution inequality: cases s2 > 1, s2 = 1 (log factor),
/// s2 < 1. Requires 0 < s1 <= s2.
ConvolutionCheck convolution_bound_check(double s1, double s2, double t);

}  // namespace oldroyd
