#pragma once

#include <memory>

#include "oldroyd/fft.hpp"
#include "oldroyd/field.hpp"

namespace oldroyd {

/// Parameters of the inviscid Oldroyd-B system with fractional stress
/// diffusion:
///   u_t + (u.grad)u + grad P = div tau,           div u = 0
///   tau_t + (u.grad)tau + a tau + Q(grad u, tau) + Lambda^{2 beta} tau = D(u)
struct ModelParams {
  double a = 0.0;     // damping coefficient, [0, 1]
  double beta = 0.75; // fractional diffusion order, [1/2, 1)
  double b = 0.0;     // Q-form parameter, [-1, 1]
  Grid grid;

  void validate() const;
};

/// The pair (u, tau) at time t. u is a divergence-free vector field, tau a
/// symmetric tensor; both satisfy reality symmetry. Treated as an immutable
/// value between steps.
struct SimState {
  SpectralField u;
  SpectralField tau;
  double t = 0.0;
};

SimState zero_state(const Grid& g);

/// Deformation tensor D(u) = (grad u + (grad u)^T) / 2, spectrally:
/// Dhat^{jk} = (i/2)(xi_k uhat^j + xi_j uhat^k).
SpectralField deformation(const SpectralField& u);

/// Scalar vorticity omega = (d1 u2 - d2 u1) / 2; the vorticity tensor is
/// Omega = [[0, omega], [-omega, 0]], antisymmetric by construction.
SpectralField vorticity(const SpectralField& u);

/// Assembles the model right-hand side. Owns the transforms and the
/// physical-space scratch needed for the pseudo-spectral products.
class ModelEngine {
 public:
  explicit ModelEngine(const Grid& grid);
  ~ModelEngine();

  ModelEngine(const ModelEngine&) = delete;
  ModelEngine& operator=(const ModelEngine&) = delete;

  const Grid& grid() const { return grid_; }
  const TransformEngine& transforms() const { return fft_; }

  /// Q(grad u, tau) = tau Omega - Omega tau - b (D tau + tau D), evaluated
  /// pointwise in physical space, transformed back, dealiased.
  SpectralField q_bilinear(const SpectralField& u, const SpectralField& tau,
                           double b) const;

  /// (u . grad) f, pseudo-spectral, dealiased. u must be a vector field.
  SpectralField transport(const SpectralField& u, const SpectralField& f) const;

  struct Rhs {
    SpectralField du;
    SpectralField dtau;
  };

  /// Full right-hand side:
  ///   du   = P(-(u.grad)u + div tau)
  ///   dtau = -(u.grad)tau - a tau - Q - Lambda^{2 beta} tau + D(u)
  /// Both outputs dealiased; du is divergence-free.
  Rhs rhs(const SimState& s, const ModelParams& p) const;

  /// Linearized system: du = P(div tau), dtau = -a tau - Lambda^{2 beta} tau
  /// + D(u).
  Rhs linearize_rhs(const SimState& s, const ModelParams& p) const;

  /// rhs minus the stiff diagonal -(a + |xi|^{2 beta}) tau term; this is the
  /// part the integrating-factor stepper treats explicitly. With linear_only
  /// the transport and Q products are dropped.
  Rhs rhs_nonstiff(const SimState& s, const ModelParams& p,
                   bool linear_only) const;

  /// max over grid points of |u(x)| (Euclidean), for the CFL policy.
  double max_velocity(const SimState& s) const;

 private:
  Grid grid_;
  TransformEngine fft_;
};

}  // namespace oldroyd
