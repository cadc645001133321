#pragma once

#include <cstdint>
#include <string>

#include "oldroyd/model.hpp"
#include "oldroyd/oracle.hpp"

namespace oldroyd {

enum class InitKind { compact_fourier, random_besov, mean_nonzero };

InitKind init_kind_from_string(const std::string& s);
std::string to_string(InitKind k);

struct InitSpec {
  InitKind kind = InitKind::compact_fourier;
  double epsilon = 1e-3;
  std::uint64_t seed = 1;
};

/// Deterministic initial states. All outputs are divergence-free,
/// reality-symmetric and Nyquist-free.
///
///  compact-fourier : smooth compactly supported spectral profiles in the
///      continuum normalization (fhat(xi) = integral e^{-i x xi} f dx, i.e.
///      torus coefficient = density / L^2):
///      tauhat_xx = tauhat_yy = eps * chi(|xi|) (chi = 1 on |xi| <= 1,
///      mollified to 0 at |xi| = 2), tauhat_xy = 0, and
///      uhat = i eps chi(|xi|) xi_perp/|xi|; zero mean.
///  random-besov : seeded random coefficients under the same cutoff,
///      rescaled so the combined (torus) Bdot^{-1}_{2,inf} norm equals eps.
///  mean-nonzero : compact-fourier plus a xi = 0 component of continuum
///      size eps on the tau diagonal (integral of tau = eps per entry).
SimState gen_initial_data(const InitSpec& spec, const Grid& grid);

/// The radial cutoff used by the compact-fourier data.
double compact_cutoff(double r);

/// tr tau spectral density of the compact-fourier data, for the R^2 oracle:
/// rho(r) = |2 eps chi(r)|^2 on [0, 2].
Profile compact_trtau_profile(double epsilon);

/// Combined state spectral density |(uhat0, tauhat0)|^2 of the
/// compact-fourier data (Frobenius weights).
Profile compact_state_profile(double epsilon);

/// Returns a non-empty warning when ||(u0, tau0)||_{H^s} exceeds delta.
/// The smallness threshold of the global theory is non-constructive, so this
/// is a heuristic gate: runs proceed, flagged.
std::string smallness_warning(const SimState& s, double sobolev_s, double delta);

}  // namespace oldroyd
