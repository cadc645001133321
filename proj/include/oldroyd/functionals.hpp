#pragma once

#include <string>
#include <vector>

#include "oldroyd/model.hpp"

namespace oldroyd {

enum class Sobolev { homogeneous, inhomogeneous };

/// ||f||_{L2} under the Parseval convention: L^2 sum_k w_c |fhat|^2, with
/// Frobenius component weights.
double l2_norm(const SpectralField& f);

/// L^2 sum |xi|^{2p} (1 + |xi|^2)^m |fhat|^2: the shared backbone of every
/// Sobolev-type norm here. Nonzero p skips the mean mode.
double hybrid_norm_sq(const SpectralField& f, double p, double m);

/// Real L2 pairing <f, g> = L^2 sum_k w_c Re(fhat conj(ghat)) with Frobenius
/// component weights.
double l2_pairing(const SpectralField& f, const SpectralField& g);

/// H^s (inhomogeneous) or Lambda^s L2 (homogeneous) norm. Homogeneous with
/// s < 0 requires a zero-mean field.
double sobolev_norm(const SpectralField& f, double s, Sobolev kind);

/// Besov Bdot^s_{2,inf}: sup_j 2^{js} ||Delta_j f||_{L2}. Requires zero mean.
double besov_2inf_norm(const SpectralField& f, double s);

/// <-grad u, tau> with spectral weight |xi|^{2p} (1 + |xi|^2)^m; equals
/// -<D(u), tau> in the Frobenius pairing because tau is symmetric.
/// p = beta - 1, m = 0 gives the low-order coupling term
/// <tau, -Lambda^{-2+2 beta} grad u> of the a = 0 energy.
double cross_grad_inner(const SpectralField& u, const SpectralField& tau,
                        double p, double m);

/// Combined state norms: sqrt(||u||^2 + ||tau||^2) in the requested space.
double state_l2(const SimState& s);
double state_sobolev(const SimState& s, double order, Sobolev kind);
double state_besov(const SimState& s, double order);

/// ||Lambda^alpha (u_A - u_B, tau_A - tau_B)||_{L2}; alpha = 0 is the plain
/// L2 difference.
double diff_norm(const SimState& a, const SimState& b, double alpha);

/// ||tr tau||_{L2} and ||tr(tau_A - tau_B)||_{L2}.
double trtau_l2(const SimState& s);
double trtau_diff_l2(const SimState& a, const SimState& b);

// ---------------------------------------------------------------------------
// Energy / dissipation functionals. k is the small coupling constant, s the
// monitored Sobolev index.
// ---------------------------------------------------------------------------

/// E0 = ||(u,tau)||_{H^s}^2 + 2k(<-grad u, tau>_{H^{s-beta}} +
///      <tau, -Lambda^{-2+2beta} grad u>)
/// D0 = (k/2) ||Lambda^beta u||_{H^{s+1-2beta}}^2 + ||Lambda^beta tau||_{H^s}^2
double energy_E0(const SimState& st, const ModelParams& p, double k, double s);
double dissipation_D0(const SimState& st, const ModelParams& p, double k, double s);

/// E_beta / D_beta of the beta-order estimate (critical-case functionals):
/// E_beta = ||Lambda^beta (u,tau)||_{H^beta}^2
///          + 2k <-Lambda^{2beta-1} grad u, Lambda^{2beta-1} tau>_{H^{1-beta}}
/// D_beta = (k/2) ||grad Lambda^{2beta-1} u||_{H^{1-beta}}^2
///          + ||Lambda^{2beta} tau||_{H^beta}^2
double energy_Ebeta(const SimState& st, const ModelParams& p, double k);
double dissipation_Dbeta(const SimState& st, const ModelParams& p, double k);

/// Ebar_theta / Dbar_theta (theta = 0 or 1), the uniform-in-a functionals:
/// Ebar = ||Lambda^theta (u,tau)||_{H^{s-theta}}^2
///        + 2k <-grad Lambda^theta u, Lambda^theta tau>_{H^{s-beta-theta}}
/// Dbar = (k/2) ||grad Lambda^theta u||_{H^{s-beta-theta}}^2
///        + ||Lambda^{beta+theta} tau||_{H^{s-theta}}^2
double energy_Ebar(const SimState& st, const ModelParams& p, double k, int theta,
                   double s);
double dissipation_Dbar(const SimState& st, const ModelParams& p, double k,
                        int theta, double s);

/// Time-weighted functionals with a' = 2 - 1/beta:
/// Etilde_s = (1+t)^{a'} ||Lambda^s (u,tau)||^2
///            + k <Lambda^{s-beta} tau, -grad Lambda^{s-beta} u>
/// Dtilde_s = (1+t)^{a'} ||Lambda^{s+beta} tau||^2
///            + (k/4) ||grad Lambda^{s-beta} u||^2
double energy_Etilde(const SimState& st, const ModelParams& p, double k, double s);
double dissipation_Dtilde(const SimState& st, const ModelParams& p, double k,
                          double s);

// ---------------------------------------------------------------------------
// Fourier-splitting masses.
// ---------------------------------------------------------------------------

/// Sum over grid modes with |xi|^2 <= cutoff2 of |xi|^{2 theta}
/// (|uhat|^2 + |tauhat|^2) L^2. The xi = 0 mode is inside every nonnegative
/// cutoff.
double lowfreq_mass(const SimState& s, double cutoff2, double theta);

/// S1(t) = {|xi|^{2beta} <= C2 / (1+t)} expressed as a cutoff on |xi|^2.
double s1_cutoff2(double c2, double t, double beta);

/// S0(t) = {|xi|^2 <= 2 C2 f'(t)/f(t)}, f(t) = ln^3(e + t).
double s0_cutoff2(double c2, double t);

/// ||grad f||_{L^infty}: max over grid points of the Frobenius magnitude of
/// the gradient of every component.
double grad_linf(const TransformEngine& fft, const SpectralField& f);

// ---------------------------------------------------------------------------
// Sampled monitor values.
// ---------------------------------------------------------------------------

struct MonitorConfig {
  double k = 0.01;
  double s = 1.85;  // defaults to 1 + beta + 0.1 via Scenario
  double c2 = 4.0;
  std::vector<double> s_list = {1.0};  // extra H^s / Hdot^s columns
  bool with_grad_linf = true;
};

/// One row of monitored values at a sample time. Column order is fixed by
/// csv_header().
struct FunctionalReport {
  double t = 0.0;
  double l2 = 0.0;
  std::vector<double> hs;     // per MonitorConfig::s_list
  std::vector<double> hdots;  // per MonitorConfig::s_list
  double besov_m1 = 0.0;
  double besov_mhalf = 0.0;
  double e0 = 0.0, d0 = 0.0;
  double e_beta = 0.0, d_beta = 0.0;
  double etilde = 0.0, dtilde = 0.0;
  double ebar0 = 0.0, dbar0 = 0.0;
  double ebar1 = 0.0, dbar1 = 0.0;
  double s1_mass = 0.0;
  double s0_mass = 0.0;
  double trtau = 0.0;
  double gradlinf = 0.0;
  double max_u = 0.0;
  double div_defect_u = 0.0;

  static std::string csv_header(const MonitorConfig& cfg);
  std::string csv_row() const;
};

FunctionalReport sample_report(const ModelEngine& eng, const SimState& st,
                               const ModelParams& p, const MonitorConfig& cfg);

}  // namespace oldroyd
