#include "oldroyd/functionals.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "oldroyd/dyadic.hpp"
#include "oldroyd/spectral_ops.hpp"

namespace oldroyd {

namespace {

double weight_value(double r2, double p, double m) {
  double w = 1.0;
  if (p != 0.0) w *= std::pow(r2, p);       // |xi|^{2p}
  if (m != 0.0) w *= std::pow(1.0 + r2, m); // (1+|xi|^2)^m
  return w;
}

}  // namespace

double hybrid_norm_sq(const SpectralField& f, double p, double m) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const double r2 = x1 * x1 + x2 * x2;
      if (r2 == 0.0 && p != 0.0) continue;
      const double w = weight_value(r2, p, m);
      double mag = 0.0;
      for (int c = 0; c < f.components(); ++c)
        mag += component_weight(f.rank(), c) * std::norm(f.at(c, i, j));
      sum += w * mag;
    }
  }
  return g.l * g.l * sum;
}

double l2_norm(const SpectralField& f) { return std::sqrt(hybrid_norm_sq(f, 0.0, 0.0)); }

double l2_pairing(const SpectralField& f, const SpectralField& g) {
  if (!f.same_layout(g)) throw std::invalid_argument("l2_pairing: layout mismatch");
  double sum = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    const double w = component_weight(f.rank(), c);
    auto a = f.comp(c);
    auto b = g.comp(c);
    for (std::size_t k = 0; k < a.size(); ++k)
      sum += w * (a[k] * std::conj(b[k])).real();
  }
  const double l = f.grid().l;
  return l * l * sum;
}

double sobolev_norm(const SpectralField& f, double s, Sobolev kind) {
  if (kind == Sobolev::inhomogeneous) return std::sqrt(hybrid_norm_sq(f, 0.0, s));
  if (s < 0.0) require_zero_mean(f, "sobolev_norm homogeneous with s < 0");
  return std::sqrt(hybrid_norm_sq(f, s, 0.0));
}

double besov_2inf_norm(const SpectralField& f, double s) {
  require_zero_mean(f, "besov_2inf_norm");
  ShellBasis basis(f.grid());
  const auto norms = shell_l2_norms(f, basis);
  double best = 0.0;
  for (int j = basis.j_min(); j <= basis.j_max(); ++j)
    best = std::max(best, std::pow(2.0, j * s) * norms[j - basis.j_min()]);
  return best;
}

double cross_grad_inner(const SpectralField& u, const SpectralField& tau,
                        double p, double m) {
  if (u.rank() != Rank::vector || tau.rank() != Rank::symtensor)
    throw std::invalid_argument("cross_grad_inner: (vector, symtensor) required");
  const Grid& g = u.grid();
  double sum = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const double r2 = x1 * x1 + x2 * x2;
      if (r2 == 0.0) continue;  // D(u) vanishes at xi = 0
      const double w = weight_value(r2, p, m);
      const Complex u1 = u.at(0, i, j);
      const Complex u2 = u.at(1, i, j);
      const Complex dxx = Complex{0.0, x1} * u1;
      const Complex dxy = Complex{0.0, 0.5} * (x2 * u1 + x1 * u2);
      const Complex dyy = Complex{0.0, x2} * u2;
      const double fr =
          (dxx * std::conj(tau.at(0, i, j))).real() +
          2.0 * (dxy * std::conj(tau.at(1, i, j))).real() +
          (dyy * std::conj(tau.at(2, i, j))).real();
      sum -= w * fr;
    }
  }
  return g.l * g.l * sum;
}

double state_l2(const SimState& s) {
  return std::sqrt(hybrid_norm_sq(s.u, 0, 0) + hybrid_norm_sq(s.tau, 0, 0));
}

double state_sobolev(const SimState& s, double order, Sobolev kind) {
  const double a = sobolev_norm(s.u, order, kind);
  const double b = sobolev_norm(s.tau, order, kind);
  return std::sqrt(a * a + b * b);
}

double state_besov(const SimState& s, double order) {
  ShellBasis basis(s.u.grid());
  require_zero_mean(s.u, "state_besov");
  require_zero_mean(s.tau, "state_besov");
  const auto nu = shell_l2_norms(s.u, basis);
  const auto nt = shell_l2_norms(s.tau, basis);
  double best = 0.0;
  for (int j = basis.j_min(); j <= basis.j_max(); ++j) {
    const double block = std::hypot(nu[j - basis.j_min()], nt[j - basis.j_min()]);
    best = std::max(best, std::pow(2.0, j * order) * block);
  }
  return best;
}

double diff_norm(const SimState& a, const SimState& b, double alpha) {
  if (!a.u.same_layout(b.u) || !a.tau.same_layout(b.tau))
    throw std::invalid_argument("diff_norm: grid mismatch");
  const SpectralField du = a.u - b.u;
  const SpectralField dt = a.tau - b.tau;
  return std::sqrt(hybrid_norm_sq(du, alpha, 0.0) + hybrid_norm_sq(dt, alpha, 0.0));
}

double trtau_l2(const SimState& s) {
  const Grid& g = s.tau.grid();
  double sum = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      sum += std::norm(s.tau.at(0, i, j) + s.tau.at(2, i, j));
  return g.l * std::sqrt(sum);
}

double trtau_diff_l2(const SimState& a, const SimState& b) {
  if (!a.tau.same_layout(b.tau))
    throw std::invalid_argument("trtau_diff_l2: grid mismatch");
  const Grid& g = a.tau.grid();
  double sum = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const Complex d = (a.tau.at(0, i, j) + a.tau.at(2, i, j)) -
                        (b.tau.at(0, i, j) + b.tau.at(2, i, j));
      sum += std::norm(d);
    }
  return g.l * std::sqrt(sum);
}

double energy_E0(const SimState& st, const ModelParams& p, double k, double s) {
  const double norms = hybrid_norm_sq(st.u, 0, s) + hybrid_norm_sq(st.tau, 0, s);
  const double cross = cross_grad_inner(st.u, st.tau, 0.0, s - p.beta) +
                       cross_grad_inner(st.u, st.tau, p.beta - 1.0, 0.0);
  return norms + 2.0 * k * cross;
}

double dissipation_D0(const SimState& st, const ModelParams& p, double k, double s) {
  return 0.5 * k * hybrid_norm_sq(st.u, p.beta, s + 1.0 - 2.0 * p.beta) +
         hybrid_norm_sq(st.tau, p.beta, s);
}

double energy_Ebeta(const SimState& st, const ModelParams& p, double k) {
  const double b = p.beta;
  const double norms = hybrid_norm_sq(st.u, b, b) + hybrid_norm_sq(st.tau, b, b);
  return norms + 2.0 * k * cross_grad_inner(st.u, st.tau, 2.0 * b - 1.0, 1.0 - b);
}

double dissipation_Dbeta(const SimState& st, const ModelParams& p, double k) {
  const double b = p.beta;
  return 0.5 * k * hybrid_norm_sq(st.u, 2.0 * b, 1.0 - b) +
         hybrid_norm_sq(st.tau, 2.0 * b, b);
}

double energy_Ebar(const SimState& st, const ModelParams& p, double k, int theta,
                   double s) {
  if (theta != 0 && theta != 1)
    throw std::invalid_argument("energy_Ebar: theta must be 0 or 1");
  const double th = theta;
  const double norms =
      hybrid_norm_sq(st.u, th, s - th) + hybrid_norm_sq(st.tau, th, s - th);
  return norms + 2.0 * k * cross_grad_inner(st.u, st.tau, th, s - p.beta - th);
}

double dissipation_Dbar(const SimState& st, const ModelParams& p, double k,
                        int theta, double s) {
  if (theta != 0 && theta != 1)
    throw std::invalid_argument("dissipation_Dbar: theta must be 0 or 1");
  const double th = theta;
  return 0.5 * k * hybrid_norm_sq(st.u, th + 1.0, s - p.beta - th) +
         hybrid_norm_sq(st.tau, p.beta + th, s - th);
}

double energy_Etilde(const SimState& st, const ModelParams& p, double k, double s) {
  const double ap = 2.0 - 1.0 / p.beta;
  const double weight = std::pow(1.0 + st.t, ap);
  const double norms = hybrid_norm_sq(st.u, s, 0) + hybrid_norm_sq(st.tau, s, 0);
  return weight * norms + k * cross_grad_inner(st.u, st.tau, s - p.beta, 0.0);
}

double dissipation_Dtilde(const SimState& st, const ModelParams& p, double k,
                          double s) {
  const double ap = 2.0 - 1.0 / p.beta;
  const double weight = std::pow(1.0 + st.t, ap);
  return weight * hybrid_norm_sq(st.tau, s + p.beta, 0) +
         0.25 * k * hybrid_norm_sq(st.u, s - p.beta + 1.0, 0);
}

double lowfreq_mass(const SimState& s, double cutoff2, double theta) {
  if (!(cutoff2 >= 0.0)) throw std::invalid_argument("lowfreq_mass: bad cutoff");
  const Grid& g = s.u.grid();
  double sum = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const double r2 = x1 * x1 + x2 * x2;
      if (r2 > cutoff2) continue;
      if (r2 == 0.0 && theta != 0.0) continue;
      const double w = theta == 0.0 ? 1.0 : std::pow(r2, theta);
      double mag = std::norm(s.u.at(0, i, j)) + std::norm(s.u.at(1, i, j));
      mag += std::norm(s.tau.at(0, i, j)) + 2.0 * std::norm(s.tau.at(1, i, j)) +
             std::norm(s.tau.at(2, i, j));
      sum += w * mag;
    }
  }
  return g.l * g.l * sum;
}

double s1_cutoff2(double c2, double t, double beta) {
  return std::pow(c2 / (1.0 + t), 1.0 / beta);
}

double s0_cutoff2(double c2, double t) {
  // f = ln^3(e+t): f'/f = 3 / ((e+t) ln(e+t)).
  const double e = std::exp(1.0);
  return 2.0 * c2 * 3.0 / ((e + t) * std::log(e + t));
}

double grad_linf(const TransformEngine& fft, const SpectralField& f) {
  const Grid& g = f.grid();
  const std::size_t m = g.size();
  std::vector<double> mag(m, 0.0), buf(m);
  for (int c = 0; c < f.components(); ++c) {
    const double w = component_weight(f.rank(), c);
    for (int axis = 0; axis < 2; ++axis) {
      fft.component_inverse(derivative(f, axis).comp(c), buf);
      for (std::size_t k = 0; k < m; ++k) mag[k] += w * buf[k] * buf[k];
    }
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < m; ++k) worst = std::max(worst, mag[k]);
  return std::sqrt(worst);
}

std::string FunctionalReport::csv_header(const MonitorConfig& cfg) {
  std::ostringstream os;
  os << "t,l2";
  for (double s : cfg.s_list) os << ",hs(" << s << ")";
  for (double s : cfg.s_list) os << ",hdot(" << s << ")";
  os << ",besov_m1,besov_mhalf,E0,D0,E_beta,D_beta,Etilde,Dtilde"
     << ",Ebar0,Dbar0,Ebar1,Dbar1,s1_mass,s0_mass,trtau_l2,grad_linf"
     << ",max_u,div_defect_u";
  return os.str();
}

std::string FunctionalReport::csv_row() const {
  std::ostringstream os;
  os.precision(17);
  os << t << ',' << l2;
  for (double v : hs) os << ',' << v;
  for (double v : hdots) os << ',' << v;
  os << ',' << besov_m1 << ',' << besov_mhalf << ',' << e0 << ',' << d0 << ','
     << e_beta << ',' << d_beta << ',' << etilde << ',' << dtilde << ',' << ebar0
     << ',' << dbar0 << ',' << ebar1 << ',' << dbar1 << ',' << s1_mass << ','
     << s0_mass << ',' << trtau << ',' << gradlinf << ',' << max_u << ','
     << div_defect_u;
  return os.str();
}

FunctionalReport sample_report(const ModelEngine& eng, const SimState& st,
                               const ModelParams& p, const MonitorConfig& cfg) {
  FunctionalReport r;
  r.t = st.t;
  r.l2 = state_l2(st);
  for (double s : cfg.s_list) {
    r.hs.push_back(state_sobolev(st, s, Sobolev::inhomogeneous));
    r.hdots.push_back(state_sobolev(st, s, Sobolev::homogeneous));
  }
  // Mean-carrying states have no sensible homogeneous negative-order norm;
  // report NaN for those columns instead of failing the whole sample.
  try {
    r.besov_m1 = state_besov(st, -1.0);
    r.besov_mhalf = state_besov(st, -0.5);
  } catch (const std::invalid_argument&) {
    r.besov_m1 = r.besov_mhalf = std::numeric_limits<double>::quiet_NaN();
  }
  r.e0 = energy_E0(st, p, cfg.k, cfg.s);
  r.d0 = dissipation_D0(st, p, cfg.k, cfg.s);
  r.e_beta = energy_Ebeta(st, p, cfg.k);
  r.d_beta = dissipation_Dbeta(st, p, cfg.k);
  r.etilde = energy_Etilde(st, p, cfg.k, cfg.s);
  r.dtilde = dissipation_Dtilde(st, p, cfg.k, cfg.s);
  r.ebar0 = energy_Ebar(st, p, cfg.k, 0, cfg.s);
  r.dbar0 = dissipation_Dbar(st, p, cfg.k, 0, cfg.s);
  r.ebar1 = energy_Ebar(st, p, cfg.k, 1, cfg.s);
  r.dbar1 = dissipation_Dbar(st, p, cfg.k, 1, cfg.s);
  r.s1_mass = lowfreq_mass(st, s1_cutoff2(cfg.c2, st.t, p.beta), 0.0);
  r.s0_mass = lowfreq_mass(st, s0_cutoff2(cfg.c2, st.t), 0.0);
  r.trtau = trtau_l2(st);
  if (cfg.with_grad_linf)
    r.gradlinf = grad_linf(eng.transforms(), st.u) + grad_linf(eng.transforms(), st.tau);
  r.max_u = eng.max_velocity(st);
  r.div_defect_u = divergence_defect(st.u);
  return r;
}

}  // namespace oldroyd
