#include "oldroyd/oracle.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "oldroyd/dyadic.hpp"
#include "oldroyd/spectral_ops.hpp"

namespace oldroyd {

Mat4 ModeSystem::generator() const {
  Mat4 g{};
  const double r = std::hypot(xi1, xi2);
  if (r == 0.0) {
    const Complex lam{-a, 0.0};
    g[5] = lam;
    g[10] = lam;
    g[15] = lam;
    return g;
  }
  const double n1 = xi1 / r;
  const double n2 = xi2 / r;
  const double lam = a + std::pow(r * r, beta);
  const Complex irn12{0.0, r * n1 * n2};
  const Complex irdiff{0.0, r * (n1 * n1 - n2 * n2)};

  // Row 0: d/dt u_perp = i |xi| [ -n1 n2 txx + (n1^2 - n2^2) txy + n1 n2 tyy ]
  g[1] = -irn12;
  g[2] = irdiff;
  g[3] = irn12;
  // Rows 1..3: d/dt tau = -lam tau + D(u_perp e_perp)
  g[4] = -irn12;
  g[5] = Complex{-lam, 0.0};
  g[8] = 0.5 * irdiff;
  g[10] = Complex{-lam, 0.0};
  g[12] = irn12;
  g[15] = Complex{-lam, 0.0};
  return g;
}

Vec4 mode_propagator(double xi1, double xi2, double a, double beta, double t,
                     const Vec4& v0) {
  if (!(t >= 0.0)) throw std::invalid_argument("mode_propagator: t must be >= 0");
  if (t == 0.0) return v0;
  const Mat4 g = ModeSystem{xi1, xi2, a, beta}.generator();
  Eigen::Matrix4cd m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = g[4 * r + c];
  const Eigen::Matrix4cd e = (t * m).exp();
  Eigen::Vector4cd v(v0[0], v0[1], v0[2], v0[3]);
  Eigen::Vector4cd w = e * v;
  return {w(0), w(1), w(2), w(3)};
}

SimState linear_field_propagate(const SimState& s, double a, double beta, double t) {
  const Grid& g = s.u.grid();
  SimState out = s;
  out.u = leray_project(out.u);
  out.t = s.t + t;
  if (t == 0.0) return out;

  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const double r = std::hypot(x1, x2);
      if (r == 0.0) {
        const double e = std::exp(-a * t);
        for (int c = 0; c < 3; ++c) out.tau.at(c, i, j) *= e;
        continue;
      }
      const double n1 = x1 / r;
      const double n2 = x2 / r;
      const Complex up = -n2 * out.u.at(0, i, j) + n1 * out.u.at(1, i, j);
      Vec4 v{up, out.tau.at(0, i, j), out.tau.at(1, i, j), out.tau.at(2, i, j)};
      if (std::abs(v[0]) == 0.0 && std::abs(v[1]) == 0.0 &&
          std::abs(v[2]) == 0.0 && std::abs(v[3]) == 0.0)
        continue;
      v = mode_propagator(x1, x2, a, beta, t, v);
      out.u.at(0, i, j) = -n2 * v[0];
      out.u.at(1, i, j) = n1 * v[0];
      out.tau.at(0, i, j) = v[1];
      out.tau.at(1, i, j) = v[2];
      out.tau.at(2, i, j) = v[3];
    }
  }
  return out;
}

Profile Profile::flat(double eta, double value) {
  if (!(eta > 0.0)) throw std::invalid_argument("Profile::flat: eta must be > 0");
  return Profile{[value](double) { return value; }, eta};
}

Profile Profile::plateau(double r_plateau, double eta, double value) {
  if (!(0.0 < r_plateau && r_plateau < eta))
    throw std::invalid_argument("Profile::plateau: need 0 < r_plateau < eta");
  return Profile{[=](double r) {
                   return value * smooth_step((eta - r) / (eta - r_plateau));
                 },
                 eta};
}

namespace {

struct GslFn {
  std::function<double(double)> f;
  static double call(double x, void* p) {
    return static_cast<GslFn*>(p)->f(x);
  }
};

// Adaptive GK61 on [lo, hi]; throws on non-convergence.
double quad(const std::function<double(double)>& f, double lo, double hi,
            double epsrel) {
  if (hi <= lo) return 0.0;
  static thread_local gsl_integration_workspace* ws =
      gsl_integration_workspace_alloc(4096);
  GslFn fn{f};
  gsl_function gf;
  gf.function = &GslFn::call;
  gf.params = &fn;
  double result = 0.0, abserr = 0.0;
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  int status = gsl_integration_qag(&gf, lo, hi, 0.0, epsrel, 4096,
                                   GSL_INTEG_GAUSS61, ws, &result, &abserr);
  if (status == GSL_EROUND)
    status = gsl_integration_qag(&gf, lo, hi, 0.0, 100.0 * epsrel, 4096,
                                 GSL_INTEG_GAUSS61, ws, &result, &abserr);
  gsl_set_error_handler(old);
  if (status != GSL_SUCCESS)
    throw std::runtime_error("quadrature non-convergence");
  return result;
}

}  // namespace

double linear_decay_integral(const Profile& p, double s1, double beta, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("linear_decay_integral: t >= 0");
  if (!(s1 >= 0.0)) throw std::invalid_argument("linear_decay_integral: s1 >= 0");
  auto integrand = [&](double r) {
    const double w = s1 == 0.0 ? 1.0 : std::pow(r, 2.0 * s1);
    return r * w * std::exp(-2.0 * t * std::pow(r, 2.0 * beta)) * p.density(r);
  };
  // Split at the decay scale so the adaptive rule sees the peak even when it
  // is far inside [0, eta].
  double split = p.eta;
  if (t > 0.0) split = std::min(p.eta, 4.0 * std::pow(0.5 / t, 0.5 / beta));
  const double a = quad(integrand, 0.0, split, 1e-10);
  const double b = quad(integrand, split, p.eta, 1e-10);
  return kTwoPi * (a + b);
}

double trtau_linear_decay(const Profile& p, double a, double beta, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("trtau_linear_decay: t >= 0");
  return std::exp(-a * t) * std::sqrt(linear_decay_integral(p, 0.0, beta, t));
}

namespace {

// Golden-section maximization of f on [lo, hi] (f unimodal there).
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  double* arg) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  if (arg) *arg = xm;
  return f(xm);
}

// Log-spaced scan followed by golden-section refinement around the best
// sample; handles suprema attained at a domain endpoint.
double scan_max(const std::function<double(double)>& f, double lo, double hi,
                double* arg) {
  const int n = 400;
  const double llo = std::log(lo), lhi = std::log(hi);
  int best = 0;
  double fbest = -1.0;
  for (int i = 0; i <= n; ++i) {
    const double t = std::exp(llo + (lhi - llo) * i / n);
    const double v = f(t);
    if (v > fbest) {
      fbest = v;
      best = i;
    }
  }
  const double tl = std::exp(llo + (lhi - llo) * std::max(0, best - 1) / n);
  const double th = std::exp(llo + (lhi - llo) * std::min(n, best + 1) / n);
  return golden_max(f, tl, th, arg);
}

}  // namespace

DampingEnvelope damping_envelope(double a, double beta, const Profile& p) {
  if (!(a > 0.0 && a <= 1.0))
    throw std::invalid_argument("damping_envelope: a must be in (0, 1]");
  if (!(beta >= 0.5 && beta < 1.0))
    throw std::invalid_argument("damping_envelope: beta must be in [1/2, 1)");
  DampingEnvelope env;

  auto profile_fn = [&](double t) {
    return (1.0 - std::exp(-a * t)) * trtau_linear_decay(p, 0.0, beta, t);
  };
  env.profile_sup = scan_max(profile_fn, 1.0, 1e3 / a, &env.profile_argmax);

  const double ex = -0.5 / beta;
  auto pure_fn = [&](double t) {
    return (1.0 - std::exp(-a * t)) * std::pow(t, ex);
  };
  env.pure_sup = scan_max(pure_fn, 1e-8 / a, 1e3 / a, &env.pure_argmax);
  return env;
}

ConvolutionCheck convolution_bound_check(double s1, double s2, double t) {
  if (!(0.0 < s1 && s1 <= s2))
    throw std::invalid_argument("convolution_bound_check: need 0 < s1 <= s2");
  if (!(t > 0.0)) throw std::invalid_argument("convolution_bound_check: t > 0");
  ConvolutionCheck out;
  out.integral = quad(
      [&](double s) {
        return std::pow(1.0 + t - s, -s1) * std::pow(1.0 + s, -s2);
      },
      0.0, t, 1e-10);
  if (s2 > 1.0)
    out.envelope = std::pow(1.0 + t, -s1);
  else if (s2 == 1.0)
    out.envelope = std::pow(1.0 + t, -s1) * std::log(1.0 + t);
  else
    out.envelope = std::pow(1.0 + t, 1.0 - s1 - s2);
  out.ratio = out.integral / out.envelope;
  return out;
}

}  // namespace oldroyd
