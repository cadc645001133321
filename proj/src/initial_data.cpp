#include "oldroyd/initial_data.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "oldroyd/dyadic.hpp"
#include "oldroyd/fft.hpp"
#include "oldroyd/functionals.hpp"
#include "oldroyd/spectral_ops.hpp"

namespace oldroyd {

InitKind init_kind_from_string(const std::string& s) {
  if (s == "compact-fourier") return InitKind::compact_fourier;
  if (s == "random-besov") return InitKind::random_besov;
  if (s == "mean-nonzero") return InitKind::mean_nonzero;
  throw std::invalid_argument("unknown init kind: " + s);
}

std::string to_string(InitKind k) {
  switch (k) {
    case InitKind::compact_fourier: return "compact-fourier";
    case InitKind::random_besov: return "random-besov";
    case InitKind::mean_nonzero: return "mean-nonzero";
  }
  return "?";
}

double compact_cutoff(double r) { return smooth_step((2.0 - r) / 1.0); }

namespace {

SimState compact_fourier_state(double eps, const Grid& g) {
  SimState s = zero_state(g);
  // eps is the continuum Fourier amplitude (the transform with measure dx);
  // a torus coefficient is the continuum density divided by L^2, which keeps
  // the L2 norm of the data independent of the box size.
  const double amp = eps / (g.l * g.l);
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const double r = std::hypot(x1, x2);
      if (r == 0.0) continue;  // zero-mean variant
      const double chi = amp * compact_cutoff(r);
      if (chi == 0.0) continue;
      s.tau.at(0, i, j) = Complex{chi, 0.0};
      s.tau.at(2, i, j) = Complex{chi, 0.0};
      // u = i chi * xi_perp/|xi| is Hermitian (odd real direction times i)
      // and divergence-free by construction.
      s.u.at(0, i, j) = Complex{0.0, -x2 / r * chi};
      s.u.at(1, i, j) = Complex{0.0, x1 / r * chi};
    }
  }
  enforce_reality(s.u);
  enforce_reality(s.tau);
  return s;
}

SimState random_besov_state(double eps, std::uint64_t seed, const Grid& g) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SimState s = zero_state(g);
  // Fill every mode in deterministic order, then project (Hermitian
  // symmetry, Leray, Nyquist) and normalize.
  auto draw = [&] { return Complex{gauss(rng), gauss(rng)}; };
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const double r = std::hypot(x1, x2);
      const double shape = compact_cutoff(r);
      if (r == 0.0 || shape == 0.0) continue;
      s.u.at(0, i, j) = shape * draw();
      s.u.at(1, i, j) = shape * draw();
      for (int c = 0; c < 3; ++c) s.tau.at(c, i, j) = shape * draw();
    }
  }
  enforce_reality(s.u);
  enforce_reality(s.tau);
  s.u = leray_project(s.u);
  const double b = state_besov(s, -1.0);
  if (b > 0.0) {
    const double scale = eps / b;
    s.u *= scale;
    s.tau *= scale;
  }
  return s;
}

}  // namespace

SimState gen_initial_data(const InitSpec& spec, const Grid& grid) {
  if (!(spec.epsilon >= 0.0))
    throw std::invalid_argument("gen_initial_data: epsilon must be >= 0");
  if (spec.epsilon == 0.0) return zero_state(grid);

  switch (spec.kind) {
    case InitKind::compact_fourier:
      return compact_fourier_state(spec.epsilon, grid);
    case InitKind::random_besov:
      return random_besov_state(spec.epsilon, spec.seed, grid);
    case InitKind::mean_nonzero: {
      SimState s = compact_fourier_state(spec.epsilon, grid);
      // Continuum mean condition: integral of tau equals eps per diagonal
      // entry, i.e. a torus coefficient of eps / L^2.
      const double amp = spec.epsilon / (grid.l * grid.l);
      s.tau.at(0, 0, 0) += Complex{amp, 0.0};
      s.tau.at(2, 0, 0) += Complex{amp, 0.0};
      return s;
    }
  }
  throw std::logic_error("gen_initial_data: unreachable");
}

Profile compact_trtau_profile(double epsilon) {
  return Profile{[epsilon](double r) {
                   const double v = 2.0 * epsilon * compact_cutoff(r);
                   return v * v;
                 },
                 2.0};
}

Profile compact_state_profile(double epsilon) {
  return Profile{[epsilon](double r) {
                   const double chi = epsilon * compact_cutoff(r);
                   // |uhat|^2 = chi^2 (unit perp direction), tau diagonal
                   // contributes 2 chi^2.
                   return (r > 0.0 ? chi * chi : 0.0) + 2.0 * chi * chi;
                 },
                 2.0};
}

std::string smallness_warning(const SimState& s, double sobolev_s, double delta) {
  const double norm = state_sobolev(s, sobolev_s, Sobolev::inhomogeneous);
  if (norm <= delta) return {};
  std::ostringstream os;
  os << "WARNING: ||(u0,tau0)||_{H^" << sobolev_s << "} = " << norm
     << " exceeds the smallness gate delta = " << delta
     << "; the global small-data theory may not apply to this run";
  return os.str();
}

}  // namespace oldroyd
