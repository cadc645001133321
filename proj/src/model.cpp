#include "oldroyd/model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oldroyd/spectral_ops.hpp"

namespace oldroyd {

void ModelParams::validate() const {
  if (!(a >= 0.0 && a <= 1.0))
    throw std::invalid_argument("ModelParams: a must be in [0, 1]");
  if (!(beta >= 0.5 && beta < 1.0))
    throw std::invalid_argument("ModelParams: beta must be in [1/2, 1)");
  if (!(b >= -1.0 && b <= 1.0))
    throw std::invalid_argument("ModelParams: b must be in [-1, 1]");
  if (grid.n < 4) throw std::invalid_argument("ModelParams: grid not set");
}

SimState zero_state(const Grid& g) {
  return SimState{SpectralField(g, Rank::vector), SpectralField(g, Rank::symtensor),
                  0.0};
}

SpectralField deformation(const SpectralField& u) {
  if (u.rank() != Rank::vector)
    throw std::invalid_argument("deformation: vector field required");
  const Grid& g = u.grid();
  SpectralField d(g, Rank::symtensor);
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const Complex u1 = u.at(0, i, j);
      const Complex u2 = u.at(1, i, j);
      d.at(0, i, j) = Complex{0.0, x1} * u1;
      d.at(1, i, j) = Complex{0.0, 0.5} * (x2 * u1 + x1 * u2);
      d.at(2, i, j) = Complex{0.0, x2} * u2;
    }
  }
  return d;
}

SpectralField vorticity(const SpectralField& u) {
  if (u.rank() != Rank::vector)
    throw std::invalid_argument("vorticity: vector field required");
  const Grid& g = u.grid();
  SpectralField w(g, Rank::scalar);
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      w.at(0, i, j) = Complex{0.0, 0.5} * (x1 * u.at(1, i, j) - x2 * u.at(0, i, j));
    }
  }
  return w;
}

ModelEngine::ModelEngine(const Grid& grid) : grid_(grid), fft_(grid) {}
ModelEngine::~ModelEngine() = default;

namespace {

void check_finite(const SpectralField& f, const char* what, double t) {
  if (!f.all_finite())
    throw std::runtime_error(std::string("rhs: non-finite value in ") + what +
                             " at t = " + std::to_string(t));
}

}  // namespace

SpectralField ModelEngine::q_bilinear(const SpectralField& u,
                                      const SpectralField& tau, double b) const {
  const Grid& g = grid_;
  const std::size_t m = g.size();

  // grad u in physical space.
  std::vector<double> d1u1(m), d2u1(m), d1u2(m), d2u2(m);
  fft_.component_inverse(derivative(u, 0).comp(0), d1u1);
  fft_.component_inverse(derivative(u, 1).comp(0), d2u1);
  fft_.component_inverse(derivative(u, 0).comp(1), d1u2);
  fft_.component_inverse(derivative(u, 1).comp(1), d2u2);

  PhysicalField tp = fft_.transform_inverse(tau);
  auto txx = tp.comp(0);
  auto txy = tp.comp(1);
  auto tyy = tp.comp(2);

  PhysicalField q(g, Rank::symtensor);
  auto qxx = q.comp(0);
  auto qxy = q.comp(1);
  auto qyy = q.comp(2);
  for (std::size_t k = 0; k < m; ++k) {
    const double w = 0.5 * (d1u2[k] - d2u1[k]);
    const double dxx = d1u1[k];
    const double dyy = d2u2[k];
    const double dxy = 0.5 * (d1u2[k] + d2u1[k]);
    // tau Omega - Omega tau with Omega = [[0, w], [-w, 0]]
    const double axx = -2.0 * w * txy[k];
    const double axy = w * (txx[k] - tyy[k]);
    const double ayy = 2.0 * w * txy[k];
    // D tau + tau D, generic symmetric D
    const double bxx = 2.0 * (dxx * txx[k] + dxy * txy[k]);
    const double bxy = dxy * (txx[k] + tyy[k]) + txy[k] * (dxx + dyy);
    const double byy = 2.0 * (dxy * txy[k] + dyy * tyy[k]);
    qxx[k] = axx - b * bxx;
    qxy[k] = axy - b * bxy;
    qyy[k] = ayy - b * byy;
  }

  SpectralField out = fft_.transform_forward(q);
  dealias_inplace(out);
  return out;
}

SpectralField ModelEngine::transport(const SpectralField& u,
                                     const SpectralField& f) const {
  if (u.rank() != Rank::vector)
    throw std::invalid_argument("transport: vector advecting field required");
  const Grid& g = grid_;
  const std::size_t m = g.size();
  std::vector<double> u1(m), u2(m), da(m), db(m), prod(m);
  fft_.component_inverse(u.comp(0), u1);
  fft_.component_inverse(u.comp(1), u2);

  SpectralField out(g, f.rank());
  for (int c = 0; c < f.components(); ++c) {
    fft_.component_inverse(derivative(f, 0).comp(c), da);
    fft_.component_inverse(derivative(f, 1).comp(c), db);
    for (std::size_t k = 0; k < m; ++k) prod[k] = u1[k] * da[k] + u2[k] * db[k];
    fft_.component_forward(prod, out.comp(c));
  }
  dealias_inplace(out);
  return out;
}

ModelEngine::Rhs ModelEngine::rhs_nonstiff(const SimState& s, const ModelParams& p,
                                           bool linear_only) const {
  SpectralField du = leray_project(tensor_divergence(s.tau));
  SpectralField dtau = deformation(s.u);

  if (!linear_only) {
    du -= leray_project(transport(s.u, s.u));
    dtau -= transport(s.u, s.tau);
    dtau -= q_bilinear(s.u, s.tau, p.b);
    dealias_inplace(du);
    dealias_inplace(dtau);
  }

  check_finite(du, "du", s.t);
  check_finite(dtau, "dtau", s.t);
  return {std::move(du), std::move(dtau)};
}

ModelEngine::Rhs ModelEngine::rhs(const SimState& s, const ModelParams& p) const {
  Rhs r = rhs_nonstiff(s, p, /*linear_only=*/false);
  const double beta2 = 2.0 * p.beta;
  const double a = p.a;
  const Grid& g = grid_;
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const double r2 = x1 * x1 + x2 * x2;
      const double lam = a + (r2 == 0.0 ? 0.0 : std::pow(r2, 0.5 * beta2));
      for (int c = 0; c < 3; ++c) r.dtau.at(c, i, j) -= lam * s.tau.at(c, i, j);
    }
  }
  return r;
}

ModelEngine::Rhs ModelEngine::linearize_rhs(const SimState& s,
                                            const ModelParams& p) const {
  Rhs r = rhs_nonstiff(s, p, /*linear_only=*/true);
  const double beta2 = 2.0 * p.beta;
  const Grid& g = grid_;
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const double r2 = x1 * x1 + x2 * x2;
      const double lam = p.a + (r2 == 0.0 ? 0.0 : std::pow(r2, 0.5 * beta2));
      for (int c = 0; c < 3; ++c) r.dtau.at(c, i, j) -= lam * s.tau.at(c, i, j);
    }
  }
  return r;
}

double ModelEngine::max_velocity(const SimState& s) const {
  PhysicalField up = fft_.transform_inverse(s.u);
  auto u1 = up.comp(0);
  auto u2 = up.comp(1);
  double m = 0.0;
  for (std::size_t k = 0; k < u1.size(); ++k)
    m = std::max(m, std::hypot(u1[k], u2[k]));
  return m;
}

}  // namespace oldroyd
