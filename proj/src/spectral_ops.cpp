#include "oldroyd/spectral_ops.hpp"

#include <cmath>
#include <string>

namespace oldroyd {

SpectralField fractional_laplacian(const SpectralField& f, double beta) {
  if (!(beta >= 0.5 && beta < 1.0))
    throw std::invalid_argument("fractional_laplacian: beta must be in [1/2, 1)");
  return lambda_s(f, 2.0 * beta);
}

double relative_mean(const SpectralField& f) {
  double mean_sq = 0.0;
  double total_sq = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    const double w = component_weight(f.rank(), c);
    auto s = f.comp(c);
    mean_sq += w * std::norm(s[0]);
    for (const auto& v : s) total_sq += w * std::norm(v);
  }
  if (total_sq == 0.0) return 0.0;
  return std::sqrt(mean_sq / total_sq);
}

void require_zero_mean(const SpectralField& f, const char* who) {
  // The exact-zero check would trip on simulation output: Q(grad u, tau) has
  // a nonzero integral, so tau picks up an O(eps^2) mean along nonlinear
  // trajectories. A mean carrying more than 1% of the L2 mass is treated as
  // a genuinely nonzero-mean field.
  if (relative_mean(f) > 1e-2)
    throw std::invalid_argument(std::string(who) + ": field must have zero mean");
}

SpectralField lambda_s(const SpectralField& f, double s) {
  if (s < 0.0) require_zero_mean(f, "lambda_s with s < 0");
  return apply_multiplier(f, [s](double x1, double x2) -> Complex {
    const double r2 = x1 * x1 + x2 * x2;
    if (r2 == 0.0) return {s == 0.0 ? 1.0 : 0.0, 0.0};
    return {std::pow(r2, 0.5 * s), 0.0};
  });
}

SpectralField leray_project(const SpectralField& v) {
  if (v.rank() != Rank::vector)
    throw std::invalid_argument("leray_project: vector field required");
  const Grid& g = v.grid();
  SpectralField out = v;
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const double r2 = x1 * x1 + x2 * x2;
      if (r2 == 0.0) continue;  // mean mode passes through
      const Complex dot = (x1 * out.at(0, i, j) + x2 * out.at(1, i, j)) / r2;
      out.at(0, i, j) -= x1 * dot;
      out.at(1, i, j) -= x2 * dot;
    }
  }
  return out;
}

double divergence_defect(const SpectralField& v) {
  if (v.rank() != Rank::vector)
    throw std::invalid_argument("divergence_defect: vector field required");
  const Grid& g = v.grid();
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      if (x1 == 0.0 && x2 == 0.0) continue;
      worst = std::max(worst,
                       std::abs(x1 * v.at(0, i, j) + x2 * v.at(1, i, j)));
    }
  }
  return worst;
}

bool mode_retained_by_dealias(const Grid& g, int i, int j) {
  const int k1 = std::abs(g.wavenumber(i));
  const int k2 = std::abs(g.wavenumber(j));
  return 3 * std::max(k1, k2) <= g.n && !g.is_nyquist(i) && !g.is_nyquist(j);
}

void dealias_inplace(SpectralField& f) {
  const Grid& g = f.grid();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      if (mode_retained_by_dealias(g, i, j)) continue;
      for (int c = 0; c < f.components(); ++c) f.at(c, i, j) = Complex{0.0, 0.0};
    }
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out = f;
  dealias_inplace(out);
  return out;
}

SpectralField derivative(const SpectralField& f, int axis) {
  if (axis != 0 && axis != 1)
    throw std::invalid_argument("derivative: axis must be 0 or 1");
  return apply_multiplier(f, [axis](double x1, double x2) -> Complex {
    return {0.0, axis == 0 ? x1 : x2};
  });
}

SpectralField tensor_divergence(const SpectralField& tau) {
  if (tau.rank() != Rank::symtensor)
    throw std::invalid_argument("tensor_divergence: symtensor field required");
  const Grid& g = tau.grid();
  SpectralField out(g, Rank::vector);
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const Complex ix1{0.0, x1}, ix2{0.0, x2};
      // (div tau)_1 = i xi_1 tau_xx + i xi_2 tau_xy
      out.at(0, i, j) = ix1 * tau.at(0, i, j) + ix2 * tau.at(1, i, j);
      // (div tau)_2 = i xi_1 tau_xy + i xi_2 tau_yy
      out.at(1, i, j) = ix1 * tau.at(1, i, j) + ix2 * tau.at(2, i, j);
    }
  }
  return out;
}

}  // namespace oldroyd
