#include "oldroyd/dyadic.hpp"

#include <cmath>
#include <stdexcept>

#include "oldroyd/spectral_ops.hpp"

namespace oldroyd {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

namespace {

constexpr double kSupportLo = 3.0 / 4.0;
constexpr double kPlateauLo = 6.0 / 5.0;
constexpr double kPlateauHi = 3.0 / 2.0;
constexpr double kSupportHi = 8.0 / 3.0;

}  // namespace

double dyadic_bump(double r) {
  if (r <= kSupportLo || r >= kSupportHi) return 0.0;
  const double rise = smooth_step((r - kSupportLo) / (kPlateauLo - kSupportLo));
  const double fall = smooth_step((kSupportHi - r) / (kSupportHi - kPlateauHi));
  return rise * fall;
}

ShellBasis::ShellBasis(const Grid& grid) {
  const double r_min = grid.dk();
  const double r_max = grid.xi_max() * std::sqrt(2.0) + grid.dk();
  // Shell j touches radii in (3/4 * 2^j, 8/3 * 2^j).
  j_min_ = static_cast<int>(std::floor(std::log2(r_min / kSupportHi)));
  j_max_ = static_cast<int>(std::ceil(std::log2(r_max / kSupportLo)));
}

double ShellBasis::raw_sum(double r) const {
  double s = 0.0;
  for (int j = j_min_; j <= j_max_; ++j) s += dyadic_bump(std::ldexp(r, -j));
  return s;
}

double ShellBasis::weight(int j, double r) const {
  if (r <= 0.0) return 0.0;
  const double raw = dyadic_bump(std::ldexp(r, -j));
  if (raw == 0.0) return 0.0;
  return raw / raw_sum(r);
}

double ShellBasis::exclusive_plateau_lo(int j) { return std::ldexp(4.0 / 3.0, j); }
double ShellBasis::exclusive_plateau_hi(int j) { return std::ldexp(3.0 / 2.0, j); }

DyadicShells dyadic_decompose(const SpectralField& f) {
  const Grid& g = f.grid();
  ShellBasis basis(g);
  DyadicShells out;
  out.j_min = basis.j_min();
  out.shells.reserve(basis.j_max() - basis.j_min() + 1);
  for (int j = basis.j_min(); j <= basis.j_max(); ++j) {
    out.shells.push_back(apply_multiplier(f, [&](double x1, double x2) -> Complex {
      return {basis.weight(j, std::hypot(x1, x2)), 0.0};
    }));
  }
  return out;
}

std::vector<double> shell_l2_norms(const SpectralField& f, const ShellBasis& basis) {
  const Grid& g = f.grid();
  std::vector<double> sums(basis.j_max() - basis.j_min() + 1, 0.0);
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.xi(i);
    for (int j = 0; j < g.n; ++j) {
      const double x2 = g.xi(j);
      const double r = std::hypot(x1, x2);
      if (r == 0.0) continue;
      double mag_sq = 0.0;
      for (int c = 0; c < f.components(); ++c)
        mag_sq += component_weight(f.rank(), c) * std::norm(f.at(c, i, j));
      if (mag_sq == 0.0) continue;
      for (int sj = basis.j_min(); sj <= basis.j_max(); ++sj) {
        const double w = basis.weight(sj, r);
        if (w != 0.0) sums[sj - basis.j_min()] += w * w * mag_sq;
      }
    }
  }
  const double l2 = f.grid().l * f.grid().l;
  for (auto& s : sums) s = std::sqrt(l2 * s);
  return sums;
}

}  // namespace oldroyd
