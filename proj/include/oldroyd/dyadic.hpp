#pragma once

#include <vector>

#include "oldroyd/field.hpp"

namespace oldroyd {

/// C-infinity step: 0 for t <= 0, 1 for t >= 1 (mollified-step construction).
double smooth_step(double t);

/// The fixed radial Littlewood-Paley bump: smooth, supported in
/// [3/4, 8/3], identically 1 on [6/5, 3/2], built from the standard
/// mollified-step construction. Before renormalization the dyadic
/// translates phi(2^{-j} r) cover every r > 0 with at most two shells
/// touching each point.
double dyadic_bump(double r);

/// Pointwise-renormalized shell weights on a grid: for every nonzero grid
/// wavevector, sum_j weight_j(xi) = 1 exactly and shells two apart have
/// disjoint support. The xi = 0 mode belongs to no shell.
class ShellBasis {
 public:
  explicit ShellBasis(const Grid& grid);

  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }

  /// Renormalized weight of shell j at radius r (grid radii only).
  double weight(int j, double r) const;

  /// Sub-annulus of shell j on which it is the only nonzero shell:
  /// [4/3 * 2^j, 3/2 * 2^j].
  static double exclusive_plateau_lo(int j);
  static double exclusive_plateau_hi(int j);

 private:
  double raw_sum(double r) const;

  int j_min_ = 0;
  int j_max_ = -1;
};

/// Homogeneous dyadic blocks of a field. Shell j holds the coefficients of
/// f multiplied by the renormalized weight; summing all shells reproduces f
/// minus its mean mode.
struct DyadicShells {
  int j_min = 0;
  std::vector<SpectralField> shells;  // shells[j - j_min]

  int j_max() const { return j_min + static_cast<int>(shells.size()) - 1; }
  const SpectralField& shell(int j) const { return shells[j - j_min]; }
};

DyadicShells dyadic_decompose(const SpectralField& f);

/// L2 norms of every dyadic block, without materializing the blocks.
/// Result[j - j_min] = ||Delta_j f||_{L2}.
std::vector<double> shell_l2_norms(const SpectralField& f, const ShellBasis& basis);

}  // namespace oldroyd
