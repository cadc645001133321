#pragma once

#include <cstddef>

namespace oldroyd {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Periodic N x N Fourier grid on [0, L)^2.
///
/// Integer wavenumbers follow FFT storage order (0, 1, ..., N/2-1, -N/2,
/// ..., -1) in each dimension; the physical wavevector is xi = (2*pi/L) * k.
/// The k = -N/2 row/column has no conjugate partner on an even grid and is
/// kept identically zero so that reality symmetry is exact.
struct Grid {
  int n = 0;
  double l = 0.0;

  double dk() const { return kTwoPi / l; }
  double dx() const { return l / n; }

  int wavenumber(int i) const { return i < n / 2 ? i : i - n; }
  double xi(int i) const { return dk() * wavenumber(i); }
  bool is_nyquist(int i) const { return i == n / 2; }

  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  std::size_t at(int i, int j) const {
    return static_cast<std::size_t>(i) * n + j;
  }

  /// Largest |xi| representable after the Nyquist row is dropped.
  double xi_max() const { return dk() * (n / 2 - 1); }

  bool operator==(const Grid&) const = default;
};

/// Validates N (even, >= 4) and L > 0.
Grid make_grid(int n, double l);

}  // namespace oldroyd
