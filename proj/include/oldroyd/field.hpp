#pragma once

#include <complex>
#include <span>
#include <vector>

#include "oldroyd/grid.hpp"

namespace oldroyd {

using Complex = std::complex<double>;

/// Tensor rank of a field. Component layout:
///   scalar     {f}
///   vector     {x, y}
///   symtensor  {xx, xy, yy}  (the three independent entries of a symmetric
///                             2x2 tensor; xy carries Frobenius weight 2)
enum class Rank { scalar = 1, vector = 2, symtensor = 3 };

inline int component_count(Rank r) { return static_cast<int>(r); }

/// Frobenius weight of component c: symtensor off-diagonal counts twice.
inline double component_weight(Rank r, int c) {
  return (r == Rank::symtensor && c == 1) ? 2.0 : 1.0;
}

/// Complex Fourier coefficients of a field on a periodic grid, stored per
/// component in FFT order. Convention: f(x) = sum_k fhat_k e^{i xi_k . x},
/// so ||f||_{L2}^2 = L^2 sum_k |fhat_k|^2.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const Grid& grid, Rank rank)
      : grid_(grid),
        rank_(rank),
        c_(grid.size() * component_count(rank), Complex{0.0, 0.0}) {}

  const Grid& grid() const { return grid_; }
  Rank rank() const { return rank_; }
  int components() const { return component_count(rank_); }

  Complex& at(int comp, int i, int j) { return c_[offset(comp) + grid_.at(i, j)]; }
  const Complex& at(int comp, int i, int j) const {
    return c_[offset(comp) + grid_.at(i, j)];
  }

  std::span<Complex> comp(int c) { return {c_.data() + offset(c), grid_.size()}; }
  std::span<const Complex> comp(int c) const {
    return {c_.data() + offset(c), grid_.size()};
  }

  std::span<Complex> raw() { return c_; }
  std::span<const Complex> raw() const { return c_; }

  bool same_layout(const SpectralField& o) const {
    return grid_ == o.grid_ && rank_ == o.rank_;
  }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) {
    return a += b;
  }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) {
    return a -= b;
  }
  friend SpectralField operator*(double s, SpectralField f) { return f *= s; }

  /// max_k |fhat_k| over all components.
  double max_abs() const;
  bool all_finite() const;

 private:
  std::size_t offset(int c) const { return static_cast<std::size_t>(c) * grid_.size(); }

  Grid grid_;
  Rank rank_ = Rank::scalar;
  std::vector<Complex> c_;
};

/// Real grid-point samples of a field, one array per component, row-major
/// with x index i and y index j matching the spectral layout.
class PhysicalField {
 public:
  PhysicalField() = default;
  PhysicalField(const Grid& grid, Rank rank)
      : grid_(grid), rank_(rank), v_(grid.size() * component_count(rank), 0.0) {}

  const Grid& grid() const { return grid_; }
  Rank rank() const { return rank_; }
  int components() const { return component_count(rank_); }

  double& at(int comp, int i, int j) { return v_[offset(comp) + grid_.at(i, j)]; }
  double at(int comp, int i, int j) const {
    return v_[offset(comp) + grid_.at(i, j)];
  }

  std::span<double> comp(int c) { return {v_.data() + offset(c), grid_.size()}; }
  std::span<const double> comp(int c) const {
    return {v_.data() + offset(c), grid_.size()};
  }

  double max_abs() const;

 private:
  std::size_t offset(int c) const { return static_cast<std::size_t>(c) * grid_.size(); }

  Grid grid_;
  Rank rank_ = Rank::scalar;
  std::vector<double> v_;
};

}  // namespace oldroyd
