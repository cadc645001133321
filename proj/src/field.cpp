#include "oldroyd/field.hpp"

#include <cmath>
#include <stdexcept>

namespace oldroyd {

namespace {
void check_layout(const SpectralField& a, const SpectralField& b, const char* op) {
  if (!a.same_layout(b))
    throw std::invalid_argument(std::string(op) + ": field layout mismatch");
}
}  // namespace

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  check_layout(*this, o, "operator+=");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  check_layout(*this, o, "operator-=");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

bool SpectralField::all_finite() const {
  for (const auto& v : c_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double PhysicalField::max_abs() const {
  double m = 0.0;
  for (double v : v_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace oldroyd
