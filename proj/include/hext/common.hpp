#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hext {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTau = 2.0 * kPi;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Cross product of two plane vectors viewed as complex numbers.
inline double cross(Complex u, Complex v) {
  return u.real() * v.imag() - u.imag() * v.real();
}

/// Uniform samples psi_j = psi(e^{i t_j}) of a circle-to-plane map,
/// t_j = 2*pi*j/n. Carrier of primal candidates and reconstructed
/// extremal boundary functions.
class BoundaryFunction {
 public:
  explicit BoundaryFunction(std::vector<Complex> values)
      : values_(std::move(values)) {
    if (values_.size() < 8)
      throw std::invalid_argument("BoundaryFunction: need at least 8 samples");
    for (const Complex& v : values_)
      if (!is_finite(v))
        throw std::invalid_argument("BoundaryFunction: non-finite sample");
  }

  int size() const { return static_cast<int>(values_.size()); }
  double angle(int j) const { return kTau * j / size(); }
  const Complex& operator[](int j) const { return values_[j]; }
  const std::vector<Complex>& values() const { return values_; }

 private:
  std::vector<Complex> values_;
};

}  // namespace hext
