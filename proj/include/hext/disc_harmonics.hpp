#pragma once

#include <cassert>

#include "hext/common.hpp"
#include "hext/convex_domain.hpp"

// Poisson extension of circle boundary data and the Fourier-moment
// functionals encoding value, conformality, and derivative of the
// extension at 0. All circle integrals use the uniform trapezoid rule,
// which is exact for trigonometric polynomials of degree < n-2.

namespace hext {

struct MomentVector {
  Complex A0;  // (1/2pi) int psi dt            -> f(0)
  Complex A1;  // (1/2pi) int e^{it} psi dt     -> f_zbar(0)
  double J;    // Re (1/2pi) int e^{-it} psi dt -> Re f_z(0)
};

inline MomentVector moments(const BoundaryFunction& psi) {
  const int n = psi.size();
  Complex a0 = 0.0, a1 = 0.0, j1 = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, psi.angle(j));
    a0 += psi[j];
    a1 += e * psi[j];
    j1 += psi[j] / e;
  }
  return {a0 / double(n), a1 / double(n), std::real(j1) / n};
}

/// Re (1/2pi) int V(t) psi(e^{it}) dt with V(t) = e^{-it} + a + lambda e^{it};
/// equals J(psi) + Re(a A0) + Re(lambda A1).
inline double weighted_moment(const BoundaryFunction& psi, Complex a,
                              Complex lambda) {
  const int n = psi.size();
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, psi.angle(j));
    sum += std::real((1.0 / e + a + lambda * e) * psi[j]);
  }
  const double direct = sum / n;
  const MomentVector m = moments(psi);
  const double via_moments =
      m.J + std::real(a * m.A0) + std::real(lambda * m.A1);
  assert(std::abs(direct - via_moments) <=
         1e-9 * (1.0 + std::abs(direct)) + 1e-12);
  (void)via_moments;
  return direct;
}

/// Poisson extension P[psi](z), |z| < 1, with the discrete kernel
/// P(z,t) = (1-|z|^2)/|e^{it}-z|^2 averaged over the sample grid.
inline Complex poisson_eval(const BoundaryFunction& psi, Complex z) {
  if (std::abs(z) >= 1.0)
    throw std::invalid_argument("poisson_eval: |z| < 1 required");
  const int n = psi.size();
  const double num = 1.0 - std::norm(z);
  Complex sum = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, psi.angle(j));
    sum += psi[j] * (num / std::norm(e - z));
  }
  return sum / double(n);
}

/// Maximum-principle check: P[psi] stays in closure(D) on a polar grid with
/// radii capped at 0.99. Throws if the boundary data itself leaves D.
inline bool containment_check(const BoundaryFunction& psi,
                              const ConvexDomain& D, int grid, double slack) {
  if (grid < 1) throw std::invalid_argument("containment_check: grid >= 1");
  for (int j = 0; j < psi.size(); ++j)
    if (!D.contains(psi[j], slack))
      throw std::invalid_argument(
          "containment_check: boundary data outside the domain");
  for (int i = 1; i <= grid; ++i) {
    const double r = 0.99 * i / grid;
    for (int k = 0; k < grid; ++k) {
      const Complex z = std::polar(r, kTau * k / grid);
      if (!D.contains(poisson_eval(psi, z), slack)) return false;
    }
  }
  return true;
}

}  // namespace hext
