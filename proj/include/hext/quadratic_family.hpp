#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "hext/common.hpp"

// The quadratic q(z) = 1 + a z + lambda z^2 and the conformal map F with
// F(0) = 0, F'(z) = c / q(z). Zero-freeness of q on the closed disc is
// decided by the Schur-Cohn criterion; convexity of F(D) follows from the
// boundary behaviour of omega(z) = (p(z)-1)/(p(z)+1).

namespace hext {

struct SchurCohnVerdict {
  bool zero_free;
  double margin1;  // 1 - |lambda|
  double margin2;  // (1 - |lambda|^2) - |a - conj(a) lambda|
};

/// q has no zeros on the closed unit disc iff both margins are positive.
inline SchurCohnVerdict schur_cohn(Complex a, Complex lambda) {
  const double m1 = 1.0 - std::abs(lambda);
  const double m2 =
      (1.0 - std::norm(lambda)) - std::abs(a - std::conj(a) * lambda);
  return {m1 > 0.0 && m2 > 0.0, m1, m2};
}

struct FamilyParams {
  Complex a;
  Complex lambda;
  double c = 1.0;

  bool strictly_admissible() const {
    return c > 0.0 && schur_cohn(a, lambda).zero_free;
  }
};

inline Complex eval_q(const FamilyParams& fp, Complex z) {
  return 1.0 + fp.a * z + fp.lambda * z * z;
}

/// All zeros of q in the plane (0, 1, or 2), via the reciprocal polynomial
/// P(w) = w^2 + a w + lambda and w -> 1/w. Sorted by (modulus, argument).
inline std::vector<Complex> family_roots(Complex a, Complex lambda) {
  std::vector<Complex> roots;
  if (lambda == 0.0) {
    if (a != 0.0) roots.push_back(-1.0 / a);
  } else {
    // Stable quadratic formula for lambda z^2 + a z + 1 = 0.
    const Complex disc = std::sqrt(a * a - 4.0 * lambda);
    const Complex u = (std::real(std::conj(a) * disc) >= 0.0) ? -a - disc
                                                              : -a + disc;
    if (u == 0.0) {
      // a = 0 and lambda = -a^2/4 = 0 was handled above; here a^2 = 4 lambda,
      // double root.
      const Complex r = -a / (2.0 * lambda);
      roots = {r, r};
    } else {
      roots.push_back(u / (2.0 * lambda));
      roots.push_back(2.0 / u);
    }
  }
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    const double mx = std::abs(x), my = std::abs(y);
    if (mx != my) return mx < my;
    return std::arg(x) < std::arg(y);
  });
  return roots;
}

namespace detail {

struct GaussRule {
  std::array<double, 16> x;
  std::array<double, 16> w;
};

/// 16-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration.
inline const GaussRule& gauss16() {
  static const GaussRule rule = [] {
    GaussRule r{};
    const int n = 16;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      r.x[i] = x;
      r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

/// Composite 16-point Gauss-Legendre approximation of int 1/q along the
/// straight segment [z0, z1].
inline Complex gl_reciprocal_q(const FamilyParams& fp, Complex z0, Complex z1,
                               int panels) {
  const GaussRule& g = gauss16();
  const Complex dz = (z1 - z0) / static_cast<double>(panels);
  Complex total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const Complex a = z0 + static_cast<double>(p) * dz;
    Complex sum = 0.0;
    for (int k = 0; k < 16; ++k) {
      const Complex zeta = a + (g.x[k] + 1.0) * 0.5 * dz;
      sum += g.w[k] / eval_q(fp, zeta);
    }
    total += sum * dz * 0.5;
  }
  return total;
}

}  // namespace detail

/// int_{z0}^{z1} c/q(zeta) dzeta along the straight segment, panel-doubling
/// Gauss-Legendre until the successive-refinement estimate is below tol.
/// The integrand is analytic near the segment under strict Schur-Cohn, so
/// convergence is geometric.
inline Complex integrate_derivative(const FamilyParams& fp, Complex z0,
                                    Complex z1, double tol = 1e-10) {
  if (!fp.strictly_admissible())
    throw std::invalid_argument(
        "integrate_derivative: parameters fail strict Schur-Cohn (or c <= 0)");
  if (z0 == z1) return 0.0;
  Complex prev = detail::gl_reciprocal_q(fp, z0, z1, 1);
  for (int panels = 2; panels <= (1 << 14); panels *= 2) {
    const Complex cur = detail::gl_reciprocal_q(fp, z0, z1, panels);
    if (std::abs(cur - prev) <= tol / std::max(fp.c, 1.0)) return fp.c * cur;
    prev = cur;
  }
  throw std::runtime_error("integrate_derivative: quadrature did not converge");
}

/// F(z) = int_0^z c/q, F(0) = 0 exactly. Requires |z| <= 1 and strict
/// Schur-Cohn (the integrand may have a pole on the path closure otherwise).
inline Complex eval_F(const FamilyParams& fp, Complex z, double tol = 1e-10) {
  if (std::abs(z) > 1.0 + 1e-9)
    throw std::invalid_argument("eval_F: |z| must be <= 1");
  if (z == 0.0) return 0.0;
  return integrate_derivative(fp, 0.0, z, tol);
}

/// Samples of the positively oriented boundary curve t -> F(e^{it}).
inline BoundaryFunction boundary_curve(const FamilyParams& fp, int n,
                                       double tol = 1e-10) {
  if (n < 8) throw std::invalid_argument("boundary_curve: n >= 8 required");
  std::vector<Complex> values(n);
  for (int j = 0; j < n; ++j) {
    const double t = kTau * j / n;
    values[j] = eval_F(fp, std::polar(1.0, t), tol);
  }
  return BoundaryFunction(std::move(values));
}

struct ConvexityCertificate {
  bool convex;
  bool strong;
  double margin;  // (1-|lambda|^2) - |a - conj(a) lambda|
};

/// Convexity of F(D): convex iff |a - conj(a) lambda| <= 1 - |lambda|^2,
/// strongly convex iff strict. The margin is the closed-form minimum over
/// |z| = 1 of |2+az|^2 - |a+2 lambda z|^2, divided by 4.
inline ConvexityCertificate convexity_certificate(Complex a, Complex lambda) {
  if (std::abs(lambda) >= 1.0)
    throw std::invalid_argument("convexity_certificate: |lambda| < 1 required");
  const double margin =
      (1.0 - std::norm(lambda)) - std::abs(a - std::conj(a) * lambda);
  return {margin >= 0.0, margin > 0.0, margin};
}

/// omega(z) = (p(z)-1)/(p(z)+1) = -z (a + 2 lambda z) / (2 + a z).
inline Complex omega(Complex a, Complex lambda, Complex z) {
  const Complex den = 2.0 + a * z;
  if (std::abs(den) < 1e-12)
    throw std::domain_error("omega: 2 + a z vanishes");
  return -z * (a + 2.0 * lambda * z) / den;
}

/// p(z) = 1 + z F''(z)/F'(z) = (1 - lambda z^2) / q(z).
inline Complex schwarz_p(const FamilyParams& fp, Complex z) {
  return (1.0 - fp.lambda * z * z) / eval_q(fp, z);
}

/// Signed curvature Re(p(e^{it}))/|F'(e^{it})| of the boundary curve at n
/// uniform angles; strictly positive under strong convexity.
inline std::vector<double> curvature_profile(const FamilyParams& fp, int n) {
  if (!fp.strictly_admissible())
    throw std::invalid_argument("curvature_profile: strict Schur-Cohn required");
  std::vector<double> kappa(n);
  for (int j = 0; j < n; ++j) {
    const Complex z = std::polar(1.0, kTau * j / n);
    const double fprime = fp.c / std::abs(eval_q(fp, z));
    kappa[j] = std::real(schwarz_p(fp, z)) / fprime;
  }
  return kappa;
}

}  // namespace hext
