#pragma once

#include <optional>

#include "hext/common.hpp"
#include "hext/convex_domain.hpp"
#include "hext/disc_harmonics.hpp"
#include "hext/quadratic_family.hpp"

// Computes M_D(p) by minimizing the convex dual objective
//   G(a, lambda) = (1/2pi) int H_D(V(t)) dt,  V(t) = e^{-it} + a + lambda e^{it},
// over (a, lambda). The gradient of G is the pair of moments (A0, A1) of the
// support-point selection psi*(t) = argmax Re(V(t) w), so the stopping rule
// doubles as a primal feasibility certificate. A feasibility-corrected
// primal candidate provides a certified lower bound and duality gap.

namespace hext {

struct DualPoint {
  Complex a;
  Complex lambda;
};

struct TraceRecord {
  int iteration;
  double objective;
  double residual;
};

struct SolveReport {
  double M = 0.0;
  DualPoint dual;
  BoundaryFunction psi_star;
  double residual_A0 = 0.0;
  double residual_A1 = 0.0;
  double duality_gap = 0.0;
  double lower_bound = 0.0;
  int iterations = 0;
  bool converged = false;
  // Orientation-reversing extremals z -> conj-precomposed maps attain the
  // same value; the solver fixes the orientation-preserving normalization.
  bool orientation_preserving = true;
  std::vector<TraceRecord> trace;
};

namespace detail {

struct GridEval {
  double objective;
  Complex A0, A1;
  std::vector<Complex> psi;
};

inline GridEval evaluate_dual(const ConvexDomain& D, DualPoint d, int n) {
  // V has at most two zeros in t; nudge d off a grid collision.
  const double scale = 1.0 + std::abs(d.a) + std::abs(d.lambda);
  for (int attempt = 0; attempt < 8; ++attempt) {
    bool collision = false;
    for (int j = 0; j < n && !collision; ++j) {
      const Complex e = std::polar(1.0, kTau * j / n);
      if (std::abs(1.0 / e + d.a + d.lambda * e) < 1e-12 * scale)
        collision = true;
    }
    if (!collision) break;
    d.a += Complex(1e-12 * scale, 1e-12 * scale);
  }

  GridEval out;
  out.psi.resize(n);
  double obj = 0.0;
  Complex a0 = 0.0, a1 = 0.0;
  int hint = -1;
  for (int j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, kTau * j / n);
    const Complex V = 1.0 / e + d.a + d.lambda * e;
    const SupportResult s = D.support(V, hint);
    hint = s.index;
    out.psi[j] = s.point;
    obj += s.value;
    a0 += s.point;
    a1 += e * s.point;
  }
  out.objective = obj / n;
  out.A0 = a0 / double(n);
  out.A1 = a1 / double(n);
  return out;
}

inline void check_dual_pre(const ConvexDomain& D, int n) {
  if (n < 256) throw std::invalid_argument("dual objective: n >= 256 required");
  if (!(D.support_gap(0.0) < 0.0))
    throw std::invalid_argument(
        "dual objective: origin must be interior (translate first)");
}

/// Feasibility-corrected primal value: remove the A0 and A1 Fourier modes
/// from psi and shrink toward 0 until the values are safely back in
/// closure(D). Returns J of the corrected candidate, a valid lower bound
/// for the discrete dual value at every dual point.
inline double certified_lower_bound(const ConvexDomain& D,
                                    const std::vector<Complex>& psi,
                                    double inradius) {
  const int n = static_cast<int>(psi.size());
  Complex a0 = 0.0, a1 = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, kTau * j / n);
    a0 += psi[j];
    a1 += e * psi[j];
  }
  a0 /= double(n);
  a1 /= double(n);
  const double delta = std::abs(a0) + std::abs(a1);
  const double rho = std::min(1.0, 2.0 * delta / inradius);
  double jval = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, kTau * j / n);
    const Complex hat = (1.0 - rho) * (psi[j] - a0 - a1 / e);
    jval += std::real(hat / e);
  }
  return jval / n;
}

}  // namespace detail

/// G(a, lambda) = (1/n) sum_j H_D(V(t_j)); convex in the four real
/// coordinates of the dual point.
inline double dual_objective(const ConvexDomain& D, DualPoint d, int n) {
  detail::check_dual_pre(D, n);
  return detail::evaluate_dual(D, d, n).objective;
}

/// Subgradient of G: the moments of the support-point selection, returned
/// as complex pairs whose (Re, Im) parts are the partial derivatives with
/// respect to (Re a, Im a) and (Re lambda, Im lambda).
inline std::pair<Complex, Complex> dual_gradient(const ConvexDomain& D,
                                                 DualPoint d, int n) {
  detail::check_dual_pre(D, n);
  const detail::GridEval e = detail::evaluate_dual(D, d, n);
  return {std::conj(e.A0), std::conj(e.A1)};
}

/// psi*_j = support_point(D, V(t_j)).
inline BoundaryFunction reconstruct_extremal(const ConvexDomain& D,
                                             DualPoint d, int n) {
  detail::check_dual_pre(D, n);
  return BoundaryFunction(detail::evaluate_dual(D, d, n).psi);
}

inline SolveReport solve(const ConvexDomain& D, Complex p, int n = 2048,
                         double tol = 1e-8, int max_iter = 0) {
  if (!D.contains(p, -1e-9))
    throw std::invalid_argument("solve: p must be strictly interior to D");
  const ConvexDomain D0 = D.translated(p);
  const double diam = D0.diameter();
  const double inradius = -D0.support_gap(0.0);
  const bool poly = D0.is_polygon();
  if (max_iter == 0) max_iter = poly ? 30000 : 3000;

  DualPoint d{0.0, 0.0};
  std::vector<TraceRecord> trace;
  int iterations = 0;
  bool converged = false;

  DualPoint best_d = d;
  double best_obj = std::numeric_limits<double>::infinity();

  std::vector<Complex> psi_avg;  // subgradient regime: averaged primal

  if (!poly) {
    // Gradient descent with Armijo backtracking; G is smooth away from
    // degenerate directions for strongly convex domains. Sampled domains
    // have an O(h^2) nonsmoothness floor, so the tail of a non-converging
    // run is averaged for the primal certificate, as in the polygon branch.
    detail::GridEval e = detail::evaluate_dual(D0, d, n);
    double step = 1.0;
    const int tail_start = max_iter / 2;
    DualPoint d_acc{0.0, 0.0};
    double w_acc = 0.0;
    double stagnation_ref = std::numeric_limits<double>::infinity();
    for (; iterations < max_iter; ++iterations) {
      // Once the objective stops improving at machine resolution the
      // iteration is bouncing on the discretization floor.
      if (iterations % 100 == 0) {
        if (best_obj > stagnation_ref - 1e-13 * (1.0 + std::abs(best_obj)))
          break;
        stagnation_ref = best_obj;
      }
      const double res = std::max(std::abs(e.A0), std::abs(e.A1));
      if (iterations < 256 || iterations % 64 == 0)
        trace.push_back({iterations, e.objective, res});
      if (e.objective < best_obj) {
        best_obj = e.objective;
        best_d = d;
      }
      if (res <= tol * diam) {
        converged = true;
        break;
      }
      if (iterations >= tail_start) {
        if (psi_avg.empty()) psi_avg.assign(n, Complex(0.0, 0.0));
        d_acc.a += d.a;
        d_acc.lambda += d.lambda;
        for (int j = 0; j < n; ++j) psi_avg[j] += e.psi[j];
        w_acc += 1.0;
      }
      const Complex ga = std::conj(e.A0), gl = std::conj(e.A1);
      const double gnorm2 = std::norm(e.A0) + std::norm(e.A1);
      bool moved = false;
      double s = step;
      for (int bt = 0; bt < 60; ++bt) {
        const DualPoint nd{d.a - s * ga, d.lambda - s * gl};
        detail::GridEval ne = detail::evaluate_dual(D0, nd, n);
        if (ne.objective <= e.objective - 1e-4 * s * gnorm2) {
          d = nd;
          e = std::move(ne);
          step = 2.0 * s;
          moved = true;
          break;
        }
        s *= 0.5;
      }
      if (!moved) break;  // at numerical resolution of the line search
    }
    if (e.objective < best_obj) {
      best_obj = e.objective;
      best_d = d;
    }
    if (w_acc > 0.0) {
      const DualPoint d_bar{d_acc.a / w_acc, d_acc.lambda / w_acc};
      for (int j = 0; j < n; ++j) psi_avg[j] /= w_acc;
      const detail::GridEval eb = detail::evaluate_dual(D0, d_bar, n);
      if (eb.objective < best_obj) {
        best_obj = eb.objective;
        best_d = d_bar;
      }
    }
  } else {
    // Polygonal support functions make G polyhedral: projected-free
    // subgradient descent, step c0/sqrt(k), with Polyak averaging of the
    // dual iterates and matching averaging of the primal selections.
    const double c0 = 0.5;
    detail::GridEval e = detail::evaluate_dual(D0, d, n);
    psi_avg.assign(n, Complex(0.0, 0.0));
    DualPoint d_acc{0.0, 0.0};
    double w_acc = 0.0;
    const int tail_start = max_iter / 2;
    for (; iterations < max_iter; ++iterations) {
      const double res = std::max(std::abs(e.A0), std::abs(e.A1));
      if (iterations % 64 == 0)
        trace.push_back({iterations, e.objective, res});
      if (e.objective < best_obj) {
        best_obj = e.objective;
        best_d = d;
      }
      const double gnorm = std::sqrt(std::norm(e.A0) + std::norm(e.A1));
      if (gnorm <= tol * diam) {
        converged = true;
        break;
      }
      const double gamma = c0 / std::sqrt(double(iterations + 1)) / gnorm;
      if (iterations >= tail_start) {
        d_acc.a += gamma * d.a;
        d_acc.lambda += gamma * d.lambda;
        for (int j = 0; j < n; ++j) psi_avg[j] += gamma * e.psi[j];
        w_acc += gamma;
      }
      d.a -= gamma * std::conj(e.A0);
      d.lambda -= gamma * std::conj(e.A1);
      e = detail::evaluate_dual(D0, d, n);
    }
    if (w_acc > 0.0) {
      const DualPoint d_bar{d_acc.a / w_acc, d_acc.lambda / w_acc};
      for (int j = 0; j < n; ++j) psi_avg[j] /= w_acc;
      const detail::GridEval eb = detail::evaluate_dual(D0, d_bar, n);
      if (eb.objective < best_obj) {
        best_obj = eb.objective;
        best_d = d_bar;
      }
    }
  }

  const detail::GridEval fin = detail::evaluate_dual(D0, best_d, n);

  double lower = detail::certified_lower_bound(D0, fin.psi, inradius);
  if (!psi_avg.empty())
    lower = std::max(lower,
                     detail::certified_lower_bound(D0, psi_avg, inradius));

  SolveReport rep{
      /*M=*/fin.objective,
      /*dual=*/best_d,
      /*psi_star=*/BoundaryFunction(fin.psi),
      /*residual_A0=*/std::abs(fin.A0),
      /*residual_A1=*/std::abs(fin.A1),
      /*duality_gap=*/fin.objective - lower,
      /*lower_bound=*/lower,
      /*iterations=*/iterations,
      /*converged=*/converged,
      /*orientation_preserving=*/true,
      /*trace=*/std::move(trace)};
  return rep;
}

// --- classification of exceptional pointed domains -------------------------

struct ClassificationResult {
  bool exceptional = false;
  std::optional<FamilyParams> fitted;
  double residual = 0.0;  // RMS of |q(e^{it}) Phi'(e^{it}) - c| / c
};

namespace detail {

/// Spectral derivative d/dt of uniformly sampled periodic data (direct DFT;
/// the boundary curves in play are analytic, so coefficients decay fast).
inline std::vector<Complex> spectral_derivative(
    const std::vector<Complex>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<Complex> coef(n);
  for (int k = 0; k < n; ++k) {
    Complex c = 0.0;
    const Complex wk = std::polar(1.0, -kTau * k / n);
    Complex ph = 1.0;
    for (int j = 0; j < n; ++j) {
      c += f[j] * ph;
      ph *= wk;
    }
    coef[k] = c / double(n);
  }
  std::vector<Complex> df(n, Complex(0.0, 0.0));
  for (int k = 0; k < n; ++k) {
    const int kk = (k <= n / 2) ? k : k - n;  // signed frequency
    if (std::abs(kk) >= n / 2) continue;      // drop the Nyquist mode
    const Complex ik(0.0, double(kk));
    const Complex wk = std::polar(1.0, kTau * k / n);
    Complex ph = coef[k] * ik;
    for (int j = 0; j < n; ++j) {
      df[j] += ph;
      ph *= wk;
    }
  }
  return df;
}

/// Solve the 5x5 normal equations by Gaussian elimination.
inline std::array<double, 5> solve5(std::array<std::array<double, 5>, 5> A,
                                    std::array<double, 5> b) {
  for (int col = 0; col < 5; ++col) {
    int piv = col;
    for (int r = col + 1; r < 5; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    if (std::abs(A[col][col]) < 1e-300)
      throw std::domain_error("classify: degenerate boundary samples");
    for (int r = col + 1; r < 5; ++r) {
      const double m = A[r][col] / A[col][col];
      for (int c = col; c < 5; ++c) A[r][c] -= m * A[col][c];
      b[r] -= m * b[col];
    }
  }
  std::array<double, 5> x{};
  for (int r = 4; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < 5; ++c) s -= A[r][c] * x[c];
    x[r] = s / A[r][r];
  }
  return x;
}

}  // namespace detail

/// Fits (a, lambda, c) to the relation (1 + a e^{it} + lambda e^{2it})
/// Phi'(e^{it}) = c from boundary samples of a conformal map Phi with
/// Phi(0) = 0, Phi'(0) > 0; Phi' on the boundary comes from the tangent
/// identity dphi/dt = i e^{it} Phi'(e^{it}). Exceptional iff the fit
/// residual is below tol and the fitted pair passes strict Schur-Cohn.
inline ClassificationResult classify_exceptional(const BoundaryFunction& phi,
                                                 double tol = 1e-6) {
  const int n = phi.size();
  const std::vector<Complex> dphi = detail::spectral_derivative(phi.values());

  std::vector<Complex> P(n);  // Phi'(e^{it_j})
  for (int j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, phi.angle(j));
    P[j] = dphi[j] / (Complex(0.0, 1.0) * e);
  }

  // Real least squares in (Re a, Im a, Re lambda, Im lambda, c):
  //   a (e^{it} P) + lambda (e^{2it} P) - c = -P.
  std::array<std::array<double, 5>, 5> AtA{};
  std::array<double, 5> Atb{};
  for (int j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, phi.angle(j));
    const Complex u1 = e * P[j];
    const Complex u2 = e * e * P[j];
    const double rows[2][6] = {
        {u1.real(), -u1.imag(), u2.real(), -u2.imag(), -1.0, -P[j].real()},
        {u1.imag(), u1.real(), u2.imag(), u2.real(), 0.0, -P[j].imag()}};
    for (const auto& row : rows)
      for (int r = 0; r < 5; ++r) {
        for (int c = 0; c < 5; ++c) AtA[r][c] += row[r] * row[c];
        Atb[r] += row[r] * row[5];
      }
  }
  const std::array<double, 5> x = detail::solve5(AtA, Atb);

  FamilyParams fit{Complex(x[0], x[1]), Complex(x[2], x[3]), x[4]};
  double rss = 0.0;
  for (int j = 0; j < n; ++j) {
    const Complex e = std::polar(1.0, phi.angle(j));
    rss += std::norm((1.0 + fit.a * e + fit.lambda * e * e) * P[j] - fit.c);
  }
  ClassificationResult out;
  out.residual = std::sqrt(rss / n) / std::max(std::abs(fit.c), 1e-300);
  out.fitted = fit;
  out.exceptional =
      out.residual <= tol && fit.c > 0.0 && schur_cohn(fit.a, fit.lambda).zero_free;
  return out;
}

inline ClassificationResult classify_exceptional(const FamilyParams& fp,
                                                 double tol = 1e-6,
                                                 int n = 2048) {
  return classify_exceptional(boundary_curve(fp, n), tol);
}

}  // namespace hext
