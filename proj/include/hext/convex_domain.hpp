#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <variant>
#include <vector>

#include "hext/common.hpp"
#include "hext/quadratic_family.hpp"

// Bounded convex bodies with support-function access. The support
// functional is H_D(v) = sup_{w in closure(D)} Re(v w), the positively
// homogeneous extension of the support function h_D(t) = H_D(e^{-it}).

namespace hext {

struct SupportResult {
  double value;   // H_D(v)
  Complex point;  // a maximizer of Re(v w) over closure(D)
  int index;      // sample/vertex index hint (-1 for closed-form variants)
};

namespace detail {

/// One parabolic max-refinement pass: given f and a bracket centre t with
/// half-width h, fit the vertex and shrink. f must be smooth near the max.
inline double refine_max_1d(const std::function<double(double)>& f, double t,
                            double h, int rounds) {
  for (int r = 0; r < rounds; ++r) {
    const double fm = f(t - h), f0 = f(t), fp = f(t + h);
    const double A = 0.5 * (fp + fm) - f0;
    const double B = 0.5 * (fp - fm);
    if (A < 0.0) {
      double delta = -B / (2.0 * A);
      delta = std::clamp(delta, -1.0, 1.0);
      t += delta * h;
    }
    h *= 0.25;
  }
  return t;
}

}  // namespace detail

class ConvexDomain {
 public:
  struct Polygon {
    std::vector<Complex> vertices;  // counterclockwise, strictly convex
  };
  struct Disc {
    Complex center;
    double radius;
  };
  struct Ellipse {
    Complex center;
    double rx, ry;    // semi-axes
    double rotation;  // radians
  };
  struct Sampled {
    std::vector<Complex> points;  // boundary samples, counterclockwise
  };
  using Shape = std::variant<Polygon, Disc, Ellipse, Sampled>;

  static ConvexDomain polygon(std::vector<Complex> vertices) {
    if (vertices.size() < 3)
      throw std::invalid_argument("polygon: need at least 3 vertices");
    const int m = static_cast<int>(vertices.size());
    for (int k = 0; k < m; ++k) {
      const Complex e1 = vertices[(k + 1) % m] - vertices[k];
      const Complex e2 = vertices[(k + 2) % m] - vertices[(k + 1) % m];
      if (std::abs(e1) == 0.0)
        throw std::invalid_argument("polygon: repeated vertex");
      if (cross(e1, e2) <= 1e-12 * std::abs(e1) * std::abs(e2))
        throw std::invalid_argument(
            "polygon: vertices not in strictly convex ccw position");
    }
    return ConvexDomain(Polygon{std::move(vertices)});
  }

  static ConvexDomain disc(Complex center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("disc: radius > 0");
    return ConvexDomain(Disc{center, radius});
  }

  static ConvexDomain ellipse(Complex center, double rx, double ry,
                              double rotation) {
    if (!(rx > 0.0) || !(ry > 0.0))
      throw std::invalid_argument("ellipse: semi-axes must be positive");
    return ConvexDomain(Ellipse{center, rx, ry, rotation});
  }

  static ConvexDomain sampled(std::vector<Complex> points) {
    if (points.size() < 64)
      throw std::invalid_argument("sampled: need at least 64 boundary points");
    const int m = static_cast<int>(points.size());
    // Discrete convexity: turning angles >= -1e-10 (quadrature noise).
    for (int k = 0; k < m; ++k) {
      const Complex e1 = points[(k + 1) % m] - points[k];
      const Complex e2 = points[(k + 2) % m] - points[(k + 1) % m];
      const double s = std::abs(e1) * std::abs(e2);
      if (s == 0.0)
        throw std::invalid_argument("sampled: repeated boundary point");
      if (cross(e1, e2) < -1e-10 * s)
        throw std::invalid_argument("sampled: boundary not discretely convex");
    }
    return ConvexDomain(Sampled{std::move(points)});
  }

  const Shape& shape() const { return shape_; }
  bool is_polygon() const { return std::holds_alternative<Polygon>(shape_); }

  /// H_D(v) together with a maximizer. For Sampled domains a nonnegative
  /// hint index warm-starts the search (local ascent; the per-direction
  /// maximizer moves monotonically for convex boundaries).
  SupportResult support(Complex v, int hint = -1) const {
    if (v == 0.0) throw std::invalid_argument("support: zero direction");
    return std::visit(
        [&](const auto& s) { return support_impl(s, v, hint); }, shape_);
  }

  double support_value(Complex v) const { return support(v).value; }
  Complex support_point(Complex v) const { return support(v).point; }

  /// sup over unit directions of Re(v w) - H_D(v): the signed distance of w
  /// to the boundary (negative inside, positive outside).
  double support_gap(Complex w) const {
    return std::visit([&](const auto& s) { return gap_impl(s, w); }, shape_);
  }

  bool contains(Complex w, double slack) const {
    return support_gap(w) <= slack;
  }

  /// Cauchy perimeter formula Per(D) = int_0^{2pi} h_D(t) dt. Exact for
  /// Polygon and Disc, 8192-point trapezoid otherwise.
  double perimeter() const {
    return std::visit([&](const auto& s) { return perimeter_impl(s); },
                      shape_);
  }

  ConvexDomain translated(Complex p) const {
    Shape s = shape_;
    std::visit(
        [&](auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Polygon>) {
            for (auto& w : v.vertices) w -= p;
          } else if constexpr (std::is_same_v<T, Disc>) {
            v.center -= p;
          } else if constexpr (std::is_same_v<T, Ellipse>) {
            v.center -= p;
          } else {
            for (auto& w : v.points) w -= p;
          }
        },
        s);
    return ConvexDomain(std::move(s));
  }

  double diameter() const {
    double d = 0.0;
    int hint1 = -1, hint2 = -1;
    for (int k = 0; k < 512; ++k) {
      const Complex v = std::polar(1.0, -kTau * k / 512);
      const SupportResult s1 = support(v, hint1);
      const SupportResult s2 = support(-v, hint2);
      hint1 = s1.index;
      hint2 = s2.index;
      d = std::max(d, s1.value + s2.value);
    }
    return d;
  }

 private:
  explicit ConvexDomain(Shape s) : shape_(std::move(s)) {}

  // --- support -------------------------------------------------------------

  static SupportResult support_impl(const Polygon& P, Complex v, int) {
    const int m = static_cast<int>(P.vertices.size());
    double best = -std::numeric_limits<double>::infinity();
    double scale = 0.0;
    for (int k = 0; k < m; ++k) {
      const double g = std::real(v * P.vertices[k]);
      best = std::max(best, g);
      scale = std::max(scale, std::abs(P.vertices[k]));
    }
    // Edge ties broken by smallest vertex index (relative tolerance 1e-12).
    const double tol = 1e-12 * std::abs(v) * std::max(scale, 1.0);
    for (int k = 0; k < m; ++k) {
      if (std::real(v * P.vertices[k]) >= best - tol)
        return {best, P.vertices[k], k};
    }
    return {best, P.vertices[0], 0};  // unreachable
  }

  static SupportResult support_impl(const Disc& D, Complex v, int) {
    const double av = std::abs(v);
    const Complex w = D.center + D.radius * std::conj(v) / av;
    return {std::real(v * D.center) + D.radius * av, w, -1};
  }

  static SupportResult support_impl(const Ellipse& E, Complex v, int) {
    const Complex u = v * std::polar(1.0, E.rotation);
    const double R = std::hypot(E.rx * u.real(), E.ry * u.imag());
    const double cs = E.rx * u.real() / R;
    const double sn = -E.ry * u.imag() / R;
    const Complex w = E.center + std::polar(1.0, E.rotation) *
                                     Complex(E.rx * cs, E.ry * sn);
    return {std::real(v * E.center) + R, w, -1};
  }

  static SupportResult support_impl(const Sampled& S, Complex v, int hint) {
    const int m = static_cast<int>(S.points.size());
    auto g = [&](int j) { return std::real(v * S.points[j]); };
    int j;
    if (hint < 0) {
      j = 0;
      double best = g(0);
      for (int k = 1; k < m; ++k) {
        const double gk = g(k);
        if (gk > best) {
          best = gk;
          j = k;
        }
      }
    } else {
      j = ((hint % m) + m) % m;
      int steps = 0;
      for (;;) {
        const int jp = (j + 1) % m, jm = (j + m - 1) % m;
        const double g0 = g(j), gp = g(jp), gm = g(jm);
        if (gp <= g0 && gm <= g0) break;
        j = (gp > gm) ? jp : jm;
        if (++steps > m) break;  // degenerate; j is still a valid sample
      }
    }
    // Refine on local cubic interpolants of the boundary curve. The value is
    // Re(v w~(s)) for the cubic w~ through four consecutive samples, so value
    // and point stay envelope-consistent, and the O(h^4) mismatch between
    // neighbouring windows keeps the refined support function smooth enough
    // for gradient-based consumers. The maximum lies in one of the two spans
    // adjacent to the best sample.
    double value = g(j);
    Complex point = S.points[j];
    for (int base : {(j + m - 1) % m, j}) {
      const Complex wm1 = S.points[(base + m - 1) % m];
      const Complex w0 = S.points[base];
      const Complex w1 = S.points[(base + 1) % m];
      const Complex w2 = S.points[(base + 2) % m];
      // Cubic through (s, w) = (-1, wm1), (0, w0), (1, w1), (2, w2).
      const Complex c0 = w0;
      const Complex c2 = 0.5 * (w1 + wm1) - w0;
      const Complex c3 = (w2 - w0 - 4.0 * c2 - w1 + wm1) / 6.0;
      const Complex c1 = 0.5 * (w1 - wm1) - c3;
      auto consider = [&](double s) {
        const Complex w = ((c3 * s + c2) * s + c1) * s + c0;
        const double gv = std::real(v * w);
        if (gv > value) {
          value = gv;
          point = w;
        }
      };
      // Critical points of the cubic Re(v w~(s)) inside the span [0, 1].
      const double q2 = 3.0 * std::real(v * c3);
      const double q1 = 2.0 * std::real(v * c2);
      const double q0 = std::real(v * c1);
      if (std::abs(q2) < 1e-300 * std::abs(q1)) {
        if (std::abs(q1) > 0.0) consider(std::clamp(-q0 / q1, 0.0, 1.0));
      } else {
        const double disc = q1 * q1 - 4.0 * q2 * q0;
        if (disc >= 0.0) {
          const double rt = std::sqrt(disc);
          for (double s : {(-q1 + rt) / (2.0 * q2), (-q1 - rt) / (2.0 * q2)})
            if (s > 0.0 && s < 1.0) consider(s);
        }
      }
    }
    return {value, point, j};
  }

  // --- signed boundary distance -------------------------------------------

  static double gap_impl(const Polygon& P, Complex w) {
    const int m = static_cast<int>(P.vertices.size());
    double worst = -std::numeric_limits<double>::infinity();
    bool inside = true;
    for (int k = 0; k < m; ++k) {
      const Complex e = P.vertices[(k + 1) % m] - P.vertices[k];
      const Complex nrm = Complex(0, -1) * e / std::abs(e);  // outward unit
      const double d = std::real(std::conj(nrm) * (w - P.vertices[k]));
      worst = std::max(worst, d);
      if (d > 0.0) inside = false;
    }
    if (inside) return worst;  // negative: depth inside
    // Outside: true Euclidean distance to the polygon.
    double dist = std::numeric_limits<double>::infinity();
    for (int k = 0; k < m; ++k) {
      const Complex a = P.vertices[k], b = P.vertices[(k + 1) % m];
      const Complex e = b - a;
      double s = std::real(std::conj(e) * (w - a)) / std::norm(e);
      s = std::clamp(s, 0.0, 1.0);
      dist = std::min(dist, std::abs(w - (a + s * e)));
    }
    return dist;
  }

  static double gap_impl(const Disc& D, Complex w) {
    return std::abs(w - D.center) - D.radius;
  }

  static double gap_impl(const Ellipse& E, Complex w) {
    auto f = [&](double t) {
      const Complex v = std::polar(1.0, -t);
      return std::real(v * w) - support_impl(E, v, -1).value;
    };
    double tb = 0.0, fb = -std::numeric_limits<double>::infinity();
    const int n = 2048;
    for (int k = 0; k < n; ++k) {
      const double t = kTau * k / n;
      const double ft = f(t);
      if (ft > fb) {
        fb = ft;
        tb = t;
      }
    }
    const double t = detail::refine_max_1d(f, tb, kTau / n, 4);
    return std::max(fb, f(t));
  }

  static double gap_impl(const Sampled& S, Complex w) {
    // 4096-direction probe with parabolic refinement around the best one.
    const int n = 4096;
    int hint = -1;
    double best = -std::numeric_limits<double>::infinity();
    double tb = 0.0;
    for (int k = 0; k < n; ++k) {
      const double t = kTau * k / n;
      const Complex v = std::polar(1.0, -t);
      const SupportResult s = support_impl(S, v, hint);
      hint = s.index;
      const double ft = std::real(v * w) - s.value;
      if (ft > best) {
        best = ft;
        tb = t;
      }
    }
    auto f = [&](double t) {
      const Complex v = std::polar(1.0, -t);
      return std::real(v * w) - support_impl(S, v, hint).value;
    };
    const double t = detail::refine_max_1d(f, tb, kTau / n, 4);
    return std::max(best, f(t));
  }

  // --- perimeter -----------------------------------------------------------

  static double perimeter_impl(const Polygon& P) {
    // Piecewise sinusoidal integrand integrated analytically between the
    // outward normal angles of consecutive edges; vertex v_{k+1} is the
    // maximizer on the arc between the normals of edges k and k+1.
    const int m = static_cast<int>(P.vertices.size());
    double per = 0.0;
    for (int k = 0; k < m; ++k) {
      const Complex ek = P.vertices[(k + 1) % m] - P.vertices[k];
      const Complex ekk = P.vertices[(k + 2) % m] - P.vertices[(k + 1) % m];
      const double th0 = std::arg(Complex(0, -1) * ek);
      const double th1 = std::arg(Complex(0, -1) * ekk);
      const Complex v = P.vertices[(k + 1) % m];
      per += std::real(v * Complex(0, 1) *
                       (std::polar(1.0, -th1) - std::polar(1.0, -th0)));
    }
    return per;
  }

  static double perimeter_impl(const Disc& D) { return kTau * D.radius; }

  static double perimeter_impl(const Ellipse& E) {
    return perimeter_trapezoid([&](Complex v) {
      return support_impl(E, v, -1).value;
    });
  }

  static double perimeter_impl(const Sampled& S) {
    int hint = -1;
    return perimeter_trapezoid([&](Complex v) {
      const SupportResult s = support_impl(S, v, hint);
      hint = s.index;
      return s.value;
    });
  }

  template <class F>
  static double perimeter_trapezoid(F&& h) {
    const int n = 8192;
    double sum = 0.0;
    for (int k = 0; k < n; ++k)
      sum += h(std::polar(1.0, -kTau * k / n));
    return sum * kTau / n;
  }

  Shape shape_;
};

/// The image domain F(D) of a family map as a sampled smooth boundary.
inline ConvexDomain from_family(const FamilyParams& fp, int n,
                                double tol = 1e-10) {
  if (n < 256) throw std::invalid_argument("from_family: n >= 256 required");
  if (!fp.strictly_admissible())
    throw std::invalid_argument("from_family: strict Schur-Cohn required");
  return ConvexDomain::sampled(boundary_curve(fp, n, tol).values());
}

}  // namespace hext
