#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hext/convex_domain.hpp"
#include "hext/solver.hpp"

// CSV/SVG/JSON emission for solver runs.

namespace hext {

/// Boundary polyline of a domain for plotting and CSV emission. Polygons
/// keep their vertices, parametric variants are sampled at n angles.
inline std::vector<Complex> boundary_polyline(const ConvexDomain& D,
                                              int n = 512) {
  return std::visit(
      [&](const auto& s) -> std::vector<Complex> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvexDomain::Polygon>) {
          return s.vertices;
        } else if constexpr (std::is_same_v<T, ConvexDomain::Disc>) {
          std::vector<Complex> pts(n);
          for (int k = 0; k < n; ++k)
            pts[k] = s.center + std::polar(s.radius, kTau * k / n);
          return pts;
        } else if constexpr (std::is_same_v<T, ConvexDomain::Ellipse>) {
          std::vector<Complex> pts(n);
          for (int k = 0; k < n; ++k) {
            const double t = kTau * k / n;
            pts[k] = s.center + std::polar(1.0, s.rotation) *
                                    Complex(s.rx * std::cos(t),
                                            s.ry * std::sin(t));
          }
          return pts;
        } else {
          return s.points;
        }
      },
      D.shape());
}

/// CSV table with header "t,re,im"; t is the uniform parameter angle.
inline void write_curve_csv(const std::filesystem::path& path,
                            const std::vector<Complex>& pts) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t,re,im\n" << std::setprecision(12);
  const int n = static_cast<int>(pts.size());
  for (int j = 0; j < n; ++j)
    out << kTau * j / n << ',' << pts[j].real() << ',' << pts[j].imag()
        << '\n';
}

inline std::vector<Complex> read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::string line;
  std::getline(in, line);  // header
  std::vector<Complex> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double t, re, im;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) != 3)
      throw std::invalid_argument("malformed CSV row: " + line);
    pts.emplace_back(re, im);
  }
  return pts;
}

inline nlohmann::json report_to_json(const SolveReport& rep,
                                     double perimeter_bound) {
  nlohmann::json j;
  j["M"] = rep.M;
  j["dual"] = {{"a", {rep.dual.a.real(), rep.dual.a.imag()}},
               {"lambda", {rep.dual.lambda.real(), rep.dual.lambda.imag()}}};
  j["residual_A0"] = rep.residual_A0;
  j["residual_A1"] = rep.residual_A1;
  j["duality_gap"] = rep.duality_gap;
  j["lower_bound"] = rep.lower_bound;
  j["iterations"] = rep.iterations;
  j["converged"] = rep.converged;
  j["orientation"] = rep.orientation_preserving ? "preserving" : "reversing";
  j["perimeter_bound"] = perimeter_bound;
  nlohmann::json trace = nlohmann::json::array();
  const int stride = std::max<int>(1, static_cast<int>(rep.trace.size()) / 512);
  for (size_t k = 0; k < rep.trace.size(); k += stride)
    trace.push_back({{"iteration", rep.trace[k].iteration},
                     {"objective", rep.trace[k].objective},
                     {"residual", rep.trace[k].residual}});
  j["trace"] = trace;
  return j;
}

/// SVG figure: domain boundary (closed path), extremal boundary image
/// (polyline), the point p, and an annotation block. viewBox fitted with a
/// 5% margin; the y axis is flipped into SVG screen coordinates.
inline void write_figure_svg(const std::filesystem::path& path,
                             const std::vector<Complex>& domain_boundary,
                             const std::vector<Complex>& psi_curve, Complex p,
                             double M, double bound, double gap) {
  double x0 = p.real(), x1 = p.real(), y0 = p.imag(), y1 = p.imag();
  auto grow = [&](const std::vector<Complex>& pts) {
    for (const Complex& w : pts) {
      x0 = std::min(x0, w.real());
      x1 = std::max(x1, w.real());
      y0 = std::min(y0, w.imag());
      y1 = std::max(y1, w.imag());
    }
  };
  grow(domain_boundary);
  grow(psi_curve);
  const double mx = 0.05 * (x1 - x0), my = 0.05 * (y1 - y0);
  x0 -= mx;
  x1 += mx;
  y0 -= my;
  y1 += my;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << std::setprecision(9);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 << ' '
      << -y1 << ' ' << (x1 - x0) << ' ' << (y1 - y0) << "\">\n";

  auto path_data = [](const std::vector<Complex>& pts, bool close) {
    std::ostringstream d;
    d << std::setprecision(9);
    for (size_t k = 0; k < pts.size(); ++k)
      d << (k == 0 ? 'M' : 'L') << pts[k].real() << ' ' << -pts[k].imag();
    if (close) d << 'Z';
    return d.str();
  };
  const double lw = 0.004 * std::max(x1 - x0, y1 - y0);
  out << "  <path d=\"" << path_data(domain_boundary, true)
      << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"" << lw
      << "\"/>\n";
  out << "  <path d=\"" << path_data(psi_curve, false)
      << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"" << lw
      << "\" stroke-dasharray=\"" << 4 * lw << ' ' << 2 * lw << "\"/>\n";
  out << "  <circle cx=\"" << p.real() << "\" cy=\"" << -p.imag()
      << "\" r=\"" << 2 * lw << "\" fill=\"#2ca02c\"/>\n";
  const double fs = 0.04 * (y1 - y0);
  out << std::setprecision(8);
  out << "  <text x=\"" << x0 + mx << "\" y=\"" << -y1 + 1.5 * fs
      << "\" font-size=\"" << fs << "\" font-family=\"monospace\">M = " << M
      << "</text>\n";
  out << "  <text x=\"" << x0 + mx << "\" y=\"" << -y1 + 3.0 * fs
      << "\" font-size=\"" << fs
      << "\" font-family=\"monospace\">Per/2pi = " << bound << "</text>\n";
  out << "  <text x=\"" << x0 + mx << "\" y=\"" << -y1 + 4.5 * fs
      << "\" font-size=\"" << fs << "\" font-family=\"monospace\">gap = "
      << gap << "</text>\n";
  out << "</svg>\n";
}

}  // namespace hext
