// Command-line surface for the harmonic extremal-constant toolkit:
// domain ingestion, per-theorem experiment commands, CSV/SVG artifacts.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hext/artifacts.hpp"
#include "hext/domain_io.hpp"
#include "hext/solver.hpp"

namespace fs = std::filesystem;
using hext::Complex;

namespace {

// Exit statuses: 0 success, 1 assertion/validation failure, 2 usage/parse
// error.
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Complex parse_complex(const std::string& s) {
  double re, im;
  char tail;
  if (std::sscanf(s.c_str(), "%lf,%lf%c", &re, &im, &tail) != 2)
    throw CLI::ValidationError("expected complex argument as 're,im': " + s);
  return Complex(re, im);
}

std::ostream& num(std::ostream& os) { return os << std::setprecision(12); }

int run_check_family(const std::string& a_str, const std::string& l_str,
                     bool strict) {
  const Complex a = parse_complex(a_str), lambda = parse_complex(l_str);
  const hext::SchurCohnVerdict sc = hext::schur_cohn(a, lambda);
  num(std::cout) << "zero_free: " << (sc.zero_free ? "yes" : "no") << "\n"
                 << "margin1 (1-|lambda|): " << sc.margin1 << "\n"
                 << "margin2 ((1-|lambda|^2)-|a-conj(a)lambda|): " << sc.margin2
                 << "\n";
  bool ok;
  if (std::abs(lambda) < 1.0) {
    const hext::ConvexityCertificate cc = hext::convexity_certificate(a, lambda);
    std::cout << "convex: " << (cc.convex ? "yes" : "no")
              << ", strongly convex: " << (cc.strong ? "yes" : "no")
              << ", margin: ";
    num(std::cout) << cc.margin << "\n";
    ok = strict ? sc.zero_free : cc.convex;
  } else {
    std::cout << "convex: no (|lambda| >= 1)\n";
    ok = false;
  }
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

void emit_run_artifacts(const fs::path& out_dir, const hext::ConvexDomain& D,
                        Complex p, const hext::SolveReport& rep,
                        double bound) {
  fs::create_directories(out_dir);
  {
    std::ofstream f(out_dir / "report.json");
    f << hext::report_to_json(rep, bound).dump(2) << "\n";
  }
  hext::write_curve_csv(out_dir / "domain.csv", hext::boundary_polyline(D));
  // psi* is solved in the frame with p at the origin; shift back for overlay.
  std::vector<Complex> psi = rep.psi_star.values();
  for (Complex& w : psi) w += p;
  hext::write_curve_csv(out_dir / "psi_star.csv", psi);
  hext::write_figure_svg(out_dir / "figure.svg", hext::boundary_polyline(D),
                         psi, p, rep.M, bound, rep.duality_gap);
}

int run_solve(const std::string& domain_file, const std::string& point_str,
              int grid, double tol, const std::string& out_dir) {
  const hext::DomainSpec spec = hext::load_domain_spec(domain_file);
  Complex p = spec.point.value_or(Complex(0.0, 0.0));
  if (!point_str.empty()) p = parse_complex(point_str);
  if (!spec.domain.contains(p, -1e-9))
    throw ValidationFailure("point p is not strictly interior to the domain");

  const hext::SolveReport rep = hext::solve(spec.domain, p, grid, tol);
  const double bound = spec.domain.perimeter() / hext::kTau;
  emit_run_artifacts(out_dir, spec.domain, p, rep, bound);

  num(std::cout) << "M = " << rep.M << "\n"
                 << "dual a = " << rep.dual.a.real() << ","
                 << rep.dual.a.imag() << "\n"
                 << "dual lambda = " << rep.dual.lambda.real() << ","
                 << rep.dual.lambda.imag() << "\n"
                 << "duality_gap = " << rep.duality_gap << "\n"
                 << "perimeter_bound (Per/2pi) = " << bound << "\n"
                 << "residuals = " << rep.residual_A0 << ", "
                 << rep.residual_A1 << "\n"
                 << "iterations = " << rep.iterations << "\n";
  return 0;
}

int run_verify_exceptional(const std::string& a_str, const std::string& l_str,
                           double c, int grid) {
  const hext::FamilyParams fp{parse_complex(a_str), parse_complex(l_str), c};
  if (!fp.strictly_admissible())
    throw ValidationFailure(
        "parameters fail strict Schur-Cohn (or c <= 0); not a family member");

  const hext::ConvexDomain D = hext::from_family(fp, grid);
  const hext::SolveReport rep = hext::solve(D, 0.0, grid);
  const hext::BoundaryFunction F = hext::boundary_curve(fp, grid);
  const double diam = D.diameter();

  double psi_err = 0.0;
  for (int j = 0; j < grid; ++j)
    psi_err = std::max(psi_err, std::abs(rep.psi_star[j] - F[j]));

  const double m_err = std::abs(rep.M - fp.c);
  const double dual_err = std::max(std::abs(rep.dual.a - fp.a),
                                   std::abs(rep.dual.lambda - fp.lambda));
  num(std::cout) << "M = " << rep.M << " (expected c = " << fp.c << ")\n"
                 << "|M - c| = " << m_err << "\n"
                 << "dual deviation = " << dual_err << "\n"
                 << "max |psi* - F| = " << psi_err << "\n";
  std::ostringstream diff;
  bool ok = true;
  if (!(m_err <= 1e-3 * fp.c)) {
    ok = false;
    diff << "  |M - c| = " << m_err << " exceeds " << 1e-3 * fp.c << "\n";
  }
  if (!(dual_err <= 1e-2)) {
    ok = false;
    diff << "  dual deviation " << dual_err << " exceeds 1e-2\n";
  }
  if (!(psi_err <= 1e-6 * diam)) {
    ok = false;
    diff << "  psi* deviation " << psi_err << " exceeds " << 1e-6 * diam
         << "\n";
  }
  if (!ok) throw ValidationFailure("verification failed:\n" + diff.str());
  std::cout << "PASS\n";
  return 0;
}

int run_perimeter(const std::string& domain_file) {
  const hext::DomainSpec spec = hext::load_domain_spec(domain_file);
  num(std::cout) << "perimeter (Cauchy integral) = " << spec.domain.perimeter()
                 << "\n";
  if (const auto* poly =
          std::get_if<hext::ConvexDomain::Polygon>(&spec.domain.shape())) {
    double edges = 0.0;
    const int m = static_cast<int>(poly->vertices.size());
    for (int k = 0; k < m; ++k)
      edges += std::abs(poly->vertices[(k + 1) % m] - poly->vertices[k]);
    num(std::cout) << "perimeter (edge sum)       = " << edges << "\n";
  }
  return 0;
}

int run_poisson_check(const std::string& domain_file, int grid) {
  const hext::DomainSpec spec = hext::load_domain_spec(domain_file);
  const Complex p = spec.point.value_or(Complex(0.0, 0.0));
  if (!spec.domain.contains(p, -1e-9))
    throw ValidationFailure("point p is not strictly interior to the domain");
  const hext::ConvexDomain D0 = spec.domain.translated(p);
  const hext::SolveReport rep = hext::solve(spec.domain, p, grid);
  const double slack = 1e-6 * D0.diameter();

  // Worst offender over the polar grid, reported on failure.
  double worst = -std::numeric_limits<double>::infinity();
  Complex worst_z = 0.0;
  const int g = 32;
  for (int i = 1; i <= g; ++i) {
    const double r = 0.99 * i / g;
    for (int k = 0; k < g; ++k) {
      const Complex z = std::polar(r, hext::kTau * k / g);
      const double gap = D0.support_gap(hext::poisson_eval(rep.psi_star, z));
      if (gap > worst) {
        worst = gap;
        worst_z = z;
      }
    }
  }
  num(std::cout) << "worst containment gap = " << worst << " (slack " << slack
                 << ")\n";
  if (worst > slack) {
    std::ostringstream msg;
    msg << "containment failed at z = " << worst_z.real() << ","
        << worst_z.imag() << " with gap " << worst;
    throw ValidationFailure(msg.str());
  }
  std::cout << "PASS\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic extremal constant M_D(p) for bounded convex planar "
               "domains: solver, exceptional-family certification, and "
               "theorem checks at desk scale."};
  app.require_subcommand(1);

  std::string a_str = "0,0", l_str = "0,0", domain_file, point_str, out_dir =
      "./out";
  double c = 1.0, tol = 1e-8;
  int grid = 2048;
  bool strict = false;

  auto* check = app.add_subcommand(
      "check-family", "Schur-Cohn and convexity verdicts for (a, lambda)");
  check->add_option("--a", a_str, "a as 're,im'")->required();
  check->add_option("--lambda", l_str, "lambda as 're,im'")->required();
  check->add_flag("--strict", strict, "require strict Schur-Cohn");

  auto* solve = app.add_subcommand(
      "solve", "compute M_D(p) and emit report, curves, and figure");
  solve->add_option("--domain", domain_file, "domain spec file (JSON)")
      ->required();
  solve->add_option("--point", point_str, "base point p as 're,im'");
  solve->add_option("--grid", grid, "boundary grid size");
  solve->add_option("--tol", tol, "moment-residual tolerance");
  solve->add_option("--out", out_dir, "output directory");

  auto* verify = app.add_subcommand(
      "verify-exceptional",
      "solve on F(D) and check M = c, dual = (a, lambda), psi* = F-boundary");
  verify->add_option("--a", a_str, "a as 're,im'")->required();
  verify->add_option("--lambda", l_str, "lambda as 're,im'")->required();
  verify->add_option("--c", c, "c > 0")->required();
  verify->add_option("--grid", grid, "boundary grid size");

  auto* perim = app.add_subcommand("perimeter",
                                   "Cauchy perimeter of a domain spec");
  perim->add_option("--domain", domain_file, "domain spec file (JSON)")
      ->required();

  auto* poisson = app.add_subcommand(
      "poisson-check",
      "solve, then verify P[psi*] stays inside D on a polar grid");
  poisson->add_option("--domain", domain_file, "domain spec file (JSON)")
      ->required();
  poisson->add_option("--grid", grid, "boundary grid size");

  try {
    app.parse(argc, argv);
    if (check->parsed()) return run_check_family(a_str, l_str, strict);
    if (solve->parsed())
      return run_solve(domain_file, point_str, grid, tol, out_dir);
    if (verify->parsed())
      return run_verify_exceptional(a_str, l_str, c, grid);
    if (perim->parsed()) return run_perimeter(domain_file);
    if (poisson->parsed()) return run_poisson_check(domain_file, grid);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
