#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hext/convex_domain.hpp"
#include "oracles.hpp"

using hext::Complex;
using hext::ConvexDomain;
using Catch::Matchers::WithinAbs;

namespace {

ConvexDomain unit_square() {
  return ConvexDomain::polygon(
      {Complex(1, 1), Complex(-1, 1), Complex(-1, -1), Complex(1, -1)});
}

// Rightmost and topmost extents of the image of the strongly convex member
// (a, lambda) = (0, 1/2): sqrt(2) arctan(1/sqrt(2)) and sqrt(2) artanh(1/sqrt(2)).
const double kFatOne = 0.87041975136710320;
const double kFatI = 1.24645048028046103;

}  // namespace

TEST_CASE("construction validation") {
  CHECK_THROWS_AS(ConvexDomain::polygon({Complex(0, 0), Complex(1, 0)}),
                  std::invalid_argument);
  // Clockwise square.
  CHECK_THROWS_AS(ConvexDomain::polygon({Complex(1, 1), Complex(1, -1),
                                         Complex(-1, -1), Complex(-1, 1)}),
                  std::invalid_argument);
  // Collinear midpoint.
  CHECK_THROWS_AS(ConvexDomain::polygon({Complex(0, 0), Complex(1, 0),
                                         Complex(2, 0), Complex(1, 1)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ConvexDomain::disc(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ConvexDomain::ellipse(0.0, 1.0, -1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ConvexDomain::sampled({Complex(1, 0), Complex(0, 1),
                                         Complex(-1, 0), Complex(0, -1)}),
                  std::invalid_argument);
  // A reflex sample breaks discrete convexity.
  std::vector<Complex> pts(128);
  for (int j = 0; j < 128; ++j) pts[j] = std::polar(1.0, hext::kTau * j / 128);
  pts[40] *= 0.9;
  CHECK_THROWS_AS(ConvexDomain::sampled(pts), std::invalid_argument);
}

TEST_CASE("polygon support with tie break") {
  const ConvexDomain S = unit_square();
  // v = 1 maximizes Re(w); both right-edge vertices attain it, smallest
  // index wins.
  const hext::SupportResult s = S.support(1.0);
  CHECK_THAT(s.value, WithinAbs(1.0, 1e-15));
  CHECK(s.point == Complex(1, 1));
  CHECK(s.index == 0);

  const hext::SupportResult d = S.support(Complex(1, -1));  // Re((1-i)w) = x+y
  CHECK_THAT(d.value, WithinAbs(2.0, 1e-15));
  CHECK(d.point == Complex(1, 1));
}

TEST_CASE("disc and ellipse support closed forms") {
  const ConvexDomain D = ConvexDomain::disc(Complex(1, 0), 2.0);
  const hext::SupportResult s = D.support(Complex(0, 1));
  CHECK_THAT(s.value, WithinAbs(2.0, 1e-15));
  CHECK_THAT(std::abs(s.point - Complex(1, -2)), WithinAbs(0.0, 1e-15));

  const ConvexDomain E = ConvexDomain::ellipse(0.0, 2.0, 1.0, 0.0);
  CHECK_THAT(E.support_value(1.0), WithinAbs(2.0, 1e-15));
  CHECK_THAT(std::abs(E.support_point(1.0) - Complex(2, 0)),
             WithinAbs(0.0, 1e-14));
  CHECK_THAT(E.support_value(Complex(0, 1)), WithinAbs(1.0, 1e-15));
  CHECK_THAT(std::abs(E.support_point(Complex(0, 1)) - Complex(0, -1)),
             WithinAbs(0.0, 1e-14));

  // Rotating the ellipse by pi/2 swaps the semi-axes.
  const ConvexDomain ER = ConvexDomain::ellipse(0.0, 2.0, 1.0, hext::kPi / 2);
  CHECK_THAT(ER.support_value(1.0), WithinAbs(1.0, 1e-12));
  CHECK_THAT(ER.support_value(Complex(0, 1)), WithinAbs(2.0, 1e-12));
}

TEST_CASE("sampled support matches brute force and warm starts") {
  const ConvexDomain D = hext::from_family({Complex(0.3, 0.1), 0.4, 1.0}, 512);
  const auto& S = std::get<ConvexDomain::Sampled>(D.shape());
  std::mt19937 rng(101);
  int hint = -1;
  for (int k = 0; k < 200; ++k) {
    const Complex v = std::polar(1.0, hext::kTau * k / 200.0) *
                      (0.5 + std::uniform_real_distribution<>(0, 2)(rng));
    double brute = -1e300;
    for (const Complex& w : S.points) brute = std::max(brute, std::real(v * w));
    const hext::SupportResult warm = D.support(v, hint);
    hint = warm.index;
    // Parabolic refinement may only improve on the best sample, by at most
    // the O(h^2) sagitta of the boundary between samples.
    CHECK(warm.value >= brute - 1e-12);
    CHECK(warm.value <= brute + 1e-3 * std::abs(v));
    CHECK_THAT(std::real(v * warm.point), WithinAbs(warm.value, 1e-12));
  }
}

TEST_CASE("support properties") {
  std::mt19937 rng(103);
  const std::vector<ConvexDomain> domains = {
      unit_square(), ConvexDomain::disc(Complex(0.2, -0.4), 1.5),
      ConvexDomain::ellipse(Complex(0.1, 0.1), 2.0, 0.7, 0.3),
      hext::from_family({0.0, 0.5, 1.0}, 512),
      oracle::random_convex_polygon(rng)};
  for (const ConvexDomain& D : domains) {
    for (int k = 0; k < 100; ++k) {
      const Complex v = oracle::random_complex(rng, 2.0);
      if (std::abs(v) < 1e-3) continue;
      const double s = std::uniform_real_distribution<>(0.1, 5.0)(rng);
      // Positive homogeneity.
      CHECK_THAT(D.support_value(s * v), WithinAbs(s * D.support_value(v),
                                                   1e-9 * s * std::abs(v)));
      // The reported maximizer attains the reported value and lies in D.
      const hext::SupportResult r = D.support(v);
      CHECK_THAT(std::real(v * r.point), WithinAbs(r.value,
                                                   1e-9 * std::abs(v)));
      // Sampled variants may report interpolated points a hair outside the
      // sample polygon; O(h^2) slack covers that.
      CHECK(D.contains(r.point, 1e-4));
    }
  }
}

TEST_CASE("support_gap and contains") {
  const ConvexDomain S = unit_square();
  CHECK_THAT(S.support_gap(0.0), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(S.support_gap(Complex(2, 0)), WithinAbs(1.0, 1e-12));
  CHECK_THAT(S.support_gap(Complex(2, 2)), WithinAbs(std::sqrt(2.0), 1e-12));
  CHECK(S.contains(Complex(1, 1), 0.0));
  CHECK_FALSE(S.contains(Complex(1.001, 0), 0.0));

  const ConvexDomain D = ConvexDomain::disc(Complex(1, 1), 2.0);
  CHECK_THAT(D.support_gap(Complex(1, 1)), WithinAbs(-2.0, 1e-15));
  CHECK_THAT(D.support_gap(Complex(4, 1)), WithinAbs(1.0, 1e-15));

  const ConvexDomain E = ConvexDomain::ellipse(0.0, 2.0, 1.0, 0.0);
  CHECK_THAT(E.support_gap(Complex(0, 1)), WithinAbs(0.0, 1e-8));
  CHECK(E.contains(Complex(1.9, 0), 1e-9));
  CHECK_FALSE(E.contains(Complex(0, 1.01), 1e-9));

  // Image of the counterexample member: rightmost point at kFatOne.
  const ConvexDomain F = hext::from_family({0.0, 0.5, 1.0}, 2048);
  CHECK(F.contains(Complex(0.8700, 0), 1e-9));
  CHECK_FALSE(F.contains(Complex(0.8710, 0), 1e-9));
  CHECK_THAT(F.support_value(1.0), WithinAbs(kFatOne, 1e-7));
  CHECK_THAT(F.support_value(Complex(0, -1)), WithinAbs(kFatI, 1e-7));
  // Height-to-width ratio of the image domain.
  CHECK_THAT(F.support_value(Complex(0, -1)) / F.support_value(1.0),
             WithinAbs(1.4320108, 1e-4));
}

TEST_CASE("perimeter") {
  CHECK_THAT(unit_square().perimeter(), WithinAbs(8.0, 1e-12));
  CHECK_THAT(ConvexDomain::disc(Complex(3, -2), 2.0).perimeter(),
             WithinAbs(2.0 * hext::kTau, 1e-12));

  // Ellipse circumference against the arc-length oracle (4 a E(e)).
  const double arc =
      oracle::simpson(
          [](Complex t) {
            const double s = std::real(t);
            return Complex(std::hypot(2.0 * std::sin(s), std::cos(s)), 0.0);
          },
          0.0, hext::kTau, 4096)
          .real();
  CHECK_THAT(arc, WithinAbs(9.6884482205, 1e-8));
  CHECK_THAT(ConvexDomain::ellipse(0.0, 2.0, 1.0, 0.6).perimeter(),
             WithinAbs(arc, 1e-8));

  // Sampled circle.
  CHECK_THAT(hext::from_family({0.0, 0.0, 1.0}, 1024).perimeter(),
             WithinAbs(hext::kTau, 1e-6));

  // Random polygons: closed-form arcs agree with the edge-length sum.
  std::mt19937 rng(107);
  for (int trial = 0; trial < 20; ++trial) {
    const ConvexDomain P = oracle::random_convex_polygon(rng);
    const auto& poly = std::get<ConvexDomain::Polygon>(P.shape());
    const int m = static_cast<int>(poly.vertices.size());
    double edges = 0.0;
    for (int k = 0; k < m; ++k)
      edges += std::abs(poly.vertices[(k + 1) % m] - poly.vertices[k]);
    CHECK_THAT(P.perimeter(), WithinAbs(edges, 1e-10 * edges));
  }
}

TEST_CASE("translated shifts the support geometry") {
  std::mt19937 rng(109);
  const ConvexDomain D = ConvexDomain::ellipse(Complex(0.4, -0.1), 1.5, 0.8,
                                               0.2);
  const Complex p(0.3, 0.25);
  const ConvexDomain D0 = D.translated(p);
  for (int k = 0; k < 50; ++k) {
    const Complex w = oracle::random_complex(rng, 2.0);
    CHECK_THAT(D0.support_gap(w - p), WithinAbs(D.support_gap(w), 1e-9));
  }
  CHECK_THAT(D0.perimeter(), WithinAbs(D.perimeter(), 1e-9));
}

TEST_CASE("diameter") {
  CHECK_THAT(ConvexDomain::disc(Complex(5, 5), 2.0).diameter(),
             WithinAbs(4.0, 1e-9));
  CHECK_THAT(unit_square().diameter(), WithinAbs(2.0 * std::sqrt(2.0), 1e-6));
  // 512 antipodal directions miss the exact major axis by O(dt^2).
  CHECK_THAT(ConvexDomain::ellipse(0.0, 2.0, 1.0, 0.9).diameter(),
             WithinAbs(4.0, 1e-4));
}

TEST_CASE("from_family") {
  CHECK_THROWS_AS(hext::from_family({0.0, 0.0, 1.0}, 128),
                  std::invalid_argument);
  CHECK_THROWS_AS(hext::from_family({2.0, 0.0, 1.0}, 512),
                  std::invalid_argument);
  // Identity member: the unit circle.
  const ConvexDomain C = hext::from_family({0.0, 0.0, 1.0}, 512);
  std::mt19937 rng(113);
  for (int k = 0; k < 100; ++k) {
    const Complex v = oracle::random_complex(rng, 2.0);
    if (std::abs(v) < 1e-3) continue;
    CHECK_THAT(C.support_value(v), WithinAbs(std::abs(v), 1e-6 * std::abs(v)));
  }
  // Moebius member is a disc of radius 1 centred at -p.
  const double p = 0.3;
  const ConvexDomain M =
      hext::from_family({2 * p, p * p, 1.0 - p * p}, 1024);
  CHECK_THAT(M.support_gap(Complex(-p, 0)), WithinAbs(-1.0, 1e-5));
  CHECK_THAT(M.perimeter(), WithinAbs(hext::kTau, 1e-5));
}
