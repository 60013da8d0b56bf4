#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "dhg/polygon.hpp"
#include "dhg/randgen.hpp"

using namespace dhg;

TEST_CASE("polygon admissibility") {
  DiscreteCurve c = regular_ngon(5);
  check_polygon(c);
  c.points[2] = c.points[1];
  CHECK_THROWS_AS(check_polygon(c, false), NotAPolygon);
  // consecutive distinct but second-neighbor equal violates the polygon
  // condition only
  DiscreteCurve d = regular_ngon(6);
  d.points[2] = d.points[0];
  check_polygon(d, false);
  CHECK_THROWS_AS(check_polygon(d, true), NotAPolygon);
}

TEST_CASE("darboux step reproduces the cross-ratio") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    HPoint g{{Quaternion{u(rng), u(rng), u(rng), u(rng)},
              Quaternion{u(rng), u(rng), u(rng), u(rng)}}};
    HPoint gp{{Quaternion{u(rng), u(rng), u(rng), u(rng)},
               Quaternion{u(rng), u(rng), u(rng), u(rng)}}};
    QVec2 eta{Quaternion{u(rng), u(rng), u(rng), u(rng)},
              Quaternion{u(rng), u(rng), u(rng), u(rng)}};
    Complex lambda{0.35, 0.2};
    QVec2 etap = curve_darboux_step(g, gp, eta, lambda);
    CHECK(curve_cross_ratio_check(g, gp, HPoint{eta}, HPoint{etap}, lambda) <
          1e-8);
  }
}

TEST_CASE("holonomy at lambda = 1 is the identity") {
  DiscreteCurve c = random_polygon(7, 88);
  Eigen::Matrix4cd H = curve_holonomy(c, Complex{1, 0});
  CHECK((H - Eigen::Matrix4cd::Identity()).norm() < 1e-9);
}

TEST_CASE("polygon spectral data: odd length") {
  DiscreteCurve c = random_polygon(5, 12);
  PolygonSpectral ps = polygon_spectral(c);
  CHECK(ps.hmax_degree == 3);
  CHECK(ps.hmax_nilpotent);
  CHECK((ps.Hmax * ps.Hmax).norm() < 1e-10 * (1 + ps.Hmax.norm()));
  CHECK(ps.h0_kills_L1);
  CHECK(ps.rho_symmetry_dev < 1e-10);
  // char poly vanishes on the eigenvalues of the holonomy
  for (double x : {0.3, -1.7}) {
    Complex lambda{x, 0.4};
    Eigen::Matrix4cd H = curve_holonomy(c, lambda);
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(H);
    double scale = ps.coeffs.cwiseAbs().maxCoeff();
    for (int i = 0; i < 4; ++i) {
      Complex mu = es.eigenvalues()(i);
      double lscale = std::pow(std::abs(lambda) + 1, ps.lambda_degree_bound);
      CHECK(std::abs(ps.eval(lambda, mu)) <
            1e-6 * scale * lscale * std::pow(std::abs(mu) + 1, 4));
    }
  }
}

TEST_CASE("polygon spectral data: even length") {
  DiscreteCurve c = random_polygon(6, 9);
  PolygonSpectral ps = polygon_spectral(c);
  CHECK(ps.hmax_degree == 3);
  CHECK(ps.hmax_invertible);
  CHECK(!ps.hmax_nilpotent);
  CHECK(ps.h0_kills_L1);
}

TEST_CASE("complex polygons split over CP1") {
  DiscreteCurve c = random_polygon(5, 33, /*complex_values=*/true);
  PolygonSpectral ps = polygon_spectral(c);
  CHECK(ps.splits);
  // the two factors are exchanged by conjugation of both variables
  CHECK(ps.factor1.rows() > 0);
  CMatrix conj2 = ps.factor2.conjugate();
  double s1 = ps.factor1.cwiseAbs().maxCoeff();
  CHECK((canonicalize_coeffs(ps.factor1) - canonicalize_coeffs(conj2)).norm() <
        1e-6 * s1 / s1);
}

TEST_CASE("canonicalize_coeffs normalizes scale and padding") {
  CMatrix m = CMatrix::Zero(4, 5);
  m(1, 1) = 2.0;
  m(1, 2) = Complex{0, -4};
  m(2, 1) = 1.0;
  CMatrix a = canonicalize_coeffs(m);
  CMatrix b = canonicalize_coeffs(CMatrix(m * Complex{0.3, 1.7}));
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 2);
  CHECK((a - b).norm() < 1e-12);
}

TEST_CASE("thin cylinder bridge wraps the polygon") {
  DiscreteCurve c = random_polygon(6, 14);
  CylinderBridge cb = thin_cylinder_bridge(c);
  CHECK(cb.torus.size() == 6);
  for (long k = 0; k < 6; ++k)
    CHECK(hp_distance(cb.immersion.values[k], c.points[k]) < 1e-14);
}

TEST_CASE("polygon flow steps are darboux transforms") {
  DiscreteCurve c = regular_ngon(5);
  Complex lambda{0.4, 0};
  auto steps = polygon_flow(c, lambda, 3, 0);
  CHECK(steps.size() == 3);
  const DiscreteCurve* prev = &c;
  for (const auto& cur : steps) {
    check_polygon(cur, false);
    for (long k = 0; k < cur.size(); ++k)
      CHECK(curve_cross_ratio_check(prev->at(k), prev->at(k + 1), cur.at(k),
                                    cur.at(k + 1), lambda) < 1e-7);
    prev = &cur;
  }
  // the spectral curve is preserved along the flow
  CMatrix c0 = canonicalize_coeffs(polygon_spectral(c).coeffs, 1e-8);
  CMatrix c2 = canonicalize_coeffs(polygon_spectral(steps[2]).coeffs, 1e-8);
  REQUIRE(c0.rows() == c2.rows());
  REQUIRE(c0.cols() == c2.cols());
  CHECK((c0 - c2).norm() < 1e-6 * c0.norm());
}
