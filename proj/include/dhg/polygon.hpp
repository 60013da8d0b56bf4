#pragma once

#include <vector>

#include "dhg/holo.hpp"
#include "dhg/mesh.hpp"
#include "dhg/quatlin.hpp"

namespace dhg {

struct DiscreteCurve {
  std::vector<HPoint> points;
  bool closed = true;

  long size() const { return static_cast<long>(points.size()); }
  const HPoint& at(long k) const {
    long n = size();
    return points[((k % n) + n) % n];
  }
};

// Throws NotAPolygon unless gamma != gamma+ (and gamma != gamma++ when
// polygon_condition is set) everywhere.
void check_polygon(const DiscreteCurve& c, bool polygon_condition = true);

// One step of the cross-ratio Darboux recursion: eta+ = P eta + (Q eta) lambda
// with P, Q the splitting projections of (gamma, gamma+).
QVec2 curve_darboux_step(const HPoint& gamma, const HPoint& gamma_plus,
                         const QVec2& eta_hat, Complex lambda);

// Deviation of the conjugacy pair (Re, |.|) of M4(gamma, eta+, gamma+, eta)
// from that of lambda.
double curve_cross_ratio_check(const HPoint& gamma, const HPoint& gamma_plus,
                               const HPoint& eta, const HPoint& eta_plus,
                               Complex lambda);

Eigen::Matrix4cd curve_holonomy(const DiscreteCurve& c, Complex lambda);

struct PolygonSpectral {
  long mu_degree = 4;
  long lambda_degree_bound = 0;
  // coeffs(k, d) = coefficient of mu^k lambda^d in det(mu I - H(lambda)).
  CMatrix coeffs;
  Eigen::Matrix4cd H0, Hmax;
  long hmax_degree = 0;
  bool hmax_nilpotent = false;
  bool hmax_invertible = false;
  bool h0_kills_L1 = false;
  bool simple_eigenvalues = false;
  double rho_symmetry_dev = 0;
  bool splits = false;
  CMatrix factor1, factor2;

  Complex eval(Complex lambda, Complex mu) const;
};

PolygonSpectral polygon_spectral(const DiscreteCurve& c);

struct CylinderBridge {
  RegularTorus torus;
  Immersion immersion;
};

// A closed polygon as an immersion of the thin torus of the same length.
CylinderBridge thin_cylinder_bridge(const DiscreteCurve& c);

// Iterated Darboux transforms seeded by holonomy eigenlines: the doubly
// discrete curve flow.  Returns the iterates (not including the input).
std::vector<DiscreteCurve> polygon_flow(const DiscreteCurve& c, Complex lambda,
                                        long steps, int eigenline_index);

// Trim zero boundary rows/columns, scale so the largest coefficient is 1,
// and fix the global phase; two coefficient matrices describe the same plane
// curve iff their canonical forms agree (up to monomial factors).
CMatrix canonicalize_coeffs(const CMatrix& coeffs, double rel_tol = 1e-10);

}  // namespace dhg
