#pragma once

#include <array>
#include <vector>

#include "dhg/mesh.hpp"
#include "dhg/quatlin.hpp"

namespace dhg {

constexpr double kHolomorphicTol = 1e-9;

// Per-vertex map into HP1; values indexed by canonical vertex index.
struct Immersion {
  std::vector<HPoint> values;

  long size() const { return static_cast<long>(values.size()); }
};

// Annihilator coefficients (c_p, c_q, c_r) with c_p x_p + c_q x_q + c_r x_r
// = 0 and c_p + c_q + c_r = 0, normalized to c_r = -1.
std::array<Quaternion, 3> annihilator_form(const Quaternion& x_p,
                                           const Quaternion& x_q,
                                           const Quaternion& x_r);

// Holomorphic structure over a fixed torus, stored as one annihilator triple
// per black triangle in canonical vertex order (anchor, anchor+(1,0),
// anchor+(0,1)).  `chart` records the Moebius normalization applied to the
// immersion before taking affine coordinates (identity unless some value was
// near infinity); `x` are the affine values in that chart.
struct HolomorphicStructure {
  std::vector<std::array<Quaternion, 3>> coeff;
  std::vector<Quaternion> x;  // per-vertex affine chart values (empty if N/A)
  QMat2 chart = QMat2::identity();
  bool chart_is_identity = true;
};

HolomorphicStructure induced_structure(const Immersion& f,
                                       const RegularTorus& torus);

// Per-vertex quaternion values in the trivialization.
struct Section {
  std::vector<Quaternion> values;
};

// Max relative residual of the annihilator forms over all black triangles.
double is_holomorphic(const Section& s, const HolomorphicStructure& hs,
                      const RegularTorus& torus);

struct LinearSystem {
  Section psi, phi;
};

// Projections of the constant sections e1, e2 of V to V/L in the chart of hs.
LinearSystem canonical_linear_system(const HolomorphicStructure& hs);

Immersion kodaira_inverse(const LinearSystem& H, const RegularTorus& torus);

// Planar patch of the equilateral triangulation: black triangles anchored at
// (a, b), 0 <= a < width, 0 <= b < height, vertices indexed row-major on
// the (width+1) x (height+1) grid.
struct PlanarPatch {
  long width = 1, height = 1;

  long vertex(long a, long b) const { return b * (width + 1) + a; }
  long num_vertices() const { return (width + 1) * (height + 1); }
  long num_black() const { return width * height; }
  std::array<long, 3> black_vertices(long t) const {
    long a = t % width, b = t / width;
    return {vertex(a, b), vertex(a + 1, b), vertex(a, b + 1)};
  }
};

// The equilateral example: complex coefficients (1, omega, omega^2) per
// black triangle; holomorphic maps send black triangles to positively
// oriented equilateral triangles.
HolomorphicStructure vacuum_structure(const PlanarPatch& patch);

double is_holomorphic_patch(const Section& s, const HolomorphicStructure& hs,
                            const PlanarPatch& patch);

}  // namespace dhg
