#pragma once

#include <vector>

#include "dhg/holo.hpp"
#include "dhg/mesh.hpp"
#include "dhg/quatlin.hpp"

namespace dhg {

struct Multiplier {
  Complex mu{1, 0}, lambda{1, 0};
};

// Section with multiplier (mu, lambda): values live on the fundamental
// domain; crossing gamma multiplies by mu, crossing eta by lambda.
struct MonodromySection {
  const FundamentalDomain* fd = nullptr;
  CVector values;  // 2 complex entries per fundamental-domain slot
  Multiplier mult;

  Quaternion slot_value(long slot) const {
    return Quaternion::from_pair(values(2 * slot), values(2 * slot + 1));
  }
  Quaternion value_at(IVec2 world_vertex) const;
};

struct SpectrumSample {
  Complex mu, lambda;
  double min_singular_value = 0;
};

struct SpectralData {
  long lambda_degree = 0;    // 2n
  long mu_degree_bound = 0;  // 2nm
  // coeffs(k, d) = coefficient of lambda^k mu^d in det(lambda I - H(mu)).
  CMatrix coeffs;
  std::vector<Complex> ends[3];  // horizontal holonomies per direction
  bool generic = false;
  double rho_symmetry_dev = 0;  // max relative imaginary part of coeffs
  bool splits = false;          // values in CP^1: P factors
  CMatrix factor1, factor2;     // the two conjugate factors when splits
  std::vector<SpectrumSample> samples;

  Complex eval(Complex mu, Complex lambda) const;
};

// Complexified row transfer operator T_i(mu): row-i values -> row-(i+1)
// values (top row wraps by eta, with the lambda factor dropped).
CMatrix transfer_row(const HolomorphicStructure& hs,
                     const FundamentalDomain& fd, long i, Complex mu);

CMatrix holonomy_H(const HolomorphicStructure& hs, const FundamentalDomain& fd,
                   Complex mu);

// Full operator D_{mu,lambda}: 2|B| x 2|V|, kernel = holomorphic sections
// with the given multiplier.
CMatrix assemble_D(const HolomorphicStructure& hs, const FundamentalDomain& fd,
                   const Multiplier& mult);

SpectralData char_poly(const HolomorphicStructure& hs,
                       const FundamentalDomain& fd);

// Eigenvalue pair {mu_i, conj mu_i} of the quaternionic holonomy of the
// row-i connection.
std::array<Complex, 2> horizontal_holonomies(const HolomorphicStructure& hs,
                                             const FundamentalDomain& fd,
                                             long i);

struct GenericityReport {
  bool generic = false;
  long ends_count = 0;
  std::vector<Complex> per_direction[3];
  std::string witness;  // description of a coinciding pair when non-generic
};

GenericityReport genericity_check(const HolomorphicStructure& hs,
                                  const RegularTorus& torus);

MonodromySection eigen_section(const HolomorphicStructure& hs,
                               const FundamentalDomain& fd,
                               const Multiplier& mult,
                               double rel_tol = 1e-6,
                               double* sigma_min_out = nullptr);

// Prolongation of the eigen-section over the black triangle anchored at
// world_anchor, as a point of CP^3 (in the chart of hs).
CPoint3 F_hat(const HolomorphicStructure& hs, const MonodromySection& s,
              IVec2 world_anchor);

// Coefficient triple of black triangle `black` reordered to the frame roles
// (lower-left, lower-right, apex) of direction `dir`.
struct TriRef {
  long black;
  std::array<Quaternion, 3> c;  // (c_bl, c_br, c_apex)
};
TriRef tri_ref(const HolomorphicStructure& hs, const FundamentalDomain& fd,
               IVec2 frame_anchor);

}  // namespace dhg
