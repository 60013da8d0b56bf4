#pragma once

#include <map>
#include <vector>

#include "dhg/holo.hpp"
#include "dhg/mesh.hpp"
#include "dhg/spectral.hpp"

namespace dhg {

// Prolongation of a holomorphic section: one psi_hat in H^2 per black
// triangle (canonical index), extended over translates by the multiplier.
struct Prolongation {
  const RegularTorus* torus = nullptr;
  std::vector<QVec2> values;
  LatticeBasis basis;  // adapted basis the multiplier refers to
  Multiplier mult;
  QMat2 chart = QMat2::identity();
  bool chart_is_identity = true;

  QVec2 value_at(IVec2 world_anchor) const;
};

Prolongation prolong(const MonodromySection& s, const HolomorphicStructure& hs,
                     const Immersion& f);
// Plain section with trivial multiplier.
Prolongation prolong(const Section& s, const HolomorphicStructure& hs,
                     const RegularTorus& torus);

struct DarbouxTransform {
  std::vector<HPoint> values;  // per parent black triangle = M' vertex
  Multiplier provenance;
};

DarbouxTransform darboux_from_section(const Prolongation& p,
                                      const Immersion& f);

struct MultiRatioReport {
  double max_dev = 0;
  long worst_white = -1;
};

// Multi-ratio check of face values against vertex values around every white
// triangle; identical combinatorics serves every generation (vertex values
// indexed like parent vertices, face values like parent black triangles).
MultiRatioReport verify_multiratio(const RegularTorus& torus,
                                   const std::vector<HPoint>& vertex_vals,
                                   const std::vector<HPoint>& face_vals);
MultiRatioReport verify_multiratio(const Immersion& f,
                                   const DarbouxTransform& ft,
                                   const RegularTorus& torus);

// Quaternionic holonomy of the transform connection around white triangle w;
// trivial (= 1) iff the multi-ratio condition holds there.
Quaternion connection_holonomy(const RegularTorus& torus,
                               const std::vector<HPoint>& vertex_vals,
                               const std::vector<HPoint>& face_vals, long w);

struct BianchiResult {
  DarbouxTransform f_tilde;       // per parent white triangle = M'' vertex
  std::vector<QVec2> phi_hat;     // spanning lifts, chart coordinates
  std::vector<Quaternion> chi;    // per white triangle
  double max_chi_dev = 0;
  Multiplier mult_sharp, mult_flat;
};

BianchiResult bianchi(const Immersion& f, const Prolongation& p_sharp,
                      const Prolongation& p_flat);

// phi_hat and chi at one (possibly translated) white anchor.
std::pair<QVec2, Quaternion> bianchi_at(const Prolongation& p_sharp,
                                        const Prolongation& p_flat,
                                        IVec2 white_anchor,
                                        double* chi_dev = nullptr);

using CubeField = std::map<std::array<long, 3>, Quaternion>;

// Max deviation |M6 + 1| over all evaluable cubes of the field.
double ds_cube_check(const CubeField& x);

// Three stacked generations f (vertices), f# (blacks), f~ (whites) arranged
// as a Z^3 field: (n1,n2,n3) with h = n1+n2+n3 in {0,1,2} maps to the
// generation-h cell at lattice coords (-n2,-n3).
CubeField ds_assemble(const RegularTorus& torus,
                      const std::vector<HPoint>& f,
                      const std::vector<HPoint>& fs,
                      const std::vector<HPoint>& ft);

}  // namespace dhg
