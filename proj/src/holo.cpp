#include "dhg/holo.hpp"

#include <random>

namespace dhg {

namespace {

double triple_residual(const std::array<Quaternion, 3>& c,
                       const std::array<Quaternion, 3>& y) {
  Quaternion r = c[0] * y[0] + c[1] * y[1] + c[2] * y[2];
  double scale = (c[0] * y[0]).norm() + (c[1] * y[1]).norm() + (c[2] * y[2]).norm();
  return r.norm() / std::max(scale, 1e-300);
}

}  // namespace

std::array<Quaternion, 3> annihilator_form(const Quaternion& x_p,
                                           const Quaternion& x_q,
                                           const Quaternion& x_r) {
  double scale = std::max({x_p.norm(), x_q.norm(), x_r.norm(), 1.0});
  Quaternion dpq = x_p - x_q;
  Quaternion dqp = x_q - x_p;
  if (dpq.norm() < kInvertibilityTol * scale ||
      (x_r - x_q).norm() < kInvertibilityTol * scale ||
      (x_r - x_p).norm() < kInvertibilityTol * scale)
    throw DegenerateTriangle("coincident triangle vertices");
  return {(x_r - x_q) * dpq.inverse(), (x_r - x_p) * dqp.inverse(),
          Quaternion{-1}};
}

HolomorphicStructure induced_structure(const Immersion& f,
                                       const RegularTorus& torus) {
  HolomorphicStructure hs;
  std::vector<HPoint> vals = f.values;
  // Move all values away from infinity with a recorded Moebius normalization
  // if needed.
  auto near_infinity = [](const HPoint& p) {
    return hp_distance(p, HPoint::infinity()) < 1e-6;
  };
  bool bad = false;
  for (const auto& p : vals) bad = bad || near_infinity(p);
  if (bad) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
      QMat2 A{{u(rng), u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng), u(rng)},
              {u(rng), u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng), u(rng)}};
      try {
        inverse(A);
      } catch (const DegenerateSplitting&) {
        continue;
      }
      std::vector<HPoint> moved(vals.size());
      bool ok = true;
      for (size_t i = 0; i < vals.size(); ++i) {
        moved[i] = HPoint{A.apply(vals[i].rep)};
        ok = ok && !near_infinity(moved[i]);
      }
      if (ok) {
        hs.chart = A;
        hs.chart_is_identity = false;
        vals = moved;
        break;
      }
    }
    if (hs.chart_is_identity)
      throw BlackTriangleDegenerate("could not normalize chart");
  }
  hs.x.resize(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) {
    auto a = vals[i].affine();
    if (!a) throw BlackTriangleDegenerate("vertex value at infinity");
    hs.x[i] = *a;
  }
  hs.coeff.resize(torus.size());
  for (long b = 0; b < torus.size(); ++b) {
    auto v = torus.black_vertices(b);
    try {
      hs.coeff[b] = annihilator_form(hs.x[v[0]], hs.x[v[1]], hs.x[v[2]]);
    } catch (const DegenerateTriangle&) {
      throw BlackTriangleDegenerate("black triangle " + std::to_string(b));
    }
  }
  return hs;
}

double is_holomorphic(const Section& s, const HolomorphicStructure& hs,
                      const RegularTorus& torus) {
  double worst = 0;
  for (long b = 0; b < torus.size(); ++b) {
    auto v = torus.black_vertices(b);
    worst = std::max(worst, triple_residual(hs.coeff[b],
                                            {s.values[v[0]], s.values[v[1]],
                                             s.values[v[2]]}));
  }
  return worst;
}

LinearSystem canonical_linear_system(const HolomorphicStructure& hs) {
  LinearSystem H;
  size_t nv = hs.x.size();
  H.psi.values.assign(nv, kOne);
  H.phi.values.resize(nv);
  for (size_t i = 0; i < nv; ++i) H.phi.values[i] = -hs.x[i];
  return H;
}

Immersion kodaira_inverse(const LinearSystem& H, const RegularTorus& torus) {
  Immersion f;
  double scale = 0;
  for (const auto& q : H.psi.values) scale = std::max(scale, q.norm());
  f.values.resize(H.psi.values.size());
  for (size_t i = 0; i < f.values.size(); ++i) {
    const Quaternion& psi = H.psi.values[i];
    if (psi.norm() < kInvertibilityTol * scale)
      throw BasePoint("psi vanishes at vertex " + std::to_string(i));
    f.values[i] = HPoint::from_affine(-(psi.inverse() * H.phi.values[i]));
  }
  for (long v = 0; v < torus.size(); ++v)
    for (long w : torus.neighbors(v))
      if (hp_distance(f.values[v], f.values[w]) < 1e-12)
        throw BasePoint("linear system not base-point-free on an edge");
  return f;
}

HolomorphicStructure vacuum_structure(const PlanarPatch& patch) {
  HolomorphicStructure hs;
  const double s3 = std::sqrt(3.0) / 2;
  Quaternion omega{-0.5, s3, 0, 0};
  hs.coeff.assign(patch.num_black(), {kOne, omega, omega * omega});
  return hs;
}

double is_holomorphic_patch(const Section& s, const HolomorphicStructure& hs,
                            const PlanarPatch& patch) {
  double worst = 0;
  for (long b = 0; b < patch.num_black(); ++b) {
    auto v = patch.black_vertices(b);
    worst = std::max(worst, triple_residual(hs.coeff[b],
                                            {s.values[v[0]], s.values[v[1]],
                                             s.values[v[2]]}));
  }
  return worst;
}

}  // namespace dhg
