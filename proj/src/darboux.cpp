#include "dhg/darboux.hpp"

#include <climits>
#include <functional>
#include <random>

namespace dhg {

namespace {

Complex ipow(Complex z, long p) {
  if (p == 0) return {1, 0};
  if (p < 0) return 1.0 / ipow(z, -p);
  Complex r{1, 0};
  while (p--) r *= z;
  return r;
}

// Affine values of a family of HPoints, applying one joint random Moebius
// normalization if any of them is close to infinity.
std::vector<Quaternion> joint_affine(
    const std::vector<const std::vector<HPoint>*>& families) {
  std::vector<Quaternion> out;
  size_t total = 0;
  for (auto* f : families) total += f->size();
  out.reserve(total);
  bool bad = false;
  for (auto* f : families)
    for (const auto& p : *f)
      bad = bad || hp_distance(p, HPoint::infinity()) < 1e-6;
  QMat2 A = QMat2::identity();
  if (bad) {
    std::mt19937_64 rng(0x5eedf00dull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
      QMat2 cand{{u(rng), u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng), u(rng)},
                 {u(rng), u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng), u(rng)}};
      try {
        inverse(cand);
      } catch (const DegenerateSplitting&) {
        continue;
      }
      bool ok = true;
      for (auto* f : families)
        for (const auto& p : *f)
          ok = ok && hp_distance(HPoint{cand.apply(p.rep)},
                                 HPoint::infinity()) >= 1e-6;
      if (ok) {
        A = cand;
        bad = false;
        break;
      }
    }
    if (bad) throw NonInvertibleDifference("values cannot be moved off infinity");
  }
  for (auto* f : families)
    for (const auto& p : *f) out.push_back(*HPoint{A.apply(p.rep)}.affine());
  return out;
}

struct Hexagon {
  Quaternion x1, x12, x2, x23, x3, x13;
};

// Hexagon around white triangle w in the order of the multi-ratio condition:
// vertex values interleaved with the adjacent face values.
Hexagon hexagon_at(const RegularTorus& torus,
                   const std::vector<Quaternion>& vvals,
                   const std::vector<Quaternion>& fvals, long w) {
  IVec2 a = torus.coords(w);
  auto V = [&](IVec2 p) { return vvals[torus.index(p)]; };
  auto F = [&](IVec2 p) { return fvals[torus.index(p)]; };
  return {V(a + IVec2{1, 0}), F(a + IVec2{1, 0}), V(a + IVec2{1, 1}),
          F(a + IVec2{0, 1}), V(a + IVec2{0, 1}), F(a)};
}

}  // namespace

QVec2 Prolongation::value_at(IVec2 world_anchor) const {
  IVec2 rep = torus->canon(world_anchor);
  IVec2 delta = world_anchor - rep;
  long det = basis.det();
  long p = lattice_det(delta, basis.eta) / det;
  long q = lattice_det(basis.gamma, delta) / det;
  return values[torus->index(rep)].rmul(ipow(mult.mu, p) *
                                        ipow(mult.lambda, q));
}

namespace {

Prolongation prolong_impl(const std::function<Quaternion(IVec2)>& y_at,
                          const HolomorphicStructure& hs,
                          const RegularTorus& torus, LatticeBasis basis,
                          Multiplier mult) {
  Prolongation P;
  P.torus = &torus;
  P.basis = basis;
  P.mult = mult;
  P.chart = hs.chart;
  P.chart_is_identity = hs.chart_is_identity;
  P.values.resize(torus.size());
  const IVec2 off[3] = {{0, 0}, {1, 0}, {0, 1}};
  for (long b = 0; b < torus.size(); ++b) {
    IVec2 anchor = torus.coords(b);
    Quaternion x[3], y[3];
    for (int v = 0; v < 3; ++v) {
      x[v] = hs.x[torus.index(anchor + off[v])];
      y[v] = y_at(anchor + off[v]);
    }
    int p = 0, q = 1, r = 2;
    double best = 0;
    const int pairs[3][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}};
    for (auto& pr : pairs) {
      double d = (x[pr[0]] - x[pr[1]]).norm();
      if (d > best) best = d, p = pr[0], q = pr[1], r = pr[2];
    }
    Quaternion beta = (x[q] - x[p]).inverse() * (y[p] - y[q]);
    Quaternion alpha = y[p] + x[p] * beta;
    double scale = std::max({y[0].norm(), y[1].norm(), y[2].norm(), 1e-300});
    if ((alpha - x[r] * beta - y[r]).norm() > 1e-8 * scale)
      throw InconsistentSection("third vertex of black triangle " +
                                std::to_string(b));
    P.values[b] = {alpha, beta};
  }
  return P;
}

}  // namespace

Prolongation prolong(const MonodromySection& s, const HolomorphicStructure& hs,
                     const Immersion& f) {
  (void)f;
  const RegularTorus& torus = s.fd->torus();
  return prolong_impl([&](IVec2 v) { return s.value_at(v); }, hs, torus,
                      s.fd->adapted(), s.mult);
}

Prolongation prolong(const Section& s, const HolomorphicStructure& hs,
                     const RegularTorus& torus) {
  return prolong_impl([&](IVec2 v) { return s.values[torus.index(v)]; }, hs,
                      torus, normalize_adapted_basis(adapted_basis(torus, 0)),
                      Multiplier{{1, 0}, {1, 0}});
}

DarbouxTransform darboux_from_section(const Prolongation& p,
                                      const Immersion& f) {
  DarbouxTransform dt;
  dt.provenance = p.mult;
  double scale = 0;
  for (const auto& v : p.values) scale = std::max(scale, v.norm());
  QMat2 back = QMat2::identity();
  if (!p.chart_is_identity) back = inverse(p.chart);
  dt.values.resize(p.values.size());
  std::string violations;
  for (size_t b = 0; b < p.values.size(); ++b) {
    if (p.values[b].norm() < 1e-12 * scale)
      throw ZeroProlongation("black triangle " + std::to_string(b));
    dt.values[b] = HPoint{back.apply(p.values[b])};
    auto verts = p.torus->black_vertices(static_cast<long>(b));
    for (long v : verts)
      if (hp_distance(dt.values[b], f.values[v]) < 1e-9)
        violations += " (" + std::to_string(b) + "," + std::to_string(v) + ")";
  }
  if (!violations.empty())
    throw RegularityViolation("transform meets f at" + violations);
  return dt;
}

MultiRatioReport verify_multiratio(const RegularTorus& torus,
                                   const std::vector<HPoint>& vertex_vals,
                                   const std::vector<HPoint>& face_vals) {
  auto affine = joint_affine({&vertex_vals, &face_vals});
  std::vector<Quaternion> vv(affine.begin(), affine.begin() + vertex_vals.size());
  std::vector<Quaternion> fv(affine.begin() + vertex_vals.size(), affine.end());
  MultiRatioReport rep;
  for (long w = 0; w < torus.size(); ++w) {
    Hexagon h = hexagon_at(torus, vv, fv, w);
    Quaternion m6;
    try {
      m6 = multi_ratio6(h.x1, h.x12, h.x2, h.x23, h.x3, h.x13);
    } catch (const NonInvertibleDifference& e) {
      throw NonInvertibleDifference("white triangle " + std::to_string(w) +
                                    ": " + e.what());
    }
    double dev = (m6 + kOne).norm();
    if (dev > rep.max_dev) {
      rep.max_dev = dev;
      rep.worst_white = w;
    }
  }
  return rep;
}

MultiRatioReport verify_multiratio(const Immersion& f,
                                   const DarbouxTransform& ft,
                                   const RegularTorus& torus) {
  return verify_multiratio(torus, f.values, ft.values);
}

Quaternion connection_holonomy(const RegularTorus& torus,
                               const std::vector<HPoint>& vertex_vals,
                               const std::vector<HPoint>& face_vals, long w) {
  auto affine = joint_affine({&vertex_vals, &face_vals});
  std::vector<Quaternion> vv(affine.begin(), affine.begin() + vertex_vals.size());
  std::vector<Quaternion> fv(affine.begin() + vertex_vals.size(), affine.end());
  Hexagon h = hexagon_at(torus, vv, fv, w);
  double scale = std::max({h.x1.norm(), h.x2.norm(), h.x3.norm(), h.x12.norm(),
                           h.x23.norm(), h.x13.norm()});
  auto inv = [&](Quaternion q, const char* what) {
    return inv_checked(q, scale, what);
  };
  return inv(h.x13 - h.x1, "x13-x1") * (h.x12 - h.x1) *
         inv(h.x12 - h.x2, "x12-x2") * (h.x23 - h.x2) *
         inv(h.x23 - h.x3, "x23-x3") * (h.x13 - h.x3);
}

std::pair<QVec2, Quaternion> bianchi_at(const Prolongation& p_sharp,
                                        const Prolongation& p_flat,
                                        IVec2 white_anchor, double* chi_dev) {
  const IVec2 blacks[3] = {white_anchor + IVec2{1, 0}, white_anchor + IVec2{0, 1},
                           white_anchor};
  QVec2 sharp[3], flat[3];
  for (int i = 0; i < 3; ++i) {
    sharp[i] = p_sharp.value_at(blacks[i]);
    flat[i] = p_flat.value_at(blacks[i]);
  }
  auto solve_chi = [&](int i, int j) {
    QVec2 A = sharp[j] - sharp[i];
    QVec2 B = flat[i] - flat[j];
    double scale = std::max(A.norm(), 1e-300);
    const Quaternion& Ac = (A.x0.norm() >= A.x1.norm()) ? A.x0 : A.x1;
    const Quaternion& Bc = (A.x0.norm() >= A.x1.norm()) ? B.x0 : B.x1;
    if (Ac.norm() < 1e-12 * scale)
      throw TransformsCollide("f# = fb at black triangle pair");
    return Ac.inverse() * Bc;
  };
  Quaternion chi = solve_chi(0, 1);
  double dev = 0;
  for (auto [i, j] : {std::pair{0, 2}, std::pair{1, 2}}) {
    Quaternion other = solve_chi(i, j);
    dev = std::max(dev, (other - chi).norm() / std::max(chi.norm(), 1e-300));
  }
  if (chi_dev) *chi_dev = dev;
  QVec2 phi = flat[0] + sharp[0] * chi;
  return {phi, chi};
}

BianchiResult bianchi(const Immersion& f, const Prolongation& p_sharp,
                      const Prolongation& p_flat) {
  (void)f;
  const RegularTorus& torus = *p_sharp.torus;
  // Hypothesis: the two transforms never collide.
  for (long b = 0; b < torus.size(); ++b) {
    HPoint s{p_sharp.values[b]}, t{p_flat.values[b]};
    if (hp_distance(s, t) < 1e-9)
      throw TransformsCollide("black triangle " + std::to_string(b));
  }
  BianchiResult res;
  res.mult_sharp = p_sharp.mult;
  res.mult_flat = p_flat.mult;
  res.f_tilde.values.resize(torus.size());
  res.phi_hat.resize(torus.size());
  res.chi.resize(torus.size());
  QMat2 back = QMat2::identity();
  if (!p_sharp.chart_is_identity) back = inverse(p_sharp.chart);
  for (long w = 0; w < torus.size(); ++w) {
    double dev = 0;
    auto [phi, chi] = bianchi_at(p_sharp, p_flat, torus.coords(w), &dev);
    if (dev > 1e-8)
      throw ChiInconsistent("white triangle " + std::to_string(w) +
                            " deviation " + std::to_string(dev));
    res.max_chi_dev = std::max(res.max_chi_dev, dev);
    res.phi_hat[w] = phi;
    res.chi[w] = chi;
    res.f_tilde.values[w] = HPoint{back.apply(phi)};
  }
  return res;
}

double ds_cube_check(const CubeField& x) {
  if (x.empty()) throw NonInvertibleDifference("empty field");
  long lo[3] = {LONG_MAX, LONG_MAX, LONG_MAX}, hi[3] = {LONG_MIN, LONG_MIN, LONG_MIN};
  for (const auto& [k, v] : x)
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], k[i]);
      hi[i] = std::max(hi[i], k[i]);
    }
  auto get = [&](long a, long b, long c) -> const Quaternion* {
    auto it = x.find({a, b, c});
    return it == x.end() ? nullptr : &it->second;
  };
  double worst = 0;
  bool any = false;
  for (long a = lo[0]; a < hi[0]; ++a)
    for (long b = lo[1]; b < hi[1]; ++b)
      for (long c = lo[2]; c < hi[2]; ++c) {
        const Quaternion* x1 = get(a + 1, b, c);
        const Quaternion* x12 = get(a + 1, b + 1, c);
        const Quaternion* x2 = get(a, b + 1, c);
        const Quaternion* x23 = get(a, b + 1, c + 1);
        const Quaternion* x3 = get(a, b, c + 1);
        const Quaternion* x13 = get(a + 1, b, c + 1);
        if (!(x1 && x12 && x2 && x23 && x3 && x13)) continue;
        any = true;
        Quaternion m6;
        try {
          m6 = multi_ratio6(*x1, *x12, *x2, *x23, *x3, *x13);
        } catch (const NonInvertibleDifference& e) {
          throw NonInvertibleDifference(
              "cube (" + std::to_string(a) + "," + std::to_string(b) + "," +
              std::to_string(c) + "): " + e.what());
        }
        worst = std::max(worst, (m6 + kOne).norm());
      }
  if (!any) throw NonInvertibleDifference("no complete cube in the field");
  return worst;
}

CubeField ds_assemble(const RegularTorus& torus, const std::vector<HPoint>& f,
                      const std::vector<HPoint>& fs,
                      const std::vector<HPoint>& ft) {
  auto affine = joint_affine({&f, &fs, &ft});
  long nv = torus.size();
  auto cell = [&](int gen, IVec2 p) {
    return affine[gen * nv + torus.index(p)];
  };
  CubeField field;
  for (long n2 = -3; n2 <= 1; ++n2)
    for (long n3 = -3; n3 <= 1; ++n3)
      for (long h = 0; h <= 2; ++h) {
        long n1 = h - n2 - n3;
        field[{n1, n2, n3}] = cell(static_cast<int>(h), {-n2, -n3});
      }
  return field;
}

}  // namespace dhg
