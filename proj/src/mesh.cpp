#include "dhg/mesh.hpp"

#include <numeric>

namespace dhg {

namespace {

long floordiv(long a, long b) {
  long q = a / b, r = a % b;
  return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

long ceildiv(long a, long b) { return -floordiv(-a, b); }

// Extended gcd: returns g and x, y with a x + b y = g.
long ext_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = (a < 0) ? -1 : 1;
    y = 0;
    return std::abs(a);
  }
  long x1, y1;
  long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

bool angle_le_60(IVec2 u, IVec2 v) {
  long D = dot2(u, v);  // 2 * dot
  if (D < 0) return false;
  return D * D >= len2(u) * len2(v);  // cos >= 1/2
}

}  // namespace

IVec2 rot3(IVec2 v, int k) {
  k = ((k % 3) + 3) % 3;
  for (int i = 0; i < k; ++i) v = {v.y, -v.x - v.y};  // C: (1,0)->(0,-1), (0,1)->(1,-1)
  return v;
}

RegularTorus::RegularTorus(LatticeBasis basis) : basis_(basis) {
  det_ = basis.det();
  if (det_ <= 0) throw NonPositiveBasis("det(gamma, eta) must be positive");
  long s, t;
  hnf_c_ = ext_gcd(basis.gamma.y, basis.eta.y, s, t);
  if (hnf_c_ == 0) throw NonPositiveBasis("lattice is degenerate");
  IVec2 v2 = basis.gamma * s + basis.eta * t;  // y-component hnf_c_
  hnf_a_ = det_ / hnf_c_;
  hnf_b_ = v2.x - floordiv(v2.x, hnf_a_) * hnf_a_;
  for (IVec2 d : kEdgeDirs)
    if (in_lattice(d))
      throw NonRegularQuotient("an edge direction lies in the lattice");
}

bool RegularTorus::in_lattice(IVec2 v) const {
  if (v.y % hnf_c_ != 0) return false;
  long k = v.y / hnf_c_;
  return (v.x - k * hnf_b_) % hnf_a_ == 0;
}

IVec2 RegularTorus::canon(IVec2 v) const {
  long k = floordiv(v.y, hnf_c_);
  long y = v.y - k * hnf_c_;
  long x = v.x - k * hnf_b_;
  x -= floordiv(x, hnf_a_) * hnf_a_;
  return {x, y};
}

long RegularTorus::index(IVec2 v) const {
  IVec2 c = canon(v);
  return c.y * hnf_a_ + c.x;
}

IVec2 RegularTorus::coords(long i) const { return {i % hnf_a_, i / hnf_a_}; }

std::array<long, 3> RegularTorus::black_vertices(long b) const {
  IVec2 v = coords(b);
  return {index(v), index(v + IVec2{1, 0}), index(v + IVec2{0, 1})};
}

std::array<long, 3> RegularTorus::white_vertices(long w) const {
  IVec2 v = coords(w);
  return {index(v + IVec2{1, 0}), index(v + IVec2{1, 1}), index(v + IVec2{0, 1})};
}

std::array<long, 6> RegularTorus::neighbors(long vi) const {
  IVec2 v = coords(vi);
  std::array<long, 6> r;
  const IVec2 offs[6] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
  for (int i = 0; i < 6; ++i) r[i] = index(v + offs[i]);
  return r;
}

long RegularTorus::direction_period(IVec2 dir) const {
  for (long g = 1; g <= det_; ++g)
    if (in_lattice(dir * g)) return g;
  throw NonRegularQuotient("no period in direction");  // unreachable
}

RegularTorus build_regular_torus(LatticeBasis basis) {
  return RegularTorus(basis);
}

RegularTorus thin_torus(long n) {
  if (n < 3) throw TooSmall("thin torus needs length >= 3");
  return RegularTorus({{n, 0}, {1, 1}});
}

LatticeBasis adapted_basis(const RegularTorus& torus, int direction) {
  IVec2 u = kEdgeDirs[direction];
  long g = torus.direction_period(u);
  IVec2 gamma = u * g;
  // Express gamma in the stored basis and complete to a positive basis.
  long det = torus.size();
  long s = lattice_det(gamma, torus.basis().eta) / det;
  long t = lattice_det(torus.basis().gamma, gamma) / det;
  long q, y;
  ext_gcd(s, t, q, y);  // s q + t y = 1; with p = -y: s q - t p = 1
  IVec2 eta = torus.basis().gamma * (-y) + torus.basis().eta * q;
  return normalize_adapted_basis({gamma, eta});
}

LatticeBasis normalize_adapted_basis(const LatticeBasis& basis) {
  LatticeBasis b = basis;
  while (!angle_le_60(b.gamma, b.eta)) b.eta = b.eta + b.gamma;
  while (angle_le_60(b.gamma, b.eta - b.gamma)) b.eta = b.eta - b.gamma;
  return b;
}

DerivedDecomposition derive(const RegularTorus& torus) {
  return {&torus, 1};
}

DerivedDecomposition derive(const DerivedDecomposition& d) {
  return {d.torus, d.generation + 1};
}

FundamentalDomain::FundamentalDomain(const RegularTorus& torus, int direction,
                                     IVec2 base_vertex)
    : torus_(&torus), dir_(direction), v0_(base_vertex) {
  adapted_ = adapted_basis(torus, direction);
  IVec2 gf = rot3(adapted_.gamma, -dir_);
  IVec2 ef = rot3(adapted_.eta, -dir_);
  n_ = gf.x;
  e1_ = ef.x;
  m_ = ef.y;
  if (gf.y != 0 || n_ <= 0 || m_ <= 0 || e1_ < 0 || e1_ >= n_)
    throw NonRegularQuotient("adapted basis normalization failed");
}

long FundamentalDomain::row_start(long r) const { return ceildiv(r * e1_, m_); }

IVec2 FundamentalDomain::frame_to_world(IVec2 f) const {
  return v0_ + rot3(f, dir_);
}

IVec2 FundamentalDomain::world_to_frame(IVec2 w) const {
  return rot3(w - v0_, -dir_);
}

IVec2 FundamentalDomain::slot_world(long r, long j) const {
  return frame_to_world({row_start(r) + j, r});
}

FundamentalDomain::Reduced FundamentalDomain::reduce(IVec2 world_vertex) const {
  IVec2 f = world_to_frame(world_vertex);
  long q = floordiv(f.y, m_);
  long r = f.y - q * m_;
  long x = f.x - q * e1_;
  long a0 = row_start(r);
  long p = floordiv(x - a0, n_);
  long j = x - a0 - p * n_;
  return {r * n_ + j, p, q};
}

IVec2 FundamentalDomain::triangle_frame_anchor(long r, long j) const {
  return {row_start(r + 1) + j, r};
}

FundamentalDomain fundamental_domain(const RegularTorus& torus, int direction,
                                     IVec2 base_vertex) {
  return FundamentalDomain(torus, direction, base_vertex);
}

}  // namespace dhg
