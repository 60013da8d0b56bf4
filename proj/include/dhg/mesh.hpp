#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dhg/errors.hpp"

namespace dhg {

// Integer point in the triangular-lattice coordinate system.  The Euclidean
// embedding used for angle tests is (1,0) -> (1,0), (0,1) -> (1/2, sqrt3/2).
struct IVec2 {
  long x = 0, y = 0;

  IVec2 operator+(IVec2 o) const { return {x + o.x, y + o.y}; }
  IVec2 operator-(IVec2 o) const { return {x - o.x, y - o.y}; }
  IVec2 operator-() const { return {-x, -y}; }
  IVec2 operator*(long s) const { return {x * s, y * s}; }
  bool operator==(IVec2 o) const { return x == o.x && y == o.y; }
};

inline long lattice_det(IVec2 u, IVec2 v) { return u.x * v.y - u.y * v.x; }

// Twice the Euclidean dot product in the equilateral embedding (an integer).
inline long dot2(IVec2 u, IVec2 v) {
  return 2 * u.x * v.x + 2 * u.y * v.y + u.x * v.y + u.y * v.x;
}
// Squared Euclidean length in the equilateral embedding (an integer).
inline long len2(IVec2 u) { return u.x * u.x + u.y * u.y + u.x * u.y; }

struct LatticeBasis {
  IVec2 gamma, eta;
  long det() const { return lattice_det(gamma, eta); }
};

// The three edge directions: u0 + u1 + u2 = 0.  u_k = C^k (1,0) where C is
// the order-3 rotation (1,0)->(0,-1)->(-1,1).
inline const std::array<IVec2, 3> kEdgeDirs = {IVec2{1, 0}, IVec2{0, -1},
                                               IVec2{-1, 1}};
IVec2 rot3(IVec2 v, int k);  // C^k v, k mod 3

// Quotient of the equilateral triangulation of the plane by the lattice
// spanned by the basis.  Black (upward) triangle anchored at v has vertices
// {v, v+(1,0), v+(0,1)}; white (downward) triangle at v has
// {v+(1,0), v+(1,1), v+(0,1)}.  Vertices, black and white triangles are all
// indexed canonically by row-major order over the Hermite-normal-form
// fundamental domain.
class RegularTorus {
 public:
  explicit RegularTorus(LatticeBasis basis);

  const LatticeBasis& basis() const { return basis_; }
  long size() const { return det_; }  // |V| = |B| = |W|

  bool in_lattice(IVec2 v) const;
  IVec2 canon(IVec2 v) const;  // canonical coset representative
  long index(IVec2 v) const;   // canonical index of the coset of v
  IVec2 coords(long i) const;  // canonical representative of index i

  std::array<long, 3> black_vertices(long b) const;  // (ll, lr, top)
  std::array<long, 3> white_vertices(long w) const;  // (v+(1,0), v+(1,1), v+(0,1))
  std::array<long, 6> neighbors(long v) const;

  // Smallest g >= 1 with g * dir in the lattice.
  long direction_period(IVec2 dir) const;

 private:
  LatticeBasis basis_;
  long det_ = 0;
  // HNF generators (hnf_a_, 0) and (hnf_b_, hnf_c_).
  long hnf_a_ = 0, hnf_b_ = 0, hnf_c_ = 0;
};

RegularTorus build_regular_torus(LatticeBasis basis);
RegularTorus thin_torus(long n);

LatticeBasis adapted_basis(const RegularTorus& torus, int direction);
LatticeBasis normalize_adapted_basis(const LatticeBasis& basis);

// Role of vertices of a derived decomposition relative to the base torus.
// M' has the same lattice; its cells are relabelings of the parent's:
// vertex (a,b) of M' = black (a,b) of M, black (a,b) of M' = white (a,b) of
// M, white (a,b) of M' = vertex (a+1,b+1) of M.
struct DerivedDecomposition {
  const RegularTorus* torus;
  int generation;  // 1 for M', 2 for M''

  long vertex_in_parent(long v) const { return v; }      // black triangle of parent
  long black_in_parent(long b) const { return b; }       // white triangle of parent
  long white_in_parent(long w) const {                   // vertex of parent
    return torus->index(torus->coords(w) + IVec2{1, 1});
  }
};

DerivedDecomposition derive(const RegularTorus& torus);
DerivedDecomposition derive(const DerivedDecomposition& d);

// Fundamental domain of a normalized adapted basis for one of the three edge
// directions, organized in m rows of n vertices.  Frame coordinates are
// world coordinates rotated so that gamma points along (1,0).
class FundamentalDomain {
 public:
  FundamentalDomain(const RegularTorus& torus, int direction,
                    IVec2 base_vertex = {0, 0});

  const RegularTorus& torus() const { return *torus_; }
  int direction() const { return dir_; }
  const LatticeBasis& adapted() const { return adapted_; }
  long n() const { return n_; }
  long m() const { return m_; }
  long e1() const { return e1_; }

  long row_start(long r) const;                 // leftmost frame x of row r
  IVec2 frame_to_world(IVec2 f) const;          // v0 + C^dir f
  IVec2 world_to_frame(IVec2 w) const;
  IVec2 slot_world(long r, long j) const;       // world coords of slot (r, j)
  long slot_index(long r, long j) const { return r * n_ + j; }

  struct Reduced {
    long slot;    // fundamental-domain slot index
    long p, q;    // v = rep + p*gamma + q*eta; multiplier mu^p lambda^q
  };
  Reduced reduce(IVec2 world_vertex) const;

  // Black triangle of row r, column j anchored (in frame coords) over the
  // row-(r+1) window; for r = m-1 over [e1, e1+n).  Every black coset occurs
  // exactly once among these.
  IVec2 triangle_frame_anchor(long r, long j) const;

 private:
  const RegularTorus* torus_;
  int dir_;
  IVec2 v0_;
  LatticeBasis adapted_;  // world coordinates
  long n_ = 0, m_ = 0, e1_ = 0;
};

FundamentalDomain fundamental_domain(const RegularTorus& torus, int direction,
                                     IVec2 base_vertex = {0, 0});

}  // namespace dhg
