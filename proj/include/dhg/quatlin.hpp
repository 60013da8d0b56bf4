#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <optional>

#include "dhg/errors.hpp"

namespace dhg {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

constexpr double kInvertibilityTol = 1e-9;

// q = a + b i + c j + d k.  The complexification convention is q = z1 + j z2
// with z1 = a + b i, z2 = c - d i, so that right multiplication by i is the
// complex structure on (H, i).
struct Quaternion {
  double a = 0, b = 0, c = 0, d = 0;

  Quaternion() = default;
  Quaternion(double a_, double b_ = 0, double c_ = 0, double d_ = 0)
      : a(a_), b(b_), c(c_), d(d_) {}

  static Quaternion from_pair(Complex z1, Complex z2) {
    return {z1.real(), z1.imag(), z2.real(), -z2.imag()};
  }
  Complex z1() const { return {a, b}; }
  Complex z2() const { return {c, -d}; }

  double norm2() const { return a * a + b * b + c * c + d * d; }
  double norm() const { return std::sqrt(norm2()); }
  Quaternion conj() const { return {a, -b, -c, -d}; }

  Quaternion operator-() const { return {-a, -b, -c, -d}; }
  Quaternion operator+(const Quaternion& o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
  }
  Quaternion operator-(const Quaternion& o) const {
    return {a - o.a, b - o.b, c - o.c, d - o.d};
  }
  Quaternion operator*(const Quaternion& o) const {
    return {a * o.a - b * o.b - c * o.c - d * o.d,
            a * o.b + b * o.a + c * o.d - d * o.c,
            a * o.c - b * o.d + c * o.a + d * o.b,
            a * o.d + b * o.c - c * o.b + d * o.a};
  }
  Quaternion operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
  Quaternion operator/(double s) const { return {a / s, b / s, c / s, d / s}; }

  Quaternion inverse() const { return conj() / norm2(); }

  // Right multiplication by a complex scalar: (z1, z2) -> (z1 s, z2 s).
  Quaternion rmul(Complex s) const { return from_pair(z1() * s, z2() * s); }
};

inline Quaternion operator*(double s, const Quaternion& q) { return q * s; }

inline const Quaternion kOne{1, 0, 0, 0};
inline const Quaternion kI{0, 1, 0, 0};
inline const Quaternion kJ{0, 0, 1, 0};
inline const Quaternion kK{0, 0, 0, 1};

Quaternion quat_mul(const Quaternion& p, const Quaternion& q);

// Checked inverse: throws NonInvertibleDifference when |q| < tol * scale.
Quaternion inv_checked(const Quaternion& q, double scale,
                       const std::string& what);

// 2x2 complex matrix of left multiplication by q on (H, i).
Eigen::Matrix2cd complexify(const Quaternion& q);
Quaternion decomplexify2(const Eigen::Matrix2cd& m);

struct QVec2 {
  Quaternion x0, x1;

  QVec2 operator+(const QVec2& o) const { return {x0 + o.x0, x1 + o.x1}; }
  QVec2 operator-(const QVec2& o) const { return {x0 - o.x0, x1 - o.x1}; }
  // Right scaling by a quaternion.
  QVec2 operator*(const Quaternion& q) const { return {x0 * q, x1 * q}; }
  QVec2 rmul(Complex s) const { return {x0.rmul(s), x1.rmul(s)}; }
  double norm() const { return std::sqrt(x0.norm2() + x1.norm2()); }

  Eigen::Vector4cd to_c4() const {
    return {x0.z1(), x0.z2(), x1.z1(), x1.z2()};
  }
  static QVec2 from_c4(const Eigen::Vector4cd& v) {
    return {Quaternion::from_pair(v(0), v(1)), Quaternion::from_pair(v(2), v(3))};
  }
};

struct QMat2 {
  Quaternion m00, m01, m10, m11;

  static QMat2 identity() { return {kOne, {}, {}, kOne}; }
  QVec2 apply(const QVec2& v) const {
    return {m00 * v.x0 + m01 * v.x1, m10 * v.x0 + m11 * v.x1};
  }
  QMat2 operator*(const QMat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  QMat2 operator+(const QMat2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
  }
  double norm() const {
    return std::sqrt(m00.norm2() + m01.norm2() + m10.norm2() + m11.norm2());
  }
};

Eigen::Matrix4cd complexify(const QMat2& m);
QMat2 decomplexify4(const Eigen::Matrix4cd& m);

// Inverse via the complexified matrix; throws DegenerateSplitting when the
// smallest singular value is below tol * largest.
QMat2 inverse(const QMat2& m, double rel_tol = kInvertibilityTol);

// The antilinear map v -> v j in complexified coordinates.
Eigen::Vector4cd right_j(const Eigen::Vector4cd& v);
CVector right_j(const CVector& v);

struct HPoint {
  QVec2 rep;

  HPoint() = default;
  explicit HPoint(QVec2 v) : rep(v) {}
  static HPoint from_affine(const Quaternion& q) { return HPoint{{q, kOne}}; }
  static HPoint infinity() { return HPoint{{kOne, {}}}; }

  // Affine coordinate x0 * x1^{-1}; nullopt when the point is (numerically)
  // at infinity.
  std::optional<Quaternion> affine(double rel_tol = 1e-12) const;
};

// Projective distance: sine of the principal angle between the complexified
// 2-planes of the two lines.  0 iff equal, 1 for orthogonal lines.
double hp_distance(const HPoint& A, const HPoint& B);

struct CPoint3 {
  Eigen::Vector4cd rep;
};

HPoint twistor_project(const CPoint3& p);

Quaternion multi_ratio6(const Quaternion& x1, const Quaternion& x2,
                        const Quaternion& x3, const Quaternion& x4,
                        const Quaternion& x5, const Quaternion& x6);

Quaternion cross_ratio4(const Quaternion& z1, const Quaternion& z2,
                        const Quaternion& z3, const Quaternion& z4);

struct SplitPair {
  QMat2 P, Q;
};

// Complementary projections with image(P) = A, image(Q) = B.
SplitPair splitting_projections(const HPoint& A, const HPoint& B);

}  // namespace dhg
