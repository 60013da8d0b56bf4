#include "dhg/quatlin.hpp"

#include <Eigen/SVD>

namespace dhg {

Quaternion quat_mul(const Quaternion& p, const Quaternion& q) { return p * q; }

Quaternion inv_checked(const Quaternion& q, double scale,
                       const std::string& what) {
  if (q.norm() < kInvertibilityTol * std::max(scale, 1e-300))
    throw NonInvertibleDifference(what);
  return q.inverse();
}

Eigen::Matrix2cd complexify(const Quaternion& q) {
  Eigen::Matrix2cd m;
  m << q.z1(), -std::conj(q.z2()), q.z2(), std::conj(q.z1());
  return m;
}

Quaternion decomplexify2(const Eigen::Matrix2cd& m) {
  return Quaternion::from_pair(m(0, 0), m(1, 0));
}

Eigen::Matrix4cd complexify(const QMat2& m) {
  Eigen::Matrix4cd r;
  r.block<2, 2>(0, 0) = complexify(m.m00);
  r.block<2, 2>(0, 2) = complexify(m.m01);
  r.block<2, 2>(2, 0) = complexify(m.m10);
  r.block<2, 2>(2, 2) = complexify(m.m11);
  return r;
}

QMat2 decomplexify4(const Eigen::Matrix4cd& m) {
  return {decomplexify2(m.block<2, 2>(0, 0)), decomplexify2(m.block<2, 2>(0, 2)),
          decomplexify2(m.block<2, 2>(2, 0)), decomplexify2(m.block<2, 2>(2, 2))};
}

QMat2 inverse(const QMat2& m, double rel_tol) {
  Eigen::Matrix4cd c = complexify(m);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (s(3) <= rel_tol * s(0)) throw DegenerateSplitting("singular 2x2 map");
  return decomplexify4(c.inverse());
}

Eigen::Vector4cd right_j(const Eigen::Vector4cd& v) {
  Eigen::Vector4cd r;
  r << -std::conj(v(1)), std::conj(v(0)), -std::conj(v(3)), std::conj(v(2));
  return r;
}

CVector right_j(const CVector& v) {
  CVector r(v.size());
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
    r(i) = -std::conj(v(i + 1));
    r(i + 1) = std::conj(v(i));
  }
  return r;
}

std::optional<Quaternion> HPoint::affine(double rel_tol) const {
  double scale = rep.norm();
  if (rep.x1.norm() < rel_tol * scale) return std::nullopt;
  return rep.x0 * rep.x1.inverse();
}

double hp_distance(const HPoint& A, const HPoint& B) {
  Eigen::Vector4cd a = A.rep.to_c4().normalized();
  Eigen::Vector4cd aj = right_j(a);  // orthogonal to a, same norm
  Eigen::Vector4cd b = B.rep.to_c4().normalized();
  Eigen::Vector4cd res = b - a * a.dot(b) - aj * aj.dot(b);
  return res.norm();
}

HPoint twistor_project(const CPoint3& p) { return HPoint{QVec2::from_c4(p.rep)}; }

Quaternion multi_ratio6(const Quaternion& x1, const Quaternion& x2,
                        const Quaternion& x3, const Quaternion& x4,
                        const Quaternion& x5, const Quaternion& x6) {
  double scale = std::max({x1.norm(), x2.norm(), x3.norm(), x4.norm(),
                           x5.norm(), x6.norm()});
  return (x1 - x2) * inv_checked(x2 - x3, scale, "x2 - x3") * (x3 - x4) *
         inv_checked(x4 - x5, scale, "x4 - x5") * (x5 - x6) *
         inv_checked(x6 - x1, scale, "x6 - x1");
}

Quaternion cross_ratio4(const Quaternion& z1, const Quaternion& z2,
                        const Quaternion& z3, const Quaternion& z4) {
  double scale = std::max({z1.norm(), z2.norm(), z3.norm(), z4.norm()});
  return (z1 - z2) * inv_checked(z2 - z3, scale, "z2 - z3") * (z3 - z4) *
         inv_checked(z4 - z1, scale, "z4 - z1");
}

SplitPair splitting_projections(const HPoint& A, const HPoint& B) {
  QMat2 G{A.rep.x0, B.rep.x0, A.rep.x1, B.rep.x1};
  QMat2 Ginv;
  try {
    Ginv = inverse(G);
  } catch (const DegenerateSplitting&) {
    throw DegenerateSplitting("splitting points coincide");
  }
  QMat2 E1{kOne, {}, {}, {}};
  QMat2 E2{{}, {}, {}, kOne};
  return {G * E1 * Ginv, G * E2 * Ginv};
}

}  // namespace dhg
