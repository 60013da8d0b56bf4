#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dhg/quatlin.hpp"

using namespace dhg;

namespace {

Quaternion rand_quat(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng), u(rng), u(rng)};
}

bool approx(const Quaternion& p, const Quaternion& q, double tol = 1e-12) {
  return (p - q).norm() <= tol * std::max(1.0, std::max(p.norm(), q.norm()));
}

}  // namespace

TEST_CASE("multiplication table") {
  CHECK(approx(kI * kJ, kK));
  CHECK(approx(kJ * kK, kI));
  CHECK(approx(kK * kI, kJ));
  CHECK(approx(kI * kI, -kOne));
  Quaternion onePlusI{1, 1, 0, 0};
  CHECK(approx(onePlusI * onePlusI, kI * 2));
  Quaternion q{1, 0, 2, 0};
  CHECK(approx(q * q.inverse(), kOne));
}

TEST_CASE("complexify convention") {
  Eigen::Matrix2cd id = complexify(kOne);
  CHECK((id - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
  Eigen::Matrix2cd j = complexify(kJ);
  Eigen::Matrix2cd jref;
  jref << 0, -1, 1, 0;
  CHECK((j - jref).norm() < 1e-15);
}

TEST_CASE("complexify is a homomorphism") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    Quaternion p = rand_quat(rng), q = rand_quat(rng);
    CHECK((complexify(p) * complexify(q) - complexify(p * q)).norm() <
          1e-12 * (1 + p.norm() * q.norm()));
  }
}

TEST_CASE("pair coordinates round trip and right scaling") {
  std::mt19937_64 rng(8);
  Quaternion q = rand_quat(rng);
  CHECK(approx(Quaternion::from_pair(q.z1(), q.z2()), q));
  Complex s{0.3, -1.2};
  // right multiplication by a complex scalar is diagonal in pair coordinates
  Quaternion qs = q.rmul(s);
  CHECK(std::abs(qs.z1() - q.z1() * s) < 1e-14);
  CHECK(std::abs(qs.z2() - q.z2() * s) < 1e-14);
  // and right multiplication by i matches quaternion product q * i
  CHECK(approx(q.rmul(Complex{0, 1}), q * kI));
}

TEST_CASE("multi_ratio6 oracle values") {
  Quaternion a{0.4, 1, -2, 0.5}, b{-1, 0, 3, 2};
  CHECK(approx(multi_ratio6(a, b, a, b, a, b), -kOne, 1e-10));
  auto r = multi_ratio6({0}, {1}, {2}, {3}, {4}, {5});
  CHECK(approx(r, Quaternion{-0.2}, 1e-12));
  CHECK_THROWS_AS(multi_ratio6({0}, {1}, {1}, {2}, {3}, {4}),
                  NonInvertibleDifference);
}

TEST_CASE("cross_ratio4 oracle values") {
  Quaternion z1{0.3, 1, 0, -2}, z2{1, 2, 3, 4}, z3{-1, 0, 1, 0};
  CHECK(cross_ratio4(z1, z2, z3, z3).norm() < 1e-14);
  CHECK(approx(cross_ratio4(z1, z2, z3, z2), kOne, 1e-10));
  CHECK(approx(cross_ratio4({0}, {1}, {2}, {4}), Quaternion{-0.5}, 1e-12));
}

TEST_CASE("M6 Moebius invariance of the conjugacy pair") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    Quaternion x[6];
    for (auto& q : x) q = rand_quat(rng);
    Quaternion m = multi_ratio6(x[0], x[1], x[2], x[3], x[4], x[5]);
    QMat2 A{rand_quat(rng), rand_quat(rng), rand_quat(rng), rand_quat(rng)};
    try {
      inverse(A);
    } catch (const DegenerateSplitting&) {
      continue;
    }
    Quaternion y[6];
    for (int i = 0; i < 6; ++i) {
      Quaternion num = A.m00 * x[i] + A.m01;
      Quaternion den = A.m10 * x[i] + A.m11;
      y[i] = num * den.inverse();
    }
    Quaternion mt = multi_ratio6(y[0], y[1], y[2], y[3], y[4], y[5]);
    CHECK(std::abs(m.a - mt.a) < 1e-8 * (1 + m.norm()));
    CHECK(std::abs(m.norm() - mt.norm()) < 1e-8 * (1 + m.norm()));
  }
}

TEST_CASE("twistor projection") {
  CPoint3 e1{Eigen::Vector4cd(1, 0, 0, 0)};
  HPoint p = twistor_project(e1);
  CHECK(hp_distance(p, HPoint{{kOne, {}}}) < 1e-14);
  CPoint3 e2{Eigen::Vector4cd(0, 1, 0, 0)};  // j e1 spans the same line
  CHECK(hp_distance(twistor_project(e2), p) < 1e-14);
  CPoint3 scaled{Eigen::Vector4cd(Complex{0, 2}, 0, 0, 0)};
  CHECK(hp_distance(twistor_project(scaled), p) < 1e-14);
}

TEST_CASE("splitting projections") {
  HPoint A{{kOne, {}}}, B{{{}, kOne}};
  SplitPair s = splitting_projections(A, B);
  CHECK(approx(s.P.m00, kOne));
  CHECK(s.P.m01.norm() + s.P.m10.norm() + s.P.m11.norm() < 1e-12);
  CHECK(approx(s.Q.m11, kOne));

  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    HPoint X{{rand_quat(rng), rand_quat(rng)}};
    HPoint Y{{rand_quat(rng), rand_quat(rng)}};
    if (hp_distance(X, Y) < 1e-3) continue;
    SplitPair sp = splitting_projections(X, Y);
    Eigen::Matrix4cd P = complexify(sp.P), Q = complexify(sp.Q);
    CHECK((P + Q - Eigen::Matrix4cd::Identity()).norm() < 1e-9);
    CHECK((P * P - P).norm() < 1e-9);
    CHECK((Q * Q - Q).norm() < 1e-9);
    CHECK((P * Q).norm() < 1e-9);
    // image checks
    CHECK(hp_distance(HPoint{sp.P.apply(X.rep)}, X) < 1e-8);
    CHECK(hp_distance(HPoint{sp.Q.apply(Y.rep)}, Y) < 1e-8);
    CHECK(sp.P.apply(Y.rep).norm() < 1e-8 * Y.rep.norm());
  }
  CHECK_THROWS_AS(splitting_projections(A, A), DegenerateSplitting);
}

TEST_CASE("right_j matches quaternionic j action") {
  std::mt19937_64 rng(31);
  QVec2 v{rand_quat(rng), rand_quat(rng)};
  QVec2 vj = v * kJ;
  CHECK((right_j(v.to_c4()) - vj.to_c4()).norm() < 1e-13);
}