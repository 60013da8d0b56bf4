#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "dhg/randgen.hpp"
#include "dhg/spectral.hpp"

using namespace dhg;

namespace {

// Four vertices with affine values 0,1,2,3 on the 2x2 torus.  The vertical
// holonomy is the affine function lambda(mu) = 4 mu - 3.
struct FourPoint {
  RegularTorus torus = build_regular_torus({{2, 0}, {0, 2}});
  Immersion f;
  HolomorphicStructure hs;
  FundamentalDomain fd;

  FourPoint() : fd((init(), torus), 0) { hs = induced_structure(f, torus); }
  void init() {
    for (int k = 0; k < 4; ++k)
      f.values.push_back(HPoint::from_affine({double(k)}));
  }
};

double coeff_scale(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("four point torus: holonomy eigenvalues on the line") {
  FourPoint fp;
  for (Complex mu : {Complex(2, 0), Complex(-0.7, 0), Complex(0.4, 1.1)}) {
    CMatrix H = holonomy_H(fp.hs, fp.fd, mu);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H);
    Complex expect = 4.0 * mu - 3.0;
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(es.eigenvalues()(i) - expect) <
            1e-6 * (1 + std::abs(expect)));
  }
}

TEST_CASE("four point torus: characteristic polynomial is (l-4m+3)^4") {
  FourPoint fp;
  SpectralData sd = char_poly(fp.hs, fp.fd);
  CHECK(sd.lambda_degree == 4);
  CHECK(sd.mu_degree_bound == 8);
  CHECK(sd.rho_symmetry_dev < 1e-10);
  // binomial expansion of (lambda + 3 - 4 mu)^4
  double binom[5] = {1, 4, 6, 4, 1};
  for (long k = 0; k <= 4; ++k)
    for (long d = 0; d + k <= 4; ++d) {
      double expect = binom[k] * binom[4 - k] * 0;
      // coefficient of lambda^k mu^d: C(4,k) * C(4-k,d) * 3^(4-k-d) * (-4)^d
      auto C = [](long n, long r) {
        double v = 1;
        for (long i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
        return v;
      };
      expect = C(4, k) * C(4 - k, d) * std::pow(3.0, 4 - k - d) *
               std::pow(-4.0, d);
      CHECK(std::abs(sd.coeffs(k, d) - expect) < 1e-8 * (1 + std::abs(expect)));
    }
  // all remaining mu columns vanish
  for (long k = 0; k <= 4; ++k)
    for (long d = std::max(0l, 5 - k); d < sd.coeffs.cols(); ++d)
      if (d + k > 4) CHECK(std::abs(sd.coeffs(k, d)) < 1e-8);
  // the line is a root of full multiplicity: P and its lambda-derivative die
  for (Complex mu : {Complex(0.3, 0.9), Complex(-1.2, 0.4)}) {
    Complex lam = 4.0 * mu - 3.0;
    double scale = coeff_scale(sd.coeffs) * std::pow(std::abs(lam) + 1, 4);
    CHECK(std::abs(sd.eval(mu, lam)) < 1e-7 * scale);
    Complex dp = (sd.eval(mu, lam + 1e-5) - sd.eval(mu, lam - 1e-5)) / 2e-5;
    CHECK(std::abs(dp) < 1e-5 * scale);
  }
  // complex point values: the spectral data splits over CP^1
  CHECK(sd.splits);
}

TEST_CASE("four point torus: horizontal holonomies") {
  FourPoint fp;
  SpectralData sd = char_poly(fp.hs, fp.fd);
  double expect[3] = {0.75, -1.0 / 3.0, 4.0};
  for (int k = 0; k < 3; ++k) {
    CHECK(sd.ends[k].size() == 4);
    for (Complex e : sd.ends[k]) CHECK(std::abs(e - expect[k]) < 1e-9);
  }
  CHECK(!sd.generic);  // all four coincide in every direction
}

TEST_CASE("random torus: genericity and end count") {
  RegularTorus t = build_regular_torus({{3, 0}, {1, 3}});
  Immersion f = random_immersion(t, 2024);
  HolomorphicStructure hs = induced_structure(f, t);
  GenericityReport rep = genericity_check(hs, t);
  CHECK(rep.generic);
  // 2(m1+m2+m3): direction periods are 3, 9, 9, so m = 3, 1, 1
  CHECK(rep.ends_count == 10);
  CHECK(rep.per_direction[0].size() == 6);
  CHECK(rep.per_direction[1].size() == 2);
  CHECK(rep.per_direction[2].size() == 2);
}

TEST_CASE("random torus: char poly matches holonomy eigenvalues") {
  RegularTorus t = build_regular_torus({{3, 0}, {0, 3}});
  Immersion f = random_immersion(t, 77);
  HolomorphicStructure hs = induced_structure(f, t);
  FundamentalDomain fd(t, 0);
  SpectralData sd = char_poly(hs, fd);
  CHECK(sd.rho_symmetry_dev < 1e-10);
  double scale = coeff_scale(sd.coeffs);
  for (double arg : {0.3, 1.9, 4.4}) {
    Complex mu = std::polar(1.0, arg);
    CMatrix H = holonomy_H(hs, fd, mu);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H);
    for (int i = 0; i < H.rows(); ++i) {
      Complex lam = es.eigenvalues()(i);
      double lscale = std::pow(std::abs(lam) + 1, sd.lambda_degree);
      CHECK(std::abs(sd.eval(mu, lam)) < 1e-6 * scale * lscale);
      // rho symmetry pairs (mu, lambda) with the conjugates
      CHECK(std::abs(sd.eval(std::conj(mu), std::conj(lam))) <
            1e-6 * scale * lscale);
    }
  }
  CHECK(!sd.samples.empty());
  for (const auto& s : sd.samples) CHECK(s.min_singular_value < 1e-6);
}

TEST_CASE("eigen sections solve the triangle equations everywhere") {
  RegularTorus t = build_regular_torus({{3, 0}, {1, 3}});
  Immersion f = random_immersion(t, 31);
  HolomorphicStructure hs = induced_structure(f, t);
  FundamentalDomain fd(t, 1);
  Complex mu = std::polar(1.0, 0.8);
  CMatrix H = holonomy_H(hs, fd, mu);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H);
  Complex lam = es.eigenvalues()(0);
  MonodromySection s = eigen_section(hs, fd, {mu, lam});
  // quaternionic annihilator equations at every translated black triangle
  double worst = 0;
  for (long b = 0; b < t.size(); ++b) {
    IVec2 a = t.coords(b);
    for (long p = -1; p <= 1; ++p)
      for (long q = -1; q <= 1; ++q) {
        IVec2 sh = a + fd.adapted().gamma * p + fd.adapted().eta * q;
        Quaternion r = hs.coeff[b][0] * s.value_at(sh) +
                       hs.coeff[b][1] * s.value_at(sh + IVec2{1, 0}) +
                       hs.coeff[b][2] * s.value_at(sh + IVec2{0, 1});
        worst = std::max(worst, r.norm());
      }
  }
  CHECK(worst < 1e-7);
  // quaternionic symmetry: the conjugate multiplier also has a section
  MonodromySection sj = eigen_section(hs, fd, {std::conj(mu), std::conj(lam)});
  CHECK(sj.values.size() == s.values.size());
  // off the spectral curve the kernel is empty
  CHECK_THROWS_AS(eigen_section(hs, fd, {mu, lam + 1.0}), EmptyKernel);
}

TEST_CASE("prolongation from spectral data is projectively consistent") {
  FourPoint fp;
  Complex mu{2, 0};
  Complex lam = 4.0 * mu - 3.0;
  MonodromySection s = eigen_section(fp.hs, fp.fd, {mu, lam});
  // F_hat at a black anchor and at its gamma-translate agree in CP^3 up to
  // the multiplier, i.e. represent parallel twistor lifts
  CPoint3 F0 = F_hat(fp.hs, s, {0, 0});
  CPoint3 F1 = F_hat(fp.hs, s, IVec2{0, 0} + fp.fd.adapted().gamma);
  Eigen::Vector4cd a = F0.rep.normalized(), b = F1.rep.normalized();
  Complex phase = b.dot(a);  // = <b, a>
  CHECK((a - b * phase).norm() < 1e-8);
}
