#include "dhg/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
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

// Monic polynomial coefficients from roots, c[k] = coeff of lambda^k.
std::vector<Complex> poly_from_roots(const CVector& roots) {
  std::vector<Complex> c(roots.size() + 1, Complex{0, 0});
  c[0] = 1;  // temporarily c[k] = coeff of lambda^(deg-k) reversed below
  long deg = 0;
  for (Eigen::Index i = 0; i < roots.size(); ++i) {
    ++deg;
    for (long k = deg; k >= 1; --k) c[k] = c[k] - roots(i) * c[k - 1];
  }
  std::reverse(c.begin(), c.end());
  return c;
}

}  // namespace

Quaternion MonodromySection::value_at(IVec2 world_vertex) const {
  auto red = fd->reduce(world_vertex);
  Complex factor = ipow(mult.mu, red.p) * ipow(mult.lambda, red.q);
  return slot_value(red.slot).rmul(factor);
}

Complex SpectralData::eval(Complex mu, Complex lambda) const {
  Complex r{0, 0};
  for (Eigen::Index k = coeffs.rows() - 1; k >= 0; --k) {
    Complex row{0, 0};
    for (Eigen::Index d = coeffs.cols() - 1; d >= 0; --d)
      row = row * mu + coeffs(k, d);
    r = r * lambda + row;
  }
  return r;
}

TriRef tri_ref(const HolomorphicStructure& hs, const FundamentalDomain& fd,
               IVec2 frame_anchor) {
  static const IVec2 kAnchorOff[3] = {{0, 0}, {0, -1}, {-1, 0}};
  static const int kRolePerm[3][3] = {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}};
  int k = fd.direction();
  IVec2 world_anchor = fd.frame_to_world(frame_anchor) + kAnchorOff[k];
  long b = fd.torus().index(world_anchor);
  const auto& c = hs.coeff[b];
  const int* perm = kRolePerm[k];
  return {b, {c[perm[0]], c[perm[1]], c[perm[2]]}};
}

CMatrix transfer_row(const HolomorphicStructure& hs,
                     const FundamentalDomain& fd, long i, Complex mu) {
  long n = fd.n();
  CMatrix T = CMatrix::Zero(2 * n, 2 * n);
  for (long j = 0; j < n; ++j) {
    IVec2 s = fd.triangle_frame_anchor(i, j);
    TriRef tr = tri_ref(hs, fd, s);
    Quaternion cap_inv = tr.c[2].inverse();
    Eigen::Matrix2cd A = complexify(-(cap_inv * tr.c[0]));
    Eigen::Matrix2cd B = complexify(-(cap_inv * tr.c[1]));
    long a0 = fd.row_start(i);
    for (int which = 0; which < 2; ++which) {
      long x = s.x + which;
      long p = (x - a0) / n;  // 0 or 1; x >= a0 always
      long col = x - a0 - p * n;
      T.block<2, 2>(2 * j, 2 * col) += (which == 0 ? A : B) * ipow(mu, p);
    }
  }
  return T;
}

CMatrix holonomy_H(const HolomorphicStructure& hs, const FundamentalDomain& fd,
                   Complex mu) {
  CMatrix H = CMatrix::Identity(2 * fd.n(), 2 * fd.n());
  for (long i = 0; i < fd.m(); ++i) H = transfer_row(hs, fd, i, mu) * H;
  return H;
}

CMatrix assemble_D(const HolomorphicStructure& hs, const FundamentalDomain& fd,
                   const Multiplier& mult) {
  long n = fd.n(), m = fd.m();
  long nv = n * m;
  CMatrix D = CMatrix::Zero(2 * nv, 2 * nv);
  for (long r = 0; r < m; ++r)
    for (long j = 0; j < n; ++j) {
      IVec2 s = fd.triangle_frame_anchor(r, j);
      TriRef tr = tri_ref(hs, fd, s);
      long row = 2 * (r * n + j);
      const IVec2 verts[3] = {s, s + IVec2{1, 0}, s + IVec2{0, 1}};
      for (int v = 0; v < 3; ++v) {
        auto red = fd.reduce(fd.frame_to_world(verts[v]));
        Complex factor = ipow(mult.mu, red.p) * ipow(mult.lambda, red.q);
        D.block<2, 2>(row, 2 * red.slot) += complexify(tr.c[v]) * factor;
      }
    }
  return D;
}

std::array<Complex, 2> horizontal_holonomies(const HolomorphicStructure& hs,
                                             const FundamentalDomain& fd,
                                             long i) {
  Quaternion Q = kOne;
  for (long j = 0; j < fd.n(); ++j) {
    TriRef tr = tri_ref(hs, fd, fd.triangle_frame_anchor(i, j));
    Q = (-(tr.c[1].inverse() * tr.c[0])) * Q;
  }
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(complexify(Q), false);
  return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

GenericityReport genericity_check(const HolomorphicStructure& hs,
                                  const RegularTorus& torus) {
  GenericityReport rep;
  rep.generic = true;
  for (int k = 0; k < 3; ++k) {
    FundamentalDomain fd(torus, k);
    for (long i = 0; i < fd.m(); ++i) {
      auto pair = horizontal_holonomies(hs, fd, i);
      rep.per_direction[k].push_back(pair[0]);
      rep.per_direction[k].push_back(pair[1]);
    }
    const auto& v = rep.per_direction[k];
    for (size_t a = 0; a < v.size(); ++a)
      for (size_t b = a + 1; b < v.size(); ++b)
        if (std::abs(v[a] - v[b]) <
            1e-8 * std::max(1.0, std::max(std::abs(v[a]), std::abs(v[b])))) {
          rep.generic = false;
          rep.witness = "direction " + std::to_string(k) + ": holonomies " +
                        std::to_string(a) + " and " + std::to_string(b) +
                        " coincide";
        }
    rep.ends_count += 2 * fd.m();
  }
  return rep;
}

namespace {

// Interpolated bivariate determinant det(lambda I - M(mu)) from evaluations
// at N unit-circle mu nodes; rows = lambda-coefficient index.
CMatrix interp_char(const std::function<CMatrix(Complex)>& Hof, long size,
                    long mu_deg, long N) {
  CMatrix coeffs = CMatrix::Zero(size + 1, mu_deg + 1);
  for (long t = 0; t < N; ++t) {
    Complex mu = std::polar(1.0, 2 * M_PI * t / N);
    Eigen::ComplexEigenSolver<CMatrix> es(Hof(mu), false);
    auto c = poly_from_roots(es.eigenvalues());
    for (long k = 0; k <= size; ++k)
      for (long d = 0; d <= mu_deg; ++d)
        coeffs(k, d) += c[k] * std::polar(1.0 / N, -2 * M_PI * t * d / N);
  }
  return coeffs;
}

}  // namespace

SpectralData char_poly(const HolomorphicStructure& hs,
                       const FundamentalDomain& fd) {
  long n = fd.n(), m = fd.m();
  SpectralData sd;
  sd.lambda_degree = 2 * n;
  sd.mu_degree_bound = 2 * n * m;

  auto Hof = [&](Complex mu) { return holonomy_H(hs, fd, mu); };
  long N = 2 * n * m + 1;
  std::mt19937_64 rng(0xd1ce5bull);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  bool ok = false;
  for (int attempt = 0; attempt < 4 && !ok; ++attempt, N *= 2) {
    sd.coeffs = interp_char(Hof, 2 * n, 2 * n * m, N);
    ok = true;
    for (int probe = 0; probe < 8 && ok; ++probe) {
      Complex mu = std::polar(1.0, angle(rng));
      Complex lambda = std::polar(1.0, angle(rng));
      CMatrix M = Complex(lambda) * CMatrix::Identity(2 * n, 2 * n) - Hof(mu);
      Complex direct = M.determinant();
      double scale = std::max(1.0, std::abs(direct));
      ok = std::abs(sd.eval(mu, lambda) - direct) <= 1e-8 * scale;
    }
  }
  if (!ok) throw InterpolationIllConditioned("char_poly node refinement failed");

  double cmax = sd.coeffs.cwiseAbs().maxCoeff();
  sd.rho_symmetry_dev = sd.coeffs.imag().cwiseAbs().maxCoeff() / cmax;

  // Splitting detection: values in CP^1 make H block-diagonal with respect
  // to the even/odd index parity.
  CMatrix Hprobe = Hof(std::polar(1.0, 0.7));
  double diag = 0, off = 0;
  for (long i = 0; i < 2 * n; ++i)
    for (long j = 0; j < 2 * n; ++j)
      ((i + j) % 2 ? off : diag) = std::max((i + j) % 2 ? off : diag,
                                            std::abs(Hprobe(i, j)));
  sd.splits = off < 1e-9 * diag;
  if (sd.splits) {
    auto sub = [&](Complex mu, int par) {
      CMatrix H = Hof(mu);
      CMatrix S(n, n);
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) S(i, j) = H(2 * i + par, 2 * j + par);
      return S;
    };
    sd.factor1 = interp_char([&](Complex mu) { return sub(mu, 0); }, n,
                             n * m, n * m + 1);
    sd.factor2 = interp_char([&](Complex mu) { return sub(mu, 1); }, n,
                             n * m, n * m + 1);
  }

  auto gen = genericity_check(hs, fd.torus());
  sd.generic = gen.generic;
  for (int k = 0; k < 3; ++k) sd.ends[k] = gen.per_direction[k];

  // Spectrum samples along |mu| = 1.
  for (int t = 0; t < 8; ++t) {
    Complex mu = std::polar(1.0, 2 * M_PI * t / 8 + 0.1);
    Eigen::ComplexEigenSolver<CMatrix> es(Hof(mu), false);
    for (Eigen::Index e = 0; e < es.eigenvalues().size(); ++e) {
      Complex lambda = es.eigenvalues()(e);
      CMatrix D = assemble_D(hs, fd, {mu, lambda});
      Eigen::JacobiSVD<CMatrix> svd(D);
      sd.samples.push_back({mu, lambda, svd.singularValues().minCoeff()});
    }
  }
  return sd;
}

MonodromySection eigen_section(const HolomorphicStructure& hs,
                               const FundamentalDomain& fd,
                               const Multiplier& mult, double rel_tol,
                               double* sigma_min_out) {
  CMatrix D = assemble_D(hs, fd, mult);
  Eigen::JacobiSVD<CMatrix> svd(D, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double smin = s(s.size() - 1);
  if (sigma_min_out) *sigma_min_out = smin;
  if (smin > rel_tol * std::max(s(0), 1.0))
    throw EmptyKernel("D_{mu,lambda} has no kernel at the given multiplier");
  CVector v = svd.matrixV().col(D.cols() - 1);
  // Deterministic phase: largest-magnitude entry real positive.
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(best)) + 1e-15) best = i;
  v *= std::abs(v(best)) / v(best);
  return {&fd, v, mult};
}

CPoint3 F_hat(const HolomorphicStructure& hs, const MonodromySection& s,
              IVec2 world_anchor) {
  const RegularTorus& torus = s.fd->torus();
  const IVec2 off[3] = {{0, 0}, {1, 0}, {0, 1}};
  Quaternion x[3], y[3];
  double ymax = 0;
  for (int v = 0; v < 3; ++v) {
    x[v] = hs.x[torus.index(world_anchor + off[v])];
    y[v] = s.value_at(world_anchor + off[v]);
    ymax = std::max(ymax, y[v].norm());
  }
  if (ymax < 1e-12 * std::max(1.0, s.values.norm()))
    throw SingularAtTriangle("section vanishes on the triangle");
  // Solve from the pair with the best-separated chart values.
  int p = 0, q = 1;
  double best = 0;
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (auto& pr : pairs) {
    double d = (x[pr[0]] - x[pr[1]]).norm();
    if (d > best) best = d, p = pr[0], q = pr[1];
  }
  Quaternion beta = (x[q] - x[p]).inverse() * (y[p] - y[q]);
  Quaternion alpha = y[p] + x[p] * beta;
  return {QVec2{alpha, beta}.to_c4()};
}

}  // namespace dhg
