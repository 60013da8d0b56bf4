#include "dhg/polygon.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <functional>
#include <random>

namespace dhg {

namespace {

// Entrywise polynomial coefficients of a 4x4 matrix polynomial of degree
// <= deg from unit-circle samples.
std::vector<Eigen::Matrix4cd> matrix_poly_coeffs(
    const std::function<Eigen::Matrix4cd(Complex)>& Hof, long deg) {
  long N = deg + 1;
  std::vector<Eigen::Matrix4cd> c(N, Eigen::Matrix4cd::Zero());
  for (long t = 0; t < N; ++t) {
    Eigen::Matrix4cd H = Hof(std::polar(1.0, 2 * M_PI * t / N));
    for (long d = 0; d < N; ++d)
      c[d] += H * std::polar(1.0 / N, -2 * M_PI * t * d / N);
  }
  return c;
}

}  // namespace

void check_polygon(const DiscreteCurve& c, bool polygon_condition) {
  long n = c.size();
  if (n < 3) throw NotAPolygon("fewer than three points");
  for (long k = 0; k < n; ++k) {
    if (!c.closed && k + 1 >= n) break;
    if (hp_distance(c.at(k), c.at(k + 1)) < 1e-9)
      throw NotAPolygon("gamma = gamma+ at index " + std::to_string(k));
    if (polygon_condition && (c.closed || k + 2 < n) &&
        hp_distance(c.at(k), c.at(k + 2)) < 1e-9)
      throw NotAPolygon("gamma = gamma++ at index " + std::to_string(k));
  }
}

QVec2 curve_darboux_step(const HPoint& gamma, const HPoint& gamma_plus,
                         const QVec2& eta_hat, Complex lambda) {
  SplitPair s = splitting_projections(gamma, gamma_plus);
  return s.P.apply(eta_hat) + s.Q.apply(eta_hat).rmul(lambda);
}

double curve_cross_ratio_check(const HPoint& gamma, const HPoint& gamma_plus,
                               const HPoint& eta, const HPoint& eta_plus,
                               Complex lambda) {
  std::vector<HPoint> pts = {gamma, eta_plus, gamma_plus, eta};
  // Shared chart via a projective frame: use affine coordinates, retrying
  // with a random Moebius normalization when something sits at infinity.
  Quaternion q[4];
  bool ok = true;
  for (int i = 0; i < 4 && ok; ++i) {
    auto a = pts[i].affine(1e-9);
    if (a)
      q[i] = *a;
    else
      ok = false;
  }
  if (!ok) {
    std::mt19937_64 rng(0xabcdef12ull);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
      QMat2 A{{u(rng), u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng), u(rng)},
              {u(rng), u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng), u(rng)}};
      ok = true;
      for (int i = 0; i < 4; ++i) {
        auto a = HPoint{A.apply(pts[i].rep)}.affine(1e-6);
        if (!a) {
          ok = false;
          break;
        }
        q[i] = *a;
      }
    }
    if (!ok) throw NonInvertibleDifference("quadrilateral chart failed");
  }
  Quaternion cr = cross_ratio4(q[0], q[1], q[2], q[3]);
  double scale = std::max(1.0, std::abs(lambda));
  return (std::abs(cr.a - lambda.real()) +
          std::abs(cr.norm() - std::abs(lambda))) /
         scale;
}

Eigen::Matrix4cd curve_holonomy(const DiscreteCurve& c, Complex lambda) {
  check_polygon(c, false);
  if (!c.closed) throw NotAPolygon("holonomy requires a closed curve");
  Eigen::Matrix4cd H = Eigen::Matrix4cd::Identity();
  for (long k = 0; k < c.size(); ++k) {
    SplitPair s;
    try {
      s = splitting_projections(c.at(k), c.at(k + 1));
    } catch (const DegenerateSplitting& e) {
      throw DegenerateSplitting("edge " + std::to_string(k) + ": " + e.what());
    }
    H = (complexify(s.P) + lambda * complexify(s.Q)) * H;
  }
  return H;
}

Complex PolygonSpectral::eval(Complex lambda, Complex mu) const {
  Complex r{0, 0};
  for (Eigen::Index k = coeffs.rows() - 1; k >= 0; --k) {
    Complex row{0, 0};
    for (Eigen::Index d = coeffs.cols() - 1; d >= 0; --d)
      row = row * lambda + coeffs(k, d);
    r = r * mu + row;
  }
  return r;
}

PolygonSpectral polygon_spectral(const DiscreteCurve& c) {
  check_polygon(c);
  long n = c.size();
  PolygonSpectral ps;
  auto Hof = [&](Complex lambda) { return curve_holonomy(c, lambda); };

  // H(lambda) entries have degree <= n; the determinant degree is bounded by
  // the top H-coefficient degree times 4.
  auto Hcoeffs = matrix_poly_coeffs(Hof, n);
  double hmax_norm = 0;
  for (const auto& M : Hcoeffs) hmax_norm = std::max(hmax_norm, M.norm());
  ps.hmax_degree = 0;
  for (long d = 0; d <= n; ++d)
    if (Hcoeffs[d].norm() > 1e-9 * hmax_norm) ps.hmax_degree = d;
  ps.H0 = Hcoeffs[0];
  ps.Hmax = Hcoeffs[ps.hmax_degree];

  ps.hmax_nilpotent = (ps.Hmax * ps.Hmax).norm() <= 1e-12 * ps.Hmax.squaredNorm();
  {
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(ps.Hmax);
    const auto& s = svd.singularValues();
    ps.hmax_invertible = s(3) > 1e-6 * s(0);
  }
  {
    Eigen::Vector4cd l1 = c.at(1).rep.to_c4().normalized();
    double r = std::max((ps.H0 * l1).norm(), (ps.H0 * right_j(l1)).norm());
    ps.h0_kills_L1 = r < 1e-9 * std::max(1.0, ps.H0.norm());
  }

  long lam_deg = 4 * ps.hmax_degree;
  ps.lambda_degree_bound = lam_deg;
  long N = lam_deg + 1;
  std::mt19937_64 rng(0x9021ull);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  bool ok = false;
  for (int attempt = 0; attempt < 4 && !ok; ++attempt, N *= 2) {
    ps.coeffs = CMatrix::Zero(5, lam_deg + 1);
    for (long t = 0; t < N; ++t) {
      Complex lambda = std::polar(1.0, 2 * M_PI * t / N);
      Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(Hof(lambda), false);
      // det(mu I - H) = prod (mu - eigenvalue)
      Complex e[4];
      for (int i = 0; i < 4; ++i) e[i] = es.eigenvalues()(i);
      Complex mc[5] = {e[0] * e[1] * e[2] * e[3],
                       -(e[0] * e[1] * e[2] + e[0] * e[1] * e[3] +
                         e[0] * e[2] * e[3] + e[1] * e[2] * e[3]),
                       e[0] * e[1] + e[0] * e[2] + e[0] * e[3] + e[1] * e[2] +
                           e[1] * e[3] + e[2] * e[3],
                       -(e[0] + e[1] + e[2] + e[3]), Complex{1, 0}};
      for (long k = 0; k < 5; ++k)
        for (long d = 0; d <= lam_deg; ++d)
          ps.coeffs(k, d) += mc[k] * std::polar(1.0 / N, -2 * M_PI * t * d / N);
    }
    ok = true;
    for (int probe = 0; probe < 8 && ok; ++probe) {
      Complex lambda = std::polar(1.0, angle(rng));
      Complex mu = std::polar(1.0, angle(rng));
      Complex direct =
          (mu * Eigen::Matrix4cd::Identity() - Hof(lambda)).determinant();
      ok = std::abs(ps.eval(lambda, mu) - direct) <=
           1e-8 * std::max(1.0, std::abs(direct));
    }
  }
  if (!ok)
    throw InterpolationIllConditioned("polygon_spectral refinement failed");

  double cmax = ps.coeffs.cwiseAbs().maxCoeff();
  ps.rho_symmetry_dev = ps.coeffs.imag().cwiseAbs().maxCoeff() / cmax;

  {
    Eigen::Matrix4cd Hp = Hof(std::polar(1.0, 0.37));
    double diag = 0, off = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        ((i + j) % 2 ? off : diag) =
            std::max((i + j) % 2 ? off : diag, std::abs(Hp(i, j)));
    ps.splits = off < 1e-9 * diag;
  }
  if (ps.splits) {
    auto factor = [&](int par) {
      long Nf = 2 * ps.hmax_degree + 1;
      CMatrix f = CMatrix::Zero(3, 2 * ps.hmax_degree + 1);
      for (long t = 0; t < Nf; ++t) {
        Complex lambda = std::polar(1.0, 2 * M_PI * t / Nf);
        Eigen::Matrix4cd H = Hof(lambda);
        Eigen::Matrix2cd B;
        B << H(par, par), H(par, par + 2), H(par + 2, par), H(par + 2, par + 2);
        Complex mc[3] = {B.determinant(), -B.trace(), Complex{1, 0}};
        for (long k = 0; k < 3; ++k)
          for (long d = 0; d < Nf; ++d)
            f(k, d) += mc[k] * std::polar(1.0 / Nf, -2 * M_PI * t * d / Nf);
      }
      return f;
    };
    ps.factor1 = factor(0);
    ps.factor2 = factor(1);
  }

  {
    ps.simple_eigenvalues = true;
    for (int t = 0; t < 4; ++t) {
      Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(
          Hof(std::polar(1.0, 0.9 + t)), false);
      double scale = es.eigenvalues().cwiseAbs().maxCoeff();
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (std::abs(es.eigenvalues()(i) - es.eigenvalues()(j)) <
              1e-8 * std::max(1.0, scale))
            ps.simple_eigenvalues = false;
    }
  }
  return ps;
}

CylinderBridge thin_cylinder_bridge(const DiscreteCurve& c) {
  check_polygon(c);
  CylinderBridge br{thin_torus(c.size()), {}};
  br.immersion.values.resize(c.size());
  for (long k = 0; k < c.size(); ++k)
    br.immersion.values[br.torus.index({k, 0})] = c.at(k);
  return br;
}

std::vector<DiscreteCurve> polygon_flow(const DiscreteCurve& c, Complex lambda,
                                        long steps, int eigenline_index) {
  check_polygon(c);
  std::vector<DiscreteCurve> out;
  DiscreteCurve cur = c;
  Complex prev_mu{0, 0};
  bool have_prev = false;
  for (long step = 0; step < steps; ++step) {
    Eigen::Matrix4cd H = curve_holonomy(cur, lambda);
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(H, true);
    std::array<int, 4> order = {0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      Complex ea = es.eigenvalues()(a), eb = es.eigenvalues()(b);
      if (ea.real() != eb.real()) return ea.real() < eb.real();
      return ea.imag() < eb.imag();
    });
    int pick;
    if (!have_prev) {
      pick = order[eigenline_index];
    } else {
      pick = 0;
      for (int i = 1; i < 4; ++i)
        if (std::abs(es.eigenvalues()(i) - prev_mu) <
            std::abs(es.eigenvalues()(pick) - prev_mu))
          pick = i;
    }
    Complex mu = es.eigenvalues()(pick);
    double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    int mult = 0;
    for (int i = 0; i < 4; ++i)
      if (std::abs(es.eigenvalues()(i) - mu) < 1e-8 * std::max(1.0, scale))
        ++mult;
    // a doubly degenerate eigenvalue is fine: every holonomy eigenvector
    // transports to a closed curve, and the solver picks deterministically
    // (for j-invariant eigenspaces the projected curve is unique anyway)
    Eigen::Vector4cd v = es.eigenvectors().col(pick);
    if (mult > 2) throw EigenlineDegenerate("eigenvalue not simple at lambda");
    prev_mu = mu;
    have_prev = true;

    QVec2 eta = QVec2::from_c4(v);
    DiscreteCurve next;
    next.closed = true;
    next.points.reserve(cur.size());
    for (long k = 0; k < cur.size(); ++k) {
      next.points.push_back(HPoint{eta});
      eta = curve_darboux_step(cur.at(k), cur.at(k + 1), eta, lambda);
    }
    check_polygon(next, false);
    out.push_back(next);
    cur = next;
  }
  return out;
}

CMatrix canonicalize_coeffs(const CMatrix& coeffs, double rel_tol) {
  double cmax = coeffs.cwiseAbs().maxCoeff();
  auto row_nonzero = [&](Eigen::Index r) {
    return coeffs.row(r).cwiseAbs().maxCoeff() > rel_tol * cmax;
  };
  auto col_nonzero = [&](Eigen::Index c) {
    return coeffs.col(c).cwiseAbs().maxCoeff() > rel_tol * cmax;
  };
  Eigen::Index r0 = 0, r1 = coeffs.rows() - 1, c0 = 0, c1 = coeffs.cols() - 1;
  while (r0 < r1 && !row_nonzero(r0)) ++r0;
  while (r1 > r0 && !row_nonzero(r1)) --r1;
  while (c0 < c1 && !col_nonzero(c0)) ++c0;
  while (c1 > c0 && !col_nonzero(c1)) --c1;
  CMatrix t = coeffs.block(r0, c0, r1 - r0 + 1, c1 - c0 + 1);
  Eigen::Index br = 0, bc = 0;
  double best = -1;
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = 0; j < t.cols(); ++j)
      if (std::abs(t(i, j)) > best + 1e-15) {
        best = std::abs(t(i, j));
        br = i;
        bc = j;
      }
  t /= t(br, bc);
  return t;
}

}  // namespace dhg
