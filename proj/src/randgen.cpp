#include "dhg/randgen.hpp"

#include <random>

namespace dhg {

namespace {

Quaternion random_quat(std::mt19937_64& rng, bool complex_values) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
  if (complex_values) c = d = 0;
  return {a, b, c, d};
}

}  // namespace

Immersion random_immersion(const RegularTorus& torus, std::uint64_t seed,
                           bool complex_values) {
  std::mt19937_64 rng(seed);
  long nv = torus.size();
  std::vector<Quaternion> q(nv);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (long v = 0; v < nv; ++v) q[v] = random_quat(rng, complex_values);
    bool ok = true;
    for (long b = 0; b < nv && ok; ++b) {
      auto verts = torus.black_vertices(b);
      for (int i = 0; i < 3 && ok; ++i)
        for (int j = i + 1; j < 3; ++j)
          if ((q[verts[i]] - q[verts[j]]).norm() < 1e-6) {
            ok = false;
            break;
          }
    }
    if (ok) {
      Immersion f;
      f.values.reserve(nv);
      for (long v = 0; v < nv; ++v) f.values.push_back(HPoint::from_affine(q[v]));
      return f;
    }
  }
  throw NonRegularQuotient("random immersion resampling failed");
}

DiscreteCurve random_polygon(long n, std::uint64_t seed, bool complex_values) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    DiscreteCurve c;
    c.closed = true;
    for (long k = 0; k < n; ++k)
      c.points.push_back(HPoint::from_affine(random_quat(rng, complex_values)));
    try {
      check_polygon(c);
      return c;
    } catch (const NotAPolygon&) {
    }
  }
  throw NotAPolygon("random polygon resampling failed");
}

DiscreteCurve regular_ngon(long n) {
  DiscreteCurve c;
  c.closed = true;
  for (long k = 0; k < n; ++k) {
    double t = 2 * M_PI * k / n;
    c.points.push_back(HPoint::from_affine({std::cos(t), std::sin(t), 0, 0}));
  }
  return c;
}

}  // namespace dhg
