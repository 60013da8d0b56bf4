#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "dhg/io.hpp"
#include "dhg/randgen.hpp"

using namespace dhg;

TEST_CASE("hpoint json round trip") {
  HPoint p{{Quaternion{1, 2, 3, 4}, Quaternion{-1, 0.5, 0, 2}}};
  HPoint q = hpoint_from_json(hpoint_to_json(p));
  CHECK(hp_distance(p, q) < 1e-14);
  // flat [a,b,c,d] is read as an affine value
  HPoint r = hpoint_from_json(json::parse("[1.0, 2.0, 0.0, -3.0]"));
  CHECK(hp_distance(r, HPoint::from_affine({1, 2, 0, -3})) < 1e-14);
}

TEST_CASE("immersion and torus round trips") {
  RegularTorus t = build_regular_torus({{3, 0}, {1, 3}});
  Immersion f = random_immersion(t, 5);
  Immersion g = immersion_from_json(immersion_to_json(f));
  REQUIRE(g.size() == f.size());
  for (long v = 0; v < f.size(); ++v)
    CHECK(hp_distance(f.values[v], g.values[v]) < 1e-14);
  LatticeBasis b = basis_from_json(torus_to_json(t));
  CHECK(b.gamma == t.basis().gamma);
  CHECK(b.eta == t.basis().eta);
}

TEST_CASE("curve round trip") {
  DiscreteCurve c = random_polygon(6, 3);
  DiscreteCurve d = curve_from_json(curve_to_json(c));
  REQUIRE(d.size() == c.size());
  CHECK(d.closed == c.closed);
  for (long k = 0; k < c.size(); ++k)
    CHECK(hp_distance(c.points[k], d.points[k]) < 1e-14);
}

TEST_CASE("spectral report shape and determinism") {
  RegularTorus t = build_regular_torus({{2, 0}, {0, 2}});
  Immersion f = random_immersion(t, 1);
  HolomorphicStructure hs = induced_structure(f, t);
  FundamentalDomain fd(t, 0);
  SpectralData sd = char_poly(hs, fd);
  json j = spectral_to_json(sd);
  for (const char* key : {"lambda_degree", "mu_degree_bound", "coeffs", "ends",
                          "generic", "rho_symmetry_dev", "splits"})
    CHECK(j.contains(key));
  CHECK(j["lambda_degree"] == 4);
  CHECK(j["ends"].contains("dir0"));
  // identical runs serialize identically
  SpectralData sd2 = char_poly(induced_structure(f, t), fd);
  CHECK(spectral_to_json(sd2).dump() == j.dump());
  CHECK(spectrum_samples_csv(sd2) == spectrum_samples_csv(sd));

  std::string csv = spectrum_samples_csv(sd);
  CHECK(csv.rfind("mu_re,mu_im,lambda_re,lambda_im,min_singular_value\n", 0) ==
        0);
}

TEST_CASE("vertex table") {
  RegularTorus t = build_regular_torus({{2, 0}, {0, 2}});
  std::string csv = vertex_table_csv(t);
  CHECK(csv == "index,x,y\n0,0,0\n1,1,0\n2,0,1\n3,1,1\n");
}

TEST_CASE("obj export") {
  DiscreteCurve c = regular_ngon(4);
  std::string obj = flow_to_obj({c, c});
  CHECK(obj.find("o step_0") != std::string::npos);
  CHECK(obj.find("o step_1") != std::string::npos);
  CHECK(obj.find("l 1 2 3 4 1\n") != std::string::npos);
  CHECK(obj.find("l 5 6 7 8 5\n") != std::string::npos);
}

TEST_CASE("file io") {
  std::string path = "/tmp/dhg_io_test.json";
  write_file(path, "{\"a\": [1, 2]}\n");
  json j = read_json_file(path);
  CHECK(j["a"][1] == 2);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_json_file("/tmp/definitely_missing_dhg.json"), Error);
}
