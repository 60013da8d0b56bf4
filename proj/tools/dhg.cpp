#include <complex>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dhg/acceptance.hpp"
#include "dhg/darboux.hpp"
#include "dhg/io.hpp"
#include "dhg/polygon.hpp"
#include "dhg/randgen.hpp"
#include "dhg/spectral.hpp"

namespace {

using namespace dhg;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void diagnostic(const char* kind, const std::exception& e) {
  json j{{"error", kind}, {"message", e.what()}};
  std::cerr << j.dump() << "\n";
}

Complex to_complex(const std::vector<double>& v) {
  return {v.empty() ? 0.0 : v[0], v.size() > 1 ? v[1] : 0.0};
}

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

struct TorusFlags {
  std::vector<long> gamma, eta;
  long thin = 0;

  RegularTorus build() const {
    try {
      if (thin > 0) return thin_torus(thin);
      if (gamma.size() == 2 && eta.size() == 2)
        return build_regular_torus({{gamma[0], gamma[1]}, {eta[0], eta[1]}});
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    throw ConfigError("specify --thin N or both --gamma X Y and --eta X Y");
  }

  void add_to(CLI::App* cmd) {
    cmd->add_option("--gamma", gamma, "first lattice generator (two integers)")
        ->expected(2);
    cmd->add_option("--eta", eta, "second lattice generator (two integers)")
        ->expected(2);
    cmd->add_option("--thin", thin, "thin torus of the given length");
  }
};

// Load an immersion from JSON ({"gamma","eta","values"}) or generate a
// seeded random one on the torus from the flags.
Immersion load_immersion(const std::string& input, TorusFlags& tf,
                         std::uint64_t seed, bool complex_values,
                         RegularTorus& torus_out) {
  if (!input.empty()) {
    json j = read_json_file(input);
    LatticeBasis b = basis_from_json(j);
    try {
      torus_out = build_regular_torus(b);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    Immersion f = immersion_from_json(j.at("values"));
    if (f.size() != torus_out.size())
      throw ConfigError("value count does not match the torus size");
    return f;
  }
  torus_out = tf.build();
  return random_immersion(torus_out, seed, complex_values);
}

int cmd_mesh(TorusFlags& tf, const std::string& out_dir) {
  RegularTorus t = tf.build();
  write_file(out_path(out_dir, "vertices.csv"), vertex_table_csv(t));
  json j = torus_to_json(t);
  j["num_vertices"] = t.size();
  j["num_black"] = t.size();
  j["num_white"] = t.size();
  json blacks = json::array(), whites = json::array();
  for (long b = 0; b < t.size(); ++b) {
    auto bv = t.black_vertices(b);
    auto wv = t.white_vertices(b);
    blacks.push_back({bv[0], bv[1], bv[2]});
    whites.push_back({wv[0], wv[1], wv[2]});
  }
  j["black_triangles"] = blacks;
  j["white_triangles"] = whites;
  DerivedDecomposition d = derive(t);
  json dv = json::array();
  for (long v = 0; v < t.size(); ++v)
    dv.push_back({d.vertex_in_parent(v), d.black_in_parent(v),
                  d.white_in_parent(v)});
  j["derived_cells_in_parent"] = dv;
  write_file(out_path(out_dir, "mesh.json"), j.dump(2) + "\n");
  std::printf("mesh: %ld vertices = black = white triangles\n", t.size());
  return 0;
}

int cmd_spectrum(const std::string& input, TorusFlags& tf, std::uint64_t seed,
                 bool complex_values, int dir, const std::string& out_dir) {
  RegularTorus torus = build_regular_torus({{2, 0}, {0, 2}});
  Immersion f = load_immersion(input, tf, seed, complex_values, torus);
  if (input.empty()) {
    json j = torus_to_json(torus);
    j["values"] = immersion_to_json(f);
    write_file(out_path(out_dir, "immersion.json"), j.dump(2) + "\n");
  }
  HolomorphicStructure hs = induced_structure(f, torus);
  FundamentalDomain fd(torus, dir);
  SpectralData sd = char_poly(hs, fd);
  write_file(out_path(out_dir, "spectral.json"),
             spectral_to_json(sd).dump(2) + "\n");
  write_file(out_path(out_dir, "samples.csv"), spectrum_samples_csv(sd));
  std::printf("spectrum: lambda degree %ld, %s, %zu+%zu+%zu ends%s\n",
              sd.lambda_degree, sd.generic ? "generic" : "non-generic",
              sd.ends[0].size(), sd.ends[1].size(), sd.ends[2].size(),
              sd.splits ? ", splits over CP^1" : "");
  return 0;
}

int cmd_darboux(const std::string& input, TorusFlags& tf, std::uint64_t seed,
                const std::vector<double>& mu, const std::vector<double>& lam,
                const std::vector<double>& mu2,
                const std::vector<double>& lam2, bool do_bianchi,
                const std::string& out_dir) {
  RegularTorus torus = build_regular_torus({{2, 0}, {0, 2}});
  Immersion f = load_immersion(input, tf, seed, false, torus);
  HolomorphicStructure hs = induced_structure(f, torus);
  FundamentalDomain fd(torus, 0);
  Multiplier m1{to_complex(mu), to_complex(lam)};

  MonodromySection s1 = eigen_section(hs, fd, m1);
  Prolongation p1 = prolong(s1, hs, f);
  DarbouxTransform ft = darboux_from_section(p1, f);
  bool constant = true;
  for (const auto& v : ft.values)
    constant = constant && hp_distance(v, ft.values[0]) < 1e-8;
  if (constant)
    std::printf("warning: constant transform; the section lies in the "
                "linear system of f\n");
  MultiRatioReport rep = verify_multiratio(f, ft, torus);
  json out{{"multiplier", {{"mu", {m1.mu.real(), m1.mu.imag()}},
                           {"lambda", {m1.lambda.real(), m1.lambda.imag()}}}},
           {"transform", immersion_to_json(Immersion{ft.values})},
           {"verification", multiratio_report_to_json(rep)}};
  if (do_bianchi) {
    Multiplier m2{to_complex(mu2), to_complex(lam2)};
    MonodromySection s2 = eigen_section(hs, fd, m2);
    Prolongation p2 = prolong(s2, hs, f);
    DarbouxTransform ft2 = darboux_from_section(p2, f);
    BianchiResult br = bianchi(f, p1, p2);
    out["transform2"] = immersion_to_json(Immersion{ft2.values});
    out["verification2"] =
        multiratio_report_to_json(verify_multiratio(f, ft2, torus));
    out["f_tilde"] = immersion_to_json(Immersion{br.f_tilde.values});
    out["bianchi"] = {
        {"max_chi_dev", br.max_chi_dev},
        {"multiratio_vs_sharp",
         verify_multiratio(torus, ft.values, br.f_tilde.values).max_dev},
        {"multiratio_vs_flat",
         verify_multiratio(torus, ft2.values, br.f_tilde.values).max_dev}};
  }
  write_file(out_path(out_dir, "darboux.json"), out.dump(2) + "\n");
  std::printf("darboux: max multi-ratio deviation %.3g\n", rep.max_dev);
  return 0;
}

int cmd_polygon(const std::string& input, long ngon, long length,
                std::uint64_t seed, const std::vector<double>& lam, long steps,
                int eigenline, const std::string& out_dir) {
  DiscreteCurve c;
  if (!input.empty()) {
    c = curve_from_json(read_json_file(input));
  } else if (ngon > 0) {
    c = regular_ngon(ngon);
  } else if (length > 0) {
    c = random_polygon(length, seed);
  } else {
    throw ConfigError("specify --input FILE, --ngon N, or --length N");
  }
  check_polygon(c, false);
  PolygonSpectral ps = polygon_spectral(c);
  write_file(out_path(out_dir, "polygon_spectral.json"),
             polygon_spectral_to_json(ps).dump(2) + "\n");
  std::printf("polygon: n=%ld, Hmax %s%s\n", c.size(),
              ps.hmax_nilpotent ? "nilpotent" : "invertible",
              ps.splits ? ", splits over CP^1" : "");
  if (steps > 0) {
    Complex lambda = to_complex(lam);
    auto flow = polygon_flow(c, lambda, steps, eigenline);
    std::vector<DiscreteCurve> all;
    all.push_back(c);
    all.insert(all.end(), flow.begin(), flow.end());
    write_file(out_path(out_dir, "flow.obj"), flow_to_obj(all));
    std::printf("flow: %zu closed steps written\n", flow.size());
  }
  return 0;
}

int cmd_verify(std::uint64_t seed, const std::string& criteria, double tol) {
  // criterion names accepted in --criteria, resolved to ids
  static const std::pair<const char*, int> names[] = {
      {"oracle", 1},     {"combinatorics", 2}, {"multiratio", 3},
      {"ends", 4},       {"rho", 5},           {"asymptotics", 6},
      {"bianchi", 7},    {"invariance", 8},    {"polygon", 9},
      {"cylinder", 10},  {"splitting", 11},    {"kodaira", 12}};
  std::string filter;
  std::stringstream ss(criteria);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int id = 0;
    if (tok.find_first_not_of("0123456789") == std::string::npos) {
      id = std::stoi(tok);
    } else {
      for (const auto& [name, i] : names)
        if (std::string(name).find(tok) != std::string::npos) id = i;
    }
    if (id < 1 || id > 12) throw ConfigError("unknown criterion: " + tok);
    filter += (filter.empty() ? "" : ",") + std::to_string(id);
  }
  auto results = run_acceptance(seed, filter, tol);
  bool all = true;
  for (const auto& r : results) {
    std::printf("criterion %2d [%s] %-48s %s\n", r.id, r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.detail.c_str());
    all = all && r.pass;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete holomorphic geometry toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // --seed/--tol/--out-dir may follow the subcommand

  std::uint64_t seed = 1;
  double tol = 0;
  std::string out_dir = ".";
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_option("--tol", tol, "tolerance override (0 = built-in defaults)");
  app.add_option("--out-dir", out_dir, "output directory")
      ->capture_default_str();

  TorusFlags mesh_tf, spec_tf, darb_tf;
  std::string spec_input, darb_input, poly_input;
  bool spec_complex = false;
  int spec_dir = 0;
  std::vector<double> mu{1, 0}, lam{1, 0}, mu2, lam2;
  bool do_bianchi = false;
  long ngon = 0, length = 0, steps = 0;
  int eigenline = 0;
  std::string criteria;

  CLI::App* mesh = app.add_subcommand("mesh", "build and report a torus");
  mesh_tf.add_to(mesh);

  CLI::App* spec = app.add_subcommand("spectrum", "spectral curve of an "
                                                  "immersion");
  spec_tf.add_to(spec);
  spec->add_option("--input", spec_input, "immersion JSON file");
  spec->add_flag("--complex", spec_complex, "complex-valued random immersion");
  spec->add_option("--dir", spec_dir, "lattice direction (0, 1, 2)")
      ->check(CLI::Range(0, 2));

  CLI::App* darb = app.add_subcommand("darboux", "darboux transform at a "
                                                 "multiplier");
  darb_tf.add_to(darb);
  darb->add_option("--input", darb_input, "immersion JSON file");
  darb->add_option("--mu", mu, "multiplier mu (re [im])")->expected(1, 2);
  darb->add_option("--lambda", lam, "multiplier lambda (re [im])")
      ->expected(1, 2);
  darb->add_flag("--bianchi", do_bianchi, "combine with a second transform");
  darb->add_option("--mu2", mu2, "second mu (re [im])")->expected(1, 2);
  darb->add_option("--lambda2", lam2, "second lambda (re [im])")
      ->expected(1, 2);

  CLI::App* poly = app.add_subcommand("polygon", "polygon spectral data and "
                                                 "flow");
  poly->add_option("--input", poly_input, "polygon JSON file");
  poly->add_option("--ngon", ngon, "regular n-gon");
  poly->add_option("--length", length, "random polygon length");
  poly->add_option("--lambda", lam, "flow parameter (re [im])")->expected(1, 2);
  poly->add_option("--steps", steps, "number of flow steps");
  poly->add_option("--eigenline", eigenline, "initial eigenline index")
      ->check(CLI::Range(0, 3));

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--criteria", criteria,
                     "comma-separated criterion ids or names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    if (mesh->parsed()) return cmd_mesh(mesh_tf, out_dir);
    if (spec->parsed())
      return cmd_spectrum(spec_input, spec_tf, seed, spec_complex, spec_dir,
                          out_dir);
    if (darb->parsed())
      return cmd_darboux(darb_input, darb_tf, seed, mu, lam, mu2, lam2,
                         do_bianchi, out_dir);
    if (poly->parsed())
      return cmd_polygon(poly_input, ngon, length, seed, lam, steps, eigenline,
                         out_dir);
    if (verify->parsed()) return cmd_verify(seed, criteria, tol);
  } catch (const ConfigError& e) {
    diagnostic("config", e);
    return 2;
  } catch (const Error& e) {
    diagnostic("degeneracy", e);
    return 3;
  } catch (const std::exception& e) {
    diagnostic("internal", e);
    return 2;
  }
  return 2;
}
