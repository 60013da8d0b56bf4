#include "dhg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dhg {

namespace {

json quat_to_json(const Quaternion& q) { return json::array({q.a, q.b, q.c, q.d}); }

Quaternion quat_from_json(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(),
          j.at(3).get<double>()};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json coeffs_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    json row = json::array();
    for (Eigen::Index d = 0; d < m.cols(); ++d) row.push_back(complex_to_json(m(k, d)));
    rows.push_back(row);
  }
  return rows;
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

json hpoint_to_json(const HPoint& p) {
  return json::array({quat_to_json(p.rep.x0), quat_to_json(p.rep.x1)});
}

HPoint hpoint_from_json(const json& j) {
  if (j.size() == 4 && j.at(0).is_number())
    return HPoint::from_affine(quat_from_json(j));
  return HPoint{{quat_from_json(j.at(0)), quat_from_json(j.at(1))}};
}

json immersion_to_json(const Immersion& f) {
  json arr = json::array();
  for (const auto& p : f.values) arr.push_back(hpoint_to_json(p));
  return arr;
}

Immersion immersion_from_json(const json& j) {
  Immersion f;
  for (const auto& e : j) f.values.push_back(hpoint_from_json(e));
  return f;
}

json curve_to_json(const DiscreteCurve& c) {
  json arr = json::array();
  for (const auto& p : c.points) arr.push_back(hpoint_to_json(p));
  return json{{"closed", c.closed}, {"points", arr}};
}

DiscreteCurve curve_from_json(const json& j) {
  DiscreteCurve c;
  const json* pts = &j;
  if (j.is_object()) {
    c.closed = j.value("closed", true);
    pts = &j.at("points");
  }
  for (const auto& e : *pts) c.points.push_back(hpoint_from_json(e));
  return c;
}

json torus_to_json(const RegularTorus& t) {
  const auto& b = t.basis();
  return {{"gamma", {b.gamma.x, b.gamma.y}}, {"eta", {b.eta.x, b.eta.y}}};
}

LatticeBasis basis_from_json(const json& j) {
  return {{j.at("gamma").at(0).get<long>(), j.at("gamma").at(1).get<long>()},
          {j.at("eta").at(0).get<long>(), j.at("eta").at(1).get<long>()}};
}

json spectral_to_json(const SpectralData& sd) {
  json ends;
  for (int k = 0; k < 3; ++k) {
    json dir = json::array();
    for (Complex e : sd.ends[k]) dir.push_back(complex_to_json(e));
    ends["dir" + std::to_string(k)] = dir;
  }
  json j{{"lambda_degree", sd.lambda_degree},
         {"mu_degree_bound", sd.mu_degree_bound},
         {"coeffs", coeffs_to_json(sd.coeffs)},
         {"ends", ends},
         {"generic", sd.generic},
         {"rho_symmetry_dev", sd.rho_symmetry_dev},
         {"splits", sd.splits}};
  if (sd.splits) {
    j["factor1"] = coeffs_to_json(sd.factor1);
    j["factor2"] = coeffs_to_json(sd.factor2);
  }
  return j;
}

json polygon_spectral_to_json(const PolygonSpectral& ps) {
  json j{{"mu_degree", ps.mu_degree},
         {"lambda_degree_bound", ps.lambda_degree_bound},
         {"coeffs", coeffs_to_json(ps.coeffs)},
         {"hmax_degree", ps.hmax_degree},
         {"hmax_nilpotent", ps.hmax_nilpotent},
         {"hmax_invertible", ps.hmax_invertible},
         {"h0_kills_L1", ps.h0_kills_L1},
         {"simple_eigenvalues", ps.simple_eigenvalues},
         {"rho_symmetry_dev", ps.rho_symmetry_dev},
         {"splits", ps.splits}};
  if (ps.splits) {
    j["factor1"] = coeffs_to_json(ps.factor1);
    j["factor2"] = coeffs_to_json(ps.factor2);
  }
  return j;
}

json multiratio_report_to_json(const MultiRatioReport& rep) {
  return {{"max_multiratio_dev", rep.max_dev},
          {"worst_white_triangle", rep.worst_white},
          {"regularity_violations", json::array()}};
}

std::string spectrum_samples_csv(const SpectralData& sd) {
  std::ostringstream os;
  os << "mu_re,mu_im,lambda_re,lambda_im,min_singular_value\n";
  for (const auto& s : sd.samples)
    os << fmt12(s.mu.real()) << ',' << fmt12(s.mu.imag()) << ','
       << fmt12(s.lambda.real()) << ',' << fmt12(s.lambda.imag()) << ','
       << fmt12(s.min_singular_value) << '\n';
  return os.str();
}

std::string vertex_table_csv(const RegularTorus& t) {
  std::ostringstream os;
  os << "index,x,y\n";
  for (long v = 0; v < t.size(); ++v) {
    IVec2 c = t.coords(v);
    os << v << ',' << c.x << ',' << c.y << '\n';
  }
  return os.str();
}

std::string flow_to_obj(const std::vector<DiscreteCurve>& steps, double pole) {
  std::ostringstream os;
  long base = 1;
  for (size_t s = 0; s < steps.size(); ++s) {
    os << "o step_" << s << '\n';
    long n = steps[s].size();
    for (long k = 0; k < n; ++k) {
      auto a = steps[s].at(k).affine();
      Quaternion q = a ? *a : Quaternion{0, 0, 0, 0};
      double scale = (pole != 0.0) ? 1.0 / (1.0 - q.a / pole) : 1.0;
      os << "v " << fmt12(q.b * scale) << ' ' << fmt12(q.c * scale) << ' '
         << fmt12(q.d * scale) << '\n';
    }
    os << "l";
    for (long k = 0; k < n; ++k) os << ' ' << base + k;
    if (steps[s].closed) os << ' ' << base;
    os << '\n';
    base += n;
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace dhg
