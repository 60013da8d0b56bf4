#pragma once

#include <string>
#include <vector>

#include "dhg/darboux.hpp"
#include "dhg/polygon.hpp"
#include "dhg/spectral.hpp"

#include <json.hpp>

namespace dhg {

using nlohmann::json;

json hpoint_to_json(const HPoint& p);
HPoint hpoint_from_json(const json& j);  // [a,b,c,d] affine or [[..],[..]]

json immersion_to_json(const Immersion& f);
Immersion immersion_from_json(const json& j);

json curve_to_json(const DiscreteCurve& c);
DiscreteCurve curve_from_json(const json& j);

json torus_to_json(const RegularTorus& t);  // {"gamma":[...],"eta":[...]}
LatticeBasis basis_from_json(const json& j);

json spectral_to_json(const SpectralData& sd);
json polygon_spectral_to_json(const PolygonSpectral& ps);
json multiratio_report_to_json(const MultiRatioReport& rep);

std::string spectrum_samples_csv(const SpectralData& sd);
std::string vertex_table_csv(const RegularTorus& t);

// One OBJ object per curve; values projected R^4 -> R^3 by dropping the real
// part, or dividing the imaginary part by (1 - a/pole) when a pole is given.
std::string flow_to_obj(const std::vector<DiscreteCurve>& steps,
                        double pole = 0 /* 0 = drop real part */);

void write_file(const std::string& path, const std::string& content);
json read_json_file(const std::string& path);

}  // namespace dhg
