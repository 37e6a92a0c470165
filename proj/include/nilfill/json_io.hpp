#pragma once

#include <string>

#include <json.hpp>

#include "nilfill/algebra.hpp"
#include "nilfill/chains.hpp"
#include "nilfill/distortion.hpp"
#include "nilfill/filling.hpp"
#include "nilfill/grid.hpp"

namespace nilfill {

using Json = nlohmann::json;

// Structure constants: {"n": int, "brackets": [{"i": i, "j": j,
// "coeffs": {"k": "p/q", ...}}]} with 1-based indices and rational strings
// (plain integers and decimals also accepted).
StructureConstants algebra_from_json(const Json& j);
Json algebra_to_json(const StructureConstants& c);

// Chains: {"dim": k, "terms": [{"coef": int, "verts": [[...], ...]}]};
// vertex entries are rational strings or JSON numbers (converted exactly).
PLChain chain_from_json(const Json& j);
Json chain_to_json(const PLChain& c);

Json fill_report_to_json(const FillReport& r);
Json distortion_fit_to_json(const DistortionFit& f);
Json grid_deformation_to_json(const GridDeformation& g);

Rational rational_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace nilfill
