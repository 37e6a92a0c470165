#include "nilfill/json_io.hpp"

#include <cmath>
#include <fstream>

namespace nilfill {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return rat_parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError("non-finite number in JSON");
    return Rational(v);  // exact binary expansion
  }
  throw ParseError("expected a rational value, got " + j.dump());
}

StructureConstants algebra_from_json(const Json& j) {
  StructureConstants c;
  c.n = j.at("n").get<int>();
  if (c.n < 1) throw ParseError("algebra dimension must be >= 1");
  if (j.contains("brackets")) {
    for (const auto& b : j.at("brackets")) {
      int i = b.at("i").get<int>() - 1;
      int jj = b.at("j").get<int>() - 1;
      if (i < 0 || jj < 0 || i >= c.n || jj >= c.n || i == jj)
        throw ParseError("bracket indices out of range");
      RatVec v(static_cast<std::size_t>(c.n), Rational(0));
      for (const auto& [key, val] : b.at("coeffs").items()) {
        int k = std::stoi(key) - 1;
        if (k < 0 || k >= c.n) throw ParseError("coefficient index out of range");
        v[static_cast<std::size_t>(k)] = rational_from_json(val);
      }
      c.set(i, jj, std::move(v));
    }
  }
  return c;
}

Json algebra_to_json(const StructureConstants& c) {
  Json out;
  out["n"] = c.n;
  Json brackets = Json::array();
  for (const auto& [ij, v] : c.brackets) {
    Json b;
    b["i"] = ij.first + 1;
    b["j"] = ij.second + 1;
    Json coeffs = Json::object();
    for (int k = 0; k < c.n; ++k)
      if (v[static_cast<std::size_t>(k)] != 0)
        coeffs[std::to_string(k + 1)] = rat_to_string(v[static_cast<std::size_t>(k)]);
    b["coeffs"] = std::move(coeffs);
    brackets.push_back(std::move(b));
  }
  out["brackets"] = std::move(brackets);
  return out;
}

PLChain chain_from_json(const Json& j) {
  int dim = j.at("dim").get<int>();
  const auto& terms = j.at("terms");
  int ambient = -1;
  for (const auto& t : terms) {
    const auto& verts = t.at("verts");
    if (!verts.empty()) ambient = static_cast<int>(verts.front().size());
    break;
  }
  if (ambient < 0) {
    if (j.contains("ambient")) ambient = j.at("ambient").get<int>();
    else throw ParseError("empty chain needs an explicit \"ambient\" field");
  }
  PLChain c(dim, ambient);
  for (const auto& t : terms) {
    std::int64_t coef = t.at("coef").get<std::int64_t>();
    std::vector<Point> verts;
    for (const auto& v : t.at("verts")) {
      Point p;
      for (const auto& x : v) p.push_back(rational_from_json(x));
      verts.push_back(std::move(p));
    }
    c.add(std::move(verts), coef);
  }
  return c;
}

Json chain_to_json(const PLChain& c) {
  Json out;
  out["dim"] = c.dim();
  out["ambient"] = c.ambient_dim();
  Json terms = Json::array();
  for (const auto& [s, a] : c.terms()) {
    Json t;
    t["coef"] = a;
    Json verts = Json::array();
    for (const auto& v : s.vertices) {
      Json vv = Json::array();
      for (const auto& x : v) vv.push_back(rat_to_string(x));
      verts.push_back(std::move(vv));
    }
    t["verts"] = std::move(verts);
    terms.push_back(std::move(t));
  }
  out["terms"] = std::move(terms);
  return out;
}

Json fill_report_to_json(const FillReport& r) {
  Json out;
  out["d"] = r.d;
  out["input_mass_pulled"] = r.input_mass_pulled;
  out["input_mass_euclid"] = r.input_mass_euclid;
  out["radius"] = r.radius;
  out["diameter"] = r.diameter;
  out["components"] = r.components;
  out["fill_mass_euclid"] = r.fill_mass_euclid;
  out["fill_mass_pulled"] = r.fill_mass_pulled;
  out["bound_value"] = r.bound_value;
  out["k_measured"] = r.k_measured;
  out["r2_at_vhat"] = r.r2_at_vhat;
  out["disk_bound"] = r.disk_bound;
  out["cauchy_schwarz_ok"] = r.cauchy_schwarz_ok;
  out["certificate_ok"] = r.certificate_ok;
  Json comps = Json::array();
  for (const auto& c : r.per_component) {
    Json cc;
    cc["lambda"] = c.lambda;
    cc["input_mass_pulled"] = c.input_mass_pulled;
    cc["rho"] = c.rho;
    cc["cone_mass_euclid"] = c.cone_mass_euclid;
    cc["cone_mass_pulled"] = c.cone_mass_pulled;
    cc["r_d"] = c.r_d;
    cc["r_d1"] = c.r_d1;
    cc["certificate"] = c.certificate;
    cc["k_measured"] = c.k_measured;
    Json tr = Json::array();
    for (const auto& x : c.translator) tr.push_back(rat_to_string(x));
    cc["translator"] = std::move(tr);
    comps.push_back(std::move(cc));
  }
  out["per_component"] = std::move(comps);
  return out;
}

Json distortion_fit_to_json(const DistortionFit& f) {
  Json out;
  out["s"] = f.s;
  out["n_hom"] = f.n_hom;
  out["upper_C"] = f.upper_C;
  out["upper_L"] = f.upper_L;
  out["lower_C"] = f.lower_C;
  out["lower_L"] = f.lower_L;
  out["growth_slope"] = f.growth_slope;
  if (f.central_ray_exponent) out["central_ray_exponent"] = *f.central_ray_exponent;
  out["enclosing_valid"] = f.enclosing_valid;
  return out;
}

Json grid_deformation_to_json(const GridDeformation& g) {
  Json out;
  out["cells"] = g.P.cell_count();
  out["coefficient_l1"] = g.P.coefficient_l1();
  out["cells_met"] = g.cells_met;
  out["mass_input"] = g.mass_input;
  out["mass_deformed"] = g.mass_deformed;
  out["mass_ratio"] = g.mass_input > 0 ? g.mass_deformed / g.mass_input : 0.0;
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace nilfill
