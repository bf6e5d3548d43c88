#include "scissors/reports.hpp"

#include <cmath>

namespace scissors {

namespace {

Json volume_json(const Polytope& p) {
  double v = 0, err = 0;
  try {
    for (size_t k = 0; k < p.simplices.size(); ++k) {
      auto r = volume(p.simplices[k]);
      v += p.signs[k] * r.value;
      err += r.error;
    }
  } catch (const Error& e) {
    return {{"value", nullptr}, {"reason", e.what()}};
  }
  return {{"value", v}, {"error_estimate", err}};
}

}  // namespace

Json homology_report(const Json& in, Coeff c, int closure_rounds) {
  Json out{{"coeff", coeff_name(c)}};
  std::vector<HomologyGroup> h;
  if (in.contains("cells")) {
    h = homology(normalized_chains(simpset_from_json(in)), c);
    out["input"] = "simpset";
  } else {
    auto fam = family_from_json(in, closure_rounds);
    auto f = build_F(fam);
    h = homology(normalized_chains(*f->space), c);
    out["input"] = "family";
    out["family_size"] = fam->members().size();
    Json counts = Json::array();
    for (int k = 0; k <= f->space->dim(); ++k) counts.push_back(f->space->count(k));
    out["building_simplices"] = counts;
  }
  out["homology"] = homology_to_json(h);
  return out;
}

Json dehn_complex_report(const Json& family, const Json& group, int truncate, Coeff c, int closure_rounds) {
  auto fam = family_from_json(family, closure_rounds);
  return dehn_report_to_json(dehn_complex(fam, group_from_json(group), truncate, c));
}

Json classical_report(const Json& polytope, int bits) {
  PrecisionScope ps(bits);
  auto p = polytope_from_json(polytope);
  ReducePolicy policy;
  policy.bits = bits;
  auto t = dehn_classical(p, policy);
  return {{"flavor", geometry_name(p.flavor)},
          {"dim", p.dim},
          {"simplices", p.simplices.size()},
          {"dehn_invariant", tensor_to_json(t)},
          {"volume", volume_json(p)}};
}

Json ccs_report(const Json& tuple, int bits) {
  PrecisionScope ps(bits);
  auto in = ccs_input_from_json(tuple);
  auto r = ccs_simplex(in.flavor, in.tuple, in.x0);
  Json verts = Json::array();
  for (auto& v : r.simplex.vertices) {
    Json row = Json::array();
    for (auto& x : v) row.push_back(real_str(x, 30));
    verts.push_back(row);
  }
  Json dets = Json::array();
  for (auto& d : r.dets) dets.push_back(real_str(d, 12));
  Json out{{"flavor", geometry_name(in.flavor)}, {"vertices", verts}, {"sign", r.sign}, {"determinants", dets}};
  Json vol;
  try {
    auto v = volume(r.simplex);
    vol = {{"value", v.value}, {"error_estimate", v.error}, {"signed", r.sign * v.value}};
    int d = r.simplex.dim;
    // total mass (2π)^n on S^{2n-1}
    if (in.flavor == Geometry::Spherical && d % 2 == 1)
      vol["ccs_normalized"] = r.sign * v.value * std::pow(2 * M_PI, (d + 1) / 2) / sphere_volume(d);
  } catch (const Error& e) {
    vol = {{"value", nullptr}, {"reason", e.what()}};
  }
  out["volume"] = vol;
  return out;
}

}  // namespace scissors
