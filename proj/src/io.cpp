#include "scissors/io.hpp"

#include <fstream>
#include <sstream>

namespace scissors {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error("ParseError", std::string("missing field '") + key + "'");
  return j.at(key);
}

Rational rational_of(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error("ParseError", "expected a rational string, got " + j.dump());
}

Real real_of(const Json& j) {
  if (j.is_string()) return parse_real(j.get<std::string>());
  if (j.is_number_integer()) return Real(j.get<long>());
  if (j.is_number()) throw Error("ParseError", "give decimals as strings to keep precision: " + j.dump());
  throw Error("ParseError", "expected a decimal string, got " + j.dump());
}

QVec qvec_of(const Json& j) {
  if (!j.is_array()) throw Error("ParseError", "expected a vector, got " + j.dump());
  QVec v;
  for (auto& x : j) v.push_back(rational_of(x));
  return v;
}

QMat qmat_of(const Json& j) {
  if (!j.is_array()) throw Error("ParseError", "expected a matrix, got " + j.dump());
  QMat m;
  for (auto& r : j) m.push_back(qvec_of(r));
  return m;
}

RVec rvec_of(const Json& j) {
  if (!j.is_array()) throw Error("ParseError", "expected a vector, got " + j.dump());
  RVec v;
  for (auto& x : j) v.push_back(real_of(x));
  return v;
}

Json qmat_json(const QMat& m) {
  Json out = Json::array();
  for (auto& r : m) {
    Json row = Json::array();
    for (auto& x : r) row.push_back(to_string(x));
    out.push_back(row);
  }
  return out;
}

Json int_json(const Int& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error("ParseError", e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("ParseError", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

QuadSpacePtr geometry_from_json(const Json& j) {
  Flavor f = parse_flavor(field(j, "flavor").get<std::string>());
  if (j.contains("gram")) {
    QuadSpacePtr q = QuadSpace::make(f, qmat_of(j.at("gram")));
    if (j.contains("dim") && j.at("dim").get<int>() != q->dim()) throw Error("ParseError", "dim does not match gram");
    return q;
  }
  int n = field(j, "dim").get<int>();
  return f == Flavor::Spherical ? QuadSpace::spherical(n) : QuadSpace::hyperbolic(n);
}

Json geometry_to_json(const QuadSpace& q) {
  return {{"flavor", flavor_name(q.flavor())}, {"dim", q.dim()}, {"gram", qmat_json(q.gram())}};
}

FamilyPtr family_from_json(const Json& j, int closure_rounds) {
  auto g = geometry_from_json(field(j, "geometry"));
  std::vector<Subspace> seeds;
  for (auto& s : field(j, "subspaces")) {
    if (!s.is_array() || s.empty()) throw Error("ParseError", "subspace must be a nonempty array");
    std::vector<QVec> rows;
    if (s[0].is_array())
      for (auto& r : s) rows.push_back(qvec_of(r));
    else
      rows.push_back(qvec_of(s));
    seeds.push_back(Subspace::span_auto(rows, g));
  }
  std::vector<std::string> ops;
  if (j.contains("closure"))
    for (auto& o : j.at("closure")) ops.push_back(o.get<std::string>());
  return std::make_shared<SubspaceFamily>(SubspaceFamily::make(g, seeds, ops, closure_rounds));
}

Json family_to_json(const SubspaceFamily& f) {
  Json subs = Json::array();
  for (auto& m : f.members()) subs.push_back(qmat_json(m.basis()));
  return {{"geometry", geometry_to_json(*f.geometry())}, {"subspaces", subs}, {"closure", f.closure_ops()}};
}

FiniteGroup group_from_json(const Json& j) {
  if (j.contains("generators")) {
    std::vector<QMat> gens;
    for (auto& m : j.at("generators")) gens.push_back(qmat_of(m));
    if (gens.empty()) throw Error("ParseError", "no generators");
    return FiniteGroup::generated_by(gens);
  }
  std::vector<std::string> labels;
  for (auto& e : field(j, "elements")) labels.push_back(e.is_string() ? e.get<std::string>() : e.dump());
  std::vector<std::vector<int>> table = field(j, "table").get<std::vector<std::vector<int>>>();
  std::vector<int> character;
  if (j.contains("character")) character = j.at("character").get<std::vector<int>>();
  FiniteGroup g(labels, table, character);
  if (j.contains("matrices")) {
    std::vector<QMat> ms;
    for (auto& m : j.at("matrices")) ms.push_back(qmat_of(m));
    g.set_matrices(ms);
  }
  return g;
}

Json group_to_json(const FiniteGroup& g) {
  Json labels = Json::array();
  for (int a = 0; a < g.order(); ++a) labels.push_back(g.label(a));
  Json out{{"elements", labels}, {"table", g.table()}, {"character", g.character()}};
  if (g.has_matrices()) {
    Json ms = Json::array();
    for (int a = 0; a < g.order(); ++a) ms.push_back(qmat_json(g.matrix(a)));
    out["matrices"] = ms;
  }
  return out;
}

SimpSet simpset_from_json(const Json& j) {
  SimpSet s(j.contains("base") ? j.at("base").get<std::string>() : "*");
  const Json& cells = field(j, "cells");
  for (size_t k = 0; k < cells.size(); ++k)
    for (auto& c : cells[k]) {
      if (k == 0 && c.value("label", "") == s.label(0, 0)) continue;
      std::vector<Simp> faces;
      if (k > 0)
        for (auto& f : field(c, "faces")) {
          auto mi = f.get<std::vector<long>>();
          if (mi.size() != 2) throw Error("ParseError", "face must be [mask, index]");
          faces.push_back(Simp{static_cast<int>(k) - 1, static_cast<uint32_t>(mi[0]), static_cast<int>(mi[1])});
        }
      s.add(static_cast<int>(k), field(c, "label").get<std::string>(), faces);
    }
  if (auto bad = s.check()) throw Error("ParseError", "simplicial identities fail: " + *bad);
  return s;
}

Json simpset_to_json(const SimpSet& s) {
  Json cells = Json::array();
  for (int k = 0; k <= s.dim(); ++k) {
    Json level = Json::array();
    for (int i = 0; i < s.count(k); ++i) {
      if (k == 0 && i == 0) continue;
      Json faces = Json::array();
      for (auto& f : s.faces(k, i)) faces.push_back({f.mask, f.nd});
      Json c{{"label", s.label(k, i)}};
      if (k > 0) c["faces"] = faces;
      level.push_back(c);
    }
    cells.push_back(level);
  }
  return {{"base", s.label(0, 0)}, {"cells", cells}};
}

Json homology_to_json(const std::vector<HomologyGroup>& h) {
  Json out = Json::array();
  for (auto& g : h) {
    Json t = Json::array();
    for (auto& v : g.torsion) t.push_back(int_json(v));
    out.push_back({{"degree", g.degree}, {"rank", g.rank}, {"torsion", t}});
  }
  return out;
}

Json int_matrix_to_json(const IntMat& m) {
  Json out = Json::array();
  for (auto& r : m) {
    Json row = Json::array();
    for (auto& v : r) row.push_back(int_json(v));
    out.push_back(row);
  }
  return out;
}

Json dehn_report_to_json(const DehnComplexData& d) {
  Json objects = Json::array();
  for (int mask = 0; mask < d.index.vertices(); ++mask) {
    objects.push_back({{"object", d.index.objects[mask].str()},
                       {"degree", d.index.m() - std::popcount(static_cast<unsigned>(mask))},
                       {"vertex_homology", homology_to_json({d.vertex_homology[mask]})[0]},
                       {"free_rank", d.free_generators[mask].size()}});
  }
  Json ranks = Json::array(), diffs = Json::array();
  for (int n = 0; n <= d.complex.top(); ++n) {
    ranks.push_back(d.complex.rank(n));
    if (n > 0) diffs.push_back({{"degree", n}, {"matrix", int_matrix_to_json(d.complex.d(n).dense())}});
  }
  Json e1 = Json::array(), e2 = Json::array();
  for (int p = 0; p <= d.index.m(); ++p) {
    auto* a = d.pages[0].at(p, d.d + 1);
    e1.push_back(a ? a->rank : 0);
    if (d.pages.size() > 1) {
      auto* b = d.pages[1].at(p, d.d + 1);
      e2.push_back(b ? b->rank : 0);
    }
  }
  return {{"d", d.d},
          {"group_order", d.group.order()},
          {"coeff", coeff_name(d.coeff)},
          {"truncate", d.truncate},
          {"objects", objects},
          {"ranks", ranks},
          {"differentials", diffs},
          {"homology", homology_to_json(d.homology)},
          {"spectral_sequence",
           {{"E1_bottom_row_ranks", e1},
            {"E2_bottom_row_ranks", e2},
            {"bottom_row_matches", d.bottom_row_matches},
            {"below_row_vanishes", d.below_row_vanishes}}},
          {"message", d.message}};
}

Polytope polytope_from_json(const Json& j) {
  Geometry f = parse_geometry(field(j, "flavor").get<std::string>());
  std::vector<RVec> verts;
  for (auto& v : field(j, "vertices")) verts.push_back(rvec_of(v));
  Polytope p;
  for (auto& s : field(j, "simplices")) {
    auto idx = s.get<std::vector<long>>();
    if (idx.size() < 2) throw Error("ParseError", "simplex needs vertex indices and a sign");
    int sign = static_cast<int>(idx.back());
    if (sign != 1 && sign != -1) throw Error("ParseError", "simplex sign must be 1 or -1");
    std::vector<RVec> vs;
    for (size_t k = 0; k + 1 < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= static_cast<long>(verts.size())) throw Error("ParseError", "vertex index out of range");
      vs.push_back(verts[idx[k]]);
    }
    p.add(GeodesicSimplex::make(f, vs), sign);
  }
  p.flavor = f;
  return p;
}

Json tensor_to_json(const DehnTensor& t, int digits) {
  Json terms = Json::array(), certs = Json::array();
  for (auto& [l, a] : t.terms) terms.push_back({{"length", real_str(l, digits)}, {"angle", real_str(a, digits)}});
  for (auto& c : t.certificates)
    if (c.angle > 0)
      certs.push_back({{"angle", real_str(t.basis[c.angle], digits)},
                       {"independent_of_pi_and_earlier", c.independent},
                       {"relation_norm_at_least", real_str(c.norm_bound, 8)}});
  return {{"zero", t.zero()}, {"terms", terms}, {"heuristic", t.heuristic}, {"bits", t.bits}, {"certificates", certs},
          {"text", t.str(digits)}};
}

CcsInput ccs_input_from_json(const Json& j) {
  CcsInput in;
  in.flavor = parse_geometry(field(j, "flavor").get<std::string>());
  in.x0 = rvec_of(field(j, "x0"));
  for (auto& m : field(j, "tuple")) {
    RMat r;
    for (auto& row : m) r.push_back(rvec_of(row));
    in.tuple.push_back(r);
  }
  return in;
}

}  // namespace scissors
