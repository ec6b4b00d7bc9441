#pragma once

#include "toricq/chambers.hpp"
#include "toricq/workspace.hpp"

#include <string>
#include <vector>

namespace toricq {

inline constexpr const char* kToolVersion = "1.0.0";

// JSON encoders for library values. Ray indices are printed 1-based, as in
// workspace files.

inline json to_json(const Rational& r) { return detail::rational_json(r); }

inline json to_json(const QVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const IntPoint& v) {
  json a = json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

inline json cone_json(const Cone& c) {
  json a = json::array();
  for (int i : c) a.push_back(i + 1);
  return a;
}

inline json to_json(const Integer& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

inline json divisor_json(const ToricDivisor& D, SignConvention conv) {
  return {{"coeffs", to_json(D.coeffs())}, {"pl", to_json(D.pl_values(conv))}};
}

inline json class_json(const DivisorClass& c) {
  json t = json::array();
  for (const auto& x : c.torsion) t.push_back(to_json(x));
  return {{"coords", to_json(c.coords)}, {"torsion", t}};
}

inline json fan_json(const Fan& f) {
  json rays = json::array(), cones = json::array();
  for (const auto& u : f.rays) rays.push_back(to_json(u));
  for (const auto& c : f.max_cones) cones.push_back(cone_json(c));
  return {{"lattice_rank", f.lattice_rank}, {"rays", rays}, {"max_cones", cones}};
}

inline json wall_json(const Wall& w) {
  return {{"wall", cone_json(w.cone)}, {"cones", {w.left + 1, w.right + 1}}};
}

inline json properties_json(const ToricVariety& X) {
  const auto& p = X.properties();
  const auto& pic = X.picard();
  json tors = json::array();
  for (const auto& t : pic.torsion) tors.push_back(to_json(t));
  json basis = json::array();
  for (const auto& b : pic.basis_divisors) basis.push_back(to_json(b));
  return {{"simplicial", p.simplicial},
          {"complete", p.complete},
          {"smooth", p.smooth},
          {"rays", X.ray_count()},
          {"max_cones", X.max_cones().size()},
          {"walls", X.walls().size()},
          {"picard_rank", pic.rank},
          {"class_group_torsion", tors},
          {"n1_basis_divisors", basis}};
}

inline json cohomology_json(const CohomologyTable& t) {
  json dims = json::array();
  for (const auto& d : t.dims) dims.push_back(to_json(d));
  json wit = json::array();
  for (std::size_t p = 0; p < t.witnesses.size(); ++p)
    for (const auto& w : t.witnesses[p])
      wit.push_back({{"degree", p},
                     {"subset", cone_json(w.subset)},
                     {"weights", to_json(w.weight_count)},
                     {"reduced_dim", w.reduced_dim},
                     {"sample_weight", to_json(w.sample_weight)}});
  return {{"dims", dims}, {"euler_characteristic", to_json(t.euler_characteristic())}, {"witnesses", wit}};
}

inline json flags_json(const ConeFlags& f) {
  json j = {{"nef", f.nef},
            {"ample", f.ample},
            {"effective", f.effective},
            {"big", f.big},
            {"pseudoeffective", f.pseudoeffective}};
  if (f.non_nef_wall) j["non_nef_wall"] = wall_json(*f.non_nef_wall);
  if (f.non_ample_wall) j["non_ample_wall"] = wall_json(*f.non_ample_wall);
  if (f.section_weight) j["section_weight"] = to_json(*f.section_weight);
  return j;
}

inline json locus_json(const BaseLocusReport& b) {
  json comps = json::array();
  for (const auto& c : b.components) comps.push_back(cone_json(c));
  json j = {{"components", comps}, {"dimension", b.dimension}, {"empty", b.empty()}, {"whole", b.whole()}};
  if (b.no_sections) j["no_sections"] = true;
  if (b.multiple) j["multiple"] = *b.multiple;
  if (b.horizon) j["horizon"] = b.horizon;
  return j;
}

inline json qnef_json(const QNefResult& r, SignConvention conv) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"tau", cone_json(c.tau)},
                      {"restriction", divisor_json(c.restricted, conv)},
                      {"negative_big", c.negative_big}});
  json j = {{"q", r.q}, {"qnef", r.qnef}, {"scope", "torus-invariant"}, {"checks", checks}};
  if (r.witness) j["witness"] = cone_json(*r.witness);
  return j;
}

inline const char* outcome_name(SubsetOutcome o) {
  switch (o) {
    case SubsetOutcome::StrictInfeasible: return "empty for every eps > 0";
    case SubsetOutcome::ClosureInfeasible: return "empty near eps = 0";
    case SubsetOutcome::Obstruction: return "obstruction";
  }
  return "";
}

inline json asymptotic_json(const AsymptoticVerdict& v) {
  json obs = json::array();
  for (const auto& o : v.obstructions)
    obs.push_back({{"degree", o.degree},
                   {"subset", cone_json(o.subset)},
                   {"reduced_dim", o.reduced_dim},
                   {"eps", to_json(o.eps)},
                   {"weight", to_json(o.weight)},
                   {"closure_weight", to_json(o.closure_weight)}});
  json checks = json::array();
  for (const auto& c : v.checks)
    checks.push_back({{"degree", c.degree}, {"subset", cone_json(c.subset)}, {"outcome", outcome_name(c.outcome)}});
  json j = {{"q", v.q}, {"qample", v.qample}, {"obstructions", obs}, {"subset_checks", checks}};
  if (v.augmented_dim) {
    j["augmented_base_locus_dim"] = *v.augmented_dim;
    j["dimension_shortcut"] = v.shortcut_applies;
  }
  return j;
}

inline json scan_json(const ScanVerdict& s) {
  json hits = json::array();
  for (const auto& h : s.hits) hits.push_back({{"N", h.N}, {"j", h.j}, {"degree", h.degree}, {"dim", to_json(h.dim)}});
  return {{"obstruction", s.obstruction},
          {"N_range", {s.params.n_start, s.params.n_max, s.params.n_step}},
          {"j_max", s.params.j_max},
          {"hits", hits},
          {"conclusion", s.obstruction ? "nonvanishing above q at every scanned N" : "no obstruction found in the scanned range"}};
}

inline json chamber_sample_json(const ChamberSample& c) {
  return {{"s", to_json(c.s)},
          {"t", to_json(c.t)},
          {"coeffs", to_json(c.divisor.coeffs())},
          {"smallest_q", c.smallest_q},
          {"big", c.big},
          {"pseudoeffective", c.pseudoeffective}};
}

inline json chamber_json(const ChamberMap& m) {
  json grid = json::array(), pts = json::array();
  for (const auto& c : m.grid) grid.push_back(chamber_sample_json(c));
  for (const auto& c : m.points) pts.push_back(chamber_sample_json(c));
  // compact label raster, top row = largest t
  json raster = json::array();
  const int side = m.steps + 1;
  for (int j = side - 1; j >= 0; --j) {
    std::string row;
    for (int i = 0; i < side; ++i) {
      const auto& c = m.grid[static_cast<std::size_t>(j * side + i)];
      row += static_cast<char>('0' + c.smallest_q);
      row += c.pseudoeffective ? '*' : ' ';
    }
    raster.push_back(row);
  }
  return {{"steps", m.steps}, {"points", pts}, {"raster", raster}, {"grid", grid}};
}

}  // namespace toricq
