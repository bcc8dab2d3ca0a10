#include "gptlab/serialize.hpp"

namespace gptlab {

namespace {

Json vecs(const std::vector<Vec>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x);
  return a;
}

std::vector<Vec> vecs_from(const Json& j) {
  std::vector<Vec> out;
  for (const auto& x : j) out.push_back(x.get<Vec>());
  return out;
}

Json cell_json(const CellResult& c) {
  return Json{{"phi0", c.phi0},
              {"psi0", c.psi0},
              {"compatible", c.verdict.compatible},
              {"path", to_string(c.verdict.path)},
              {"min_margin", c.verdict.min_margin}};
}

}  // namespace

TheoryPtr theory_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "simplex") return make_simplex(j.at("n").get<int>());
  if (kind == "polygon") {
    bool rescaled = j.value("rescaled", false);
    if (j.contains("representation")) {
      const std::string rep = j.at("representation").get<std::string>();
      if (rep != "standard" && rep != "rescaled")
        throw TheoryError("theory_from_json: unknown representation '" + rep + "'");
      rescaled = rep == "rescaled";
    }
    return make_polygon(j.at("n").get<int>(),
                        rescaled ? Representation::Rescaled : Representation::Standard);
  }
  if (kind == "disc") return make_disc(j.value("resolution", 256));
  throw TheoryError("theory_from_json: unknown kind '" + kind + "'");
}

Json to_json(const Theory& t) {
  Json j{{"kind", to_string(t.kind())}, {"name", t.name()}};
  if (t.kind() == TheoryKind::Simplex || t.kind() == TheoryKind::Polygon) j["n"] = t.order();
  j["representation"] = to_string(t.representation());
  if (t.parametric()) j["resolution"] = t.resolution();
  return j;
}

Json to_json(const Observable& f) {
  Json j{{"effects", vecs(f.effects)}, {"labels", f.labels}};
  if (f.metric) j["metric"] = vecs(*f.metric);
  return j;
}

Observable observable_from_json(const TheoryPtr& t, const Json& j) {
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  std::optional<Metric> metric;
  if (j.contains("metric")) metric = vecs_from(j.at("metric"));
  return make_observable(t, vecs_from(j.at("effects")), std::move(labels), std::move(metric));
}

Json to_json(const JointObservable& j) {
  return Json{{"rows", j.rows}, {"cols", j.cols}, {"cells", vecs(j.cells)}};
}

JointObservable joint_from_json(const TheoryPtr& t, const Json& j) {
  return make_joint(t, j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                    vecs_from(j.at("cells")));
}

Json to_json(const CompatResult& r) {
  return Json{{"compatible", r.compatible},
              {"certified", r.certified},
              {"resolution", r.resolution}};
}

Json to_json(const StateSubset& s) {
  return Json{{"generators", vecs(s.generators)}, {"affine_dim", s.affine_dim}};
}

Json to_json(const BisectTrace& b) {
  Json steps = Json::array();
  for (const auto& [x, v] : b.steps) steps.push_back(Json{{"x", x}, {"pred", v}});
  return Json{{"estimate", b.estimate}, {"lo", b.lo}, {"hi", b.hi}, {"steps", steps}};
}

Json to_json(const ScanResult& s) {
  Json inc = Json::array();
  for (const auto& c : s.incompatible) inc.push_back(cell_json(c));
  return Json{{"t", s.t},
              {"grid", s.grid},
              {"cells", s.cells},
              {"any_incompatible", s.any_incompatible},
              {"anti_aligned", s.anti_aligned},
              {"z_sign", s.z_sign},
              {"busch", s.busch},
              {"incompatible_count", s.incompatible.size()},
              {"incompatible_first", s.incompatible.empty() ? Json() : inc.front()},
              {"closest", cell_json(s.closest)}};
}

Json to_json(const ChiCompReport& r) {
  return Json{{"chi_comp", r.chi_comp},
              {"lower_witness_size", r.lower_witness_size},
              {"product_joint_valid", r.product_joint_valid},
              {"disc_section_lp_compatible", r.disc_section_lp_compatible},
              {"full_space_incompatible", r.full_space_incompatible}};
}

Json to_json(const DimensionReport& r) {
  Json spots = Json::array();
  for (const auto& s : r.spot_checks)
    spots.push_back(Json{{"phi0", s.phi0},
                         {"psi0", s.psi0},
                         {"busch_compatible", s.busch_compatible},
                         {"lp_compatible", s.lp_compatible},
                         {"lp_certified", s.lp_certified}});
  Json j{{"t", r.t},
         {"chi_incomp", r.chi_incomp},
         {"chi_comp", r.chi_comp},
         {"witness", to_json(r.witness)},
         {"witness_cell", r.witness_cell ? cell_json(*r.witness_cell) : Json()},
         {"spot_checks", spots},
         {"disagreements", r.disagreements},
         {"comp", to_json(r.comp)}};
  if (r.scan.cells > 0) j["scan"] = to_json(r.scan);
  return j;
}

Json to_json(const ThresholdReport& r) {
  return Json{{"t0", r.t0},
              {"grid", r.grid},
              {"trace", to_json(r.trace)},
              {"t0_doubled", r.t0_doubled},
              {"trace_doubled", to_json(r.trace_doubled)},
              {"stability", r.stability}};
}

Json to_json(const GammaResult& g) {
  return Json{{"n", g.n},
              {"i", g.i},
              {"theta", g.theta},
              {"numeric", g.numeric},
              {"closed_form", g.closed_form}};
}

Json to_json(const MajorizationResult& m) {
  return Json{{"R", m.R},
              {"r", m.r},
              {"gamma", m.gamma},
              {"r1_bound", m.r1_bound},
              {"r1_within_bound", m.r1_within_bound},
              {"entropy_bound", m.entropy_bound}};
}

Json to_json(const MurReport& r) {
  return Json{{"representation", to_string(r.representation)},
              {"eps1", r.eps1},
              {"eps2", r.eps2},
              {"errbar_cell", {r.errbar_a, r.errbar_b}},
              {"errbar_state", r.errbar_state},
              {"errbar_f", r.errbar_f},
              {"errbar_g", r.errbar_g},
              {"width_f", r.width_f},
              {"width_g", r.width_g},
              {"werner_f", r.werner_f},
              {"werner_g", r.werner_g},
              {"linf_cell", {r.linf_a, r.linf_b}},
              {"linf_state", r.linf_state},
              {"linf_sum", r.linf_sum},
              {"le_sum", r.le_sum},
              {"noise_sum", r.noise_sum},
              {"gamma", r.gamma},
              {"entropic_bound", r.entropic_bound},
              {"min_slack", r.min_slack},
              {"worst", r.worst}};
}

Json to_json(const MurSweep& s) {
  Json j{{"trials", s.trials},
         {"violations", s.violations},
         {"min_slack", s.min_slack},
         {"werner_link_min_slack", s.werner_link_min_slack},
         {"werner_link_violations", s.werner_link_violations}};
  if (s.violations > 0 && s.worst && s.worst_joint) {
    j["reproducer"] = Json{{"joint", to_json(*s.worst_joint)}, {"report", to_json(*s.worst)}};
  }
  return j;
}

Json to_json(const ConsistencyReport& r) {
  Json comps = Json::array();
  for (const auto& c : r.comparisons)
    comps.push_back(Json{{"label", c.label},
                         {"first", c.first},
                         {"second", c.second},
                         {"discrepancy", c.discrepancy()}});
  Json j{{"theory", r.theory},
         {"n", r.n},
         {"consistent", r.consistent},
         {"max_discrepancy", r.max_discrepancy},
         {"witness", r.witness},
         {"closed_form_residual", r.closed_form_residual},
         {"certificates_verified", r.certificates_verified},
         {"decompositions_found", r.decompositions_found},
         {"comparisons", comps}};
  if (r.s_max_mixed) j["s_max_mixed"] = *r.s_max_mixed;
  return j;
}

}  // namespace gptlab
