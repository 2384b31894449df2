// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "metriq/dsl.hpp"
#include "metriq/freemodel.hpp"
#include "metriq/json_io.hpp"

namespace py = pybind11;
using namespace metriq;

namespace {

Theory resolve_theory(const std::string &spec) {
  for (const auto &b : builtin_names())
    if (b == spec) return builtin(spec);
  auto r = parse_theory(spec);
  if (const auto *e = std::get_if<ParseError>(&r)) throw std::invalid_argument(e->str());
  return std::get<TheoryFile>(std::move(r)).theory;
}

std::pair<Theory, std::optional<FinMetric>> with_gens(const std::string &spec,
                                                      const std::string &gens_json) {
  Theory t = resolve_theory(spec);
  if (gens_json.empty()) return {t, std::nullopt};
  FinMetric a = metric_from_json(Json::parse(gens_json));
  return {disjoint_union(t, theory_of_space(a)), a};
}

ProverConfig config(long depth) {
  ProverConfig cfg;
  cfg.depth = depth;
  return cfg;
}

py::dict distance(const std::string &theory, const std::string &t1, const std::string &t2,
                  const std::string &gens_json, long depth, bool certify) {
  auto [combined, gens] = with_gens(theory, gens_json);
  TermPtr a = parse_term_in(combined.sig, t1);
  TermPtr b = parse_term_in(combined.sig, t2);
  DistResult r = min_distance(combined, Context{}, a, b, config(depth), certify);
  py::dict out;
  out["upper"] = r.upper.str();
  out["exact"] = r.exact;
  out["truncated"] = r.truncated;
  out["proof"] = r.witness ? py::object(py::str(proof_to_json(r.witness).dump())) : py::none();
  return out;
}

py::dict prove(const std::string &theory, const std::string &goal_text,
               const std::string &ctx_text, long depth) {
  Theory t = resolve_theory(theory);
  std::string src = ctx_text.empty() ? "|- " + goal_text : ctx_text + " |- " + goal_text;
  Sequent goal = parse_sequent_in(t.sig, src);
  ProverConfig cfg = config(depth);
  py::dict out;
  if (const auto *ok = std::get_if<OkBody>(&goal.body)) {
    OkResult r = prove_ok(t, goal.ctx, ok->t, cfg);
    out["derivable"] = r.derivable;
    out["truncated"] = r.truncated;
    out["proof"] = r.witness ? py::object(py::str(proof_to_json(r.witness).dump())) : py::none();
    return out;
  }
  const auto &eq = std::get<EqBody>(goal.body);
  SaturationState st = saturate(t, goal.ctx, std::nullopt, cfg, {eq.l, eq.r});
  auto i = st.find(eq.l), j = st.find(eq.r);
  ProofPtr w = (i && j) ? st.witness(*i, *j, eq.eps) : nullptr;
  out["derivable"] = w != nullptr;
  out["bound"] = (i && j) ? st.bound(*i, *j).str() : "inf";
  out["truncated"] = st.truncated;
  out["proof"] = w ? py::object(py::str(proof_to_json(w).dump())) : py::none();
  return out;
}

py::object check_proof_json(const std::string &theory, const std::string &proof_json,
                            const std::string &gens_json) {
  auto [combined, gens] = with_gens(theory, gens_json);
  ProofPtr p = proof_from_json(combined.sig, Json::parse(proof_json));
  Verdict v = check_proof(combined, p);
  return py::make_tuple(v.valid, v.reason);
}

std::string free_model_json(const std::string &theory, const std::string &gens_json, long depth,
                            bool certify) {
  Theory t = resolve_theory(theory);
  ProverConfig cfg = config(depth);
  cfg.certify = certify;
  if (gens_json.empty()) return freemodel_to_json(initial_model(t, cfg)).dump(2);
  FinMetric a = metric_from_json(Json::parse(gens_json));
  return freemodel_to_json(free_model(t, a, cfg)).dump(2);
}

py::object countermodel(const std::string &theory, const std::string &goal_text,
                        const std::string &ctx_text, const std::string &gens_json, long depth,
                        size_t size) {
  auto [combined, gens] = with_gens(theory, gens_json);
  std::string src = ctx_text.empty() ? "|- " + goal_text : ctx_text + " |- " + goal_text;
  Sequent goal = parse_sequent_in(combined.sig, src);
  ProverConfig cfg = config(depth);
  cfg.cm_size = size;
  CountermodelResult r = countermodel_search(combined, goal, cfg);
  if (!r.found) return py::none();
  Json j = model_to_json(r.model);
  Json asg = Json::object();
  for (const auto &[v, i] : r.assignment) asg[v] = i;
  j["assignment"] = asg;
  return py::str(j.dump(2));
}

py::object check_wellformed(const std::string &theory, long depth) {
  Theory t = resolve_theory(theory);
  py::list rows;
  for (const auto &r : check_axioms(t, config(depth)))
    rows.append(py::make_tuple(r.axiom, r.well_formed, r.detail));
  return rows;
}

}  // namespace

PYBIND11_MODULE(_metriq, m) {
  m.doc() = "quantitative equational reasoning over metric spaces";
  m.def("builtin_names", &builtin_names, "names of the bundled theories");
  m.def("print_theory", [](const std::string &name) {
    TheoryFile f;
    f.theory = resolve_theory(name);
    return print_theory(f);
  });
  m.def("check_wellformed", &check_wellformed, py::arg("theory"), py::arg("depth") = 3);
  m.def("prove", &prove, py::arg("theory"), py::arg("goal"), py::arg("ctx") = "",
        py::arg("depth") = 3);
  m.def("check_proof", &check_proof_json, py::arg("theory"), py::arg("proof"),
        py::arg("gens") = "");
  m.def("distance", &distance, py::arg("theory"), py::arg("t1"), py::arg("t2"),
        py::arg("gens") = "", py::arg("depth") = 3, py::arg("certify") = true);
  m.def("free_model", &free_model_json, py::arg("theory"), py::arg("gens") = "",
        py::arg("depth") = 3, py::arg("certify") = false);
  m.def("countermodel", &countermodel, py::arg("theory"), py::arg("goal"), py::arg("ctx") = "",
        py::arg("gens") = "", py::arg("depth") = 3, py::arg("size") = 4);
}
