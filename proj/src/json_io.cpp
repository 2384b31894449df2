// SPDX-License-Identifier: Apache-2.0
#include "metriq/json_io.hpp"

#include <stdexcept>

namespace metriq {

namespace {

Json er_to_json(const ExtReal &e) { return e.str(); }

// Terms are nested objects rather than printed strings: instance variables
// introduced by stream axioms contain '#', which the surface parser treats
// as a comment start.
Json term_to_json(const TermPtr &t) {
  if (t->kind == Preterm::Kind::Var) return Json{{"var", t->head}};
  Json args = Json::array();
  for (const auto &a : t->args) args.push_back(term_to_json(a));
  if (t->kind == Preterm::Kind::App) return Json{{"op", t->head}, {"args", std::move(args)}};
  return Json{{"op", t->head}, {"prefix", std::move(args)}, {"tail", term_to_json(t->tail)}};
}

TermPtr term_from_json(const Signature &sig, const Json &j) {
  if (!j.is_object()) throw std::invalid_argument("term must be an object");
  if (j.contains("var")) return Preterm::var(j.at("var").get<std::string>());
  std::string op = j.at("op").get<std::string>();
  const Arity *ar = sig.find(op);
  if (!ar) throw std::invalid_argument("unknown operation " + op);
  if (j.contains("tail")) {
    if (!std::holds_alternative<StreamArity>(*ar))
      throw std::invalid_argument(op + " has a finite arity");
    std::vector<TermPtr> prefix;
    for (const auto &a : j.at("prefix")) prefix.push_back(term_from_json(sig, a));
    return Preterm::stream(op, std::move(prefix), term_from_json(sig, j.at("tail")));
  }
  const auto *fa = std::get_if<FiniteArity>(ar);
  if (!fa) throw std::invalid_argument(op + " takes prefix and tail arguments");
  std::vector<TermPtr> args;
  for (const auto &a : j.at("args")) args.push_back(term_from_json(sig, a));
  if (fa->space.size() != args.size())
    throw std::invalid_argument(op + " applied to " + std::to_string(args.size()) +
                                " arguments");
  return Preterm::app(op, std::move(args));
}

ExtReal er_from_json(const Json &j) {
  if (!j.is_string()) throw std::invalid_argument("bound must be a string");
  return ExtReal::parse(j.get<std::string>());
}

Json ctx_to_json(const Context &c) {
  Json j;
  j["vars"] = c.vars;
  Json bs = Json::array();
  for (const auto &b : c.bounds) bs.push_back(Json::array({b.x, er_to_json(b.eps), b.y}));
  j["bounds"] = bs;
  return j;
}

Context ctx_from_json(const Json &j) {
  Context c;
  c.vars = j.at("vars").get<std::vector<std::string>>();
  for (const auto &b : j.at("bounds")) {
    if (!b.is_array() || b.size() != 3) throw std::invalid_argument("bound triple expected");
    c.bounds.push_back({b[0].get<std::string>(), b[2].get<std::string>(), er_from_json(b[1])});
  }
  return c;
}

Json subst_to_json(const SubstData &s) {
  Json j;
  j["vars"] = s.vars;
  Json rows = Json::array();
  for (const auto &row : s.delta) {
    Json r = Json::array();
    for (const auto &e : row) r.push_back(er_to_json(e));
    rows.push_back(std::move(r));
  }
  j["delta"] = rows;
  Json m = Json::object();
  for (const auto &[v, t] : s.map) m[v] = term_to_json(t);
  j["map"] = m;
  return j;
}

SubstData subst_from_json(const Signature &sig, const Json &j) {
  SubstData s;
  s.vars = j.at("vars").get<std::vector<std::string>>();
  for (const auto &row : j.at("delta")) {
    std::vector<ExtReal> r;
    for (const auto &e : row) r.push_back(er_from_json(e));
    s.delta.push_back(std::move(r));
  }
  for (const auto &[v, t] : j.at("map").items()) s.map[v] = term_from_json(sig, t);
  return s;
}

Json axiom_inst_to_json(const AxiomInst &a) {
  Json j;
  j["axiom"] = a.axiom;
  j["prefix_len"] = a.prefix_len;
  j["index"] = a.index;
  j["eps"] = a.eps ? Json(rat_str(*a.eps)) : Json(nullptr);
  return j;
}

AxiomInst axiom_inst_from_json(const Json &j) {
  AxiomInst a;
  a.axiom = j.at("axiom").get<std::string>();
  a.prefix_len = j.at("prefix_len").get<long>();
  a.index = j.at("index").get<long>();
  if (!j.at("eps").is_null()) a.eps = parse_rat(j.at("eps").get<std::string>());
  return a;
}

Json family_to_json(const ParametricBoundFamily &f);
ParametricBoundFamily family_from_json(const Signature &sig, const Json &j);

Json schema_to_json(const SchemaPtr &s) {
  Json j;
  j["rule"] = rule_name(s->rule);
  j["ctx"] = ctx_to_json(s->ctx);
  if (s->is_ok) {
    j["ok"] = term_to_json(s->okt);
  } else {
    j["l"] = term_to_json(s->l);
    j["r"] = term_to_json(s->r);
    if (const auto *g = std::get_if<GeomBound>(&s->eps))
      j["eps"] = Json{{"coeff", rat_str(g->coeff)}, {"ratio", rat_str(g->ratio)}};
    else
      j["eps"] = er_to_json(std::get<ExtReal>(s->eps));
  }
  Json prem = Json::array();
  for (const auto &q : s->premises) prem.push_back(schema_to_json(q));
  j["premises"] = prem;
  if (s->subst) j["subst"] = subst_to_json(*s->subst);
  if (s->axiom) {
    Json a;
    a["axiom"] = s->axiom->axiom;
    a["prefix_len"] = s->axiom->prefix_len;
    a["symbolic_index"] = s->axiom->symbolic_index;
    a["index"] = s->axiom->index;
    a["eps"] = s->axiom->eps ? Json(rat_str(*s->axiom->eps)) : Json(nullptr);
    j["axiom"] = a;
  }
  if (s->family) j["family"] = family_to_json(*s->family);
  return j;
}

SchemaPtr schema_from_json(const Signature &sig, const Json &j) {
  auto s = std::make_shared<ProofSchema>();
  auto r = rule_from_name(j.at("rule").get<std::string>());
  if (!r) throw std::invalid_argument("unknown rule " + j.at("rule").get<std::string>());
  s->rule = *r;
  s->ctx = ctx_from_json(j.at("ctx"));
  if (j.contains("ok")) {
    s->is_ok = true;
    s->okt = term_from_json(sig, j.at("ok"));
  } else {
    s->l = term_from_json(sig, j.at("l"));
    s->r = term_from_json(sig, j.at("r"));
    const Json &e = j.at("eps");
    if (e.is_object())
      s->eps = GeomBound{parse_rat(e.at("coeff").get<std::string>()),
                         parse_rat(e.at("ratio").get<std::string>())};
    else
      s->eps = er_from_json(e);
  }
  for (const auto &q : j.at("premises")) s->premises.push_back(schema_from_json(sig, q));
  if (j.contains("subst")) s->subst = subst_from_json(sig, j.at("subst"));
  if (j.contains("axiom")) {
    const Json &a = j.at("axiom");
    SchemaAxiomRef ref;
    ref.axiom = a.at("axiom").get<std::string>();
    ref.prefix_len = a.at("prefix_len").get<long>();
    ref.symbolic_index = a.at("symbolic_index").get<bool>();
    ref.index = a.at("index").get<long>();
    if (!a.at("eps").is_null()) ref.eps = parse_rat(a.at("eps").get<std::string>());
    s->axiom = std::move(ref);
  }
  if (j.contains("family")) s->family = family_from_json(sig, j.at("family"));
  return s;
}

Json family_to_json(const ParametricBoundFamily &f) {
  Json j;
  j["s"] = term_to_json(f.s);
  j["t"] = term_to_json(f.t);
  j["coeff"] = rat_str(f.coeff);
  j["ratio"] = rat_str(f.ratio);
  j["k0"] = f.k0;
  j["body"] = schema_to_json(f.body);
  return j;
}

ParametricBoundFamily family_from_json(const Signature &sig, const Json &j) {
  ParametricBoundFamily f;
  f.s = term_from_json(sig, j.at("s"));
  f.t = term_from_json(sig, j.at("t"));
  f.coeff = parse_rat(j.at("coeff").get<std::string>());
  f.ratio = parse_rat(j.at("ratio").get<std::string>());
  f.k0 = j.at("k0").get<long>();
  f.body = schema_from_json(sig, j.at("body"));
  return f;
}

}  // namespace

Json metric_to_json(const FinPseudoMetric &m) {
  Json j;
  j["points"] = m.points;
  Json rows = Json::array();
  for (const auto &row : m.dist) {
    Json r = Json::array();
    for (const auto &e : row) r.push_back(er_to_json(e));
    rows.push_back(std::move(r));
  }
  j["dist"] = rows;
  return j;
}

FinMetric metric_from_json(const Json &j) {
  try {
    auto points = j.at("points").get<std::vector<std::string>>();
    std::vector<std::vector<ExtReal>> dist;
    for (const auto &row : j.at("dist")) {
      std::vector<ExtReal> r;
      for (const auto &e : row) r.push_back(er_from_json(e));
      dist.push_back(std::move(r));
    }
    return FinMetric::checked(std::move(points), std::move(dist));
  } catch (const Json::exception &e) {
    throw std::invalid_argument(std::string("bad metric json: ") + e.what());
  }
}

Json model_to_json(const Model &m) {
  Json j = metric_to_json(m.carrier);
  Json ops = Json::object();
  for (const auto &[name, interp] : m.ops) {
    if (const auto *fi = std::get_if<FiniteInterp>(&interp)) {
      Json rows = Json::array();
      for (const auto &[args, val] : fi->table) {
        Json e = Json::array();
        for (size_t a : args) e.push_back(a);
        e.push_back(val);
        rows.push_back(std::move(e));
      }
      ops[name] = rows;
    } else {
      const auto &si = std::get<StreamInterp>(interp);
      Json pm = Json::array();
      for (size_t v : si.point_map)
        pm.push_back(v == StreamInterp::UNDEF ? Json(nullptr) : Json(v));
      ops[name] = Json{{"mode", "eventual-value"}, {"point_map", pm}};
    }
  }
  j["ops"] = ops;
  return j;
}

Model model_from_json(const Json &j) {
  try {
    Model m;
    m.carrier = metric_from_json(j);
    for (const auto &[name, spec] : j.at("ops").items()) {
      if (spec.is_array()) {
        FiniteInterp fi;
        for (const auto &row : spec) {
          if (!row.is_array() || row.empty())
            throw std::invalid_argument("table row must be a nonempty index list");
          std::vector<size_t> args;
          for (size_t i = 0; i + 1 < row.size(); ++i) args.push_back(row[i].get<size_t>());
          fi.table[args] = row[row.size() - 1].get<size_t>();
        }
        m.ops.emplace_back(name, std::move(fi));
      } else {
        StreamInterp si;
        for (const auto &v : spec.at("point_map"))
          si.point_map.push_back(v.is_null() ? StreamInterp::UNDEF : v.get<size_t>());
        m.ops.emplace_back(name, std::move(si));
      }
    }
    return m;
  } catch (const Json::exception &e) {
    throw std::invalid_argument(std::string("bad model json: ") + e.what());
  }
}

Json sequent_to_json(const Sequent &s) {
  Json j;
  j["ctx"] = ctx_to_json(s.ctx);
  if (const auto *ok = std::get_if<OkBody>(&s.body)) {
    j["ok"] = term_to_json(ok->t);
  } else {
    const auto &eq = std::get<EqBody>(s.body);
    j["l"] = term_to_json(eq.l);
    j["r"] = term_to_json(eq.r);
    j["eps"] = er_to_json(eq.eps);
  }
  return j;
}

Sequent sequent_from_json(const Signature &sig, const Json &j) {
  try {
    Context c = ctx_from_json(j.at("ctx"));
    if (j.contains("ok")) return ok_sequent(std::move(c), term_from_json(sig, j.at("ok")));
    return eq_sequent(std::move(c), term_from_json(sig, j.at("l")),
                      term_from_json(sig, j.at("r")), er_from_json(j.at("eps")));
  } catch (const Json::exception &e) {
    throw std::invalid_argument(std::string("bad sequent json: ") + e.what());
  }
}

Json proof_to_json(const ProofPtr &p) {
  Json j;
  j["rule"] = rule_name(p->rule);
  j["conclusion"] = sequent_to_json(p->conclusion);
  Json prem = Json::array();
  for (const auto &q : p->premises) prem.push_back(proof_to_json(q));
  j["premises"] = prem;
  Json d = Json::object();
  if (p->subst) d["subst"] = subst_to_json(*p->subst);
  if (p->axiom) d["axiom"] = axiom_inst_to_json(*p->axiom);
  if (p->family) d["family"] = family_to_json(*p->family);
  j["data"] = d;
  return j;
}

ProofPtr proof_from_json(const Signature &sig, const Json &j) {
  try {
    auto p = std::make_shared<Proof>();
    auto r = rule_from_name(j.at("rule").get<std::string>());
    if (!r) throw std::invalid_argument("unknown rule " + j.at("rule").get<std::string>());
    p->rule = *r;
    p->conclusion = sequent_from_json(sig, j.at("conclusion"));
    for (const auto &q : j.at("premises")) p->premises.push_back(proof_from_json(sig, q));
    const Json &d = j.at("data");
    if (d.contains("subst"))
      p->subst = std::make_shared<const SubstData>(subst_from_json(sig, d.at("subst")));
    if (d.contains("axiom"))
      p->axiom = std::make_shared<const AxiomInst>(axiom_inst_from_json(d.at("axiom")));
    if (d.contains("family"))
      p->family = std::make_shared<const ParametricBoundFamily>(family_from_json(sig, d.at("family")));
    return p;
  } catch (const Json::exception &e) {
    throw std::invalid_argument(std::string("bad proof json: ") + e.what());
  }
}

Json freemodel_to_json(const FreeModelApprox &f) {
  Json j = model_to_json(f.model);
  Json reps = Json::array();
  for (const auto &t : f.reps) reps.push_back(t->key);
  j["reps"] = reps;
  Json unit = Json::object();
  for (const auto &[p, c] : f.unit) unit[p] = c;
  j["unit"] = unit;
  Json ex = Json::array();
  for (const auto &[pr, exact] : f.exactness)
    ex.push_back(Json::array(
        {Json::array({pr.first, pr.second}), exact ? "exact" : "upper"}));
  j["exactness"] = ex;
  j["stabilized"] = f.stabilized;
  j["truncated"] = f.truncated;
  return j;
}

}  // namespace metriq
