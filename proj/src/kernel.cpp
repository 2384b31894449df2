// SPDX-License-Identifier: Apache-2.0
#include "metriq/kernel.hpp"

#include <unordered_map>
#include <unordered_set>

namespace metriq {

const char *rule_name(Rule r) {
  switch (r) {
    case Rule::Var: return "Var";
    case Rule::Assum: return "Assum";
    case Rule::Refl: return "Refl";
    case Rule::Symm: return "Symm";
    case Rule::Triang: return "Triang";
    case Rule::Max: return "Max";
    case Rule::Cont: return "Cont";
    case Rule::Nexp: return "Nexp";
    case Rule::Subst: return "Subst";
    case Rule::App: return "App";
    case Rule::Axiom: return "Axiom";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string &s) {
  for (Rule r : {Rule::Var, Rule::Assum, Rule::Refl, Rule::Symm, Rule::Triang, Rule::Max,
                 Rule::Cont, Rule::Nexp, Rule::Subst, Rule::App, Rule::Axiom})
    if (s == rule_name(r)) return r;
  return std::nullopt;
}

ExtReal bound_at(const BoundExpr &b, long n) {
  if (const auto *c = std::get_if<ExtReal>(&b)) return *c;
  const auto &g = std::get<GeomBound>(b);
  return geom_at(g.coeff, g.ratio, n);
}

ProofPtr instantiate_schema(const SchemaPtr &s, const Theory &t, long n) {
  auto p = std::make_shared<Proof>();
  p->rule = s->rule;
  if (s->is_ok)
    p->conclusion = ok_sequent(s->ctx, s->okt);
  else
    p->conclusion = eq_sequent(s->ctx, s->l, s->r, bound_at(s->eps, n));
  for (const auto &pr : s->premises) p->premises.push_back(instantiate_schema(pr, t, n));
  if (s->subst) p->subst = std::make_shared<const SubstData>(*s->subst);
  if (s->family) p->family = std::make_shared<const ParametricBoundFamily>(*s->family);
  if (s->axiom) {
    AxiomInst ai;
    ai.axiom = s->axiom->axiom;
    ai.prefix_len = s->axiom->prefix_len;
    ai.index = s->axiom->symbolic_index ? n : s->axiom->index;
    ai.eps = s->axiom->eps;
    p->axiom = std::make_shared<const AxiomInst>(std::move(ai));
  }
  return p;
}

namespace {

struct Checker {
  const Theory &t;
  std::unordered_map<const Proof *, bool> memo;
  std::unordered_set<std::string> sig_ok;  // term keys already validated
  std::string reason;

  bool fail(const Proof &p, const std::string &why) {
    if (reason.empty())
      reason = std::string(rule_name(p.rule)) + " at [" + p.conclusion.str() + "]: " + why;
    return false;
  }

  bool term_in_signature(const TermPtr &tm) {
    if (sig_ok.count(tm->key)) return true;
    switch (tm->kind) {
      case Preterm::Kind::Var:
        break;
      case Preterm::Kind::App: {
        const Arity *a = t.sig.find(tm->head);
        if (!a) return false;
        const auto *f = std::get_if<FiniteArity>(a);
        if (!f || f->space.size() != tm->args.size()) return false;
        for (const auto &x : tm->args)
          if (!term_in_signature(x)) return false;
        break;
      }
      case Preterm::Kind::Stream: {
        const Arity *a = t.sig.find(tm->head);
        if (!a || !std::holds_alternative<StreamArity>(*a)) return false;
        for (const auto &x : tm->args)
          if (!term_in_signature(x)) return false;
        if (!term_in_signature(tm->tail)) return false;
        break;
      }
    }
    sig_ok.insert(tm->key);
    return true;
  }

  bool body_in_signature(const Proof &p) {
    if (const auto *ok = std::get_if<OkBody>(&p.conclusion.body))
      return term_in_signature(ok->t) || fail(p, "term not over the signature");
    const auto &eq = std::get<EqBody>(p.conclusion.body);
    return (term_in_signature(eq.l) && term_in_signature(eq.r)) ||
           fail(p, "term not over the signature");
  }

  // Every required sequent must appear among the premises and every
  // premise must be used; multiplicity one each way.
  bool match_premises(const Proof &p, const std::vector<Sequent> &required) {
    if (p.premises.size() != required.size())
      return fail(p, "expected " + std::to_string(required.size()) + " premises, got " +
                         std::to_string(p.premises.size()));
    std::vector<bool> used(p.premises.size(), false);
    for (const auto &req : required) {
      bool found = false;
      for (size_t i = 0; i < p.premises.size() && !found; ++i) {
        if (used[i]) continue;
        if (p.premises[i]->conclusion == req) used[i] = found = true;
      }
      if (!found) return fail(p, "missing premise [" + req.str() + "]");
    }
    return true;
  }

  bool check(const ProofPtr &pp) {
    auto it = memo.find(pp.get());
    if (it != memo.end()) return it->second;
    memo[pp.get()] = false;  // cycles are invalid
    bool v = check_node(*pp);
    memo[pp.get()] = v;
    return v;
  }

  bool premises_valid(const Proof &p) {
    for (const auto &pr : p.premises)
      if (!check(pr)) return false;
    return true;
  }

  bool check_node(const Proof &p) {
    try {
      p.conclusion.validate();
    } catch (const std::exception &e) {
      return fail(p, e.what());
    }
    if (!body_in_signature(p)) return false;
    switch (p.rule) {
      case Rule::Var: return check_var(p);
      case Rule::Assum: return check_assum(p);
      case Rule::Refl: return check_refl(p);
      case Rule::Symm: return check_symm(p);
      case Rule::Triang: return check_triang(p);
      case Rule::Max: return check_max(p);
      case Rule::Cont: return check_cont(p);
      case Rule::Nexp: return check_nexp(p);
      case Rule::Subst: return check_subst(p);
      case Rule::App: return check_app(p);
      case Rule::Axiom: return check_axiom(p);
    }
    return fail(p, "unknown rule");
  }

  const EqBody *eq_of(const Proof &p) { return std::get_if<EqBody>(&p.conclusion.body); }

  bool check_var(const Proof &p) {
    const auto *ok = std::get_if<OkBody>(&p.conclusion.body);
    if (!ok || !p.premises.empty()) return fail(p, "Var concludes ok with no premises");
    if (ok->t->kind != Preterm::Kind::Var) return fail(p, "not a variable");
    if (!p.conclusion.ctx.has_var(ok->t->head)) return fail(p, "variable not in context");
    return true;
  }

  bool check_assum(const Proof &p) {
    const auto *eq = eq_of(p);
    if (!eq || !p.premises.empty()) return fail(p, "Assum concludes an equation, no premises");
    if (eq->l->kind != Preterm::Kind::Var || eq->r->kind != Preterm::Kind::Var)
      return fail(p, "Assum relates variables");
    for (const auto &b : p.conclusion.ctx.bounds)
      if (b.x == eq->l->head && b.y == eq->r->head && b.eps == eq->eps) return true;
    return fail(p, "equation not literally in context");
  }

  bool check_refl(const Proof &p) {
    const auto *eq = eq_of(p);
    if (!eq || p.premises.size() != 1) return fail(p, "Refl needs one ok premise");
    if (!premises_valid(p)) return false;
    if (!eq->eps.is_zero() || !term_eq(eq->l, eq->r)) return fail(p, "conclusion must be t =[0] t");
    Sequent want = ok_sequent(p.conclusion.ctx, eq->l);
    if (!(p.premises[0]->conclusion == want)) return fail(p, "premise must be [" + want.str() + "]");
    return true;
  }

  bool check_symm(const Proof &p) {
    const auto *eq = eq_of(p);
    if (!eq || p.premises.size() != 1) return fail(p, "Symm needs one premise");
    if (!premises_valid(p)) return false;
    Sequent want = eq_sequent(p.conclusion.ctx, eq->r, eq->l, eq->eps);
    if (!(p.premises[0]->conclusion == want)) return fail(p, "premise must be the swapped equation");
    return true;
  }

  bool check_triang(const Proof &p) {
    const auto *eq = eq_of(p);
    if (!eq || p.premises.size() != 2) return fail(p, "Triang needs two premises");
    if (!premises_valid(p)) return false;
    const auto *e1 = std::get_if<EqBody>(&p.premises[0]->conclusion.body);
    const auto *e2 = std::get_if<EqBody>(&p.premises[1]->conclusion.body);
    if (!e1 || !e2) return fail(p, "premises must be equations");
    if (!(p.premises[0]->conclusion.ctx == p.conclusion.ctx) ||
        !(p.premises[1]->conclusion.ctx == p.conclusion.ctx))
      return fail(p, "context mismatch");
    if (!term_eq(e1->r, e2->l)) return fail(p, "middle terms differ");
    if (!term_eq(e1->l, eq->l) || !term_eq(e2->r, eq->r)) return fail(p, "endpoint mismatch");
    if (!(eq->eps == e1->eps + e2->eps)) return fail(p, "bound must be the premise sum");
    return true;
  }

  bool check_max(const Proof &p) {
    const auto *eq = eq_of(p);
    if (!eq || p.premises.size() != 1) return fail(p, "Max needs one premise");
    if (!premises_valid(p)) return false;
    const auto *e = std::get_if<EqBody>(&p.premises[0]->conclusion.body);
    if (!e || !(p.premises[0]->conclusion.ctx == p.conclusion.ctx))
      return fail(p, "premise must be an equation in the same context");
    if (!term_eq(e->l, eq->l) || !term_eq(e->r, eq->r)) return fail(p, "terms differ");
    if (!(e->eps < eq->eps)) return fail(p, "Max requires a strictly smaller premise bound");
    return true;
  }

  bool check_cont(const Proof &p) {
    const auto *eq = eq_of(p);
    if (!eq || !p.premises.empty()) return fail(p, "Cont carries its family as data");
    if (!p.family) return fail(p, "missing parametric bound family");
    const auto &f = *p.family;
    if (!f.body) return fail(p, "family has no proof template");
    if (!term_eq(f.s, eq->l) || !term_eq(f.t, eq->r)) return fail(p, "family endpoints differ");
    if (f.coeff <= 0 || f.ratio <= 0 || f.ratio >= 1)
      return fail(p, "family bound must be geometric with ratio in (0,1)");
    if (f.k0 < 0) return fail(p, "negative family threshold");
    // inf_{n>=k0} coeff*ratio^n = 0 <= eps always; validate sampled instances.
    for (long n : {f.k0, f.k0 + 1, f.k0 + 2}) {
      ProofPtr inst = instantiate_schema(f.body, t, n);
      Sequent want = eq_sequent(p.conclusion.ctx, eq->l, eq->r, geom_at(f.coeff, f.ratio, n));
      if (!(inst->conclusion == want))
        return fail(p, "template at n=" + std::to_string(n) + " concludes [" +
                           inst->conclusion.str() + "], want [" + want.str() + "]");
      if (!check(inst)) return fail(p, "template instance at n=" + std::to_string(n) + " invalid");
    }
    return true;
  }

  bool check_nexp(const Proof &p) {
    const auto *eq = eq_of(p);
    if (!eq) return fail(p, "Nexp concludes an equation");
    if (!premises_valid(p)) return false;
    if (eq->l->kind == Preterm::Kind::Var || eq->r->kind == Preterm::Kind::Var ||
        eq->l->head != eq->r->head || eq->l->kind != eq->r->kind)
      return fail(p, "sides must apply the same operation");
    const Arity *ar = t.sig.find(eq->l->head);
    if (!ar) return fail(p, "unknown operation");
    std::vector<Sequent> req;
    auto add_eq = [&](const TermPtr &a, const TermPtr &b, const ExtReal &e) {
      Sequent s = eq_sequent(p.conclusion.ctx, a, b, e);
      for (const auto &r : req)
        if (r == s) return;
      req.push_back(std::move(s));
    };
    try {
      for (const auto &c : reduced_app_constraints(*ar, eq->l)) add_eq(c.a, c.b, c.eps);
      for (const auto &c : reduced_app_constraints(*ar, eq->r)) add_eq(c.a, c.b, c.eps);
    } catch (const std::exception &e) {
      return fail(p, e.what());
    }
    if (std::holds_alternative<FiniteArity>(*ar)) {
      for (size_t i = 0; i < eq->l->args.size(); ++i)
        add_eq(eq->l->args[i], eq->r->args[i], eq->eps);
    } else {
      long k = static_cast<long>(std::max(eq->l->args.size(), eq->r->args.size()));
      for (long i = 1; i <= k; ++i) add_eq(stream_at(eq->l, i), stream_at(eq->r, i), eq->eps);
      add_eq(eq->l->tail, eq->r->tail, eq->eps);
    }
    return match_premises(p, req);
  }

  bool check_subst(const Proof &p) {
    const auto *eq = eq_of(p);
    if (!eq) return fail(p, "Subst concludes an equation");
    if (!p.subst) return fail(p, "missing substitution data");
    const auto &d = *p.subst;
    size_t n = d.vars.size();
    if (d.delta.size() != n) return fail(p, "delta matrix size mismatch");
    for (size_t i = 0; i < n; ++i) {
      if (d.delta[i].size() != n) return fail(p, "delta matrix row size mismatch");
      if (!d.delta[i][i].is_zero()) return fail(p, "delta diagonal must be zero");
      for (size_t j = 0; j < n; ++j)
        if (!(d.delta[i][j] == d.delta[j][i])) return fail(p, "delta matrix must be symmetric");
    }
    for (const auto &v : d.vars)
      if (!d.map.count(v)) return fail(p, "substitution misses " + v);
    if (p.premises.empty()) return fail(p, "missing inner premise");
    if (!premises_valid(p)) return false;
    Context inner;
    inner.vars = d.vars;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (!d.delta[i][j].is_inf()) inner.bounds.push_back({d.vars[i], d.vars[j], d.delta[i][j]});
    const Sequent &is = p.premises[0]->conclusion;
    if (!(is.ctx == inner)) return fail(p, "inner context must match the delta matrix");
    const auto *ieq = std::get_if<EqBody>(&is.body);
    if (!ieq) return fail(p, "inner premise must be an equation");
    std::map<std::string, TermPtr> sigma;
    for (const auto &v : d.vars) sigma[v] = d.map.at(v);
    if (!term_eq(substitute(ieq->l, sigma), eq->l) || !term_eq(substitute(ieq->r, sigma), eq->r) ||
        !(ieq->eps == eq->eps))
      return fail(p, "conclusion is not the substituted inner equation");
    std::vector<Sequent> outer;
    for (const auto &b : inner.bounds)
      outer.push_back(eq_sequent(p.conclusion.ctx, sigma.at(b.x), sigma.at(b.y), b.eps));
    std::vector<Sequent> req;
    for (const auto &s : outer) {
      bool dup = false;
      for (const auto &r : req) dup = dup || r == s;
      if (!dup) req.push_back(s);
    }
    if (p.premises.size() != req.size() + 1)
      return fail(p, "expected " + std::to_string(req.size()) + " outer premises");
    std::vector<bool> used(p.premises.size(), false);
    used[0] = true;
    for (const auto &s : req) {
      bool found = false;
      for (size_t i = 1; i < p.premises.size() && !found; ++i)
        if (!used[i] && p.premises[i]->conclusion == s) used[i] = found = true;
      if (!found) return fail(p, "missing outer premise [" + s.str() + "]");
    }
    return true;
  }

  bool check_app(const Proof &p) {
    const auto *ok = std::get_if<OkBody>(&p.conclusion.body);
    if (!ok) return fail(p, "App concludes ok");
    if (!premises_valid(p)) return false;
    if (ok->t->kind == Preterm::Kind::Var) return fail(p, "App applies an operation");
    const Arity *ar = t.sig.find(ok->t->head);
    if (!ar) return fail(p, "unknown operation");
    std::vector<Sequent> req;
    auto add = [&](Sequent s) {
      for (const auto &r : req)
        if (r == s) return;
      req.push_back(std::move(s));
    };
    for (const auto &a : ok->t->args) add(ok_sequent(p.conclusion.ctx, a));
    if (ok->t->kind == Preterm::Kind::Stream) add(ok_sequent(p.conclusion.ctx, ok->t->tail));
    try {
      for (const auto &c : reduced_app_constraints(*ar, ok->t))
        add(eq_sequent(p.conclusion.ctx, c.a, c.b, c.eps));
    } catch (const std::exception &e) {
      return fail(p, e.what());
    }
    return match_premises(p, req);
  }

  bool check_axiom(const Proof &p) {
    if (!p.premises.empty()) return fail(p, "Axiom is a leaf");
    if (!p.axiom) return fail(p, "missing axiom reference");
    const Axiom *ax = t.axiom(p.axiom->axiom);
    if (!ax) return fail(p, "theory has no axiom " + p.axiom->axiom);
    Sequent want;
    try {
      if (const auto *c = std::get_if<ConcreteAxiom>(&ax->form)) {
        want = c->seq;
      } else if (const auto *s = std::get_if<StreamAxiom>(&ax->form)) {
        want = instantiate_stream_axiom(t, *s, p.axiom->prefix_len, p.axiom->index);
      } else {
        if (!p.axiom->eps) return fail(p, "bound family instance needs a parameter");
        want = instantiate_bound_axiom(std::get<BoundFamilyAxiom>(ax->form), *p.axiom->eps);
      }
    } catch (const std::exception &e) {
      return fail(p, e.what());
    }
    if (!(p.conclusion == want))
      return fail(p, "conclusion differs from the axiom instance [" + want.str() + "]");
    return true;
  }
};

}  // namespace

Verdict check_proof(const Theory &t, const ProofPtr &p) {
  if (!p) return {false, "null proof"};
  Checker c{t, {}, {}, {}};
  bool ok = c.check(p);
  return {ok, ok ? "" : c.reason};
}

Verdict check_proofs(const Theory &t, const std::vector<ProofPtr> &ps) {
  Checker c{t, {}, {}, {}};
  for (const auto &p : ps) {
    if (!p) return {false, "null proof"};
    if (!c.check(p)) return {false, c.reason};
  }
  return {true, ""};
}

ProofPtr pf_var(Context ctx, const std::string &x) {
  auto p = std::make_shared<Proof>();
  p->rule = Rule::Var;
  p->conclusion = ok_sequent(std::move(ctx), Preterm::var(x));
  return p;
}

ProofPtr pf_assum(Context ctx, const CtxBound &b) {
  auto p = std::make_shared<Proof>();
  p->rule = Rule::Assum;
  p->conclusion = eq_sequent(std::move(ctx), Preterm::var(b.x), Preterm::var(b.y), b.eps);
  return p;
}

ProofPtr pf_refl(ProofPtr ok) {
  auto p = std::make_shared<Proof>();
  p->rule = Rule::Refl;
  const auto &t = std::get<OkBody>(ok->conclusion.body).t;
  p->conclusion = eq_sequent(ok->conclusion.ctx, t, t, ExtReal(0));
  p->premises = {std::move(ok)};
  return p;
}

ProofPtr pf_symm(ProofPtr eq) {
  auto p = std::make_shared<Proof>();
  p->rule = Rule::Symm;
  const auto &e = std::get<EqBody>(eq->conclusion.body);
  p->conclusion = eq_sequent(eq->conclusion.ctx, e.r, e.l, e.eps);
  p->premises = {std::move(eq)};
  return p;
}

ProofPtr pf_triang(ProofPtr ab, ProofPtr bc) {
  auto p = std::make_shared<Proof>();
  p->rule = Rule::Triang;
  const auto &e1 = std::get<EqBody>(ab->conclusion.body);
  const auto &e2 = std::get<EqBody>(bc->conclusion.body);
  p->conclusion = eq_sequent(ab->conclusion.ctx, e1.l, e2.r, e1.eps + e2.eps);
  p->premises = {std::move(ab), std::move(bc)};
  return p;
}

ProofPtr pf_max(ProofPtr eq, ExtReal larger) {
  auto p = std::make_shared<Proof>();
  p->rule = Rule::Max;
  const auto &e = std::get<EqBody>(eq->conclusion.body);
  p->conclusion = eq_sequent(eq->conclusion.ctx, e.l, e.r, std::move(larger));
  p->premises = {std::move(eq)};
  return p;
}

ProofPtr pf_cont(Context ctx, ParametricBoundFamily fam, ExtReal eps) {
  auto p = std::make_shared<Proof>();
  p->rule = Rule::Cont;
  p->conclusion = eq_sequent(std::move(ctx), fam.s, fam.t, std::move(eps));
  p->family = std::make_shared<const ParametricBoundFamily>(std::move(fam));
  return p;
}

ProofPtr pf_nexp(Sequent conclusion, std::vector<ProofPtr> premises) {
  auto p = std::make_shared<Proof>();
  p->rule = Rule::Nexp;
  p->conclusion = std::move(conclusion);
  p->premises = std::move(premises);
  return p;
}

ProofPtr pf_subst(Context outer, SubstData data, ProofPtr inner,
                  std::vector<ProofPtr> outer_premises) {
  auto p = std::make_shared<Proof>();
  p->rule = Rule::Subst;
  const auto &ieq = std::get<EqBody>(inner->conclusion.body);
  std::map<std::string, TermPtr> sigma(data.map.begin(), data.map.end());
  p->conclusion = eq_sequent(std::move(outer), substitute(ieq.l, sigma), substitute(ieq.r, sigma),
                             ieq.eps);
  p->premises.push_back(std::move(inner));
  for (auto &q : outer_premises) p->premises.push_back(std::move(q));
  p->subst = std::make_shared<const SubstData>(std::move(data));
  return p;
}

ProofPtr pf_app(Sequent conclusion, std::vector<ProofPtr> premises) {
  auto p = std::make_shared<Proof>();
  p->rule = Rule::App;
  p->conclusion = std::move(conclusion);
  p->premises = std::move(premises);
  return p;
}

ProofPtr pf_axiom(const Theory &t, AxiomInst inst) {
  auto p = std::make_shared<Proof>();
  p->rule = Rule::Axiom;
  const Axiom *ax = t.axiom(inst.axiom);
  if (!ax) throw std::invalid_argument("no axiom " + inst.axiom);
  if (const auto *c = std::get_if<ConcreteAxiom>(&ax->form))
    p->conclusion = c->seq;
  else if (const auto *s = std::get_if<StreamAxiom>(&ax->form))
    p->conclusion = instantiate_stream_axiom(t, *s, inst.prefix_len, inst.index);
  else
    p->conclusion = instantiate_bound_axiom(std::get<BoundFamilyAxiom>(ax->form), *inst.eps);
  p->axiom = std::make_shared<const AxiomInst>(std::move(inst));
  return p;
}

}  // namespace metriq
