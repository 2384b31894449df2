// SPDX-License-Identifier: Apache-2.0
#include "metriq/theories.hpp"

#include <stdexcept>

namespace metriq {

Sequent instantiate_stream_axiom(const Theory &t, const StreamAxiom &ax, long prefix_len,
                                 long index) {
  const Arity *ar = t.sig.find(ax.op);
  if (!ar || !std::holds_alternative<StreamArity>(*ar))
    throw std::invalid_argument("stream axiom over non-stream op " + ax.op);
  if (prefix_len < 0 || index < 1) throw std::invalid_argument("bad stream axiom instance");
  const auto &sa = std::get<StreamArity>(*ar);
  std::vector<TermPtr> prefix;
  Context ctx;
  for (long i = 1; i <= prefix_len; ++i) {
    ctx.vars.push_back(ax.var + "#" + std::to_string(i));
    prefix.push_back(Preterm::var(ctx.vars.back()));
  }
  ctx.vars.push_back(ax.var + "#w");
  TermPtr tail = Preterm::var(ctx.vars.back());
  TermPtr lhs = Preterm::stream(ax.op, prefix, tail);
  for (const auto &c : reduced_app_constraints(*ar, lhs)) {
    if (c.a->key == c.b->key) continue;  // x =[0] x assumptions are vacuous
    ctx.bounds.push_back({c.a->head, c.b->head, c.eps});
  }
  TermPtr rhs = index <= prefix_len ? prefix[index - 1] : tail;
  (void)sa;
  return eq_sequent(std::move(ctx), std::move(lhs), std::move(rhs),
                    geom_at(ax.coeff, ax.ratio, index));
}

Sequent instantiate_bound_axiom(const BoundFamilyAxiom &ax, const Rat &eps) {
  if (eps < 0) throw std::invalid_argument("negative bound axiom instance");
  Context ctx;
  ctx.vars = {ax.v, ax.w};
  ctx.bounds.push_back({ax.v, ax.w, ExtReal(Rat(ax.mult * eps))});
  return eq_sequent(std::move(ctx), ax.lhs, ax.rhs, ExtReal(eps));
}

std::string gen_constant_name(const std::string &point) { return "'" + point; }

Theory theory_of_space(const FinMetric &a) {
  Theory t;
  t.name = "T(" + std::to_string(a.size()) + "pt)";
  for (const auto &p : a.points) t.sig.add(gen_constant_name(p), nullary_arity());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) {
      if (a.at(i, j).is_inf()) continue;
      TermPtr l = Preterm::app(gen_constant_name(a.points[i]), {});
      TermPtr r = Preterm::app(gen_constant_name(a.points[j]), {});
      Axiom ax;
      ax.name = "d(" + a.points[i] + "," + a.points[j] + ")";
      ax.form = ConcreteAxiom{eq_sequent(Context{}, l, r, a.at(i, j))};
      t.axioms.push_back(std::move(ax));
    }
  return t;
}

static Axiom rename_axiom(const Axiom &a, const std::map<std::string, std::string> &ren,
                          const std::string &prefix) {
  Axiom out;
  out.name = prefix + a.name;
  if (const auto *c = std::get_if<ConcreteAxiom>(&a.form)) {
    Sequent s = c->seq;
    if (auto *ok = std::get_if<OkBody>(&s.body)) {
      s.body = OkBody{rename_ops(ok->t, ren)};
    } else {
      auto eq = std::get<EqBody>(s.body);
      s.body = EqBody{rename_ops(eq.l, ren), rename_ops(eq.r, ren), eq.eps};
    }
    out.form = ConcreteAxiom{std::move(s)};
  } else if (const auto *st = std::get_if<StreamAxiom>(&a.form)) {
    StreamAxiom s = *st;
    auto it = ren.find(s.op);
    if (it != ren.end()) s.op = it->second;
    out.form = std::move(s);
  } else {
    BoundFamilyAxiom b = std::get<BoundFamilyAxiom>(a.form);
    b.lhs = rename_ops(b.lhs, ren);
    b.rhs = rename_ops(b.rhs, ren);
    out.form = std::move(b);
  }
  return out;
}

Theory disjoint_union(const Theory &l, const Theory &r) {
  std::map<std::string, std::string> lren, rren;
  for (const auto &[n, a] : l.sig.ops)
    if (r.sig.find(n)) lren[n] = "l_" + n;
  for (const auto &[n, a] : r.sig.ops)
    if (l.sig.find(n)) rren[n] = "r_" + n;
  Theory t;
  t.name = l.name + "+" + r.name;
  for (const auto &[n, a] : l.sig.ops) t.sig.add(lren.count(n) ? lren[n] : n, a);
  for (const auto &[n, a] : r.sig.ops) t.sig.add(rren.count(n) ? rren[n] : n, a);
  for (const auto &a : l.axioms)
    t.axioms.push_back(lren.empty() ? a : rename_axiom(a, lren, ""));
  for (const auto &a : r.axioms) {
    Axiom ax = rren.empty() ? a : rename_axiom(a, rren, "");
    if (t.axiom(ax.name)) ax.name = "r_" + ax.name;
    t.axioms.push_back(std::move(ax));
  }
  return t;
}

static FinMetric two_point(const std::string &a, const std::string &b, ExtReal d) {
  return FinMetric::checked({a, b}, {{ExtReal(0), d}, {d, ExtReal(0)}});
}

Theory builtin(const std::string &name) {
  Theory t;
  t.name = name;
  if (name == "comp") {
    t.sig.add("lim", StreamArity{Rat(1, 2), Rat(1)});
    t.axioms.push_back({"lim-n", StreamAxiom{"lim", "x", Rat(1), Rat(1, 2)}});
    return t;
  }
  if (name == "t1") {
    t.sig.add("f", FiniteArity{two_point("0", "1", ExtReal(1))});
    return t;
  }
  if (name == "t2") {
    Context c{{"x", "y"}, {{"x", "y", ExtReal(1)}}};
    t.axioms.push_back(
        {"collapse", ConcreteAxiom{eq_sequent(c, Preterm::var("x"), Preterm::var("y"),
                                              ExtReal(0))}});
    return t;
  }
  if (name == "contraction") {
    t.sig.add("s", FiniteArity{FinMetric::checked({"0"}, {{ExtReal(0)}})});
    TermPtr x = Preterm::var("x"), y = Preterm::var("y");
    t.axioms.push_back({"halve", BoundFamilyAxiom{"x", "y", Rat(2), Preterm::app("s", {x}),
                                                  Preterm::app("s", {y})}});
    return t;
  }
  if (name == "strongfinit") {
    t.sig.add("f", FiniteArity{two_point("0", "1", ExtReal::inf())});
    FinMetric pt = FinMetric::checked({"0"}, {{ExtReal(0)}});
    t.sig.add("g", FiniteArity{pt});
    t.sig.add("g'", FiniteArity{pt});
    TermPtr x = Preterm::var("x");
    Context c{{"x"}, {}};
    t.axioms.push_back(
        {"g-near-g'", ConcreteAxiom{eq_sequent(c, Preterm::app("g", {x}),
                                               Preterm::app("g'", {x}), ExtReal(1))}});
    return t;
  }
  if (name == "semilattice") {
    t.sig.add("j", FiniteArity{two_point("0", "1", ExtReal::inf())});
    TermPtr x = Preterm::var("x"), y = Preterm::var("y"), z = Preterm::var("z");
    auto j = [](TermPtr a, TermPtr b) { return Preterm::app("j", {a, b}); };
    t.axioms.push_back(
        {"idem", ConcreteAxiom{eq_sequent(Context{{"x"}, {}}, j(x, x), x, ExtReal(0))}});
    t.axioms.push_back({"comm", ConcreteAxiom{eq_sequent(Context{{"x", "y"}, {}}, j(x, y),
                                                         j(y, x), ExtReal(0))}});
    t.axioms.push_back({"assoc", ConcreteAxiom{eq_sequent(Context{{"x", "y", "z"}, {}},
                                                          j(j(x, y), z), j(x, j(y, z)),
                                                          ExtReal(0))}});
    return t;
  }
  throw std::invalid_argument("unknown builtin theory " + name);
}

std::vector<std::string> builtin_names() {
  return {"comp", "t1", "t2", "contraction", "strongfinit", "semilattice"};
}

}  // namespace metriq
