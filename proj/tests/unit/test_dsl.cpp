// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "doctest.h"
#include "metriq/dsl.hpp"

using namespace metriq;

namespace {

ExtReal er(long p, long q = 1) { return ExtReal(Rat(p, q)); }

TheoryFile parsed(const std::string &src) {
  auto r = parse_theory(src);
  if (const auto *e = std::get_if<ParseError>(&r)) {
    INFO(e->str());
    INFO(src);
    REQUIRE(false);
  }
  return std::get<TheoryFile>(std::move(r));
}

ParseError failed(const std::string &src) {
  auto r = parse_theory(src);
  REQUIRE(std::holds_alternative<ParseError>(r));
  return std::get<ParseError>(r);
}

FinMetric uniform_space(const std::vector<std::string> &pts, const ExtReal &d) {
  std::vector<std::vector<ExtReal>> m(pts.size(), std::vector<ExtReal>(pts.size(), d));
  for (size_t i = 0; i < pts.size(); ++i) m[i][i] = er(0);
  return FinMetric::checked(pts, m);
}

struct Fuzzer {
  std::mt19937 rng;
  explicit Fuzzer(unsigned seed) : rng(seed) {}

  size_t pick(size_t n) { return rng() % n; }

  Rat rat_pool() {
    static const Rat pool[] = {Rat(1), Rat(2), Rat(1, 2), Rat(1, 3), Rat(3, 4)};
    return pool[pick(5)];
  }

  ExtReal eps_pool() {
    if (pick(6) == 0) return ExtReal::inf();
    return ExtReal(rat_pool());
  }

  Arity arity() {
    switch (pick(4)) {
      case 0: return StreamArity{Rat(1, pick(2) + 2), Rat(pick(2) + 1)};
      case 1: return FiniteArity{uniform_space({"p0"}, er(0))};
      case 2: {
        ExtReal d = pick(3) == 0 ? ExtReal::inf() : ExtReal(rat_pool());
        return FiniteArity{uniform_space({"p0", "p1"}, d)};
      }
      default: {
        ExtReal d = pick(4) == 0 ? ExtReal::inf() : ExtReal(Rat(pick(2) + 1));
        return FiniteArity{uniform_space({"0", "1", "2"}, d)};
      }
    }
  }

  TermPtr term(const Theory &t, const std::vector<std::string> &vars, int depth) {
    std::vector<size_t> apps;
    for (size_t i = 0; i < t.sig.ops.size(); ++i) {
      const auto &[n, a] = t.sig.ops[i];
      const auto *fa = std::get_if<FiniteArity>(&a);
      if (fa && fa->space.size() == 0) {
        if (pick(3) == 0) return Preterm::app(n, {});
      } else if (depth > 0) {
        apps.push_back(i);
      }
    }
    if (!apps.empty() && pick(2) == 0) {
      const auto &[n, a] = t.sig.ops[apps[pick(apps.size())]];
      if (const auto *fa = std::get_if<FiniteArity>(&a)) {
        std::vector<TermPtr> args;
        for (size_t k = 0; k < fa->space.size(); ++k) args.push_back(term(t, vars, depth - 1));
        return Preterm::app(n, std::move(args));
      }
      std::vector<TermPtr> prefix;
      for (size_t k = 0; k < pick(3); ++k) prefix.push_back(term(t, vars, depth - 1));
      return Preterm::stream(n, std::move(prefix), term(t, vars, depth - 1));
    }
    return Preterm::var(vars[pick(vars.size())]);
  }

  Context context(const std::vector<std::string> &vars) {
    Context c;
    c.vars = vars;
    size_t nb = pick(3);
    for (size_t i = 0; i < nb && vars.size() >= 2; ++i) {
      size_t a = pick(vars.size()), b = pick(vars.size());
      if (a == b) continue;
      c.bounds.push_back({vars[a], vars[b], eps_pool()});
    }
    return c;
  }

  TheoryFile gen(int tag) {
    TheoryFile f;
    f.theory.name = "T" + std::to_string(tag);
    size_t na = 1 + pick(2);
    for (size_t i = 0; i < na; ++i)
      f.arities.emplace_back("A" + std::to_string(i), arity());
    size_t no = 1 + pick(3);
    for (size_t i = 0; i < no; ++i) {
      if (pick(3) == 0) {
        f.theory.sig.add("c" + std::to_string(i), nullary_arity());
      } else {
        f.theory.sig.add("op" + std::to_string(i), f.arities[pick(na)].second);
      }
    }
    std::vector<std::string> vars = {"x", "y", "z"};
    vars.resize(1 + pick(3));
    size_t nx = pick(3);
    for (size_t i = 0; i < nx; ++i) {
      std::string name = "x" + std::to_string(i);
      size_t kind = pick(6);
      const std::string *stream_op = nullptr;
      const std::string *unary_op = nullptr;
      for (const auto &[n, a] : f.theory.sig.ops) {
        if (std::holds_alternative<StreamArity>(a)) stream_op = &n;
        const auto *fa = std::get_if<FiniteArity>(&a);
        if (fa && fa->space.size() == 1) unary_op = &n;
      }
      if (kind == 0 && stream_op) {
        const auto &sa = std::get<StreamArity>(*f.theory.sig.find(*stream_op));
        f.theory.axioms.push_back(
            {name, StreamAxiom{*stream_op, "x", Rat(pick(2) + 1), sa.ratio}});
      } else if (kind == 1 && unary_op) {
        TermPtr v = Preterm::var("v"), w = Preterm::var("w");
        f.theory.axioms.push_back(
            {name, BoundFamilyAxiom{"v", "w", rat_pool(), Preterm::app(*unary_op, {v}),
                                    Preterm::app(*unary_op, {w})}});
      } else {
        Context c = context(vars);
        Sequent s = pick(4) == 0
                        ? ok_sequent(c, term(f.theory, vars, 2))
                        : eq_sequent(c, term(f.theory, vars, 2), term(f.theory, vars, 2),
                                     eps_pool());
        f.theory.axioms.push_back({name, ConcreteAxiom{std::move(s)}});
      }
    }
    size_t ns = pick(2);
    for (size_t i = 0; i < ns; ++i) {
      ExtReal d = pick(4) == 0 ? ExtReal::inf() : ExtReal(Rat(pick(2) + 1));
      std::vector<std::string> pts;
      for (size_t k = 0; k <= pick(3); ++k) pts.push_back("s" + std::to_string(k));
      f.spaces.emplace_back("S" + std::to_string(i), uniform_space(pts, d));
    }
    size_t nt = pick(3);
    for (size_t i = 0; i < nt; ++i)
      f.terms.emplace_back("t" + std::to_string(i), term(f.theory, vars, 2));
    size_t nq = pick(2);
    for (size_t i = 0; i < nq; ++i) {
      Context c = context(vars);
      f.sequents.emplace_back("q" + std::to_string(i),
                              eq_sequent(c, term(f.theory, vars, 1), term(f.theory, vars, 1),
                                         eps_pool()));
    }
    return f;
  }
};

}  // namespace

TEST_CASE("printing and reparsing preserves every builtin theory") {
  std::vector<Theory> corpus;
  for (const auto &n : builtin_names()) corpus.push_back(builtin(n));
  corpus.push_back(theory_of_space(uniform_space({"a", "b"}, er(1))));
  corpus.push_back(theory_of_space(FinMetric::discrete({"p", "q"})));
  corpus.push_back(disjoint_union(builtin("t2"),
                                  theory_of_space(uniform_space({"a", "b"}, er(1)))));
  corpus.push_back(disjoint_union(builtin("contraction"), builtin("contraction")));
  for (const auto &t : corpus) {
    CAPTURE(t.name);
    TheoryFile f;
    f.theory = t;
    std::string text = print_theory(f);
    TheoryFile g = parsed(text);
    CHECK(g.theory == t);
    TheoryFile h = parsed(print_theory(g));
    CHECK(h == g);
  }
}

TEST_CASE("the geometric stream surface syntax parses to a stream axiom") {
  TheoryFile f = parsed(
      "theory Comp {\n"
      "  arity N = geometric(ratio = 1/2, scale = 1)\n"
      "  op lim : N\n"
      "  axiom [N over x] |- lim(x...) =[ (1/2)^n ] x[n]\n"
      "}\n");
  CHECK(f.theory.name == "Comp");
  const Arity *ar = f.theory.sig.find("lim");
  REQUIRE(ar != nullptr);
  const auto &sa = std::get<StreamArity>(*ar);
  CHECK(sa.ratio == Rat(1, 2));
  CHECK(sa.scale == Rat(1));
  REQUIRE(f.theory.axioms.size() == 1);
  const auto &ax = std::get<StreamAxiom>(f.theory.axioms[0].form);
  CHECK(ax.op == "lim");
  CHECK(ax.var == "x");
  CHECK(ax.coeff == Rat(1));
  CHECK(ax.ratio == Rat(1, 2));
  CHECK(f.theory.sig == builtin("comp").sig);
}

TEST_CASE("spaces, terms and sequents parse at the top level") {
  TheoryFile f = parsed(
      "theory t {\n"
      "  op f : { 0 1 : d(0,1)=1 }\n"
      "  op c : { }\n"
      "  axiom \"near\" { x =[1] y } |- f(x,y) =[1/2] f(y,x)\n"
      "}\n"
      "space A { 0 1 : d(0,1)=1/2 }\n"
      "space B { p q }\n"
      "term w = f(c,x)\n"
      "sequent s = { x =[1] y } |- f(x,y) ok\n");
  REQUIRE(f.spaces.size() == 2);
  CHECK(f.spaces[0].second.at(0, 1) == er(1, 2));
  CHECK(f.spaces[1].second.at(0, 1).is_inf());
  REQUIRE(f.terms.size() == 1);
  CHECK(f.terms[0].second->key == "f(c,x)");
  REQUIRE(f.sequents.size() == 1);
  const auto &s = f.sequents[0].second;
  CHECK(s.ctx.vars == std::vector<std::string>{"x", "y"});
  CHECK(std::get<OkBody>(s.body).t->key == "f(x,y)");
  const auto &ax = std::get<ConcreteAxiom>(f.theory.axioms[0].form).seq;
  CHECK(std::get<EqBody>(ax.body).eps == er(1, 2));
}

TEST_CASE("comments, decimals and quoted names lex correctly") {
  TheoryFile f = parsed(
      "# leading note\n"
      "theory \"odd name\" {\n"
      "  op \"g'\" : { }  # nullary\n"
      "  axiom \"g-ish\" |- g' =[0.5] g'\n"
      "}\n");
  CHECK(f.theory.name == "odd name");
  CHECK(f.theory.sig.find("g'") != nullptr);
  const auto &ax = std::get<ConcreteAxiom>(f.theory.axioms[0].form).seq;
  CHECK(std::get<EqBody>(ax.body).eps == er(1, 2));
}

TEST_CASE("parse errors carry line and column positions") {
  ParseError eof = failed("theory T {");
  CHECK(eof.line == 1);
  CHECK(!eof.expectation.empty());

  ParseError undeclared = failed("theory T {\n  op f : P\n}\n");
  CHECK(undeclared.line == 2);
  CHECK(undeclared.expectation.find("P") != std::string::npos);

  ParseError ratio = failed("theory T { arity A = geometric(ratio = 2, scale = 1) }");
  CHECK(ratio.expectation.find("ratio") != std::string::npos);

  ParseError dupax = failed(
      "theory T { op c : { } axiom \"a\" |- c =[0] c axiom \"a\" |- c =[1] c }");
  CHECK(dupax.expectation.find("duplicate") != std::string::npos);

  ParseError dupop = failed("theory T { op c : { } op c : { } }");
  CHECK(dupop.expectation.find("duplicate") != std::string::npos);

  ParseError nonstream = failed(
      "theory T { arity N = geometric(ratio = 1/2, scale = 1) op f : { } "
      "axiom [N over x] |- f(x...) =[(1/2)^n] x[n] }");
  CHECK(!nonstream.expectation.empty());

  ParseError zero = failed("space X { 0 1 : d(0,1)=0 }");
  CHECK(zero.expectation.find("metric") != std::string::npos);

  ParseError arityc = failed("theory T { op f : { 0 1 : d(0,1)=1 } }\nterm u = f(x)\n");
  CHECK(arityc.line == 2);
  CHECK(arityc.expectation.find("argument") != std::string::npos);
}

TEST_CASE("fragment parsers resolve against a given signature") {
  Theory t1 = builtin("t1");
  TermPtr t = parse_term_in(t1.sig, "f(x, f(y, y))");
  CHECK(t->key == "f(x,f(y,y))");
  CHECK_THROWS_AS(parse_term_in(t1.sig, "f(x)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_term_in(t1.sig, "f(x,y) extra"), std::invalid_argument);

  Context c = parse_context_in(t1.sig, "{ x =[1] y, z }");
  CHECK(c.vars == std::vector<std::string>{"x", "y", "z"});
  REQUIRE(c.bounds.size() == 1);
  CHECK(c.bounds[0].eps == er(1));

  Sequent s = parse_sequent_in(t1.sig, "{ x =[1] y } |- f(x,y) ok");
  CHECK(std::get<OkBody>(s.body).t->key == "f(x,y)");
  CHECK_THROWS_AS(parse_sequent_in(t1.sig, "{ x } |- f(x,q) ok"), std::invalid_argument);
  try {
    parse_sequent_in(t1.sig, "{ x } |- ");
  } catch (const std::invalid_argument &e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("random theory files survive a print and parse cycle") {
  Fuzzer fz(424242);
  for (int i = 0; i < 200; ++i) {
    TheoryFile f = fz.gen(i);
    std::string text = print_theory(f);
    CAPTURE(text);
    TheoryFile g = parsed(text);
    CHECK(g.theory == f.theory);
    CHECK(g.spaces.size() == f.spaces.size());
    CHECK(g.terms.size() == f.terms.size());
    for (size_t k = 0; k < f.terms.size(); ++k)
      CHECK(g.terms[k].second->key == f.terms[k].second->key);
    TheoryFile h = parsed(print_theory(g));
    CHECK(h == g);
  }
}
