// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "metriq/syntax.hpp"

using namespace metriq;

namespace {
ExtReal er(long p, long q = 1) { return ExtReal(Rat(p, q)); }
}  // namespace

TEST_CASE("term keys are canonical spellings") {
  auto x = Preterm::var("x");
  auto c = Preterm::app("c", {});
  auto f = Preterm::app("f", {x, c});
  auto s = Preterm::stream("lim", {x}, c);
  auto s0 = Preterm::stream("lim", {}, x);
  CHECK(x->key == "x");
  CHECK(c->key == "c");
  CHECK(f->key == "f(x,c)");
  CHECK(s->key == "lim(x;c)");
  CHECK(s0->key == "lim(;x)");
  CHECK(term_eq(f, Preterm::app("f", {Preterm::var("x"), Preterm::app("c", {})})));
}

TEST_CASE("depth counts nesting, variables and constants at zero") {
  auto x = Preterm::var("x");
  auto c = Preterm::app("c", {});
  CHECK(x->depth == 0);
  CHECK(c->depth == 0);
  CHECK(Preterm::app("f", {x, c})->depth == 1);
  CHECK(Preterm::app("f", {Preterm::app("f", {x, x}), c})->depth == 2);
  CHECK(Preterm::stream("lim", {x}, Preterm::app("f", {x, c}))->depth == 2);
}

TEST_CASE("free variables and substitution") {
  auto t = Preterm::app("f", {Preterm::var("x"), Preterm::app("g", {Preterm::var("y")})});
  CHECK(free_vars(t) == std::set<std::string>{"x", "y"});
  auto s = substitute(t, {{"x", Preterm::app("c", {})}, {"y", Preterm::var("x")}});
  CHECK(s->key == "f(c,g(x))");
  auto r = rename_ops(t, {{"f", "l_f"}});
  CHECK(r->key == "l_f(x,g(y))");
}

TEST_CASE("stream_at reads the prefix then the constant tail") {
  auto a = Preterm::var("a"), b = Preterm::var("b"), u = Preterm::var("u");
  auto s = Preterm::stream("lim", {a, b}, u);
  CHECK(stream_at(s, 1)->key == "a");
  CHECK(stream_at(s, 2)->key == "b");
  CHECK(stream_at(s, 3)->key == "u");
  CHECK(stream_at(s, 100)->key == "u");
}

TEST_CASE("context_space closes declared bounds and leaves the rest at inf") {
  Context c;
  c.vars = {"x", "y", "z", "w"};
  c.bounds = {{"x", "y", er(1)}, {"y", "z", er(1, 2)}};
  auto m = context_space(c);
  REQUIRE(m.points == std::vector<std::string>{"x", "y", "z", "w"});
  CHECK(m.at(0, 1) == er(1));
  CHECK(m.at(0, 2) == er(3, 2));
  CHECK(m.at(0, 3).is_inf());
  CHECK(m.at(1, 3).is_inf());
}

TEST_CASE("sequent validation requires declared variables") {
  Context c;
  c.vars = {"x"};
  Sequent good = ok_sequent(c, Preterm::var("x"));
  good.validate();
  Sequent bad = ok_sequent(c, Preterm::var("y"));
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  Context b;
  b.vars = {"x"};
  b.bounds = {{"x", "y", er(1)}};
  Sequent bad2 = ok_sequent(b, Preterm::var("x"));
  CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);
}

TEST_CASE("sequent printing") {
  Context c;
  c.vars = {"x", "y"};
  c.bounds = {{"x", "y", er(1)}};
  auto s = eq_sequent(c, Preterm::var("x"), Preterm::var("y"), er(1, 2));
  CHECK(s.str() == "{x =[1] y} |- x =[1/2] y");
  auto o = ok_sequent(Context{}, Preterm::app("c", {}));
  CHECK(o.str() == "{} |- c ok");
}

TEST_CASE("reduced constraints for a finite arity are the finite position pairs") {
  FinMetric sp = FinMetric::checked(
      {"0", "1", "2"}, {{er(0), er(1), ExtReal::inf()},
                        {er(1), er(0), ExtReal::inf()},
                        {ExtReal::inf(), ExtReal::inf(), er(0)}});
  Arity ar = FiniteArity{sp};
  auto x = Preterm::var("x"), y = Preterm::var("y"), z = Preterm::var("z");
  auto app = Preterm::app("f", {x, y, z});
  auto cons = reduced_app_constraints(ar, app);
  REQUIRE(cons.size() == 1);
  CHECK(cons[0].a->key == "x");
  CHECK(cons[0].b->key == "y");
  CHECK(cons[0].eps == er(1));
}

TEST_CASE("reduced constraints for a stream prefix follow the geometric scale") {
  Arity ar = StreamArity{Rat(1, 2), Rat(1)};
  auto t1 = Preterm::var("t1"), t2 = Preterm::var("t2"), u = Preterm::var("u");
  auto app = Preterm::stream("lim", {t1, t2}, u);
  auto cons = reduced_app_constraints(ar, app);
  REQUIRE(cons.size() == 4);
  auto has = [&](const std::string &a, const std::string &b, ExtReal e) {
    for (const auto &c : cons)
      if (c.a->key == a && c.b->key == b && c.eps == e) return true;
    return false;
  };
  CHECK(has("t1", "t2", er(1, 2)));
  CHECK(has("t1", "u", er(1, 2)));
  CHECK(has("t2", "u", er(1, 4)));
  CHECK(has("u", "u", er(0)));
}

TEST_CASE("reduced constraints deduplicate repeated argument pairs") {
  Arity ar = StreamArity{Rat(1, 2), Rat(1)};
  auto x = Preterm::var("x");
  auto app = Preterm::stream("lim", {x, x}, x);
  auto cons = reduced_app_constraints(ar, app);
  // (x,x) at 1/2 covers positions 1-2 and 1-tail; 1/4 is 2-tail; 0 is the
  // tail region.  Identical triples collapse, distinct bounds stay.
  REQUIRE(cons.size() == 3);
  for (const auto &c : cons) CHECK(c.a->key == "x");
  CHECK(cons[0].eps == er(1, 2));
  CHECK(cons[1].eps == er(1, 4));
  CHECK(cons[2].eps == er(0));
}
