// SPDX-License-Identifier: Apache-2.0
#include "metriq/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace metriq {

namespace {

struct Tok {
  enum Kind { End, Ident, Num, Str, Punct } kind = End;
  std::string text;
  size_t line = 1, col = 1;
};

struct PErr {
  size_t line, col;
  std::string expectation;
};

bool id_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
bool id_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Tok> lex(const std::string &src) {
  std::vector<Tok> out;
  size_t line = 1, col = 1, i = 0;
  auto bump = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  auto eat = [&] { bump(src[i++]); };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') eat();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      eat();
      continue;
    }
    Tok t;
    t.line = line;
    t.col = col;
    if (id_start(c)) {
      t.kind = Tok::Ident;
      while (i < src.size() && id_char(src[i])) {
        t.text += src[i];
        eat();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Num;
      auto digits = [&] {
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
          t.text += src[i];
          eat();
        }
      };
      digits();
      if (i + 1 < src.size() && src[i] == '.' && std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
        t.text += '.';
        eat();
        digits();
      }
      if (i + 1 < src.size() && src[i] == '/' && std::isdigit(static_cast<unsigned char>(src[i + 1]))) {
        t.text += '/';
        eat();
        digits();
      }
    } else if (c == '"') {
      t.kind = Tok::Str;
      eat();
      while (i < src.size() && src[i] != '"') {
        t.text += src[i];
        eat();
      }
      if (i == src.size()) throw PErr{t.line, t.col, "closing '\"'"};
      eat();
    } else if (c == '|') {
      if (i + 1 >= src.size() || src[i + 1] != '-') throw PErr{line, col, "'|-'"};
      t.kind = Tok::Punct;
      t.text = "|-";
      eat();
      eat();
    } else if (c == '.') {
      if (i + 2 >= src.size() || src[i + 1] != '.' || src[i + 2] != '.')
        throw PErr{line, col, "'...'"};
      t.kind = Tok::Punct;
      t.text = "...";
      eat();
      eat();
      eat();
    } else if (std::string("{}()[],;:=^*").find(c) != std::string::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      eat();
    } else {
      throw PErr{line, col, "a token (unexpected character)"};
    }
    out.push_back(std::move(t));
  }
  Tok end;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

struct Eps {
  enum Kind { Conc, Fam, Geom } kind = Conc;
  ExtReal conc;
  Rat coeff = 1, ratio = 0;  // Fam: coeff * e;  Geom: coeff * ratio^n
};

struct Parser {
  explicit Parser(const std::vector<Tok> &toks) : ts(toks) {}
  const std::vector<Tok> &ts;
  size_t p = 0;
  TheoryFile f;
  bool have_theory = false;
  int auto_axiom = 0;

  const Tok &peek(size_t k = 0) const { return ts[std::min(p + k, ts.size() - 1)]; }
  [[noreturn]] void fail(const std::string &exp) const { throw PErr{peek().line, peek().col, exp}; }
  [[noreturn]] static void fail_at(const Tok &t, const std::string &exp) { throw PErr{t.line, t.col, exp}; }
  bool isp(const char *s) const { return peek().kind == Tok::Punct && peek().text == s; }
  bool isid(const char *s) const { return peek().kind == Tok::Ident && peek().text == s; }
  const Tok &take() {
    const Tok &t = peek();
    if (t.kind != Tok::End) ++p;
    return t;
  }
  bool accept(const char *s) {
    if (!isp(s)) return false;
    ++p;
    return true;
  }
  void expect(const char *s) {
    if (!accept(s)) fail(std::string("'") + s + "'");
  }
  std::string ident(const std::string &what) {
    if (peek().kind != Tok::Ident) fail(what);
    return take().text;
  }
  std::string name_tok(const std::string &what) {
    if (peek().kind != Tok::Ident && peek().kind != Tok::Str) fail(what);
    return take().text;
  }

  Rat rat() {
    if (peek().kind != Tok::Num) fail("rational literal");
    return parse_rat(take().text);
  }
  ExtReal extreal() {
    if (isid("inf")) {
      ++p;
      return ExtReal::inf();
    }
    return ExtReal(rat());
  }

  std::string point_name() {
    const Tok &t = peek();
    if (t.kind != Tok::Ident && t.kind != Tok::Num && t.kind != Tok::Str) fail("point name");
    return take().text;
  }

  // '{' points (':' d(p,q)=value list)? '}'
  FinMetric block() {
    const Tok &at = peek();
    expect("{");
    std::vector<std::string> pts;
    while (!isp(":") && !isp("}")) {
      pts.push_back(point_name());
      accept(",");
    }
    size_t n = pts.size();
    std::vector<std::vector<ExtReal>> dist(n, std::vector<ExtReal>(n, ExtReal::inf()));
    for (size_t i = 0; i < n; ++i) dist[i][i] = ExtReal(0);
    auto index = [&](const std::string &q) {
      for (size_t i = 0; i < n; ++i)
        if (pts[i] == q) return i;
      fail("a point declared in the block (got " + q + ")");
    };
    if (accept(":")) {
      while (!isp("}")) {
        if (!isid("d")) fail("'d(p,q)=value'");
        ++p;
        expect("(");
        std::string a = point_name();
        expect(",");
        std::string b = point_name();
        expect(")");
        expect("=");
        ExtReal v = extreal();
        size_t ia = index(a), ib = index(b);
        if (ia == ib) {
          if (!v.is_zero()) fail("zero distance on the diagonal");
        } else {
          dist[ia][ib] = dist[ib][ia] = v;
        }
        accept(",");
      }
    }
    expect("}");
    try {
      return FinMetric::checked(std::move(pts), std::move(dist));
    } catch (const std::invalid_argument &e) {
      throw PErr{at.line, at.col, std::string("a valid metric block (") + e.what() + ")"};
    }
  }

  const Arity *named(const std::string &n) const {
    for (const auto &[k, a] : f.arities)
      if (k == n) return &a;
    return nullptr;
  }

  Arity arity_expr() {
    if (isid("geometric")) {
      ++p;
      expect("(");
      if (!isid("ratio")) fail("'ratio'");
      ++p;
      expect("=");
      Rat r = rat();
      expect(",");
      if (!isid("scale")) fail("'scale'");
      ++p;
      expect("=");
      Rat s = rat();
      expect(")");
      if (!(r > 0 && r < 1)) fail("ratio in (0,1)");
      if (!(s > 0)) fail("a positive scale");
      return StreamArity{std::move(r), std::move(s)};
    }
    if (isp("{")) return FiniteArity{block()};
    fail("an arity (geometric(...) or { ... })");
  }

  TermPtr term() {
    if (peek().kind != Tok::Ident) fail("a term");
    const Tok &head = take();
    const std::string &h = head.text;
    if (accept("(")) {
      std::vector<TermPtr> args;
      TermPtr tail;
      if (!isp(")")) {
        while (!isp(";")) {
          args.push_back(term());
          if (!accept(",")) break;
        }
        if (accept(";")) tail = term();
      }
      expect(")");
      const Arity *ar = f.theory.sig.find(h);
      if (!ar) fail_at(head, "a declared operation (got " + h + ")");
      if (tail) {
        if (!std::holds_alternative<StreamArity>(*ar)) fail_at(head, h + " has a finite arity");
        return Preterm::stream(h, std::move(args), std::move(tail));
      }
      const auto *fa = std::get_if<FiniteArity>(ar);
      if (!fa) fail_at(head, h + " takes prefix;tail arguments");
      if (fa->space.size() != args.size())
        fail_at(head, h + " applied to " + std::to_string(fa->space.size()) + " arguments");
      return Preterm::app(h, std::move(args));
    }
    if (const Arity *ar = f.theory.sig.find(h)) {
      const auto *fa = std::get_if<FiniteArity>(ar);
      if (fa && fa->space.size() == 0) return Preterm::app(h, {});
      fail_at(head, h + " needs arguments");
    }
    return Preterm::var(h);
  }

  Eps eps_expr() {
    Eps e;
    if (isid("e")) {
      ++p;
      e.kind = Eps::Fam;
      return e;
    }
    if (isid("inf")) {
      ++p;
      e.conc = ExtReal::inf();
      return e;
    }
    if (isp("(")) {
      ++p;
      Rat r = rat();
      expect(")");
      expect("^");
      if (!isid("n")) fail("'n'");
      ++p;
      e.kind = Eps::Geom;
      e.ratio = std::move(r);
      return e;
    }
    Rat c = rat();
    if (accept("*")) {
      if (isid("e")) {
        ++p;
        e.kind = Eps::Fam;
        e.coeff = std::move(c);
        return e;
      }
      expect("(");
      Rat r = rat();
      expect(")");
      expect("^");
      if (!isid("n")) fail("'n'");
      ++p;
      e.kind = Eps::Geom;
      e.coeff = std::move(c);
      e.ratio = std::move(r);
      return e;
    }
    e.conc = ExtReal(std::move(c));
    return e;
  }

  struct ParsedCtx {
    Context ctx;
    std::vector<std::tuple<std::string, Eps, std::string>> fam;
  };

  ParsedCtx context() {
    ParsedCtx out;
    expect("{");
    auto declare = [&](const std::string &v) {
      if (!out.ctx.has_var(v)) out.ctx.vars.push_back(v);
    };
    while (!isp("}")) {
      std::string x = ident("a variable or '}'");
      declare(x);
      if (accept("=")) {
        expect("[");
        Eps e = eps_expr();
        expect("]");
        std::string y = ident("a variable");
        declare(y);
        if (e.kind == Eps::Conc)
          out.ctx.bounds.push_back({std::move(x), std::move(y), std::move(e.conc)});
        else if (e.kind == Eps::Fam)
          out.fam.emplace_back(std::move(x), std::move(e), std::move(y));
        else
          fail("a concrete or e-family bound in a context");
      }
      accept(",");
    }
    expect("}");
    return out;
  }

  void validate_or_fail(const Sequent &s) {
    try {
      s.validate();
    } catch (const std::invalid_argument &ex) {
      fail(ex.what());
    }
  }

  void check_family_vars(const TermPtr &t, const std::string &x, const std::string &y) {
    for (const auto &v : free_vars(t))
      if (v != x && v != y) fail("family terms over the two bound variables (got " + v + ")");
  }

  void stream_axiom(const std::string &name) {
    expect("[");
    std::string an = ident("an arity name");
    if (!isid("over")) fail("'over'");
    ++p;
    std::string v = ident("an index variable");
    expect("]");
    expect("|-");
    std::string op = name_tok("an operation");
    const Arity *na = named(an);
    if (!na) fail("a declared arity (got " + an + ")");
    const Arity *ar = f.theory.sig.find(op);
    if (!ar) fail("a declared operation (got " + op + ")");
    if (!std::holds_alternative<StreamArity>(*ar)) fail(op + " with a geometric arity");
    if (!(*ar == *na)) fail(op + " declared at arity " + an);
    expect("(");
    if (ident("the family variable") != v) fail("the family variable " + v);
    expect("...");
    expect(")");
    expect("=");
    expect("[");
    Eps e = eps_expr();
    expect("]");
    if (e.kind != Eps::Geom) fail("a geometric bound c * (r)^n");
    if (ident("the indexed variable") != v) fail("the indexed variable " + v);
    expect("[");
    if (!isid("n")) fail("'n'");
    ++p;
    expect("]");
    f.theory.axioms.push_back({name, StreamAxiom{op, v, std::move(e.coeff), std::move(e.ratio)}});
  }

  void axiom_decl() {
    ++p;
    std::string name;
    if (peek().kind == Tok::Str) name = take().text;
    else name = "ax" + std::to_string(auto_axiom++);
    if (f.theory.axiom(name)) fail("a fresh axiom name (duplicate " + name + ")");
    if (isp("[")) {
      stream_axiom(name);
      return;
    }
    ParsedCtx pc;
    if (isp("{")) pc = context();
    expect("|-");
    TermPtr l = term();
    if (isid("ok")) {
      ++p;
      if (!pc.fam.empty()) fail("no e-family bounds with ok bodies");
      Sequent s = ok_sequent(std::move(pc.ctx), std::move(l));
      validate_or_fail(s);
      f.theory.axioms.push_back({name, ConcreteAxiom{std::move(s)}});
      return;
    }
    expect("=");
    expect("[");
    Eps e = eps_expr();
    expect("]");
    TermPtr r = term();
    if (e.kind == Eps::Geom) fail("geometric bounds only in stream axioms");
    if (e.kind == Eps::Fam || !pc.fam.empty()) {
      if (pc.fam.size() != 1 || !pc.ctx.bounds.empty() || e.kind != Eps::Fam)
        fail("the family shape { x =[m * e] y } |- l =[e] r");
      auto &[x, ce, y] = pc.fam[0];
      if (x == y) fail("two distinct family variables");
      if (ce.coeff == 0 || e.coeff == 0) fail("positive family coefficients");
      check_family_vars(l, x, y);
      check_family_vars(r, x, y);
      Rat mult = ce.coeff / e.coeff;
      f.theory.axioms.push_back(
          {name, BoundFamilyAxiom{x, y, std::move(mult), std::move(l), std::move(r)}});
      return;
    }
    Sequent s = eq_sequent(std::move(pc.ctx), std::move(l), std::move(r), std::move(e.conc));
    validate_or_fail(s);
    f.theory.axioms.push_back({name, ConcreteAxiom{std::move(s)}});
  }

  void arity_decl() {
    ++p;
    std::string n = ident("an arity name");
    if (named(n)) fail("a fresh arity name (duplicate " + n + ")");
    expect("=");
    f.arities.emplace_back(std::move(n), arity_expr());
  }

  void op_decl() {
    ++p;
    std::string n = name_tok("an operation name");
    if (f.theory.sig.find(n)) fail("a fresh operation name (duplicate " + n + ")");
    expect(":");
    if (peek().kind == Tok::Ident && !isid("geometric")) {
      const Tok &at = take();
      const Arity *a = named(at.text);
      if (!a) fail_at(at, "a declared arity (got " + at.text + ")");
      f.theory.sig.add(n, *a);
      return;
    }
    f.theory.sig.add(n, arity_expr());
  }

  void theory_block() {
    ++p;
    if (have_theory) fail("a single theory per file");
    have_theory = true;
    f.theory.name = name_tok("a theory name");
    expect("{");
    while (!isp("}")) {
      if (accept(";")) continue;
      if (isid("arity")) arity_decl();
      else if (isid("op")) op_decl();
      else if (isid("axiom")) axiom_decl();
      else fail("arity, op, axiom or '}'");
    }
    expect("}");
  }

  Sequent sequent_tail(ParsedCtx pc) {
    if (!pc.fam.empty()) fail("concrete bounds in a sequent");
    expect("|-");
    TermPtr l = term();
    Sequent s;
    if (isid("ok")) {
      ++p;
      s = ok_sequent(std::move(pc.ctx), std::move(l));
    } else {
      expect("=");
      expect("[");
      Eps e = eps_expr();
      expect("]");
      if (e.kind != Eps::Conc) fail("a concrete bound");
      TermPtr r = term();
      s = eq_sequent(std::move(pc.ctx), std::move(l), std::move(r), std::move(e.conc));
    }
    validate_or_fail(s);
    return s;
  }

  void run() {
    auto fresh = [&](auto &list, const std::string &n) {
      for (const auto &[k, v] : list)
        if (k == n) fail("a fresh name (duplicate " + n + ")");
    };
    while (peek().kind != Tok::End) {
      if (accept(";")) continue;
      if (isid("theory")) {
        theory_block();
      } else if (isid("space")) {
        ++p;
        std::string n = name_tok("a space name");
        fresh(f.spaces, n);
        f.spaces.emplace_back(std::move(n), block());
      } else if (isid("term")) {
        ++p;
        std::string n = name_tok("a term name");
        fresh(f.terms, n);
        expect("=");
        f.terms.emplace_back(std::move(n), term());
      } else if (isid("sequent")) {
        ++p;
        std::string n = name_tok("a sequent name");
        fresh(f.sequents, n);
        expect("=");
        ParsedCtx pc;
        if (isp("{")) pc = context();
        f.sequents.emplace_back(std::move(n), sequent_tail(std::move(pc)));
      } else {
        fail("theory, space, term or sequent");
      }
    }
  }
};

bool plain_name(const std::string &s) {
  if (s.empty()) return false;
  if (std::all_of(s.begin(), s.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return true;
  if (!id_start(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), id_char);
}

std::string quoted(const std::string &s) { return plain_name(s) ? s : "\"" + s + "\""; }

void print_block(std::string &out, const FinPseudoMetric &m) {
  out += "{";
  for (const auto &q : m.points) out += " " + quoted(q);
  bool first = true;
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = i + 1; j < m.size(); ++j) {
      if (m.at(i, j).is_inf()) continue;
      out += first ? " : " : ", ";
      first = false;
      out += "d(" + quoted(m.points[i]) + "," + quoted(m.points[j]) + ")=" + m.at(i, j).str();
    }
  out += " }";
}

std::string print_arity(const Arity &a) {
  if (const auto *s = std::get_if<StreamArity>(&a))
    return "geometric(ratio = " + rat_str(s->ratio) + ", scale = " + rat_str(s->scale) + ")";
  std::string out;
  print_block(out, std::get<FiniteArity>(a).space);
  return out;
}

std::string print_ctx(const Context &c) {
  if (c.vars.empty() && c.bounds.empty()) return "";
  std::vector<std::string> order;
  auto note = [&](const std::string &v) {
    for (const auto &x : order)
      if (x == v) return;
    order.push_back(v);
  };
  for (const auto &b : c.bounds) {
    note(b.x);
    note(b.y);
  }
  std::vector<std::string> items;
  if (order != c.vars)
    for (const auto &v : c.vars) items.push_back(v);
  for (const auto &b : c.bounds) items.push_back(b.x + " =[" + b.eps.str() + "] " + b.y);
  std::string out = "{";
  for (size_t i = 0; i < items.size(); ++i) out += (i ? ", " : " ") + items[i];
  return out + " }";
}

std::string print_body(const Body &b) {
  if (const auto *ok = std::get_if<OkBody>(&b)) return ok->t->key + " ok";
  const auto &eq = std::get<EqBody>(b);
  return eq.l->key + " =[" + eq.eps.str() + "] " + eq.r->key;
}

std::string print_sequent(const Sequent &s) {
  std::string ctx = print_ctx(s.ctx);
  return (ctx.empty() ? "" : ctx + " ") + "|- " + print_body(s.body);
}

}  // namespace

std::string ParseError::str() const {
  return "line " + std::to_string(line) + " col " + std::to_string(col) + ": expected " +
         expectation;
}

std::variant<TheoryFile, ParseError> parse_theory(const std::string &source) {
  try {
    auto toks = lex(source);
    Parser ps(toks);
    ps.run();
    return std::move(ps.f);
  } catch (const PErr &e) {
    return ParseError{e.line, e.col, e.expectation};
  }
}

std::string print_theory(const TheoryFile &f) {
  std::string out;
  bool has_theory = !f.theory.name.empty() || !f.theory.sig.ops.empty() ||
                    !f.theory.axioms.empty() || !f.arities.empty();
  std::vector<std::pair<std::string, Arity>> names = f.arities;
  auto name_of = [&](const Arity &a) -> const std::string * {
    for (const auto &[n, v] : names)
      if (v == a) return &n;
    return nullptr;
  };
  if (has_theory) {
    std::string body;
    int next = 0;
    for (const auto &[op, ar] : f.theory.sig.ops) {
      const auto *fa = std::get_if<FiniteArity>(&ar);
      if (fa && fa->space.size() == 0) {
        body += "  op " + op + " : { }\n";
        continue;
      }
      if (!name_of(ar)) {
        auto taken = [&](const std::string &n) {
          for (const auto &[k, v] : names)
            if (k == n) return true;
          return false;
        };
        std::string n;
        do n = "A" + std::to_string(next++);
        while (taken(n));
        names.emplace_back(n, ar);
      }
      body += "  op " + op + " : " + *name_of(ar) + "\n";
    }
    for (const auto &ax : f.theory.axioms) {
      body += "  axiom \"" + ax.name + "\" ";
      if (const auto *c = std::get_if<ConcreteAxiom>(&ax.form)) {
        body += print_sequent(c->seq);
      } else if (const auto *s = std::get_if<StreamAxiom>(&ax.form)) {
        const Arity *ar = f.theory.sig.find(s->op);
        const std::string *an = ar ? name_of(*ar) : nullptr;
        body += "[" + (an ? *an : std::string("?")) + " over " + s->var + "] |- " + s->op + "(" +
                s->var + "...) =[";
        if (s->coeff != 1) body += rat_str(s->coeff) + " * ";
        body += "(" + rat_str(s->ratio) + ")^n] " + s->var + "[n]";
      } else {
        const auto &b = std::get<BoundFamilyAxiom>(ax.form);
        body += "{ " + b.v + " =[" + (b.mult == 1 ? std::string("e") : rat_str(b.mult) + " * e") +
                "] " + b.w + " } |- " + b.lhs->key + " =[e] " + b.rhs->key;
      }
      body += "\n";
    }
    out += "theory " + quoted(f.theory.name.empty() ? std::string("T") : f.theory.name) + " {\n";
    for (const auto &[n, a] : names) out += "  arity " + n + " = " + print_arity(a) + "\n";
    out += body + "}\n";
  }
  for (const auto &[n, sp] : f.spaces) {
    out += "space " + quoted(n) + " ";
    print_block(out, sp);
    out += "\n";
  }
  for (const auto &[n, t] : f.terms) out += "term " + quoted(n) + " = " + t->key + "\n";
  for (const auto &[n, s] : f.sequents) out += "sequent " + quoted(n) + " = " + print_sequent(s) + "\n";
  return out;
}

namespace {

bool same_space(const FinPseudoMetric &a, const FinPseudoMetric &b) {
  if (a.points != b.points) return false;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (a.at(i, j) != b.at(i, j)) return false;
  return true;
}

template <class L>
bool same_named(const L &a, const L &b, const auto &eq) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !eq(a[i].second, b[i].second)) return false;
  return true;
}

}  // namespace

bool TheoryFile::operator==(const TheoryFile &o) const {
  return theory == o.theory &&
         same_named(arities, o.arities, [](const Arity &a, const Arity &b) { return a == b; }) &&
         same_named(spaces, o.spaces, same_space) &&
         same_named(terms, o.terms, term_eq) &&
         same_named(sequents, o.sequents, [](const Sequent &a, const Sequent &b) { return a == b; });
}

namespace {

Parser fragment(const std::vector<Tok> &toks, const Signature &sig) {
  Parser ps(toks);
  ps.f.theory.sig = sig;
  return ps;
}

[[noreturn]] void rethrow(const PErr &e) {
  throw std::invalid_argument(ParseError{e.line, e.col, e.expectation}.str());
}

}  // namespace

TermPtr parse_term_in(const Signature &sig, const std::string &text) {
  try {
    auto toks = lex(text);
    Parser ps = fragment(toks, sig);
    TermPtr t = ps.term();
    if (ps.peek().kind != Tok::End) ps.fail("end of input");
    return t;
  } catch (const PErr &e) {
    rethrow(e);
  }
}

Context parse_context_in(const Signature &sig, const std::string &text) {
  try {
    auto toks = lex(text);
    Parser ps = fragment(toks, sig);
    Context c;
    if (ps.peek().kind != Tok::End) {
      auto pc = ps.context();
      if (!pc.fam.empty()) ps.fail("concrete bounds");
      c = std::move(pc.ctx);
    }
    if (ps.peek().kind != Tok::End) ps.fail("end of input");
    return c;
  } catch (const PErr &e) {
    rethrow(e);
  }
}

Sequent parse_sequent_in(const Signature &sig, const std::string &text) {
  try {
    auto toks = lex(text);
    Parser ps = fragment(toks, sig);
    Parser::ParsedCtx pc;
    if (ps.isp("{")) pc = ps.context();
    Sequent s = ps.sequent_tail(std::move(pc));
    if (ps.peek().kind != Tok::End) ps.fail("end of input");
    return s;
  } catch (const PErr &e) {
    rethrow(e);
  }
}

}  // namespace metriq
