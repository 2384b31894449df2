// SPDX-License-Identifier: Apache-2.0
#include "metriq/syntax.hpp"

#include <algorithm>
#include <stdexcept>

namespace metriq {

void Signature::add(const std::string &name, Arity a) {
  if (find(name)) throw std::invalid_argument("duplicate operation " + name);
  if (auto *s = std::get_if<StreamArity>(&a)) {
    if (s->ratio <= 0 || s->ratio >= 1 || s->scale <= 0)
      throw std::invalid_argument("geometric arity needs ratio in (0,1), scale > 0");
  }
  ops.emplace_back(name, std::move(a));
}

TermPtr Preterm::var(const std::string &name) {
  auto t = std::make_shared<Preterm>();
  t->kind = Kind::Var;
  t->head = name;
  t->key = name;
  t->depth = 0;
  return t;
}

TermPtr Preterm::app(const std::string &op, std::vector<TermPtr> args) {
  auto t = std::make_shared<Preterm>();
  t->kind = Kind::App;
  t->head = op;
  t->args = std::move(args);
  t->key = op + "(";
  t->depth = 0;
  for (size_t i = 0; i < t->args.size(); ++i) {
    if (i) t->key += ",";
    t->key += t->args[i]->key;
    t->depth = std::max(t->depth, t->args[i]->depth + 1);
  }
  t->key += ")";
  if (t->args.empty()) t->key = op;  // constants print bare
  return t;
}

TermPtr Preterm::stream(const std::string &op, std::vector<TermPtr> prefix, TermPtr tail) {
  auto t = std::make_shared<Preterm>();
  t->kind = Kind::Stream;
  t->head = op;
  t->args = std::move(prefix);
  t->tail = std::move(tail);
  t->key = op + "(";
  t->depth = t->tail->depth + 1;
  for (size_t i = 0; i < t->args.size(); ++i) {
    if (i) t->key += ",";
    t->key += t->args[i]->key;
    t->depth = std::max(t->depth, t->args[i]->depth + 1);
  }
  t->key += ";" + t->tail->key + ")";
  return t;
}

void collect_free_vars(const TermPtr &t, std::set<std::string> &out) {
  if (t->kind == Preterm::Kind::Var) {
    out.insert(t->head);
    return;
  }
  for (const auto &a : t->args) collect_free_vars(a, out);
  if (t->tail) collect_free_vars(t->tail, out);
}

std::set<std::string> free_vars(const TermPtr &t) {
  std::set<std::string> out;
  collect_free_vars(t, out);
  return out;
}

TermPtr substitute(const TermPtr &t, const std::map<std::string, TermPtr> &sigma) {
  switch (t->kind) {
    case Preterm::Kind::Var: {
      auto it = sigma.find(t->head);
      return it == sigma.end() ? t : it->second;
    }
    case Preterm::Kind::App: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto &a : t->args) args.push_back(substitute(a, sigma));
      return Preterm::app(t->head, std::move(args));
    }
    case Preterm::Kind::Stream: {
      std::vector<TermPtr> prefix;
      prefix.reserve(t->args.size());
      for (const auto &a : t->args) prefix.push_back(substitute(a, sigma));
      return Preterm::stream(t->head, std::move(prefix), substitute(t->tail, sigma));
    }
  }
  throw std::logic_error("unreachable");
}

TermPtr rename_ops(const TermPtr &t, const std::map<std::string, std::string> &ren) {
  if (t->kind == Preterm::Kind::Var) return t;
  auto it = ren.find(t->head);
  std::string head = it == ren.end() ? t->head : it->second;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto &a : t->args) args.push_back(rename_ops(a, ren));
  if (t->kind == Preterm::Kind::App) return Preterm::app(head, std::move(args));
  return Preterm::stream(head, std::move(args), rename_ops(t->tail, ren));
}

const TermPtr &stream_at(const TermPtr &s, long i) {
  if (s->kind != Preterm::Kind::Stream) throw std::invalid_argument("not a stream application");
  if (i < 1) throw std::invalid_argument("stream positions are 1-based");
  if (i <= static_cast<long>(s->args.size())) return s->args[i - 1];
  return s->tail;
}

void Sequent::validate() const {
  for (const auto &b : ctx.bounds)
    if (!ctx.has_var(b.x) || !ctx.has_var(b.y))
      throw std::invalid_argument("context bound over undeclared variable");
  std::set<std::string> fv;
  if (auto *ok = std::get_if<OkBody>(&body)) {
    collect_free_vars(ok->t, fv);
  } else {
    const auto &eq = std::get<EqBody>(body);
    collect_free_vars(eq.l, fv);
    collect_free_vars(eq.r, fv);
  }
  for (const auto &v : fv)
    if (!ctx.has_var(v)) throw std::invalid_argument("free variable " + v + " undeclared");
}

std::string Sequent::str() const {
  std::string s = "{";
  for (size_t i = 0; i < ctx.bounds.size(); ++i) {
    if (i) s += ", ";
    s += ctx.bounds[i].x + " =[" + ctx.bounds[i].eps.str() + "] " + ctx.bounds[i].y;
  }
  s += "} |- ";
  if (auto *ok = std::get_if<OkBody>(&body)) {
    s += ok->t->key + " ok";
  } else {
    const auto &eq = std::get<EqBody>(body);
    s += eq.l->key + " =[" + eq.eps.str() + "] " + eq.r->key;
  }
  return s;
}

FinPseudoMetric context_space(const Context &ctx) {
  std::vector<std::tuple<std::string, std::string, ExtReal>> cs;
  cs.reserve(ctx.bounds.size());
  for (const auto &b : ctx.bounds) cs.emplace_back(b.x, b.y, b.eps);
  return closure(ctx.vars, cs);
}

static void push_unique(std::vector<AppConstraint> &out, TermPtr a, TermPtr b, ExtReal e) {
  if (b->key < a->key) std::swap(a, b);
  for (const auto &c : out)
    if (term_eq(c.a, a) && term_eq(c.b, b) && c.eps == e) return;
  out.push_back({std::move(a), std::move(b), std::move(e)});
}

std::vector<AppConstraint> reduced_app_constraints(const Arity &ar, const TermPtr &app) {
  std::vector<AppConstraint> out;
  if (const auto *f = std::get_if<FiniteArity>(&ar)) {
    if (app->kind != Preterm::Kind::App || app->args.size() != f->space.size())
      throw std::invalid_argument("arity mismatch for " + app->key);
    for (size_t i = 0; i < app->args.size(); ++i)
      for (size_t j = i + 1; j < app->args.size(); ++j)
        if (!f->space.at(i, j).is_inf())
          push_unique(out, app->args[i], app->args[j], f->space.at(i, j));
    return out;
  }
  const auto &s = std::get<StreamArity>(ar);
  if (app->kind != Preterm::Kind::Stream)
    throw std::invalid_argument("stream arity needs prefix;tail arguments: " + app->key);
  long k = static_cast<long>(app->args.size());
  for (long i = 1; i <= k; ++i) {
    for (long j = i + 1; j <= k; ++j)
      push_unique(out, app->args[i - 1], app->args[j - 1], s.dist(i, j));
    push_unique(out, app->args[i - 1], app->tail, geom_at(s.scale, s.ratio, i));
  }
  push_unique(out, app->tail, app->tail, ExtReal(0));
  return out;
}

}  // namespace metriq
