// SPDX-License-Identifier: Apache-2.0
#include "metriq/prover.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace metriq {

ExtReal SaturationState::bound(size_t i, size_t j) const {
  if (i == j) return ok[i] ? ExtReal(0) : ExtReal::inf();
  if (i > j) std::swap(i, j);
  auto it = bounds.find({i, j});
  return it == bounds.end() ? ExtReal::inf() : it->second.eps;
}

ProofPtr SaturationState::witness(size_t i, size_t j, const ExtReal &eps) const {
  if (i == j) {
    if (!ok[i]) return nullptr;
    ProofPtr w = pf_refl(ok_wit[i]);
    return eps.is_zero() ? w : pf_max(std::move(w), eps);
  }
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = bounds.find({i, j});
  if (it == bounds.end() || eps < it->second.eps) return nullptr;
  ProofPtr w = it->second.wit;
  if (flip) w = pf_symm(std::move(w));
  if (it->second.eps < eps) w = pf_max(std::move(w), eps);
  return w;
}

Verdict SaturationState::verify_all_witnesses() const {
  std::vector<ProofPtr> all;
  for (size_t i = 0; i < universe.size(); ++i)
    if (ok[i]) all.push_back(ok_wit[i]);
  for (const auto &[k, e] : bounds) all.push_back(e.wit);
  return check_proofs(theory, all);
}

namespace {

SchemaPtr to_schema(const ProofPtr &p, std::unordered_map<const Proof *, SchemaPtr> &memo) {
  auto it = memo.find(p.get());
  if (it != memo.end()) return it->second;
  auto s = std::make_shared<ProofSchema>();
  s->rule = p->rule;
  s->ctx = p->conclusion.ctx;
  if (const auto *ok = std::get_if<OkBody>(&p->conclusion.body)) {
    s->is_ok = true;
    s->okt = ok->t;
  } else {
    const auto &eq = std::get<EqBody>(p->conclusion.body);
    s->l = eq.l;
    s->r = eq.r;
    s->eps = eq.eps;
  }
  for (const auto &q : p->premises) s->premises.push_back(to_schema(q, memo));
  if (p->subst) s->subst = *p->subst;
  if (p->axiom)
    s->axiom =
        SchemaAxiomRef{p->axiom->axiom, p->axiom->prefix_len, false, p->axiom->index, p->axiom->eps};
  if (p->family) s->family = *p->family;
  memo[p.get()] = s;
  return s;
}

void occ_depths(const TermPtr &t, int d, std::map<std::string, int> &out) {
  if (t->kind == Preterm::Kind::Var) {
    auto it = out.find(t->head);
    if (it == out.end() || it->second < d) out[t->head] = d;
    return;
  }
  for (const auto &a : t->args) occ_depths(a, d + 1, out);
  if (t->tail) occ_depths(t->tail, d + 1, out);
}

struct Engine {
  SaturationState st;
  long depth;
  bool closed;
  std::unordered_map<const Proof *, SchemaPtr> schema_memo;
  bool changed = false;

  Engine(Theory th, Context cx, const ProverConfig &cfg) {
    st.theory = std::move(th);
    st.ctx = std::move(cx);
    st.cfg = cfg;
    depth = cfg.depth;
    closed = cfg.closed_universe;
  }

  std::optional<size_t> intern(const TermPtr &t) {
    auto it = st.index.find(t->key);
    if (it != st.index.end()) return it->second;
    if (static_cast<long>(t->depth) > depth) return std::nullopt;
    if (static_cast<long>(st.universe.size()) >= st.cfg.max_terms) {
      st.truncated = true;
      return std::nullopt;
    }
    st.universe.push_back(t);
    st.ok.push_back(0);
    st.ok_wit.push_back(nullptr);
    size_t id = st.universe.size() - 1;
    st.index.emplace(t->key, id);
    return id;
  }

  std::optional<size_t> intern_tree(const TermPtr &t) {
    for (const auto &a : t->args) intern_tree(a);
    if (t->tail) intern_tree(t->tail);
    return intern(t);
  }

  void mark_ok(size_t i, ProofPtr w) {
    if (st.ok[i]) return;
    st.ok[i] = 1;
    st.ok_wit[i] = std::move(w);
    changed = true;
  }

  bool improves(size_t i, size_t j, const ExtReal &e) const {
    return i != j && e < st.bound(i, j);
  }

  void record(size_t i, size_t j, ExtReal e, ProofPtr w) {
    if (i == j || e.is_inf()) return;
    if (i > j) {
      std::swap(i, j);
      w = pf_symm(std::move(w));
    }
    auto key = std::make_pair(i, j);
    auto it = st.bounds.find(key);
    if (it == st.bounds.end()) {
      st.bounds.emplace(key, SaturationState::Entry{std::move(e), std::move(w)});
    } else {
      if (!(e < it->second.eps)) return;
      it->second = {std::move(e), std::move(w)};
    }
    changed = true;
  }

  void seed(const std::vector<TermPtr> &roots) {
    for (const auto &b : st.ctx.bounds)
      if (!st.ctx.has_var(b.x) || !st.ctx.has_var(b.y))
        throw std::invalid_argument("context bound over undeclared variable");
    for (const auto &v : st.ctx.vars) {
      auto id = intern(Preterm::var(v));
      if (id) mark_ok(*id, pf_var(st.ctx, v));
    }
    for (const auto &r : roots) intern_tree(r);
    for (const auto &b : st.ctx.bounds) {
      if (b.eps.is_inf()) continue;
      auto ix = st.find(Preterm::var(b.x)), iy = st.find(Preterm::var(b.y));
      record(*ix, *iy, b.eps, pf_assum(st.ctx, b));
    }
  }

  // Mirrors the checker's premise template for App; null when some
  // premise is not yet derivable.
  ProofPtr try_app_witness(const TermPtr &t) {
    const Arity *ar = st.theory.sig.find(t->head);
    if (!ar) return nullptr;
    if (t->kind == Preterm::Kind::App) {
      const auto *f = std::get_if<FiniteArity>(ar);
      if (!f || f->space.size() != t->args.size()) return nullptr;
    } else if (!std::holds_alternative<StreamArity>(*ar)) {
      return nullptr;
    }
    std::vector<Sequent> req;
    std::vector<ProofPtr> prem;
    auto supply = [&](Sequent s, const std::function<ProofPtr()> &mk) {
      for (const auto &q : req)
        if (q == s) return true;
      ProofPtr w = mk();
      if (!w) return false;
      req.push_back(std::move(s));
      prem.push_back(std::move(w));
      return true;
    };
    auto ok_of = [&](const TermPtr &u) -> ProofPtr {
      auto id = st.find(u);
      return id && st.ok[*id] ? st.ok_wit[*id] : nullptr;
    };
    for (const auto &a : t->args)
      if (!supply(ok_sequent(st.ctx, a), [&] { return ok_of(a); })) return nullptr;
    if (t->kind == Preterm::Kind::Stream)
      if (!supply(ok_sequent(st.ctx, t->tail), [&] { return ok_of(t->tail); })) return nullptr;
    for (const auto &c : reduced_app_constraints(*ar, t)) {
      auto mk = [&]() -> ProofPtr {
        auto ia = st.find(c.a), ib = st.find(c.b);
        if (!ia || !ib) return nullptr;
        return st.witness(*ia, *ib, c.eps);
      };
      if (!supply(eq_sequent(st.ctx, c.a, c.b, c.eps), mk)) return nullptr;
    }
    return pf_app(ok_sequent(st.ctx, t), std::move(prem));
  }

  void grow_and_close() {
    size_t usize = st.universe.size();
    for (size_t i = 0; i < usize; ++i) {
      if (st.ok[i]) continue;
      const TermPtr &t = st.universe[i];
      if (t->kind == Preterm::Kind::Var) continue;
      if (ProofPtr w = try_app_witness(t)) mark_ok(i, std::move(w));
    }
    if (!closed) return;
    std::vector<size_t> shallow;  // candidate arguments for one more layer
    for (size_t i = 0; i < usize; ++i)
      if (st.ok[i] && static_cast<long>(st.universe[i]->depth) < depth) shallow.push_back(i);
    for (const auto &[name, ar] : st.theory.sig.ops) {
      if (const auto *f = std::get_if<FiniteArity>(&ar)) {
        std::vector<size_t> tuple(f->space.size());
        gen_finite(name, *f, shallow, tuple, 0);
      } else {
        const auto &sa = std::get<StreamArity>(ar);
        for (long plen = 0; plen <= st.cfg.prefix_cap; ++plen) {
          std::vector<size_t> tuple(static_cast<size_t>(plen));
          gen_stream(name, sa, shallow, tuple, 0);
        }
      }
    }
  }

  void add_candidate(TermPtr t) {
    if (st.index.count(t->key)) return;
    if (auto id = intern(t))
      if (ProofPtr w = try_app_witness(st.universe[*id])) mark_ok(*id, std::move(w));
  }

  void gen_finite(const std::string &name, const FiniteArity &f, const std::vector<size_t> &pool,
                  std::vector<size_t> &tuple, size_t pos) {
    if (pos == tuple.size()) {
      std::vector<TermPtr> args;
      args.reserve(tuple.size());
      for (size_t ix : tuple) args.push_back(st.universe[ix]);
      add_candidate(Preterm::app(name, std::move(args)));
      return;
    }
    for (size_t ix : pool) {
      bool fit = true;
      for (size_t q = 0; q < pos && fit; ++q) {
        const ExtReal &need = f.space.at(q, pos);
        if (st.bound(tuple[q], ix) > need) fit = false;
      }
      if (!fit) continue;
      tuple[pos] = ix;
      gen_finite(name, f, pool, tuple, pos + 1);
    }
  }

  void gen_stream(const std::string &name, const StreamArity &sa, const std::vector<size_t> &pool,
                  std::vector<size_t> &tuple, size_t pos) {
    if (pos == tuple.size()) {
      for (size_t tl : pool) {
        bool fit = true;
        for (size_t q = 0; q < tuple.size() && fit; ++q)
          if (st.bound(tuple[q], tl) > geom_at(sa.scale, sa.ratio, static_cast<long>(q) + 1))
            fit = false;
        if (!fit) continue;
        std::vector<TermPtr> prefix;
        prefix.reserve(tuple.size());
        for (size_t ix : tuple) prefix.push_back(st.universe[ix]);
        add_candidate(Preterm::stream(name, std::move(prefix), st.universe[tl]));
      }
      return;
    }
    for (size_t ix : pool) {
      bool fit = true;
      for (size_t q = 0; q < pos && fit; ++q)
        if (st.bound(tuple[q], ix) > sa.dist(static_cast<long>(q) + 1, static_cast<long>(pos) + 1))
          fit = false;
      if (!fit) continue;
      tuple[pos] = ix;
      gen_stream(name, sa, pool, tuple, pos + 1);
    }
  }

  void apply_axioms() {
    for (const auto &ax : st.theory.axioms) {
      if (const auto *c = std::get_if<ConcreteAxiom>(&ax.form))
        concrete_pass(ax.name, *c);
      else if (const auto *s = std::get_if<StreamAxiom>(&ax.form))
        stream_pass(ax.name, *s);
      else
        family_pass(ax.name, std::get<BoundFamilyAxiom>(ax.form));
    }
  }

  void concrete_pass(const std::string &name, const ConcreteAxiom &ca) {
    const auto *eq = std::get_if<EqBody>(&ca.seq.body);
    if (!eq) return;
    const auto &vars = ca.seq.ctx.vars;
    size_t n = vars.size();
    std::vector<std::vector<ExtReal>> delta(n, std::vector<ExtReal>(n, ExtReal::inf()));
    for (size_t i = 0; i < n; ++i) delta[i][i] = ExtReal(0);
    auto pos_of = [&](const std::string &v) -> std::optional<size_t> {
      for (size_t i = 0; i < n; ++i)
        if (vars[i] == v) return i;
      return std::nullopt;
    };
    for (const auto &b : ca.seq.ctx.bounds) {
      auto px = pos_of(b.x), py = pos_of(b.y);
      if (!px || !py || *px == *py) return;
      if (!delta[*px][*py].is_inf()) return;
      delta[*px][*py] = delta[*py][*px] = b.eps;
    }
    // usable through Subst only when the declared bounds are already the
    // canonical listing the checker reconstructs from delta
    std::vector<CtxBound> canon;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (!delta[i][j].is_inf()) canon.push_back({vars[i], vars[j], delta[i][j]});
    if (!(canon == ca.seq.ctx.bounds)) return;
    std::map<std::string, int> occ;
    occ_depths(eq->l, 0, occ);
    occ_depths(eq->r, 0, occ);
    std::vector<std::vector<size_t>> cands(n);
    size_t usize = st.universe.size();
    for (size_t i = 0; i < n; ++i) {
      long cap = depth;
      auto it = occ.find(vars[i]);
      if (it != occ.end()) cap = depth - it->second;
      for (size_t u = 0; u < usize; ++u)
        if (st.ok[u] && static_cast<long>(st.universe[u]->depth) <= cap) cands[i].push_back(u);
    }
    std::vector<size_t> chosen(n);
    std::map<std::string, TermPtr> sigma;
    std::function<void(size_t)> rec = [&](size_t pos) {
      if (pos == n) {
        fire_concrete(name, ca, *eq, vars, delta, chosen, sigma);
        return;
      }
      for (size_t ix : cands[pos]) {
        bool fit = true;
        for (size_t q = 0; q < pos && fit; ++q)
          if (st.bound(chosen[q], ix) > delta[q][pos]) fit = false;
        if (!fit) continue;
        chosen[pos] = ix;
        sigma[vars[pos]] = st.universe[ix];
        rec(pos + 1);
      }
    };
    rec(0);
  }

  void fire_concrete(const std::string &name, const ConcreteAxiom &ca, const EqBody &eq,
                     const std::vector<std::string> &vars,
                     const std::vector<std::vector<ExtReal>> &delta,
                     const std::vector<size_t> &chosen, const std::map<std::string, TermPtr> &sigma) {
    auto il = intern_tree(substitute(eq.l, sigma));
    auto ir = intern_tree(substitute(eq.r, sigma));
    if (!il || !ir) return;
    if (!improves(*il, *ir, eq.eps)) return;
    std::vector<Sequent> outs;
    std::vector<ProofPtr> oprem;
    auto pos_of = [&](const std::string &v) {
      size_t i = 0;
      while (vars[i] != v) ++i;
      return i;
    };
    for (const auto &b : ca.seq.ctx.bounds) {
      Sequent s = eq_sequent(st.ctx, sigma.at(b.x), sigma.at(b.y), b.eps);
      bool dup = false;
      for (const auto &q : outs) dup = dup || q == s;
      if (dup) continue;
      ProofPtr w = st.witness(chosen[pos_of(b.x)], chosen[pos_of(b.y)], b.eps);
      if (!w) return;
      outs.push_back(std::move(s));
      oprem.push_back(std::move(w));
    }
    ProofPtr inner = pf_axiom(st.theory, AxiomInst{name, 0, 0, std::nullopt});
    SubstData data{vars, delta, sigma};
    st.schema_instantiations[name]++;
    record(*il, *ir, eq.eps, pf_subst(st.ctx, std::move(data), std::move(inner), std::move(oprem)));
  }

  void stream_pass(const std::string &name, const StreamAxiom &sa) {
    const Arity *ar = st.theory.sig.find(sa.op);
    if (!ar || !std::holds_alternative<StreamArity>(*ar)) return;
    size_t usize = st.universe.size();
    for (size_t i = 0; i < usize; ++i) {
      if (!st.ok[i]) continue;
      const TermPtr &w = st.universe[i];
      if (w->kind != Preterm::Kind::Stream || w->head != sa.op) continue;
      long k = static_cast<long>(w->args.size());
      Sequent inst = instantiate_stream_axiom(st.theory, sa, k, k + 1);
      const Context &ictx = inst.ctx;
      size_t n = ictx.vars.size();
      std::vector<std::vector<ExtReal>> delta(n, std::vector<ExtReal>(n, ExtReal::inf()));
      for (size_t p = 0; p < n; ++p) delta[p][p] = ExtReal(0);
      for (const auto &b : ictx.bounds) {
        size_t px = 0, py = 0;
        while (ictx.vars[px] != b.x) ++px;
        while (ictx.vars[py] != b.y) ++py;
        delta[px][py] = delta[py][px] = b.eps;
      }
      std::map<std::string, TermPtr> sigma;
      std::map<std::string, size_t> where;
      for (long p = 1; p <= k; ++p) {
        sigma[ictx.vars[p - 1]] = w->args[p - 1];
        where[ictx.vars[p - 1]] = *st.find(w->args[p - 1]);
      }
      sigma[ictx.vars[n - 1]] = w->tail;
      where[ictx.vars[n - 1]] = *st.find(w->tail);
      auto outer_premises = [&](std::vector<ProofPtr> &out) {
        std::vector<Sequent> outs;
        for (const auto &b : ictx.bounds) {
          Sequent s = eq_sequent(st.ctx, sigma.at(b.x), sigma.at(b.y), b.eps);
          bool dup = false;
          for (const auto &q : outs) dup = dup || q == s;
          if (dup) continue;
          ProofPtr pw = st.witness(where.at(b.x), where.at(b.y), b.eps);
          if (!pw) return false;
          outs.push_back(std::move(s));
          out.push_back(std::move(pw));
        }
        return true;
      };
      for (long pos = 1; pos <= k; ++pos) {
        ExtReal e = geom_at(sa.coeff, sa.ratio, pos);
        size_t target = *st.find(w->args[pos - 1]);
        if (!improves(i, target, e)) continue;
        std::vector<ProofPtr> oprem;
        if (!outer_premises(oprem)) continue;
        ProofPtr inner = pf_axiom(st.theory, AxiomInst{name, k, pos, std::nullopt});
        SubstData data{ictx.vars, delta, sigma};
        st.schema_instantiations[name]++;
        record(i, target, e,
               pf_subst(st.ctx, std::move(data), std::move(inner), std::move(oprem)));
      }
      size_t itail = *st.find(w->tail);
      if (improves(i, itail, ExtReal(0))) {
        std::vector<ProofPtr> oprem;
        if (!outer_premises(oprem)) continue;
        const auto &ieq = std::get<EqBody>(inst.body);
        auto axs = std::make_shared<ProofSchema>();
        axs->rule = Rule::Axiom;
        axs->ctx = ictx;
        axs->l = ieq.l;
        axs->r = ieq.r;  // x#w throughout the tail region
        axs->eps = GeomBound{sa.coeff, sa.ratio};
        axs->axiom = SchemaAxiomRef{name, k, true, 0, std::nullopt};
        auto sub = std::make_shared<ProofSchema>();
        sub->rule = Rule::Subst;
        sub->ctx = st.ctx;
        sub->l = w;
        sub->r = w->tail;
        sub->eps = GeomBound{sa.coeff, sa.ratio};
        sub->premises.push_back(std::move(axs));
        for (const auto &pw : oprem) sub->premises.push_back(to_schema(pw, schema_memo));
        sub->subst = SubstData{ictx.vars, delta, sigma};
        ParametricBoundFamily fam{w, w->tail, sa.coeff, sa.ratio, k + 1, std::move(sub)};
        st.schema_instantiations[name]++;
        record(i, itail, ExtReal(0), pf_cont(st.ctx, std::move(fam), ExtReal(0)));
      }
    }
  }

  void family_pass(const std::string &name, const BoundFamilyAxiom &bf) {
    if (bf.mult <= 0) return;
    std::vector<std::pair<size_t, size_t>> keys;
    keys.reserve(st.bounds.size());
    for (const auto &[k, e] : st.bounds) keys.push_back(k);
    for (const auto &[ki, kj] : keys) {
      for (int o = 0; o < 2; ++o) {
        size_t p = o ? kj : ki, q = o ? ki : kj;
        ExtReal e = st.bound(ki, kj);
        if (e.is_inf()) continue;
        ExtReal e2 = e.div(bf.mult);
        std::map<std::string, TermPtr> sigma{{bf.v, st.universe[p]}, {bf.w, st.universe[q]}};
        auto il = intern_tree(substitute(bf.lhs, sigma));
        auto ir = intern_tree(substitute(bf.rhs, sigma));
        if (!il || !ir) continue;
        if (!improves(*il, *ir, e2)) continue;
        ProofPtr inner = pf_axiom(st.theory, AxiomInst{name, 0, 0, e2.value()});
        ProofPtr outer = st.witness(p, q, e);
        SubstData data{{bf.v, bf.w}, {{ExtReal(0), e}, {e, ExtReal(0)}}, sigma};
        st.schema_instantiations[name]++;
        record(*il, *ir, e2, pf_subst(st.ctx, std::move(data), std::move(inner), {outer}));
      }
    }
  }

  void nexp_pass() {
    std::map<std::string, std::vector<size_t>> groups;
    size_t usize = st.universe.size();
    for (size_t i = 0; i < usize; ++i) {
      if (!st.ok[i]) continue;
      const TermPtr &t = st.universe[i];
      if (t->kind == Preterm::Kind::Var) continue;
      if (t->args.empty() && !t->tail) continue;
      groups[t->head].push_back(i);
    }
    for (const auto &[op, members] : groups) {
      const Arity *ar = st.theory.sig.find(op);
      if (!ar) continue;
      for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b) nexp_pair(*ar, members[a], members[b]);
    }
  }

  void nexp_pair(const Arity &ar, size_t ia, size_t ib) {
    const TermPtr &l = st.universe[ia], &r = st.universe[ib];
    if (l->kind != r->kind) return;
    if (l->kind == Preterm::Kind::App && l->args.size() != r->args.size()) return;
    const ExtReal cur = st.bound(ia, ib);
    if (cur.is_zero()) return;
    ExtReal eps(0);
    auto fold = [&](const TermPtr &x, const TermPtr &y) {
      auto px = st.find(x), py = st.find(y);
      if (!px || !py) {
        eps = ExtReal::inf();
        return false;
      }
      ExtReal d = st.bound(*px, *py);
      if (eps < d) eps = std::move(d);
      return eps < cur;
    };
    bool viable = true;
    if (l->kind == Preterm::Kind::App) {
      for (size_t i = 0; i < l->args.size() && viable; ++i) viable = fold(l->args[i], r->args[i]);
    } else {
      long k = static_cast<long>(std::max(l->args.size(), r->args.size()));
      for (long i = 1; i <= k && viable; ++i) viable = fold(stream_at(l, i), stream_at(r, i));
      if (viable) viable = fold(l->tail, r->tail);
    }
    if (!viable || !(eps < cur)) return;
    std::vector<Sequent> req;
    std::vector<ProofPtr> prem;
    bool have = true;
    auto add = [&](const TermPtr &x, const TermPtr &y, const ExtReal &e) {
      if (!have) return;
      Sequent s = eq_sequent(st.ctx, x, y, e);
      for (const auto &q : req)
        if (q == s) return;
      ProofPtr w = st.witness(*st.find(x), *st.find(y), e);
      if (!w) {
        have = false;
        return;
      }
      req.push_back(std::move(s));
      prem.push_back(std::move(w));
    };
    for (const auto &c : reduced_app_constraints(ar, l)) add(c.a, c.b, c.eps);
    for (const auto &c : reduced_app_constraints(ar, r)) add(c.a, c.b, c.eps);
    if (l->kind == Preterm::Kind::App) {
      for (size_t i = 0; i < l->args.size(); ++i) add(l->args[i], r->args[i], eps);
    } else {
      long k = static_cast<long>(std::max(l->args.size(), r->args.size()));
      for (long i = 1; i <= k; ++i) add(stream_at(l, i), stream_at(r, i), eps);
      add(l->tail, r->tail, eps);
    }
    if (!have) return;
    record(ia, ib, eps, pf_nexp(eq_sequent(st.ctx, l, r, eps), std::move(prem)));
  }

  // Row-major bitset adjacency: bit k of row a is set iff the recorded
  // bound on (a,k) is at most the cutoff the matrix was built for.
  struct BitMat {
    size_t n, w;
    std::vector<uint64_t> bits;
    BitMat(size_t n_) : n(n_), w((n_ + 63) / 64), bits(n_ * w, 0) {}
    void set(size_t a, size_t k) { bits[a * w + k / 64] |= 1ull << (k % 64); }
    bool get(size_t a, size_t k) const { return bits[a * w + k / 64] >> (k % 64) & 1; }
    uint64_t *row(size_t a) { return bits.data() + a * w; }
    const uint64_t *row(size_t a) const { return bits.data() + a * w; }
  };

  void fill_leq(BitMat &m, const ExtReal &cut) {
    std::fill(m.bits.begin(), m.bits.end(), 0);
    for (const auto &[k, e] : st.bounds)
      if (!(cut < e.eps)) {
        m.set(k.first, k.second);
        m.set(k.second, k.first);
      }
  }

  // Triangle closure, one sweep.  Edges are bucketed by bound value and
  // each value pair (vi, vj) is handled as a bitset product, so a dense
  // uniform-distance universe costs one product instead of a quadratic
  // neighbor scan per edge.
  void triangle_pass() {
    size_t n = st.universe.size();
    if (n < 3 || st.bounds.size() < 2) return;
    std::vector<ExtReal> vals;
    vals.reserve(st.bounds.size());
    for (const auto &[k, e] : st.bounds) vals.push_back(e.eps);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    size_t npairs = n * (n - 1) / 2;
    BitMat ri{n}, rj{n}, ms{n};
    std::vector<uint64_t> acc(ri.w);
    for (size_t a = 0; a < vals.size(); ++a) {
      const ExtReal &vi = vals[a];
      fill_leq(ri, vi);
      for (size_t b = a; b < vals.size(); ++b) {
        const ExtReal &vj = vals[b];
        ExtReal s = vi + vj;
        bool all_related = st.bounds.size() == npairs;
        if (!(s < vals.back()) && all_related) continue;
        fill_leq(rj, vj);
        fill_leq(ms, s);
        for (size_t p = 0; p < n; ++p) {
          const uint64_t *rp = ri.row(p);
          bool any = false;
          for (size_t wd = 0; wd < ri.w; ++wd) any = any || rp[wd];
          if (!any) continue;
          std::fill(acc.begin(), acc.end(), 0);
          for (size_t wd = 0; wd < ri.w; ++wd) {
            uint64_t word = rp[wd];
            while (word) {
              size_t q = wd * 64 + static_cast<size_t>(__builtin_ctzll(word));
              word &= word - 1;
              const uint64_t *rq = rj.row(q);
              for (size_t x = 0; x < ri.w; ++x) acc[x] |= rq[x];
            }
          }
          const uint64_t *mp = ms.row(p);
          for (size_t wd = 0; wd < ri.w; ++wd) {
            uint64_t fresh = acc[wd] & ~mp[wd];
            if (wd == p / 64) fresh &= ~(1ull << (p % 64));
            while (fresh) {
              size_t k = wd * 64 + static_cast<size_t>(__builtin_ctzll(fresh));
              fresh &= fresh - 1;
              close_pair(p, k, ri, rj);
            }
          }
        }
      }
    }
  }

  void close_pair(size_t p, size_t k, const BitMat &ri, const BitMat &rj) {
    for (size_t wd = 0; wd < ri.w; ++wd) {
      uint64_t word = ri.row(p)[wd];
      while (word) {
        size_t q = wd * 64 + static_cast<size_t>(__builtin_ctzll(word));
        word &= word - 1;
        if (!rj.get(q, k) || q == p || q == k) continue;
        ExtReal e1 = st.bound(p, q), e2 = st.bound(q, k);
        ExtReal cand = e1 + e2;
        if (!improves(p, k, cand)) return;
        record(p, k, cand, pf_triang(st.witness(p, q, e1), st.witness(q, k, e2)));
        return;
      }
    }
  }

  void run() {
    for (long pass = 0; pass < st.cfg.max_passes; ++pass) {
      changed = false;
      grow_and_close();
      apply_axioms();
      nexp_pass();
      triangle_pass();
      st.passes_used = pass + 1;
      if (!changed) return;
    }
    st.truncated = true;
  }
};

}  // namespace

SaturationState saturate(const Theory &t, const Context &ctx, const std::optional<FinMetric> &gens,
                         const ProverConfig &cfg, const std::vector<TermPtr> &roots) {
  Theory th = gens ? disjoint_union(t, theory_of_space(*gens)) : t;
  Engine e{std::move(th), ctx, cfg};
  e.seed(roots);
  e.run();
  return std::move(e.st);
}

OkResult prove_ok(const Theory &t, const Context &ctx, const TermPtr &term,
                  const ProverConfig &cfg) {
  if (static_cast<long>(term->depth) > cfg.depth)
    throw std::domain_error("term exceeds depth " + std::to_string(cfg.depth));
  SaturationState st = saturate(t, ctx, std::nullopt, cfg, {term});
  auto id = st.find(term);
  bool ok = id && st.ok[*id];
  return {ok, ok ? st.ok_wit[*id] : nullptr, st.truncated};
}

CountermodelResult countermodel_search(const Theory &t, const Sequent &goal,
                                       const ProverConfig &cfg) {
  goal.validate();
  if (const auto *eq = std::get_if<EqBody>(&goal.body))
    if (eq->eps.is_inf()) throw std::invalid_argument("countermodel target must be finite");
  CountermodelResult res;
  unsigned long long spent = 0;
  const auto &vars = goal.ctx.vars;
  enumerate_carriers(cfg.cm_size, cfg.grid, [&](const FinMetric &carrier) {
    return enumerate_models(t.sig, carrier, [&](const Model &m) {
      if (++spent > cfg.cm_budget) {
        res.truncated = true;
        return false;
      }
      if (!satisfies_theory(m, t)) return true;
      size_t nv = vars.size(), npts = m.carrier.size();
      if (npts == 0) return true;
      std::vector<size_t> pick(nv, 0);
      while (true) {
        if (++spent > cfg.cm_budget) {
          res.truncated = true;
          return false;
        }
        Assignment a;
        for (size_t i = 0; i < nv; ++i) a[vars[i]] = pick[i];
        bool ctx_sat = true;
        for (const auto &b : goal.ctx.bounds)
          if (m.carrier.at(a.at(b.x), a.at(b.y)) > b.eps) {
            ctx_sat = false;
            break;
          }
        if (ctx_sat) {
          bool bad = false;
          if (const auto *okb = std::get_if<OkBody>(&goal.body)) {
            bad = !evaluate(m, t.sig, okb->t, a).has_value();
          } else {
            const auto &eq = std::get<EqBody>(goal.body);
            auto el = evaluate(m, t.sig, eq.l, a), er = evaluate(m, t.sig, eq.r, a);
            bad = !el || !er || m.carrier.at(*el, *er) > eq.eps;
          }
          if (bad) {
            res.found = true;
            res.model = m;
            res.assignment = a;
            return false;
          }
        }
        size_t i = 0;
        while (i < nv && ++pick[i] == npts) pick[i++] = 0;
        if (i == nv) break;
        if (nv == 0) break;
      }
      return true;
    });
  });
  return res;
}

DistResult min_distance(const Theory &t, const Context &ctx, const TermPtr &s, const TermPtr &u,
                        const ProverConfig &cfg, bool certify) {
  if (static_cast<long>(s->depth) > cfg.depth || static_cast<long>(u->depth) > cfg.depth)
    throw std::domain_error("term exceeds depth " + std::to_string(cfg.depth));
  SaturationState st = saturate(t, ctx, std::nullopt, cfg, {s, u});
  auto is = st.find(s), iu = st.find(u);
  if (!is || !iu || !st.ok[*is] || !st.ok[*iu])
    throw std::domain_error("term not provably well-formed at depth " + std::to_string(cfg.depth));
  DistResult res;
  res.upper = st.bound(*is, *iu);
  res.witness = res.upper.is_inf() ? nullptr : st.witness(*is, *iu, res.upper);
  res.exact = false;
  res.truncated = st.truncated;
  if (res.upper.is_zero()) {
    res.exact = true;  // distances are nonnegative, zero cannot be beaten
    return res;
  }
  if (!certify) return res;
  std::vector<ExtReal> grid = cfg.grid;
  std::sort(grid.begin(), grid.end());
  std::optional<ExtReal> target;
  for (const auto &g : grid)
    if (g < res.upper && !g.is_inf()) target = g;
  if (!target) return res;
  res.certificate = countermodel_search(t, eq_sequent(ctx, s, u, *target), cfg);
  res.exact = res.certificate.found;
  return res;
}

Sequent translate_sequent(const Theory &t, const FinMetric &a, const Sequent &seq) {
  (void)t;
  std::set<std::string> used(seq.ctx.vars.begin(), seq.ctx.vars.end());
  std::map<std::string, std::string> c2v;
  std::vector<std::string> fresh;
  for (const auto &p : a.points) {
    std::string v = "x_" + p;
    while (used.count(v)) v = "_" + v;
    used.insert(v);
    c2v[gen_constant_name(p)] = v;
    fresh.push_back(v);
  }
  std::function<TermPtr(const TermPtr &)> tr = [&](const TermPtr &u) -> TermPtr {
    if (u->kind == Preterm::Kind::Var) return u;
    if (u->kind == Preterm::Kind::App) {
      if (u->args.empty()) {
        auto it = c2v.find(u->head);
        return it == c2v.end() ? u : Preterm::var(it->second);
      }
      std::vector<TermPtr> args;
      args.reserve(u->args.size());
      for (const auto &x : u->args) args.push_back(tr(x));
      return Preterm::app(u->head, std::move(args));
    }
    std::vector<TermPtr> prefix;
    prefix.reserve(u->args.size());
    for (const auto &x : u->args) prefix.push_back(tr(x));
    return Preterm::stream(u->head, std::move(prefix), tr(u->tail));
  };
  Context cx = seq.ctx;
  for (const auto &v : fresh) cx.vars.push_back(v);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = i + 1; j < a.size(); ++j)
      if (!a.at(i, j).is_inf()) cx.bounds.push_back({fresh[i], fresh[j], a.at(i, j)});
  Body body;
  if (const auto *okb = std::get_if<OkBody>(&seq.body))
    body = OkBody{tr(okb->t)};
  else {
    const auto &eq = std::get<EqBody>(seq.body);
    body = EqBody{tr(eq.l), tr(eq.r), eq.eps};
  }
  return {std::move(cx), std::move(body)};
}

std::vector<AxiomCheck> check_axioms(const Theory &t, const ProverConfig &cfg) {
  std::vector<AxiomCheck> out;
  ProverConfig c = cfg;
  c.closed_universe = false;
  auto side_ok = [&](const Context &ctx, const TermPtr &term, std::string &why) {
    // Ok-ness is derived through Var and App only, so saturating past the
    // term's own depth cannot help and can blow up on wide arities.
    ProverConfig local = c;
    local.depth = static_cast<long>(term->depth);
    SaturationState st = saturate(t, ctx, std::nullopt, local, {term});
    auto id = st.find(term);
    if (id && st.ok[*id]) return true;
    why = term->key + " not derivably ok at depth " + std::to_string(local.depth);
    return false;
  };
  auto seq_ok = [&](const Sequent &s, std::string &why) {
    if (const auto *okb = std::get_if<OkBody>(&s.body)) return side_ok(s.ctx, okb->t, why);
    const auto &eq = std::get<EqBody>(s.body);
    return side_ok(s.ctx, eq.l, why) && side_ok(s.ctx, eq.r, why);
  };
  for (const auto &ax : t.axioms) {
    AxiomCheck ac{ax.name, true, ""};
    std::string why;
    if (const auto *ca = std::get_if<ConcreteAxiom>(&ax.form)) {
      ac.well_formed = seq_ok(ca->seq, why);
    } else if (const auto *sa = std::get_if<StreamAxiom>(&ax.form)) {
      for (long k = 0; k <= 2 && ac.well_formed; ++k)
        for (long pos = 1; pos <= k + 1 && ac.well_formed; ++pos)
          ac.well_formed = seq_ok(instantiate_stream_axiom(t, *sa, k, pos), why);
    } else {
      const auto &bf = std::get<BoundFamilyAxiom>(ax.form);
      for (const Rat &e : {Rat(0), Rat(1, 2), Rat(1)}) {
        if (!ac.well_formed) break;
        ac.well_formed = seq_ok(instantiate_bound_axiom(bf, e), why);
      }
    }
    ac.detail = why;
    out.push_back(std::move(ac));
  }
  return out;
}

}  // namespace metriq
