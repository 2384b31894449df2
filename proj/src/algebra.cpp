// SPDX-License-Identifier: Apache-2.0
#include "metriq/algebra.hpp"

#include <algorithm>

namespace metriq {

std::optional<size_t> evaluate(const Model &m, const Signature &sig, const TermPtr &t,
                               const Assignment &alpha) {
  switch (t->kind) {
    case Preterm::Kind::Var: {
      auto it = alpha.find(t->head);
      if (it == alpha.end()) return std::nullopt;
      return it->second;
    }
    case Preterm::Kind::App: {
      const Arity *ar = sig.find(t->head);
      const Interp *in = m.interp(t->head);
      if (!ar || !in) return std::nullopt;
      const auto *fa = std::get_if<FiniteArity>(ar);
      const auto *fi = std::get_if<FiniteInterp>(in);
      if (!fa || !fi || fa->space.size() != t->args.size()) return std::nullopt;
      std::vector<size_t> vals;
      vals.reserve(t->args.size());
      for (const auto &a : t->args) {
        auto v = evaluate(m, sig, a, alpha);
        if (!v) return std::nullopt;
        vals.push_back(*v);
      }
      for (size_t i = 0; i < vals.size(); ++i)
        for (size_t j = i + 1; j < vals.size(); ++j)
          if (fa->space.at(i, j) < m.carrier.at(vals[i], vals[j])) return std::nullopt;
      auto it = fi->table.find(vals);
      if (it == fi->table.end()) return std::nullopt;
      return it->second;
    }
    case Preterm::Kind::Stream: {
      const Arity *ar = sig.find(t->head);
      const Interp *in = m.interp(t->head);
      if (!ar || !in) return std::nullopt;
      const auto *sa = std::get_if<StreamArity>(ar);
      const auto *si = std::get_if<StreamInterp>(in);
      if (!sa || !si) return std::nullopt;
      std::vector<size_t> vals;
      for (const auto &a : t->args) {
        auto v = evaluate(m, sig, a, alpha);
        if (!v) return std::nullopt;
        vals.push_back(*v);
      }
      auto tv = evaluate(m, sig, t->tail, alpha);
      if (!tv) return std::nullopt;
      long k = static_cast<long>(vals.size());
      for (long i = 1; i <= k; ++i) {
        for (long j = i + 1; j <= k; ++j)
          if (sa->dist(i, j) < m.carrier.at(vals[i - 1], vals[j - 1])) return std::nullopt;
        if (geom_at(sa->scale, sa->ratio, i) < m.carrier.at(vals[i - 1], *tv))
          return std::nullopt;
      }
      if (*tv >= si->point_map.size() || si->point_map[*tv] == StreamInterp::UNDEF)
        return std::nullopt;
      return si->point_map[*tv];
    }
  }
  return std::nullopt;
}

namespace {

// Applies cb to every assignment of ctx.vars satisfying the context
// bounds; stops early when cb returns false.
bool for_each_assignment(const Model &m, const Context &ctx,
                         const std::function<bool(const Assignment &)> &cb) {
  size_t n = ctx.vars.size(), cn = m.carrier.size();
  std::vector<size_t> cur(n, 0);
  if (n > 0 && cn == 0) return true;  // no assignments into an empty carrier
  while (true) {
    Assignment a;
    for (size_t i = 0; i < n; ++i) a[ctx.vars[i]] = cur[i];
    bool sat = true;
    for (const auto &b : ctx.bounds)
      if (m.carrier.at(a.at(b.x), a.at(b.y)) > b.eps) {
        sat = false;
        break;
      }
    if (sat && !cb(a)) return false;
    size_t pos = n;
    while (pos > 0) {
      if (++cur[pos - 1] < cn) break;
      cur[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) return true;
  }
}

}  // namespace

bool satisfies(const Model &m, const Signature &sig, const Sequent &s) {
  return for_each_assignment(m, s.ctx, [&](const Assignment &a) {
    if (const auto *ok = std::get_if<OkBody>(&s.body)) return evaluate(m, sig, ok->t, a).has_value();
    const auto &eq = std::get<EqBody>(s.body);
    auto l = evaluate(m, sig, eq.l, a), r = evaluate(m, sig, eq.r, a);
    if (!l || !r) return false;
    return m.carrier.at(*l, *r) <= eq.eps;
  });
}

namespace {

bool satisfies_stream_axiom(const Model &m, const Theory &t, const StreamAxiom &ax,
                            const SchemaCheckCaps &caps) {
  const Arity *ar = t.sig.find(ax.op);
  if (!ar) return false;
  const auto *sa = std::get_if<StreamArity>(ar);
  const Interp *in = m.interp(ax.op);
  if (!sa || !in || !std::holds_alternative<StreamInterp>(*in)) return false;
  const auto &si = std::get<StreamInterp>(*in);
  size_t cn = m.carrier.size();
  // Eventually constant streams as value tuples (v_1..v_k, tail).
  for (long k = 0; k <= caps.stream_prefix; ++k) {
    std::vector<size_t> v(k + 1, 0);
    if (cn == 0) return true;
    while (true) {
      bool adm = true;
      for (long i = 1; i <= k && adm; ++i) {
        for (long j = i + 1; j <= k && adm; ++j)
          if (sa->dist(i, j) < m.carrier.at(v[i - 1], v[j - 1])) adm = false;
        if (geom_at(sa->scale, sa->ratio, i) < m.carrier.at(v[i - 1], v[k])) adm = false;
      }
      if (adm) {
        size_t tail = v[k];
        if (tail >= si.point_map.size() || si.point_map[tail] == StreamInterp::UNDEF) return false;
        size_t val = si.point_map[tail];
        for (long n = 1; n <= k; ++n)
          if (m.carrier.at(val, v[n - 1]) > geom_at(ax.coeff, ax.ratio, n)) return false;
        // Positions past the prefix hold the tail for every n, so the
        // geometric bounds force distance zero there.
        if (!m.carrier.at(val, tail).is_zero()) return false;
      }
      size_t pos = v.size();
      while (pos > 0) {
        if (++v[pos - 1] < cn) break;
        v[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  return true;
}

bool satisfies_bound_axiom(const Model &m, const Theory &t, const BoundFamilyAxiom &ax) {
  size_t cn = m.carrier.size();
  for (size_t p = 0; p < cn; ++p)
    for (size_t q = 0; q < cn; ++q) {
      if (m.carrier.at(p, q).is_inf()) continue;  // no finite instance constrains the pair
      Assignment a{{ax.v, p}, {ax.w, q}};
      auto l = evaluate(m, t.sig, ax.lhs, a), r = evaluate(m, t.sig, ax.rhs, a);
      if (!l || !r) return false;
      if (m.carrier.at(*l, *r) > m.carrier.at(p, q).div(ax.mult)) return false;
    }
  return true;
}

}  // namespace

bool satisfies_axiom(const Model &m, const Theory &t, const Axiom &ax,
                     const SchemaCheckCaps &caps) {
  if (const auto *c = std::get_if<ConcreteAxiom>(&ax.form)) return satisfies(m, t.sig, c->seq);
  if (const auto *s = std::get_if<StreamAxiom>(&ax.form))
    return satisfies_stream_axiom(m, t, *s, caps);
  return satisfies_bound_axiom(m, t, std::get<BoundFamilyAxiom>(ax.form));
}

bool satisfies_theory(const Model &m, const Theory &t, const SchemaCheckCaps &caps) {
  for (const auto &ax : t.axioms)
    if (!satisfies_axiom(m, t, ax, caps)) return false;
  return true;
}

bool is_homomorphism(const std::vector<size_t> &phi, const Model &m, const Model &n,
                     const Signature &sig) {
  if (phi.size() != m.carrier.size()) return false;
  for (size_t a = 0; a < phi.size(); ++a) {
    if (phi[a] >= n.carrier.size()) return false;
    for (size_t b = 0; b < phi.size(); ++b)
      if (n.carrier.at(phi[a], phi[b]) > m.carrier.at(a, b)) return false;
  }
  for (const auto &[op, ar] : sig.ops) {
    const Interp *im = m.interp(op), *in_ = n.interp(op);
    if (!im || !in_) return false;
    if (const auto *fm = std::get_if<FiniteInterp>(im)) {
      const auto *fn = std::get_if<FiniteInterp>(in_);
      if (!fn) return false;
      for (const auto &[args, val] : fm->table) {
        std::vector<size_t> image;
        image.reserve(args.size());
        for (size_t a : args) image.push_back(phi[a]);
        auto it = fn->table.find(image);
        if (it == fn->table.end() || it->second != phi[val]) return false;
      }
    } else {
      const auto &sm = std::get<StreamInterp>(*im);
      const auto *sn = std::get_if<StreamInterp>(in_);
      if (!sn) return false;
      for (size_t a = 0; a < phi.size(); ++a) {
        if (sm.point_map[a] == StreamInterp::UNDEF) continue;
        if (sn->point_map[phi[a]] != phi[sm.point_map[a]]) return false;
      }
    }
  }
  return true;
}

namespace {

std::vector<std::vector<size_t>> admissible_tuples(const FiniteArity &fa, const FinMetric &c) {
  std::vector<std::vector<size_t>> out;
  size_t k = fa.space.size(), cn = c.size();
  std::vector<size_t> cur(k, 0);
  if (k == 0) {
    out.push_back({});
    return out;
  }
  if (cn == 0) return out;
  while (true) {
    bool adm = true;
    for (size_t i = 0; i < k && adm; ++i)
      for (size_t j = i + 1; j < k && adm; ++j)
        if (fa.space.at(i, j) < c.at(cur[i], cur[j])) adm = false;
    if (adm) out.push_back(cur);
    size_t pos = k;
    while (pos > 0) {
      if (++cur[pos - 1] < cn) break;
      cur[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) break;
  }
  return out;
}

// Sup distance between two argument tuples.
ExtReal tuple_dist(const FinMetric &c, const std::vector<size_t> &a,
                   const std::vector<size_t> &b) {
  ExtReal d(0);
  for (size_t i = 0; i < a.size(); ++i) d = max(d, c.at(a[i], b[i]));
  return d;
}

struct ModelEnum {
  const Signature &sig;
  const FinMetric &carrier;
  const std::function<bool(const Model &)> &cb;
  Model work;

  bool run(size_t op_idx) {
    if (op_idx == sig.ops.size()) return cb(work);
    const auto &[name, ar] = sig.ops[op_idx];
    if (const auto *fa = std::get_if<FiniteArity>(&ar)) {
      auto tuples = admissible_tuples(*fa, carrier);
      FiniteInterp fi;
      return fill_finite(op_idx, name, tuples, 0, fi);
    }
    StreamInterp si;
    si.point_map.assign(carrier.size(), 0);
    return fill_stream(op_idx, name, si, 0);
  }

  bool fill_finite(size_t op_idx, const std::string &name,
                   const std::vector<std::vector<size_t>> &tuples, size_t k, FiniteInterp &fi) {
    if (k == tuples.size()) {
      work.ops.emplace_back(name, fi);
      bool cont = run(op_idx + 1);
      work.ops.pop_back();
      return cont;
    }
    for (size_t v = 0; v < carrier.size(); ++v) {
      bool ok = true;
      for (size_t p = 0; p < k && ok; ++p) {
        size_t w = fi.table.at(tuples[p]);
        if (carrier.at(v, w) > tuple_dist(carrier, tuples[k], tuples[p])) ok = false;
      }
      if (!ok) continue;
      fi.table[tuples[k]] = v;
      if (!fill_finite(op_idx, name, tuples, k + 1, fi)) return false;
      fi.table.erase(tuples[k]);
    }
    return true;
  }

  bool fill_stream(size_t op_idx, const std::string &name, StreamInterp &si, size_t k) {
    if (k == carrier.size()) {
      work.ops.emplace_back(name, si);
      bool cont = run(op_idx + 1);
      work.ops.pop_back();
      return cont;
    }
    for (size_t v = 0; v < carrier.size(); ++v) {
      bool ok = true;
      for (size_t p = 0; p < k && ok; ++p)
        if (carrier.at(v, si.point_map[p]) > carrier.at(k, p)) ok = false;
      if (!ok) continue;
      si.point_map[k] = v;
      if (!fill_stream(op_idx, name, si, k + 1)) return false;
    }
    return true;
  }
};

}  // namespace

bool enumerate_models(const Signature &sig, const FinMetric &carrier,
                      const std::function<bool(const Model &)> &cb) {
  ModelEnum me{sig, carrier, cb, Model{carrier, {}}};
  return me.run(0);
}

bool enumerate_carriers(size_t max_size, const std::vector<ExtReal> &grid,
                        const std::function<bool(const FinMetric &)> &cb) {
  std::vector<ExtReal> offdiag;
  for (const auto &g : grid)
    if (!g.is_zero()) offdiag.push_back(g);
  std::sort(offdiag.begin(), offdiag.end());
  offdiag.erase(std::unique(offdiag.begin(), offdiag.end()), offdiag.end());
  for (size_t n = 1; n <= max_size; ++n) {
    std::vector<std::string> pts;
    for (size_t i = 0; i < n; ++i) pts.push_back("c" + std::to_string(i));
    size_t pairs = n * (n - 1) / 2;
    std::vector<size_t> choice(pairs, 0);
    if (pairs == 0) {
      FinMetric m = FinMetric::checked(pts, {std::vector<ExtReal>(n, ExtReal(0))});
      if (n == 0) continue;
      if (!cb(m)) return false;
      continue;
    }
    if (offdiag.empty()) continue;
    while (true) {
      FinMetric m;
      m.points = pts;
      m.dist.assign(n, std::vector<ExtReal>(n, ExtReal(0)));
      size_t c = 0;
      for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
          m.dist[i][j] = m.dist[j][i] = offdiag[choice[c]];
          ++c;
        }
      bool triangle = true;
      for (size_t i = 0; i < n && triangle; ++i)
        for (size_t j = 0; j < n && triangle; ++j)
          for (size_t k = 0; k < n && triangle; ++k)
            if (m.dist[i][k] + m.dist[k][j] < m.dist[i][j]) triangle = false;
      if (triangle && !cb(m)) return false;
      size_t pos = pairs;
      while (pos > 0) {
        if (++choice[pos - 1] < offdiag.size()) break;
        choice[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  return true;
}

}  // namespace metriq
