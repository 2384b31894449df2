// SPDX-License-Identifier: Apache-2.0
#include "metriq/freemodel.hpp"

#include <algorithm>
#include <stdexcept>

namespace metriq {

namespace {

// Largest grid value strictly below d; largest finite value when d is inf.
std::optional<ExtReal> grid_pred(const std::vector<ExtReal> &grid, const ExtReal &d) {
  std::optional<ExtReal> best;
  for (const auto &g : grid) {
    if (g.is_inf()) continue;
    if (!d.is_inf() && !(g < d)) continue;
    if (!best || *best < g) best = g;
  }
  return best;
}

FreeModelApprox build(const Theory &t, const std::optional<FinMetric> &gens,
                      const ProverConfig &cfg) {
  FreeModelApprox fm;
  ProverConfig scfg = cfg;
  scfg.closed_universe = true;
  fm.sat = saturate(t, Context{}, gens, scfg);
  fm.truncated = fm.sat.truncated;
  fm.combined = fm.sat.theory;

  // Order the well-formed terms by (depth, key) so the quotient picks the
  // least such member of each class as its representative.
  std::vector<size_t> order;
  for (size_t i = 0; i < fm.sat.universe.size(); ++i)
    if (fm.sat.ok[i]) order.push_back(i);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto &ta = fm.sat.universe[a];
    const auto &tb = fm.sat.universe[b];
    if (ta->depth != tb->depth) return ta->depth < tb->depth;
    return ta->key < tb->key;
  });
  FinPseudoMetric pre;
  pre.points.reserve(order.size());
  for (size_t i : order) pre.points.push_back(fm.sat.universe[i]->key);
  pre.dist.assign(order.size(), std::vector<ExtReal>(order.size(), ExtReal(0)));
  for (size_t a = 0; a < order.size(); ++a)
    for (size_t b = a + 1; b < order.size(); ++b)
      pre.dist[a][b] = pre.dist[b][a] = fm.sat.bound(order[a], order[b]);
  QuotientResult q = metric_quotient(pre);
  fm.space = q.space;
  fm.cls.assign(fm.sat.universe.size(), SIZE_MAX);
  fm.reps.assign(fm.space.size(), nullptr);
  for (size_t a = 0; a < order.size(); ++a) {
    fm.cls[order[a]] = q.class_of[a];
    if (!fm.reps[q.class_of[a]]) fm.reps[q.class_of[a]] = fm.sat.universe[order[a]];
  }

  if (gens) {
    for (const auto &p : gens->points) {
      std::string n = gen_constant_name(p);
      if (!fm.combined.sig.find(n)) n = "r_" + n;
      fm.gen_names[p] = n;
      auto c = fm.class_of(Preterm::app(n, {}));
      if (!c) throw std::logic_error("generator " + n + " missing from the universe");
      fm.unit[p] = *c;
    }
  }

  size_t nc = fm.space.size();
  fm.model.carrier = fm.space;
  for (const auto &[name, ar] : fm.combined.sig.ops) {
    if (const auto *fa = std::get_if<FiniteArity>(&ar)) {
      size_t k = fa->space.size();
      FiniteInterp fi;
      std::vector<size_t> tup(k, 0);
      std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == k) {
          std::vector<TermPtr> args;
          args.reserve(k);
          for (size_t c : tup) args.push_back(fm.reps[c]);
          if (auto c = fm.class_of(Preterm::app(name, std::move(args)))) fi.table[tup] = *c;
          return;
        }
        for (size_t c = 0; c < nc; ++c) {
          bool fit = true;
          for (size_t q = 0; q < pos && fit; ++q)
            if (fa->space.at(q, pos) < fm.space.at(tup[q], c)) fit = false;
          if (!fit) continue;
          tup[pos] = c;
          rec(pos + 1);
        }
      };
      if (k == 0 || nc > 0) rec(0);
      fm.model.ops.emplace_back(name, std::move(fi));
    } else {
      StreamInterp si;
      si.point_map.assign(nc, StreamInterp::UNDEF);
      for (size_t c = 0; c < nc; ++c)
        if (auto v = fm.class_of(Preterm::stream(name, {}, fm.reps[c]))) si.point_map[c] = *v;
      fm.model.ops.emplace_back(name, std::move(si));
    }
  }

  if (cfg.certify && !fm.truncated) {
    ProverConfig ccfg = cfg;
    ccfg.cm_size = cfg.cert_cm_size;
    ccfg.closed_universe = false;
    for (size_t i = 0; i < nc; ++i)
      for (size_t j = i + 1; j < nc; ++j) {
        auto pred = grid_pred(cfg.grid, fm.space.at(i, j));
        if (!pred) continue;
        Sequent goal = eq_sequent(Context{}, fm.reps[i], fm.reps[j], *pred);
        fm.exactness[{i, j}] = countermodel_search(fm.combined, goal, ccfg).found;
      }
  }

  if (cfg.check_stabilization && !fm.truncated) {
    ProverConfig pcfg = cfg;
    pcfg.depth = cfg.depth + 1;
    pcfg.certify = false;
    pcfg.check_stabilization = false;
    long cap = static_cast<long>(4 * fm.sat.universe.size() + 64);
    pcfg.max_terms = std::min(cfg.max_terms, cap);
    FreeModelApprox probe = build(t, gens, pcfg);
    fm.stabilized = !probe.truncated && isometric_by_name(fm.space, probe.space);
  }
  return fm;
}

}  // namespace

std::optional<size_t> FreeModelApprox::class_of(const TermPtr &t) const {
  auto id = sat.find(t);
  if (!id || cls[*id] == SIZE_MAX) return std::nullopt;
  return cls[*id];
}

FreeModelApprox initial_model(const Theory &t, const ProverConfig &cfg) {
  return build(t, std::nullopt, cfg);
}

FreeModelApprox free_model(const Theory &t, const FinMetric &gens, const ProverConfig &cfg) {
  return build(t, gens, cfg);
}

void SpaceMap::validate() const {
  dom.validate(true);
  cod.validate(true);
  if (point.size() != dom.size()) throw std::invalid_argument("point map arity mismatch");
  for (size_t v : point)
    if (v >= cod.size()) throw std::invalid_argument("point map target out of range");
  for (size_t i = 0; i < dom.size(); ++i)
    for (size_t j = 0; j < dom.size(); ++j)
      if (dom.at(i, j) < cod.at(point[i], point[j]))
        throw std::invalid_argument("map expands " + dom.points[i] + "," + dom.points[j]);
}

bool SpaceMap::surjective() const {
  std::vector<char> hit(cod.size(), 0);
  for (size_t v : point)
    if (v < hit.size()) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

InducedMap induced_map(const FreeModelApprox &src, const FreeModelApprox &dst, const SpaceMap &f) {
  f.validate();
  std::map<std::string, std::string> ren;
  for (size_t i = 0; i < f.dom.size(); ++i)
    ren[src.gen_names.at(f.dom.points[i])] = dst.gen_names.at(f.cod.points[f.point[i]]);
  InducedMap out{src, dst, {}};
  out.cls.reserve(src.reps.size());
  for (const auto &rep : src.reps) {
    auto c = dst.class_of(rename_ops(rep, ren));
    if (!c) throw std::runtime_error("image of " + rep->key + " missing from the target universe");
    out.cls.push_back(*c);
  }
  return out;
}

InducedMap induced_map(const Theory &t, const SpaceMap &f, const ProverConfig &cfg) {
  return induced_map(free_model(t, f.dom, cfg), free_model(t, f.cod, cfg), f);
}

SurjectionReport check_surjection_preservation(const Theory &t, const SpaceMap &f,
                                               const ProverConfig &cfg) {
  if (!f.surjective()) throw std::invalid_argument("point map is not onto");
  SurjectionReport r{true, std::nullopt, induced_map(t, f, cfg)};
  std::vector<char> hit(r.map.dst.reps.size(), 0);
  for (size_t c : r.map.cls) hit[c] = 1;
  for (size_t i = 0; i < hit.size(); ++i)
    if (!hit[i]) {
      r.preserved = false;
      r.missed = i;
      break;
    }
  return r;
}

}  // namespace metriq
