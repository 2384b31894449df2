// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "metriq/dsl.hpp"
#include "metriq/freemodel.hpp"
#include "metriq/json_io.hpp"

namespace metriq {

namespace {

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void put(const std::string &path, const std::string &content) {
  if (path.empty() || path == "-") {
    std::cout << content << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << content << "\n";
}

TheoryFile load_theory(const std::string &spec) {
  if (!std::filesystem::exists(spec)) {
    for (const auto &b : builtin_names())
      if (b == spec) {
        TheoryFile f;
        f.theory = builtin(spec);
        return f;
      }
    throw std::invalid_argument("no such theory file or builtin: " + spec);
  }
  auto r = parse_theory(slurp(spec));
  if (const auto *e = std::get_if<ParseError>(&r))
    throw std::invalid_argument(spec + ": " + e->str());
  return std::get<TheoryFile>(std::move(r));
}

FinMetric load_space(const TheoryFile &f, const std::string &spec) {
  if (std::filesystem::exists(spec)) return metric_from_json(Json::parse(slurp(spec)));
  for (const auto &[n, s] : f.spaces)
    if (n == spec) return s;
  throw std::invalid_argument("no such space file or named space: " + spec);
}

TermPtr load_term(const Signature &sig, const TheoryFile &f, const std::string &spec) {
  for (const auto &[n, t] : f.terms)
    if (n == spec) return t;
  return parse_term_in(sig, spec);
}

Sequent load_goal(const Signature &sig, const TheoryFile &f, const std::string &ctx_text,
                  const std::string &goal_text) {
  for (const auto &[n, s] : f.sequents)
    if (n == goal_text) return s;
  std::string src = ctx_text.empty() ? "|- " + goal_text : ctx_text + " |- " + goal_text;
  return parse_sequent_in(sig, src);
}

FinMetric two_point(const std::string &a, const std::string &b, const ExtReal &d) {
  return FinMetric::checked({a, b}, {{ExtReal(0), d}, {d, ExtReal(0)}});
}

struct Options {
  bool json = false;
  std::string file, ctx, goal, gens, ta, tb, model, out, proof, grid, demo;
  long depth = 3, iterations = 1000;
  size_t size = 4;
  unsigned long long budget = 4000000;
  bool no_certify = false, no_stabilize = false;

  ProverConfig cfg() const {
    ProverConfig c;
    c.depth = depth;
    c.max_passes = iterations;
    c.cm_size = size;
    c.cm_budget = budget;
    c.certify = !no_certify;
    c.check_stabilization = !no_stabilize;
    if (!grid.empty()) {
      c.grid.clear();
      size_t from = 0;
      while (from <= grid.size()) {
        size_t to = grid.find(',', from);
        if (to == std::string::npos) to = grid.size();
        std::string item = grid.substr(from, to - from);
        if (!item.empty()) c.grid.push_back(ExtReal::parse(item));
        from = to + 1;
      }
      if (c.grid.empty()) throw std::invalid_argument("empty --grid");
    }
    return c;
  }
};

struct TheoryWithGens {
  TheoryFile file;
  std::optional<FinMetric> gens;
  Theory combined;
};

TheoryWithGens load_combined(const Options &o) {
  TheoryWithGens r;
  r.file = load_theory(o.file);
  r.combined = r.file.theory;
  if (!o.gens.empty()) {
    r.gens = load_space(r.file, o.gens);
    r.combined = disjoint_union(r.file.theory, theory_of_space(*r.gens));
  }
  return r;
}

int cmd_check(const Options &o) {
  TheoryFile f = load_theory(o.file);
  auto report = check_axioms(f.theory, o.cfg());
  bool all = true;
  Json rows = Json::array();
  for (const auto &r : report) {
    all = all && r.well_formed;
    rows.push_back(Json{{"axiom", r.axiom}, {"well_formed", r.well_formed}, {"detail", r.detail}});
    if (!o.json)
      std::cout << "axiom " << r.axiom << ": "
                << (r.well_formed ? "ok" : "NOT well-formed (" + r.detail + ")") << "\n";
  }
  if (o.json) std::cout << Json{{"well_formed", all}, {"axioms", rows}}.dump(2) << "\n";
  else std::cout << (all ? "theory is well-formed" : "theory has ill-formed axioms") << "\n";
  return all ? 0 : 1;
}

int cmd_prove(const Options &o) {
  TheoryWithGens t = load_combined(o);
  Sequent goal = load_goal(t.combined.sig, t.file, o.ctx, o.goal);
  ProverConfig cfg = o.cfg();
  bool derivable = false, truncated = false;
  ExtReal best = ExtReal::inf();
  ProofPtr wit;
  if (const auto *ok = std::get_if<OkBody>(&goal.body)) {
    OkResult r = prove_ok(t.combined, goal.ctx, ok->t, cfg);
    derivable = r.derivable;
    truncated = r.truncated;
    wit = r.witness;
  } else {
    const auto &eq = std::get<EqBody>(goal.body);
    SaturationState st = saturate(t.combined, goal.ctx, std::nullopt, cfg, {eq.l, eq.r});
    auto il = st.find(eq.l), ir = st.find(eq.r);
    if (il && ir) {
      best = st.bound(*il, *ir);
      wit = st.witness(*il, *ir, eq.eps);
    }
    derivable = wit != nullptr;
    truncated = st.truncated;
  }
  if (wit) {
    Verdict v = check_proof(t.combined, wit);
    if (!v) throw std::logic_error("internal: emitted proof failed validation: " + v.reason);
  }
  Json j{{"derivable", derivable}, {"truncated", truncated}};
  if (std::get_if<EqBody>(&goal.body)) j["best_bound"] = best.str();
  j["proof"] = wit ? proof_to_json(wit) : Json(nullptr);
  if (!o.out.empty() && wit) put(o.out, proof_to_json(wit).dump(2));
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "derivable: " << (derivable ? "yes" : "no") << "\n";
    if (std::get_if<EqBody>(&goal.body)) std::cout << "best bound: " << best.str() << "\n";
    if (truncated) std::cout << "note: search truncated by resource caps\n";
  }
  return derivable ? 0 : (truncated ? 2 : 1);
}

int cmd_check_proof(const Options &o) {
  TheoryWithGens t = load_combined(o);
  ProofPtr p = proof_from_json(t.combined.sig, Json::parse(slurp(o.proof)));
  Verdict v = check_proof(t.combined, p);
  if (o.json)
    std::cout << Json{{"valid", v.valid}, {"reason", v.reason}}.dump(2) << "\n";
  else
    std::cout << (v ? "valid" : "invalid: " + v.reason) << "\n";
  return v ? 0 : 1;
}

int cmd_dist(const Options &o) {
  TheoryWithGens t = load_combined(o);
  TermPtr a = load_term(t.combined.sig, t.file, o.ta);
  TermPtr b = load_term(t.combined.sig, t.file, o.tb);
  ProverConfig cfg = o.cfg();
  DistResult r = min_distance(t.combined, Context{}, a, b, cfg, cfg.certify);
  if (o.json) {
    Json j{{"upper", r.upper.str()}, {"exact", r.exact}, {"truncated", r.truncated}};
    j["witness"] = r.witness ? proof_to_json(r.witness) : Json(nullptr);
    j["certificate"] = r.certificate.found ? model_to_json(r.certificate.model) : Json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    if (r.upper.is_inf()) std::cout << "dist: inf\n";
    else if (r.exact) std::cout << "dist: " << r.upper.str() << " (exact)\n";
    else std::cout << "dist: ≤ " << r.upper.str() << "\n";
    if (r.certificate.found)
      std::cout << "certificate: countermodel separates the pair below " << r.upper.str() << "\n";
    if (r.truncated) std::cout << "note: search truncated by resource caps\n";
  }
  return r.truncated && !r.exact ? 2 : 0;
}

int cmd_free(const Options &o) {
  TheoryWithGens t = load_combined(o);
  ProverConfig cfg = o.cfg();
  FreeModelApprox fm =
      t.gens ? free_model(t.file.theory, *t.gens, cfg) : initial_model(t.file.theory, cfg);
  Json j = freemodel_to_json(fm);
  if (o.json || !o.out.empty()) {
    put(o.out, j.dump(2));
  } else {
    std::cout << fm.space.size() << " classes";
    if (cfg.check_stabilization)
      std::cout << (fm.stabilized ? ", stabilized" : ", NOT stabilized at this depth");
    if (fm.truncated) std::cout << ", TRUNCATED";
    std::cout << "\n";
    if (fm.space.size() <= 12) {
      for (size_t i = 0; i < fm.space.size(); ++i)
        for (size_t j2 = i + 1; j2 < fm.space.size(); ++j2) {
          auto it = fm.exactness.find({i, j2});
          bool exact = it != fm.exactness.end() && it->second;
          std::cout << "d(" << fm.space.points[i] << ", " << fm.space.points[j2]
                    << ") = " << (exact ? "" : "≤ ") << fm.space.at(i, j2).str() << "\n";
        }
    } else {
      std::cout << "(matrix omitted; use --json or --out)\n";
    }
  }
  return fm.truncated ? 2 : 0;
}

int cmd_satisfy(const Options &o) {
  TheoryFile f = load_theory(o.file);
  Model m = model_from_json(Json::parse(slurp(o.model)));
  bool all = true;
  Json rows = Json::array();
  for (const auto &ax : f.theory.axioms) {
    bool s = satisfies_axiom(m, f.theory, ax);
    all = all && s;
    rows.push_back(Json{{"axiom", ax.name}, {"satisfied", s}});
    if (!o.json) std::cout << "axiom " << ax.name << ": " << (s ? "satisfied" : "violated") << "\n";
  }
  if (o.json) std::cout << Json{{"model_of_theory", all}, {"axioms", rows}}.dump(2) << "\n";
  else std::cout << (all ? "model satisfies the theory" : "model violates the theory") << "\n";
  return all ? 0 : 1;
}

int cmd_countermodel(const Options &o) {
  TheoryWithGens t = load_combined(o);
  Sequent goal = load_goal(t.combined.sig, t.file, o.ctx, o.goal);
  CountermodelResult r = countermodel_search(t.combined, goal, o.cfg());
  if (o.json) {
    Json j{{"found", r.found}, {"truncated", r.truncated}};
    j["model"] = r.found ? model_to_json(r.model) : Json(nullptr);
    Json asg = Json::object();
    for (const auto &[v, i] : r.assignment) asg[v] = i;
    j["assignment"] = asg;
    std::cout << j.dump(2) << "\n";
  } else if (r.found) {
    std::cout << "countermodel found:\n" << model_to_json(r.model).dump(2) << "\n";
    for (const auto &[v, i] : r.assignment)
      std::cout << v << " -> " << r.model.carrier.points[i] << "\n";
  } else {
    std::cout << "none found" << (r.truncated ? " (search truncated)" : "") << "\n";
  }
  return r.found ? 0 : (r.truncated ? 2 : 1);
}

struct DemoTable {
  std::vector<std::array<std::string, 3>> rows;
  void add(std::string label, std::string claimed, std::string computed) {
    rows.push_back({std::move(label), std::move(claimed), std::move(computed)});
  }
  int emit(bool json) const {
    if (json) {
      Json out = Json::array();
      for (const auto &r : rows)
        out.push_back(Json{{"case", r[0]}, {"claimed", r[1]}, {"computed", r[2]}});
      std::cout << Json{{"rows", out}}.dump(2) << "\n";
    } else {
      for (const auto &r : rows)
        std::cout << r[0] << "\n  claimed:  " << r[1] << "\n  computed: " << r[2] << "\n";
    }
    return 0;
  }
};

ProverConfig demo_cfg(long depth) {
  ProverConfig c;
  c.depth = depth;
  c.certify = false;
  c.check_stabilization = false;
  return c;
}

std::string unit_dist(const FreeModelApprox &fm, const std::string &a, const std::string &b) {
  return fm.space.at(fm.unit.at(a), fm.unit.at(b)).str();
}

int demo_t1(bool json) {
  Theory t = builtin("t1");
  DemoTable tab;
  for (long i : {1L, 2L, 10L}) {
    ExtReal d(Rat(i + 1, i));
    FreeModelApprox fm = free_model(t, two_point("a", "b", d), demo_cfg(3));
    tab.add("Free(t1) on two points at 1 + 1/" + std::to_string(i), "2 points",
            std::to_string(fm.space.size()) + " classes, d(['a],['b]) = " + unit_dist(fm, "a", "b"));
  }
  FreeModelApprox fm = free_model(t, two_point("a", "b", ExtReal(1)), demo_cfg(3));
  tab.add("Free(t1) on two points at 1", "3 points: 'a, 'b, f('a,'b)",
          std::to_string(fm.space.size()) + " classes, d(['a],['b]) = " + unit_dist(fm, "a", "b"));
  return tab.emit(json);
}

int demo_t2(bool json) {
  Theory t = builtin("t2");
  DemoTable tab;
  FreeModelApprox far = free_model(t, two_point("a", "b", ExtReal(Rat(11, 10))), demo_cfg(2));
  tab.add("Free(t2) on two points at 1.1", "2 points at 1.1",
          std::to_string(far.space.size()) + " classes, d = " + unit_dist(far, "a", "b"));
  FreeModelApprox fm = free_model(t, two_point("a", "b", ExtReal(1)), demo_cfg(2));
  tab.add("Free(t2) on two points at 1 (the colimit space)", "a single point",
          std::to_string(fm.space.size()) + " class(es)");
  return tab.emit(json);
}

int demo_comp(bool json) {
  Theory t = builtin("comp");
  FinMetric x = FinMetric::checked(
      {"p", "q", "r"},
      {{ExtReal(0), ExtReal(Rat(1, 2)), ExtReal(2)},
       {ExtReal(Rat(1, 2)), ExtReal(0), ExtReal(2)},
       {ExtReal(2), ExtReal(2), ExtReal(0)}});
  FreeModelApprox fm = free_model(t, x, demo_cfg(3));
  bool iso = fm.space.size() == x.size();
  for (size_t i = 0; iso && i < x.size(); ++i)
    for (size_t j = 0; iso && j < x.size(); ++j)
      iso = fm.space.at(fm.unit.at(x.points[i]), fm.unit.at(x.points[j])) == x.at(i, j);
  DemoTable tab;
  tab.add("Free(comp) on a finite 3-point space", "isometric to the space itself",
          std::to_string(fm.space.size()) + " classes, unit " +
              (iso ? "isometric" : "NOT isometric"));
  TermPtr stream = parse_term_in(fm.combined.sig, "lim('p;'q)");
  auto v = evaluate(fm.model, fm.combined.sig, stream, {});
  tab.add("evaluate lim('p;'q) (eventually constant at q)", "the eventual value 'q",
          v ? fm.space.points[*v] : "undefined");
  return tab.emit(json);
}

int demo_contraction(bool json) {
  Theory t = builtin("contraction");
  FreeModelApprox fm = free_model(t, two_point("x", "y", ExtReal(1)), demo_cfg(3));
  DemoTable tab;
  tab.add("carrier of Free(contraction) on two points at 1, depth 3", "pairs (point, level 0..3)",
          std::to_string(fm.space.size()) + " classes");
  std::string sx = "'x", sy = "'y";
  for (int n = 0; n <= 3; ++n) {
    auto a = fm.class_of(parse_term_in(fm.combined.sig, sx));
    auto b = fm.class_of(parse_term_in(fm.combined.sig, sy));
    tab.add("d(s^" + std::to_string(n) + " 'x, s^" + std::to_string(n) + " 'y)",
            ExtReal(Rat(1, 1 << n)).str(),
            a && b ? fm.space.at(*a, *b).str() : "class missing");
    sx = "s(" + sx + ")";
    sy = "s(" + sy + ")";
  }
  auto a = fm.class_of(parse_term_in(fm.combined.sig, "'x"));
  auto b = fm.class_of(parse_term_in(fm.combined.sig, "s('x)"));
  tab.add("cross-level d('x, s('x))", "0 (disputed; collapses the levels)",
          a && b ? fm.space.at(*a, *b).str() + " (no finite bound is derivable)" : "class missing");
  return tab.emit(json);
}

int demo_strongfinit(bool json) {
  Theory t = builtin("strongfinit");
  FinMetric x = FinMetric::checked({"x1", "x2", "x3"},
                                   {{ExtReal(0), ExtReal(1), ExtReal::inf()},
                                    {ExtReal(1), ExtReal(0), ExtReal::inf()},
                                    {ExtReal::inf(), ExtReal::inf(), ExtReal(0)}});
  Theory combined = disjoint_union(t, theory_of_space(x));
  ProverConfig cfg;
  cfg.depth = 3;
  cfg.grid = {ExtReal(0), ExtReal(Rat(1, 2)), ExtReal(1), ExtReal::inf()};
  TermPtr a = parse_term_in(combined.sig, "f('x1,g('x3))");
  TermPtr b = parse_term_in(combined.sig, "f('x2,g'('x3))");
  DistResult r = min_distance(combined, Context{}, a, b, cfg, true);
  DemoTable tab;
  tab.add("dist(f('x1,g('x3)), f('x2,g'('x3)))", "at most 1",
          (r.exact ? "" : "≤ ") + r.upper.str() +
              (r.certificate.found ? ", countermodel refutes 1/2" : ""));
  return tab.emit(json);
}

int demo_surj(bool json) {
  DemoTable tab;
  {
    Theory t = builtin("semilattice");
    FinMetric a = FinMetric::checked({"a", "b", "c"}, {{ExtReal(0), ExtReal(1), ExtReal(1)},
                                                       {ExtReal(1), ExtReal(0), ExtReal(1)},
                                                       {ExtReal(1), ExtReal(1), ExtReal(0)}});
    FinMetric b = two_point("u", "v", ExtReal(1));
    SpaceMap f{a, b, {0, 1, 1}};
    SurjectionReport r = check_surjection_preservation(t, f, demo_cfg(2));
    tab.add("semilattice, surjection of a 3-point space onto 2 points", "preserved",
            r.preserved ? "preserved" : "violated");
  }
  {
    Theory t = builtin("t1");
    FinMetric a = two_point("a", "b", ExtReal(1));
    FinMetric ad = FinMetric::discrete({"a", "b"});
    SpaceMap f{ad, a, {0, 1}};
    SurjectionReport r = check_surjection_preservation(t, f, demo_cfg(3));
    tab.add("t1, discretization bijection onto two points at 1", "not preserved; f('a,'b) has no preimage",
            r.preserved ? "preserved"
                        : "violated, missed [" + r.map.dst.reps[*r.missed]->key + "]");
  }
  return tab.emit(json);
}

int cmd_demo(const Options &o) {
  if (o.demo == "t1") return demo_t1(o.json);
  if (o.demo == "t2") return demo_t2(o.json);
  if (o.demo == "comp") return demo_comp(o.json);
  if (o.demo == "contraction") return demo_contraction(o.json);
  if (o.demo == "strongfinit") return demo_strongfinit(o.json);
  if (o.demo == "surj") return demo_surj(o.json);
  throw std::invalid_argument("unknown demo: " + o.demo);
}

int run(int argc, char **argv) {
  CLI::App app{"metriq: prover, finite models and free-model construction for metric equational theories"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "machine-readable JSON output");

  auto add_common = [&](CLI::App *s) {
    s->fallthrough();
    s->add_option("--depth", o.depth, "term depth cap (default 3)")->envname("METRIQ_DEPTH");
    s->add_option("--iterations", o.iterations, "saturation pass cap (default 1000)");
  };

  auto *c_check = app.add_subcommand("check", "check well-formedness of a theory's axioms");
  c_check->add_option("file", o.file, "theory file or builtin name")->required();
  add_common(c_check);

  auto *c_prove = app.add_subcommand("prove", "derive a sequent and emit its proof");
  c_prove->add_option("file", o.file, "theory file or builtin name")->required();
  c_prove->add_option("--ctx", o.ctx, "context, e.g. '{ x =[1] y }'");
  c_prove->add_option("--goal", o.goal, "goal body, e.g. 'x =[0] y' or 'f(x) ok'")->required();
  c_prove->add_option("--gens", o.gens, "generator space (JSON file or named space)");
  c_prove->add_option("--out", o.out, "write the proof JSON here");
  add_common(c_prove);

  auto *c_cp = app.add_subcommand("check-proof", "validate a serialized proof");
  c_cp->add_option("file", o.file, "theory file or builtin name")->required();
  c_cp->add_option("proof", o.proof, "proof JSON file")->required();
  c_cp->add_option("--gens", o.gens, "generator space (JSON file or named space)");
  add_common(c_cp);

  auto *c_dist = app.add_subcommand("dist", "least derivable distance between two closed terms");
  c_dist->add_option("file", o.file, "theory file or builtin name")->required();
  c_dist->add_option("--gens", o.gens, "generator space (JSON file or named space)");
  c_dist->add_option("--t1", o.ta, "first term")->required();
  c_dist->add_option("--t2", o.tb, "second term")->required();
  c_dist->add_option("--size", o.size, "countermodel carrier cap (default 4)");
  c_dist->add_option("--grid", o.grid, "countermodel distance grid, e.g. '0,1/2,1,inf'");
  c_dist->add_flag("--no-certify", o.no_certify, "skip the countermodel exactness search");
  add_common(c_dist);

  auto *c_free = app.add_subcommand("free", "depth-bounded free model on a generator space");
  c_free->add_option("file", o.file, "theory file or builtin name")->required();
  c_free->add_option("--gens", o.gens, "generator space (JSON file or named space)");
  c_free->add_option("--out", o.out, "write the model JSON here");
  c_free->add_option("--size", o.size, "certification carrier cap (default 4)");
  c_free->add_option("--grid", o.grid, "certification distance grid");
  c_free->add_flag("--no-certify", o.no_certify, "skip exactness certification");
  c_free->add_flag("--no-stabilize", o.no_stabilize, "skip the depth D+1 stabilization probe");
  add_common(c_free);

  auto *c_sat = app.add_subcommand("satisfy", "check a finite model against a theory");
  c_sat->add_option("file", o.file, "theory file or builtin name")->required();
  c_sat->add_option("--model", o.model, "model JSON file")->required();
  add_common(c_sat);

  auto *c_cm = app.add_subcommand("countermodel", "search for a finite model violating a sequent");
  c_cm->add_option("file", o.file, "theory file or builtin name")->required();
  c_cm->add_option("--ctx", o.ctx, "context, e.g. '{ x =[1] y }'");
  c_cm->add_option("--goal", o.goal, "goal body, e.g. 'x =[0] y'")->required();
  c_cm->add_option("--gens", o.gens, "generator space (JSON file or named space)");
  c_cm->add_option("--size", o.size, "carrier cap (default 4)");
  c_cm->add_option("--grid", o.grid, "distance grid, e.g. '0,1/2,1,inf'");
  c_cm->add_option("--budget", o.budget, "model/assignment budget");
  add_common(c_cm);

  auto *c_demo = app.add_subcommand("demo", "run a worked scenario and compare claimed vs computed");
  c_demo->add_option("name", o.demo, "t1 | t2 | comp | contraction | strongfinit | surj")
      ->required();
  c_demo->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    if (o.json) std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    else std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    if (*c_check) return cmd_check(o);
    if (*c_prove) return cmd_prove(o);
    if (*c_cp) return cmd_check_proof(o);
    if (*c_dist) return cmd_dist(o);
    if (*c_free) return cmd_free(o);
    if (*c_sat) return cmd_satisfy(o);
    if (*c_cm) return cmd_countermodel(o);
    if (*c_demo) return cmd_demo(o);
  } catch (const std::invalid_argument &e) {
    if (o.json) std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    else std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception &e) {
    if (o.json) std::cout << Json{{"error", e.what()}}.dump(2) << "\n";
    else std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 3;
}

}  // namespace

}  // namespace metriq

int main(int argc, char **argv) { return metriq::run(argc, argv); }
