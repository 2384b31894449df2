// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <set>
#include <variant>
#include <vector>

#include "metriq/metric.hpp"

namespace metriq {

// Operation arities are metric spaces.  Finite ones are arbitrary; the one
// countable shape supported is the geometric stream: positions 1,2,3,...
// with d(n,m) = scale * ratio^min(n,m) for n != m.
struct FiniteArity {
  FinMetric space;
  bool operator==(const FiniteArity &o) const { return isometric_by_name(space, o.space); }
};
struct StreamArity {
  Rat ratio;  // in (0,1)
  Rat scale;  // > 0
  ExtReal dist(long n, long m) const {
    if (n == m) return ExtReal(0);
    return geom_at(scale, ratio, std::min(n, m));
  }
  bool operator==(const StreamArity &o) const { return ratio == o.ratio && scale == o.scale; }
};
using Arity = std::variant<FiniteArity, StreamArity>;

inline Arity nullary_arity() { return FiniteArity{FinMetric::checked({}, {})}; }

struct Signature {
  std::vector<std::pair<std::string, Arity>> ops;
  const Arity *find(const std::string &name) const {
    for (const auto &[n, a] : ops)
      if (n == name) return &a;
    return nullptr;
  }
  void add(const std::string &name, Arity a);
  bool operator==(const Signature &o) const { return ops == o.ops; }
};

// Immutable term tree.  Stream applications carry an explicit finite
// prefix plus the constant tail covering all later positions, written
// lim(t1,t2;u).  Nullary applications are the constants; generator
// constants use names starting with an apostrophe.
class Preterm;
using TermPtr = std::shared_ptr<const Preterm>;

class Preterm {
 public:
  enum class Kind { Var, App, Stream };

  Kind kind;
  std::string head;           // variable name or operation symbol
  std::vector<TermPtr> args;  // App arguments / Stream prefix
  TermPtr tail;               // Stream only
  std::string key;            // canonical spelling, also the print form
  int depth;

  static TermPtr var(const std::string &name);
  static TermPtr app(const std::string &op, std::vector<TermPtr> args);
  static TermPtr stream(const std::string &op, std::vector<TermPtr> prefix, TermPtr tail);

  bool operator==(const Preterm &o) const { return key == o.key; }
};

inline bool term_eq(const TermPtr &a, const TermPtr &b) {
  return a == b || (a && b && a->key == b->key);
}

void collect_free_vars(const TermPtr &t, std::set<std::string> &out);
std::set<std::string> free_vars(const TermPtr &t);
TermPtr substitute(const TermPtr &t, const std::map<std::string, TermPtr> &sigma);
// Replace operation symbols (used by theory disjoint union renaming).
TermPtr rename_ops(const TermPtr &t, const std::map<std::string, std::string> &ren);
// Position i of the stream written prefix;tail (1-based).
const TermPtr &stream_at(const TermPtr &s, long i);

struct CtxBound {
  std::string x, y;
  ExtReal eps;
  bool operator==(const CtxBound &) const = default;
};

// A context declares its variables explicitly; variables may carry no
// bound at all (distance inf in the induced space).
struct Context {
  std::vector<std::string> vars;
  std::vector<CtxBound> bounds;
  bool has_var(const std::string &v) const {
    for (const auto &x : vars)
      if (x == v) return true;
    return false;
  }
  bool operator==(const Context &) const = default;
};

struct OkBody {
  TermPtr t;
  bool operator==(const OkBody &o) const { return term_eq(t, o.t); }
};
struct EqBody {
  TermPtr l, r;
  ExtReal eps;
  bool operator==(const EqBody &o) const {
    return term_eq(l, o.l) && term_eq(r, o.r) && eps == o.eps;
  }
};
using Body = std::variant<OkBody, EqBody>;

struct Sequent {
  Context ctx;
  Body body;
  bool operator==(const Sequent &) const = default;
  // Throws if a free variable of the body or a bound endpoint is undeclared.
  void validate() const;
  std::string str() const;
};

inline Sequent ok_sequent(Context c, TermPtr t) { return {std::move(c), OkBody{std::move(t)}}; }
inline Sequent eq_sequent(Context c, TermPtr l, TermPtr r, ExtReal e) {
  return {std::move(c), EqBody{std::move(l), std::move(r), std::move(e)}};
}

// The space X_Gamma: context variables under the closure of the declared
// bounds (all-pairs shortest path; unrelated variables end up at inf).
FinPseudoMetric context_space(const Context &ctx);

// The finite constraint set sufficient for an application's arity side
// conditions.  Finite arity: one entry per unordered position pair at
// finite distance.  Stream with prefix t_1..t_k and tail u: (t_i,t_j) at
// scale*ratio^i for i<j<=k, (t_i,u) at scale*ratio^i for i<=k, and (u,u,0)
// representing the whole tail region.  Entries are deduplicated.
struct AppConstraint {
  TermPtr a, b;
  ExtReal eps;
};
std::vector<AppConstraint> reduced_app_constraints(const Arity &ar, const TermPtr &app);

}  // namespace metriq
