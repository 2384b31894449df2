// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "metriq/theories.hpp"

namespace metriq {

// The ten deduction rules plus an Axiom leaf citing a generator of the
// theory under check (concrete axiom, or an instance of one of the two
// schema families).
enum class Rule { Var, Assum, Refl, Symm, Triang, Max, Cont, Nexp, Subst, App, Axiom };

const char *rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string &s);

struct SubstData {
  std::vector<std::string> vars;            // inner context variables, in order
  std::vector<std::vector<ExtReal>> delta;  // symmetric, zero diagonal
  std::map<std::string, TermPtr> map;       // total on vars
};

struct AxiomInst {
  std::string axiom;
  long prefix_len = 0;       // stream schema: prefix cut k
  long index = 0;            // stream schema: position n >= 1
  std::optional<Rat> eps;    // bound family parameter
};

// Bounds inside proof templates: either a constant or coeff*ratio^n in the
// family index n.
struct GeomBound {
  Rat coeff, ratio;
};
using BoundExpr = std::variant<ExtReal, GeomBound>;
ExtReal bound_at(const BoundExpr &b, long n);

struct ProofSchema;
using SchemaPtr = std::shared_ptr<const ProofSchema>;

struct SchemaAxiomRef {
  std::string axiom;
  long prefix_len = 0;
  bool symbolic_index = false;  // true: instance index is the family index n
  long index = 0;
  std::optional<Rat> eps;
};

// Finite certificate for Cont: proofs of ctx |- s =_{coeff*ratio^n} t for
// every n >= k0.  The infimum of the bound family is 0, so with Max this
// covers every conclusion bound; the checker validates instantiations at
// sampled indices.
struct ParametricBoundFamily {
  TermPtr s, t;
  Rat coeff, ratio;
  long k0 = 1;
  SchemaPtr body;
};

// A proof parametric in one index n; instantiation at concrete n yields an
// ordinary Proof.  Only equation bounds vary with n; contexts and terms
// are fixed, which is exactly the shape of a tail-region family.
struct ProofSchema {
  Rule rule;
  Context ctx;
  bool is_ok = false;
  TermPtr okt;            // ok body
  TermPtr l, r;           // eq body
  BoundExpr eps{ExtReal(0)};
  std::vector<SchemaPtr> premises;
  std::optional<SubstData> subst;
  std::optional<SchemaAxiomRef> axiom;
  std::optional<ParametricBoundFamily> family;  // embedded Cont certificates
};

struct Proof;
using ProofPtr = std::shared_ptr<const Proof>;

// Rule payloads are behind pointers: most nodes carry none, and saturation
// over a large universe holds millions of nodes at once.
struct Proof {
  Rule rule;
  Sequent conclusion;
  std::vector<ProofPtr> premises;
  std::shared_ptr<const SubstData> subst;
  std::shared_ptr<const AxiomInst> axiom;
  std::shared_ptr<const ParametricBoundFamily> family;
};

ProofPtr instantiate_schema(const SchemaPtr &s, const Theory &t, long n);

struct Verdict {
  bool valid;
  std::string reason;  // empty when valid
  explicit operator bool() const { return valid; }
};

// Validates one node at a time against the deduction rules; premises are
// matched by exact sequent equality (weakening is not a rule, contexts
// must agree literally).  Shared subproofs are checked once.
Verdict check_proof(const Theory &t, const ProofPtr &p);

// Checks a batch sharing one memo table, so common subproofs across the
// batch are visited once.  Invalid on the first failure.
Verdict check_proofs(const Theory &t, const std::vector<ProofPtr> &ps);

inline const Sequent &proof_conclusion(const ProofPtr &p) { return p->conclusion; }

// Node constructors (no checking; feed the result to check_proof).
ProofPtr pf_var(Context ctx, const std::string &x);
ProofPtr pf_assum(Context ctx, const CtxBound &b);
ProofPtr pf_refl(ProofPtr ok);
ProofPtr pf_symm(ProofPtr eq);
ProofPtr pf_triang(ProofPtr ab, ProofPtr bc);
ProofPtr pf_max(ProofPtr eq, ExtReal larger);
ProofPtr pf_cont(Context ctx, ParametricBoundFamily fam, ExtReal eps);
ProofPtr pf_nexp(Sequent conclusion, std::vector<ProofPtr> premises);
ProofPtr pf_subst(Context outer, SubstData data, ProofPtr inner, std::vector<ProofPtr> outer_premises);
ProofPtr pf_app(Sequent conclusion, std::vector<ProofPtr> premises);
ProofPtr pf_axiom(const Theory &t, AxiomInst inst);

}  // namespace metriq
