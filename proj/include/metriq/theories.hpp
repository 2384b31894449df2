// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "metriq/syntax.hpp"

namespace metriq {

// A single sequent taken as a generator of the deducibility relation.
struct ConcreteAxiom {
  Sequent seq;
  bool operator==(const ConcreteAxiom &) const = default;
};

// Family over all stream positions n >= 1 for a geometric-stream op:
//   Gamma(arity) |- op(x_1, x_2, ...) =_{coeff * ratio^n} x_n.
// Kernel-checkable instances are cut down to a finite prefix: given a
// prefix length k, variables x#1..x#k,x#w under the reduced arity
// constraints, with x#w standing for every position past k.
struct StreamAxiom {
  std::string op;
  std::string var;  // surface name of the variable family
  Rat coeff, ratio;
  bool operator==(const StreamAxiom &) const = default;
};

// Family over all rationals e >= 0:
//   { v =_{mult*e} w } |- lhs =_e rhs     (lhs, rhs over {v, w}).
struct BoundFamilyAxiom {
  std::string v, w;
  Rat mult;
  TermPtr lhs, rhs;
  bool operator==(const BoundFamilyAxiom &o) const {
    return v == o.v && w == o.w && mult == o.mult && term_eq(lhs, o.lhs) &&
           term_eq(rhs, o.rhs);
  }
};

struct Axiom {
  std::string name;
  std::variant<ConcreteAxiom, StreamAxiom, BoundFamilyAxiom> form;
  bool operator==(const Axiom &) const = default;
};

struct Theory {
  std::string name;
  Signature sig;
  std::vector<Axiom> axioms;
  const Axiom *axiom(const std::string &n) const {
    for (const auto &a : axioms)
      if (a.name == n) return &a;
    return nullptr;
  }
  bool operator==(const Theory &) const = default;
};

// Canonical instances of schema axioms.
Sequent instantiate_stream_axiom(const Theory &t, const StreamAxiom &ax, long prefix_len,
                                 long index);
Sequent instantiate_bound_axiom(const BoundFamilyAxiom &ax, const Rat &eps);

// T(A): one constant 'a per point and axioms |- 'a =_{d(a,b)} 'b for every
// ordered pair at finite distance (diagonal included).
Theory theory_of_space(const FinMetric &a);
std::string gen_constant_name(const std::string &point);

// Sum theory; colliding symbols are renamed with l_/r_ prefixes (axioms
// follow the renaming).
Theory disjoint_union(const Theory &l, const Theory &r);

// comp, t1, t2, contraction, strongfinit, semilattice.
Theory builtin(const std::string &name);
std::vector<std::string> builtin_names();

// Well-formedness of a theory's own axioms (each side of every axiom must
// be derivably ok using the axiom set itself, checking subterms first).
struct AxiomCheck {
  std::string axiom;
  bool well_formed;
  std::string detail;
};
struct ProverConfig;
std::vector<AxiomCheck> check_axioms(const Theory &t, const ProverConfig &cfg);

}  // namespace metriq
