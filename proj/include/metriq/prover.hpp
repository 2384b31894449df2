// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "metriq/algebra.hpp"
#include "metriq/kernel.hpp"

namespace metriq {

struct ProverConfig {
  long depth = 3;         // term depth cap D
  long max_passes = 1000; // rule-closure sweeps before giving up
  long max_terms = 20000; // universe size cap
  long prefix_cap = 0;    // stream prefix length generated in closed universes
  bool closed_universe = false;  // generate every application (free models)
  size_t cm_size = 4;            // countermodel carrier cap
  std::vector<ExtReal> grid = {ExtReal(0), ExtReal(Rat(1, 4)), ExtReal(Rat(1, 2)), ExtReal(1),
                               ExtReal(2), ExtReal::inf()};
  unsigned long long cm_budget = 4000000;  // models x assignments explored
  bool certify = true;             // attach countermodel exactness labels to free models
  size_t cert_cm_size = 3;         // carrier cap during free-model certification
  bool check_stabilization = true; // probe depth D+1 when building free models
};

// Bounded saturation state.  Every recorded ok-judgment and bound carries
// a kernel-checkable witness; bounds only ever shrink, and everything is
// deterministic in the inputs.
struct SaturationState {
  Theory theory;
  Context ctx;
  ProverConfig cfg;
  std::vector<TermPtr> universe;
  std::map<std::string, size_t> index;  // term key -> universe position
  std::vector<char> ok;
  std::vector<ProofPtr> ok_wit;
  struct Entry {
    ExtReal eps;
    ProofPtr wit;  // proves universe[lo] =_eps universe[hi]
  };
  std::map<std::pair<size_t, size_t>, Entry> bounds;  // key lo < hi
  std::map<std::string, long> schema_instantiations;  // axiom name -> firing count
  bool truncated = false;
  long passes_used = 0;

  std::optional<size_t> find(const TermPtr &t) const {
    auto it = index.find(t->key);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  // inf when unrelated; diagonal is 0 for ok terms.
  ExtReal bound(size_t i, size_t j) const;
  // Proof of universe[i] =_eps universe[j], weakening with Max/Symm as
  // needed; null when the recorded bound does not reach eps.
  ProofPtr witness(size_t i, size_t j, const ExtReal &eps) const;
  ProofPtr ok_witness(size_t i) const { return ok[i] ? ok_wit[i] : nullptr; }

  // Re-validate every stored witness against the kernel.
  Verdict verify_all_witnesses() const;
};

// When gens is present the run is over t + theory_of_space(gens) (the
// state records the combined theory).  roots seeds extra terms and their
// subterms into the universe; with cfg.closed_universe every well-formed
// application up to cfg.depth is generated, otherwise growth is limited
// to seeded terms and axiom instantiation images.
SaturationState saturate(const Theory &t, const Context &ctx, const std::optional<FinMetric> &gens,
                         const ProverConfig &cfg, const std::vector<TermPtr> &roots = {});

struct OkResult {
  bool derivable;
  ProofPtr witness;
  bool truncated;
};
OkResult prove_ok(const Theory &t, const Context &ctx, const TermPtr &term,
                  const ProverConfig &cfg);

struct CountermodelResult {
  bool found = false;
  Model model;
  Assignment assignment;
  bool truncated = false;
};
// Searches for a model of t plus a context-compatible assignment under
// which the sequent fails (equation distance above eps, or evaluation
// undefined).  Carriers are enumerated over cfg.grid up to cfg.cm_size.
CountermodelResult countermodel_search(const Theory &t, const Sequent &goal,
                                       const ProverConfig &cfg);

struct DistResult {
  ExtReal upper;       // least saturated bound (inf when unrelated)
  ProofPtr witness;    // null when upper is inf
  bool exact;          // countermodel certified at the grid scale
  CountermodelResult certificate;
  bool truncated;
};
// Least derivable-within-resources bound between s and t; throws
// std::domain_error when either side is not provably well-formed at this
// depth.  certify=false skips the exactness search.
DistResult min_distance(const Theory &t, const Context &ctx, const TermPtr &s, const TermPtr &u,
                        const ProverConfig &cfg, bool certify = true);

// Lemma-style translation: constants of T(A) become fresh variables x_a
// and the context gains the distances of A.  The result is a sequent over
// T alone whose derivability matches the input over T + T(A).
Sequent translate_sequent(const Theory &t, const FinMetric &a, const Sequent &seq);

}  // namespace metriq
