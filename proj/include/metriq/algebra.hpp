// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "metriq/theories.hpp"

namespace metriq {

// Interpretation of a finite-arity op: a value for every admissible
// argument tuple (pairwise distances within the arity distances).  Tables
// built from free-model approximations may be partial; lookups outside the
// table leave evaluation undefined.
struct FiniteInterp {
  std::map<std::vector<size_t>, size_t> table;
  bool operator==(const FiniteInterp &) const = default;
};

// Interpretation of a geometric-stream op, represented by its action on
// eventually constant sequences: the value is point_map applied to the
// eventual value.  point_map must be nonexpansive; UNDEF entries leave
// evaluation undefined.
struct StreamInterp {
  static constexpr size_t UNDEF = SIZE_MAX;
  std::vector<size_t> point_map;
  bool operator==(const StreamInterp &) const = default;
};

using Interp = std::variant<FiniteInterp, StreamInterp>;

struct Model {
  FinMetric carrier;
  std::vector<std::pair<std::string, Interp>> ops;
  const Interp *interp(const std::string &op) const {
    for (const auto &[n, i] : ops)
      if (n == op) return &i;
    return nullptr;
  }
  // Op order is presentation only; models agree when the named
  // interpretations do.
  bool operator==(const Model &o) const {
    if (!isometric_by_name(carrier, o.carrier) || ops.size() != o.ops.size()) return false;
    for (const auto &[n, i] : ops) {
      const Interp *oi = o.interp(n);
      if (!oi || !(i == *oi)) return false;
    }
    return true;
  }
};

using Assignment = std::map<std::string, size_t>;  // variable -> carrier index

// Partial evaluation: undefined (nullopt) when a variable is
// unassigned, an argument tuple violates the arity constraints, or the
// table has no entry.
std::optional<size_t> evaluate(const Model &m, const Signature &sig, const TermPtr &t,
                               const Assignment &alpha);

// Universal satisfaction over all context-compatible assignments.
bool satisfies(const Model &m, const Signature &sig, const Sequent &s);

struct SchemaCheckCaps {
  long stream_prefix = 3;  // prefix lengths sampled for stream axiom families
};
bool satisfies_axiom(const Model &m, const Theory &t, const Axiom &ax,
                     const SchemaCheckCaps &caps = {});
bool satisfies_theory(const Model &m, const Theory &t, const SchemaCheckCaps &caps = {});

// phi maps carrier indices of m into n.
bool is_homomorphism(const std::vector<size_t> &phi, const Model &m, const Model &n,
                     const Signature &sig);

// Streams every interpretation assignment of sig over the carrier, in a
// fixed deterministic order.  The callback returns false to stop early;
// enumerate_models returns false iff stopped.
bool enumerate_models(const Signature &sig, const FinMetric &carrier,
                      const std::function<bool(const Model &)> &cb);

// All separated spaces up to max_size with distances drawn from the grid
// (0 only on the diagonal), triangle-checked, sizes ascending.
bool enumerate_carriers(size_t max_size, const std::vector<ExtReal> &grid,
                        const std::function<bool(const FinMetric &)> &cb);

}  // namespace metriq
