// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "metriq/algebra.hpp"
#include "metriq/prover.hpp"

namespace metriq {

// Depth-bounded approximation of the free model on a generator space: all
// terms provably well-formed at depth cfg.depth, quotiented by derived
// distance zero.  Distances are least derived bounds, so upper bounds of
// the true free-model distances; exactness records which pairs were
// certified optimal at the grid resolution.
struct FreeModelApprox {
  FinMetric space;            // one point per class, named by its representative
  std::vector<TermPtr> reps;  // least (depth, key) member of each class
  std::map<std::string, size_t> unit;            // generator point -> class
  std::map<std::string, std::string> gen_names;  // generator point -> constant symbol
  Model model;                // partial operation tables over the classes
  std::map<std::pair<size_t, size_t>, bool> exactness;  // key i < j
  bool stabilized = false;    // depth D+1 yields the same quotient
  bool truncated = false;
  Theory combined;            // t plus the generator constants and their axioms
  SaturationState sat;        // proof witnesses behind every distance
  std::vector<size_t> cls;    // universe slot -> class, SIZE_MAX when not ok

  std::optional<size_t> class_of(const TermPtr &t) const;
};

FreeModelApprox initial_model(const Theory &t, const ProverConfig &cfg);
FreeModelApprox free_model(const Theory &t, const FinMetric &gens, const ProverConfig &cfg);

// Nonexpansive map between finite metric spaces, by point index.
struct SpaceMap {
  FinMetric dom, cod;
  std::vector<size_t> point;  // dom index -> cod index
  // Throws std::invalid_argument on size mismatch or an expanding pair.
  void validate() const;
  bool surjective() const;
};

// Action of a point map on free models: generator constants of Free(dom)
// are renamed along the map and the image class looked up in Free(cod).
struct InducedMap {
  FreeModelApprox src, dst;
  std::vector<size_t> cls;  // src class -> dst class
};
InducedMap induced_map(const Theory &t, const SpaceMap &f, const ProverConfig &cfg);
// Same, over prebuilt models (they must match f.dom / f.cod).
InducedMap induced_map(const FreeModelApprox &src, const FreeModelApprox &dst, const SpaceMap &f);

struct SurjectionReport {
  bool preserved = false;
  std::optional<size_t> missed;  // first target class outside the image
  InducedMap map;
};
// Whether the induced map stays onto: every class of Free(cod) must be hit.
SurjectionReport check_surjection_preservation(const Theory &t, const SpaceMap &f,
                                               const ProverConfig &cfg);

}  // namespace metriq
