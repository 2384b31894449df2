// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "json.hpp"
#include "metriq/freemodel.hpp"

namespace metriq {

using Json = nlohmann::json;

// All encoders are byte-deterministic (sorted object keys, exact rational
// strings "p/q", infinity as "inf").  Decoders throw std::invalid_argument
// on malformed input; term strings are resolved against the signature.

Json metric_to_json(const FinPseudoMetric &m);
FinMetric metric_from_json(const Json &j);

Json model_to_json(const Model &m);
Model model_from_json(const Json &j);

Json sequent_to_json(const Sequent &s);
Sequent sequent_from_json(const Signature &sig, const Json &j);

Json proof_to_json(const ProofPtr &p);
ProofPtr proof_from_json(const Signature &sig, const Json &j);

// Model JSON extended with class representatives, the generator unit and
// per-pair exactness labels.
Json freemodel_to_json(const FreeModelApprox &f);

}  // namespace metriq
