// Copyright 2026 The ibench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef IBENCH_SERIALIZATION_H
#define IBENCH_SERIALIZATION_H

#include <string>

#include "json.hpp"

#include "ibench/channels.h"
#include "ibench/estimators.h"
#include "ibench/gauge.h"
#include "ibench/protocols.h"

namespace ibench {

using Json = nlohmann::json;

/// {"dim": d, "basis": "pauli-normalized", "entries": [[...], ...]}.
Json to_json(const PauliTransferMatrix &ptm);
/// Throws ConfigError at `path` on malformed input.
PauliTransferMatrix ptm_from_json(const Json &j, const std::string &path);

/// {"dim": d, "entries": [[[re, im], ...], ...]}.
Json to_json(const UnitaryMatrix &u);
/// Checks unitarity to 1e-9.
UnitaryMatrix unitary_from_json(const Json &j, const std::string &path);

Json to_json(const DecayFit &fit);
Json to_json(const ProtocolFit &fit);
Json to_json(const InfidelityEstimate &estimate);
Json to_json(const UnitarityEstimate &u);
Json to_json(const ScgReport &report);
/// Replay description: protocol, depth, circuit, label, step tags and closure.
Json to_json(const CircuitInstance &circuit);

Json interval_or_null(const std::optional<Interval> &interval);

}  // namespace ibench

#endif
