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


#ifndef IBENCH_ENGINE_H
#define IBENCH_ENGINE_H

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ibench/channels.h"
#include "ibench/noise.h"
#include "ibench/protocols.h"

namespace ibench {

struct ShotRecord {
    int depth = 0;
    int circuit = 0;
    std::string label;
    int sign = 1;
    /// 0/1 for survival, +-1 for Pauli outcomes, an unbiased purity sample for XRB,
    /// or the exact value in exact mode.
    double outcome = 0;

    double signed_outcome() const {
        return sign * outcome;
    }
};

struct DecayPoint {
    int depth = 0;
    std::string label;
    double mean = 0;
    /// sqrt(v / n) with v the unbiased sample variance.
    double std_error = 0;
    int n = 0;
};

struct EngineOptions {
    /// One record per circuit carrying the exact outcome instead of a sample.
    bool exact = false;
    int threads = 1;
};

struct ExperimentData {
    std::string protocol;
    TwirlGroupKind group = TwirlGroupKind::Clifford2;
    ProtocolKind kind = ProtocolKind::Benchmark;
    bool exact = false;
    std::vector<ShotRecord> shots;
    std::vector<DecayPoint> points;
};

/// Noisy channel realizing one circuit step under `model`.
Channel step_channel(const ErrorModel &model, const CircuitStep &step);

/// Density matrix after the noisy circuit. Throws SimulationIntegrity if the result is
/// not a valid state within 1e-8.
Eigen::Matrix4cd final_state(const CircuitInstance &circ, const ErrorModel &model);

/// Exact measured values per decay label, readout errors included.
///
/// PerQubitSurvival yields {"q0", "q1"}; every other measurement yields the circuit label.
std::vector<std::pair<std::string, double>> exact_outcomes(const CircuitInstance &circ, const ErrorModel &model);

/// Exact outcome of a single-label circuit: survival probability, signed Pauli
/// expectation or normalized purity.
double simulate_circuit(const CircuitInstance &circ, const ErrorModel &model);

ExperimentData run_experiment(const ProtocolSpec &spec, const ErrorModel &model, const EngineOptions &options = {});

/// Groups by (depth, label), ordered by depth then label.
std::vector<DecayPoint> aggregate(const std::vector<ShotRecord> &shots);

std::string shots_to_csv(const std::vector<ShotRecord> &shots);
std::string points_to_csv(const std::vector<DecayPoint> &points);
/// Throws InvalidInput naming the offending line.
std::vector<DecayPoint> points_from_csv(const std::string &text);
std::vector<ShotRecord> shots_from_csv(const std::string &text);

}  // namespace ibench

#endif
