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


#ifndef IBENCH_EXPERIMENT_H
#define IBENCH_EXPERIMENT_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ibench/engine.h"
#include "ibench/estimators.h"
#include "ibench/gauge.h"
#include "ibench/noise.h"
#include "ibench/protocols.h"
#include "ibench/serialization.h"

namespace ibench {

struct XrbSettings {
    bool enabled = false;
    std::vector<int> depths = {4, 6, 8, 12, 14};
    int shots = 1500;
};

struct GaugeSettings {
    bool enabled = false;
    int edge_samples = 10000;
    int fidelity_samples = 10000;
    GaugeOrigin origin = GaugeOrigin::UR;
};

struct ExperimentConfig {
    std::string name = "experiment";
    uint64_t seed = 0;
    std::vector<TwirlGroupKind> groups;
    std::string interleaved_name = "cnot";
    UnitaryMatrix interleaved = UnitaryMatrix::identity(4);
    int shots = 1500;
    /// Per-group depth overrides; absent groups use the default schedules.
    std::map<TwirlGroupKind, std::vector<int>> reference_depths;
    std::map<TwirlGroupKind, std::vector<int>> interleaved_depths;
    ErrorModel model;
    EstimatorMethod method = EstimatorMethod::Ratio;
    StatOptions stat;
    XrbSettings xrb;
    GaugeSettings gauge;
    bool exact = false;
    int threads = 1;
    std::string output_dir;

    ProtocolSpec protocol(TwirlGroupKind group, bool interleaved_protocol) const;
    ProtocolSpec xrb_protocol() const;
};

/// Validates the schema; unknown keys and type errors throw ConfigError with a field path.
ExperimentConfig parse_config(const Json &j);
/// Reads a JSON file, or an embedded preset when `source` is "preset:NAME".
ExperimentConfig load_config(const std::string &source);

std::vector<std::string> preset_names();
/// Throws ConfigError for unknown names.
Json preset_json(const std::string &name);

/// Canonical form of the result-affecting settings (no output directory or thread count).
Json config_to_json(const ExperimentConfig &config);
/// FNV-1a of the canonical config, as 16 hex digits.
std::string config_hash(const ExperimentConfig &config);

/// Named two-qubit gates accepted by "interleaved_gate".
std::optional<UnitaryMatrix> named_gate(const std::string &name);

struct GroupResult {
    TwirlGroupKind group = TwirlGroupKind::Clifford2;
    ExperimentData reference;
    ExperimentData interleaved;
    InfidelityEstimate estimate;
    std::optional<ScgReport> scg;
};

struct RunResult {
    ExperimentConfig config;
    double theoretical_infidelity = 0;
    std::vector<GroupResult> groups;
    std::optional<ExperimentData> xrb;
    std::optional<UnitarityEstimate> unitarity;
};

RunResult run_config(const ExperimentConfig &config);

/// Report document; `timestamp` is stored only in the provenance block.
Json report_json(const RunResult &result, const std::string &timestamp);
/// Writes report.json, estimates.csv and per-protocol decay and shot CSVs into `dir`.
void write_artifacts(const RunResult &result, const std::string &dir, const std::string &timestamp);

struct SweepRow {
    double value = 0;
    /// Mean process infidelity of a compiled single-qubit gate at this value.
    double single_qubit_error = 0;
    TwirlGroupKind group = TwirlGroupKind::Clifford2;
    double eps_reference = 0;
    double eps_dressed = 0;
    double epsilon = 0;
    Interval systematic;
};

/// Parses "start:stop:step" (inclusive stop).
std::vector<double> parse_grid(const std::string &grid);

/// Systematic-bound widths over `grid`; the parameter must be theta1_deg (FixedCoherent models).
std::vector<SweepRow> sweep(const ExperimentConfig &config, const std::string &parameter,
                            const std::vector<double> &grid);
std::string sweep_to_csv(const std::vector<SweepRow> &rows);

struct IngestOptions {
    std::optional<TwirlGroupKind> group;
    EstimatorMethod method = EstimatorMethod::Ratio;
    StatOptions stat = [] {
        StatOptions s;
        s.method = StatMethod::Parametric;
        return s;
    }();
    std::optional<double> unitarity;
};

/// Twirl group implied by decay labels: q0/q1 -> local Clifford, Pauli labels -> Pauli,
/// otherwise Clifford.
TwirlGroupKind infer_group(const std::vector<DecayPoint> &points);

InfidelityEstimate ingest(const std::vector<DecayPoint> &reference, const std::vector<DecayPoint> &interleaved,
                          const IngestOptions &options);

std::string utc_timestamp();
std::string version_string();

}  // namespace ibench

#endif
