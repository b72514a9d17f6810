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


#ifndef IBENCH_ESTIMATORS_H
#define IBENCH_ESTIMATORS_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ibench/engine.h"
#include "ibench/fit.h"
#include "ibench/groups.h"
#include "ibench/rng.h"

namespace ibench {

enum class EstimatorMethod { Ratio, Irb };
enum class StatMethod {
    /// Resample shots within each (depth, label).
    Bootstrap,
    /// Redraw each decay point mean from N(mean, stderr).
    Parametric,
    /// Delta method on the fit covariances.
    Covariance,
    None,
};

/// Decay fits of one protocol and the process infidelity they imply.
struct ProtocolFit {
    std::string protocol;
    TwirlGroupKind group = TwirlGroupKind::Clifford2;
    std::vector<DecayFit> fits;
    double epsilon = 0;
    /// Depolarizing parameter equivalent to `epsilon` at d = 4.
    double p = 1;
};

/// Fit model and asymptote guess for the labels a protocol produces.
FitModel fit_model_for(TwirlGroupKind group, ProtocolKind kind);
double asymptote_guess(TwirlGroupKind group, const std::string &label);

/// Fit options used for protocol data: the asymptote is held at its ideal value.
FitOptions protocol_fit_defaults();

/// Fits every label of `points`. Throws IncompleteData if labels are missing.
ProtocolFit fit_protocol(const std::vector<DecayPoint> &points, TwirlGroupKind group,
                         ProtocolKind kind = ProtocolKind::Benchmark,
                         const FitOptions &options = protocol_fit_defaults());

/// Process infidelity implied by the fits of one protocol.
///
/// Haar, Clifford and single-label local-Clifford fits use (1 - p)(d^2 - 1)/d^2; per-qubit
/// fits combine as F = (1 + 3 p_a)(1 + 3 p_b)/16; Pauli fits as F = (1 + sum p_P)/16.
double protocol_infidelity(const std::vector<DecayFit> &fits, TwirlGroupKind group);

double interleaved_estimate_ratio(double eps_ef, double eps_e);
double interleaved_estimate_irb(double p_ef, double p_e, int d = 4);

struct Interval {
    double low = 0;
    double high = 0;

    double width() const {
        return high - low;
    }
    bool contains(double x) const {
        return low <= x && x <= high;
    }
};

struct SystematicBounds {
    Interval bounds;
    /// Set when an input was clipped into [0, 1].
    bool clipped = false;
};

SystematicBounds systematic_bounds(double eps_ef, double eps_e);

struct XrbBounds {
    /// Interval on p(Y).
    Interval p;
    /// Same interval converted to process infidelity at d = 4.
    Interval epsilon;
};

/// |p(Y) - p_XY p_X / u_X| <= sqrt(1 - p_X^2/u_X) sqrt(1 - p_XY^2/u_X).
///
/// Square-root arguments within `tolerance` below zero are treated as zero; larger
/// violations throw InconsistentMeasurements.
XrbBounds xrb_bounds(double p_xy, double p_x, double u_x, double tolerance = 1e-9);

struct UnitarityEstimate {
    double u = 1;
    double std_error = 0;
    Interval ci;
    DecayFit fit;
};

/// Fits the purity decay A u^m. The CI is the fit's normal interval at `confidence`.
UnitarityEstimate unitarity_from_xrb(const std::vector<DecayPoint> &points, double confidence = 0.95);

struct StatOptions {
    StatMethod method = StatMethod::Bootstrap;
    int resamples = 1000;
    double confidence = 0.95;
    uint64_t seed = 0;
};

/// Decay points recomputed from shots drawn with replacement within each (depth, label).
std::vector<DecayPoint> resample_shots(const std::vector<ShotRecord> &shots, RandomStream &rng);
std::vector<DecayPoint> resample_points(const std::vector<DecayPoint> &points, RandomStream &rng);

/// Percentile interval of `samples` at `confidence`.
Interval percentile_interval(std::vector<double> samples, double confidence);

struct BootstrapResult {
    Interval ci;
    int failures = 0;
    std::vector<double> samples;
};

/// Percentile bootstrap of an arbitrary statistic of the shot records.
BootstrapResult bootstrap_ci(const std::vector<ShotRecord> &shots,
                             const std::function<double(const std::vector<DecayPoint> &)> &statistic,
                             const StatOptions &options);

struct InfidelityEstimate {
    std::string protocol;
    EstimatorMethod method = EstimatorMethod::Ratio;
    double epsilon = 0;
    ProtocolFit reference;
    ProtocolFit interleaved;
    std::optional<Interval> stat_ci;
    SystematicBounds systematic;
    std::optional<XrbBounds> xrb;
    std::vector<std::string> flags;

    bool has_flag(const std::string &flag) const;
};

struct AnalysisOptions {
    EstimatorMethod method = EstimatorMethod::Ratio;
    StatOptions stat;
    FitOptions fit = protocol_fit_defaults();
};

/// Fit, estimator, systematic bounds and statistical CI for a reference / interleaved pair.
///
/// Bootstrap needs shot records on both inputs. XRB bounds are attached when `unitarity`
/// is given for a Clifford pair.
InfidelityEstimate analyze_pair(const ExperimentData &reference, const ExperimentData &interleaved,
                                const AnalysisOptions &options = {},
                                const std::optional<double> &unitarity = std::nullopt);

std::string to_string(EstimatorMethod m);
std::string to_string(StatMethod m);
EstimatorMethod estimator_method_from_string(const std::string &s);
StatMethod stat_method_from_string(const std::string &s);

}  // namespace ibench

#endif
