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

#ifndef IBENCH_ERRORS_H
#define IBENCH_ERRORS_H

#include <stdexcept>
#include <string>
#include <vector>

namespace ibench {

/// Bad argument shape or value (dimension mismatch, non-unitary input, ...).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A channel representation that fails Hermiticity / complete positivity checks.
struct InvalidChannel : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// e.g. a non-Clifford interleaved gate requested with a Clifford-tracked protocol.
struct UnsupportedCombination : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Propagated state left the physical set beyond tolerance.
struct SimulationIntegrity : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Decay data is missing labels required by an estimator.
struct IncompleteData : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Measured quantities that cannot jointly come from a physical channel.
struct InconsistentMeasurements : std::domain_error {
    using std::domain_error::domain_error;
};

/// Estimator evaluated outside its domain (e.g. reference infidelity >= 1).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Nonlinear least squares did not converge.
struct FitFailure : std::runtime_error {
    FitFailure(const std::string &what, std::vector<double> residuals)
        : std::runtime_error(what), residuals(std::move(residuals)) {
    }
    std::vector<double> residuals;
};

/// Configuration schema violation; `path` is a JSON-pointer-like field path.
struct ConfigError : std::invalid_argument {
    ConfigError(const std::string &path, const std::string &what)
        : std::invalid_argument(path + ": " + what), path(path) {
    }
    std::string path;
};

}  // namespace ibench

#endif
