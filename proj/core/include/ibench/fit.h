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


#ifndef IBENCH_FIT_H
#define IBENCH_FIT_H

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ibench/engine.h"

namespace ibench {

enum class FitModel {
    /// A p^m + B.
    ApB,
    /// A p^m.
    AOnly,
};

struct DecayFit {
    FitModel model = FitModel::ApB;
    std::string label;
    double A = 0;
    double p = 0;
    double B = 0;
    bool asymptote_fixed = false;
    /// Parameter order (A, p, B); the B row and column are absent when B is not fitted.
    Eigen::MatrixXd covariance;
    double chi2_reduced = 0;
    std::vector<double> residuals;
    int iterations = 0;

    double p_std_error() const;
    double predict(int m) const;
};

enum class FitWeighting {
    /// 1 / stderr_i^2 from each point's own spread.
    PerPoint,
    /// n_i / v with v the outcome variance pooled over all points of the decay.
    Pooled,
};

struct FitOptions {
    /// Asymptote assumed when seeding the log-linear initial guess.
    double b0 = 0.25;
    /// Hold B at `b0` instead of fitting it (ApB only).
    bool fix_asymptote = false;
    double std_error_floor = 1e-4;
    FitWeighting weighting = FitWeighting::Pooled;
    /// PerPoint only: also floor each stderr at the add-one smoothed binomial error of its `n` outcomes,
    /// so points whose outcomes all coincide do not get unbounded weight.
    bool binomial_floor = true;
    int max_iterations = 500;
};

/// Weighted Levenberg-Marquardt fit with weights 1 / max(stderr, floors)^2.
///
/// Throws InvalidInput with fewer distinct depths than parameters and FitFailure
/// when the iteration does not converge.
DecayFit fit_decay(const std::vector<DecayPoint> &points, FitModel model, const FitOptions &options = {});

std::vector<DecayPoint> points_with_label(const std::vector<DecayPoint> &points, const std::string &label);
/// Distinct labels in order of first appearance.
std::vector<std::string> point_labels(const std::vector<DecayPoint> &points);

std::string to_string(FitModel m);

}  // namespace ibench

#endif
