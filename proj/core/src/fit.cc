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


#include "ibench/fit.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "ibench/errors.h"

namespace ibench {

namespace {

constexpr double kParamLow = -0.1;
constexpr double kParamHigh = 1.1;

struct Problem {
    Eigen::VectorXd m;
    Eigen::VectorXd y;
    Eigen::VectorXd w;
    bool has_b;
    double b_fixed;

    Eigen::VectorXd residual(const Eigen::VectorXd &theta) const {
        Eigen::VectorXd r(m.size());
        for (int i = 0; i < m.size(); i++) {
            double model = theta(0) * std::pow(theta(1), m(i)) + (has_b ? theta(2) : b_fixed);
            r(i) = y(i) - model;
        }
        return r;
    }
    Eigen::MatrixXd jacobian(const Eigen::VectorXd &theta) const {
        Eigen::MatrixXd j(m.size(), theta.size());
        for (int i = 0; i < m.size(); i++) {
            j(i, 0) = std::pow(theta(1), m(i));
            j(i, 1) = theta(0) * m(i) * std::pow(theta(1), m(i) - 1);
            if (has_b) {
                j(i, 2) = 1;
            }
        }
        return j;
    }
    double cost(const Eigen::VectorXd &theta) const {
        Eigen::VectorXd r = residual(theta);
        return r.dot(w.asDiagonal() * r);
    }
};

void project(Eigen::VectorXd &theta, bool has_b) {
    theta(0) = std::clamp(theta(0), kParamLow, kParamHigh);
    if (has_b) {
        theta(2) = std::clamp(theta(2), kParamLow, kParamHigh);
    }
}

Eigen::VectorXd initial_guess(const Problem &prob, double b0) {
    double offset = prob.has_b ? b0 : prob.b_fixed;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i < prob.m.size(); i++) {
        double v = prob.y(i) - offset;
        if (v > 1e-6) {
            double ly = std::log(v);
            sx += prob.m(i);
            sy += ly;
            sxx += prob.m(i) * prob.m(i);
            sxy += prob.m(i) * ly;
            n++;
        }
    }
    Eigen::VectorXd theta(prob.has_b ? 3 : 2);
    double slope = 0;
    double intercept = std::log(std::max(1e-3, prob.y(0) - offset));
    if (n >= 2 && n * sxx - sx * sx > 0) {
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        intercept = (sy - slope * sx) / n;
    }
    theta(0) = std::exp(intercept);
    theta(1) = std::exp(slope);
    if (prob.has_b) {
        theta(2) = offset;
    }
    project(theta, prob.has_b);
    return theta;
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd &a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    Eigen::VectorXd ev = es.eigenvalues();
    double cut = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
    Eigen::VectorXd inv = ev.unaryExpr([&](double x) { return x > cut ? 1.0 / x : 0.0; });
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

double DecayFit::p_std_error() const {
    return covariance.rows() > 1 ? std::sqrt(std::max(0.0, covariance(1, 1))) : 0.0;
}

double DecayFit::predict(int m) const {
    return A * std::pow(p, m) + (model == FitModel::ApB ? B : 0.0);
}

DecayFit fit_decay(const std::vector<DecayPoint> &points, FitModel model, const FitOptions &options) {
    bool has_b = model == FitModel::ApB && !options.fix_asymptote;
    double b_fixed = model == FitModel::ApB && options.fix_asymptote ? options.b0 : 0.0;
    int k = has_b ? 3 : 2;
    std::set<int> depths;
    for (const auto &pt : points) {
        depths.insert(pt.depth);
    }
    if (static_cast<int>(depths.size()) < k) {
        throw InvalidInput("fit needs at least " + std::to_string(k) + " distinct depths, got " +
                           std::to_string(depths.size()));
    }
    Problem prob{Eigen::VectorXd(points.size()), Eigen::VectorXd(points.size()), Eigen::VectorXd(points.size()),
                 has_b, b_fixed};
    double pooled = 0;
    if (options.weighting == FitWeighting::Pooled) {
        double num = 0;
        double den = 0;
        double total = 0;
        for (const auto &pt : points) {
            int n = std::max(pt.n, 1);
            double v = pt.std_error * pt.std_error * n;
            num += (n > 1 ? n - 1 : 1) * v;
            den += n > 1 ? n - 1 : 1;
            total += n;
        }
        double q = 1 / (total + 2);
        pooled = std::max(num / den, q * (1 - q));
    }
    for (size_t i = 0; i < points.size(); i++) {
        prob.m(i) = points[i].depth;
        prob.y(i) = points[i].mean;
        double se = points[i].std_error;
        if (options.weighting == FitWeighting::Pooled) {
            se = std::sqrt(pooled / std::max(points[i].n, 1));
        } else if (options.binomial_floor && points[i].n > 0) {
            double q = 1.0 / (points[i].n + 2);
            se = std::max(se, std::sqrt(q * (1 - q) / points[i].n));
        }
        se = std::max(se, options.std_error_floor);
        prob.w(i) = 1 / (se * se);
    }
    Eigen::VectorXd theta = initial_guess(prob, options.b0);
    double cost = prob.cost(theta);
    double lambda = 1e-3;
    int iter = 0;
    bool converged = false;
    for (; iter < options.max_iterations && !converged; iter++) {
        Eigen::VectorXd r = prob.residual(theta);
        Eigen::MatrixXd j = prob.jacobian(theta);
        Eigen::MatrixXd jtj = j.transpose() * prob.w.asDiagonal() * j;
        Eigen::VectorXd g = j.transpose() * prob.w.asDiagonal() * r;
        bool accepted = false;
        while (lambda < 1e12) {
            Eigen::MatrixXd damped = jtj;
            for (int d = 0; d < k; d++) {
                damped(d, d) += lambda * std::max(jtj(d, d), 1e-12);
            }
            Eigen::VectorXd step = damped.ldlt().solve(g);
            // Parameters pinned at a bound and pushed outward are frozen for this step.
            std::vector<int> frozen;
            for (int d = 0; d < k; d++) {
                bool bounded = d == 0 || d == 2;
                if (bounded && ((theta(d) <= kParamLow && step(d) < 0) || (theta(d) >= kParamHigh && step(d) > 0))) {
                    frozen.push_back(d);
                }
            }
            if (!frozen.empty()) {
                for (int d : frozen) {
                    damped.row(d).setZero();
                    damped.col(d).setZero();
                    damped(d, d) = 1;
                }
                Eigen::VectorXd gr = g;
                for (int d : frozen) {
                    gr(d) = 0;
                }
                step = damped.ldlt().solve(gr);
            }
            Eigen::VectorXd next = theta + step;
            project(next, has_b);
            double next_cost = prob.cost(next);
            if (std::isfinite(next_cost) && next_cost <= cost) {
                double change = (next - theta).cwiseAbs().maxCoeff();
                bool tiny = change < 1e-14 || cost - next_cost <= 1e-15 * std::max(cost, 1e-300);
                theta = next;
                cost = next_cost;
                lambda = std::max(lambda / 10, 1e-12);
                accepted = true;
                converged = tiny;
                break;
            }
            lambda *= 10;
        }
        if (!accepted) {
            converged = true;
        }
    }
    Eigen::VectorXd residual = prob.residual(theta);
    if (!theta.allFinite() || !converged) {
        throw FitFailure("decay fit did not converge after " + std::to_string(iter) + " iterations",
                         std::vector<double>(residual.data(), residual.data() + residual.size()));
    }
    DecayFit fit;
    fit.model = model;
    fit.label = points.empty() ? "" : points.front().label;
    fit.A = theta(0);
    fit.p = theta(1);
    fit.B = has_b ? theta(2) : b_fixed;
    fit.asymptote_fixed = model == FitModel::ApB && !has_b;
    Eigen::MatrixXd j = prob.jacobian(theta);
    fit.covariance = pseudo_inverse(j.transpose() * prob.w.asDiagonal() * j);
    int dof = std::max(1, static_cast<int>(points.size()) - k);
    fit.chi2_reduced = cost / dof;
    fit.residuals.assign(residual.data(), residual.data() + residual.size());
    fit.iterations = iter;
    return fit;
}

std::vector<DecayPoint> points_with_label(const std::vector<DecayPoint> &points, const std::string &label) {
    std::vector<DecayPoint> out;
    std::copy_if(points.begin(), points.end(), std::back_inserter(out),
                 [&](const DecayPoint &p) { return p.label == label; });
    return out;
}

std::vector<std::string> point_labels(const std::vector<DecayPoint> &points) {
    std::vector<std::string> out;
    for (const auto &p : points) {
        if (std::find(out.begin(), out.end(), p.label) == out.end()) {
            out.push_back(p.label);
        }
    }
    return out;
}

std::string to_string(FitModel m) {
    return m == FitModel::ApB ? "ApB" : "A_only";
}

}  // namespace ibench
