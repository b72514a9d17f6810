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


#include "ibench/estimators.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/normal.hpp>

#include "ibench/errors.h"

namespace ibench {

namespace {

constexpr int kDim = 4;
constexpr double kDimSq = 16;
constexpr uint64_t kBootstrapPurpose = 0xb0075;
constexpr uint64_t kParametricPurpose = 0x9a7a;

double eps_from_p(double p) {
    return (1 - p) * (kDimSq - 1) / kDimSq;
}

double p_from_eps(double eps) {
    return 1 - eps * kDimSq / (kDimSq - 1);
}

double normal_quantile(double q) {
    return boost::math::quantile(boost::math::normal_distribution<double>(), q);
}

double estimate_from_fits(const ProtocolFit &ref, const ProtocolFit &inter, EstimatorMethod method) {
    if (method == EstimatorMethod::Irb) {
        return interleaved_estimate_irb(inter.p, ref.p, kDim);
    }
    return interleaved_estimate_ratio(inter.epsilon, ref.epsilon);
}

ProtocolFit with_p_values(ProtocolFit fit, const std::vector<double> &ps) {
    for (size_t k = 0; k < ps.size(); k++) {
        fit.fits[k].p = ps[k];
    }
    fit.epsilon = protocol_infidelity(fit.fits, fit.group);
    fit.p = p_from_eps(fit.epsilon);
    return fit;
}

}  // namespace

FitModel fit_model_for(TwirlGroupKind group, ProtocolKind kind) {
    if (kind == ProtocolKind::Xrb || group == TwirlGroupKind::Pauli) {
        return FitModel::AOnly;
    }
    return FitModel::ApB;
}

FitOptions protocol_fit_defaults() {
    FitOptions o;
    o.fix_asymptote = true;
    return o;
}

double asymptote_guess(TwirlGroupKind group, const std::string &label) {
    if (group == TwirlGroupKind::LocalClifford && (label == "q0" || label == "q1")) {
        return 0.5;
    }
    return 1.0 / kDim;
}

ProtocolFit fit_protocol(const std::vector<DecayPoint> &points, TwirlGroupKind group, ProtocolKind kind,
                         const FitOptions &options) {
    ProtocolFit out;
    out.group = group;
    std::vector<std::string> labels = point_labels(points);
    std::sort(labels.begin(), labels.end());
    if (labels.empty()) {
        throw IncompleteData("no decay points to fit");
    }
    FitModel model = fit_model_for(group, kind);
    for (const auto &label : labels) {
        FitOptions o = options;
        o.b0 = asymptote_guess(group, label);
        out.fits.push_back(fit_decay(points_with_label(points, label), model, o));
    }
    if (kind == ProtocolKind::Xrb) {
        out.p = out.fits.front().p;
        out.epsilon = eps_from_p(out.p);
        return out;
    }
    out.epsilon = protocol_infidelity(out.fits, group);
    out.p = p_from_eps(out.epsilon);
    return out;
}

double protocol_infidelity(const std::vector<DecayFit> &fits, TwirlGroupKind group) {
    if (fits.empty()) {
        throw IncompleteData("no decay fits");
    }
    if (group == TwirlGroupKind::Pauli) {
        std::map<std::string, double> by_label;
        for (const auto &f : fits) {
            by_label[f.label] = f.p;
        }
        double sum = 0;
        for (const auto &p : pauli_protocol_labels()) {
            auto it = by_label.find(p.str().substr(1));
            if (it == by_label.end()) {
                throw IncompleteData("missing Pauli decay for " + p.str().substr(1));
            }
            sum += it->second;
        }
        return 1 - (1 + sum) / kDimSq;
    }
    if (group == TwirlGroupKind::LocalClifford && fits.size() == 2) {
        const DecayFit *a = nullptr;
        const DecayFit *b = nullptr;
        for (const auto &f : fits) {
            (f.label == "q0" ? a : b) = &f;
        }
        if (a == nullptr || b == nullptr || b->label != "q1") {
            throw IncompleteData("per-qubit decays need labels q0 and q1");
        }
        return 1 - (1 + 3 * a->p) * (1 + 3 * b->p) / kDimSq;
    }
    if (fits.size() != 1) {
        throw IncompleteData("expected a single decay for " + to_string(group));
    }
    return eps_from_p(fits.front().p);
}

double interleaved_estimate_ratio(double eps_ef, double eps_e) {
    if (!(eps_e < 1)) {
        throw DomainError("reference infidelity must be below 1");
    }
    return 1 - (1 - eps_ef) / (1 - eps_e);
}

double interleaved_estimate_irb(double p_ef, double p_e, int d) {
    if (p_e == 0) {
        throw DomainError("reference decay parameter is zero");
    }
    double d2 = static_cast<double>(d) * d;
    return (d2 - 1) / d2 * (1 - p_ef / p_e);
}

SystematicBounds systematic_bounds(double eps_ef, double eps_e) {
    SystematicBounds out;
    auto clip = [&](double x) {
        double c = std::clamp(x, 0.0, 1.0);
        out.clipped = out.clipped || c != x;
        return c;
    };
    double a = clip(eps_ef);
    double b = clip(eps_e);
    double s = a + b - 2 * a * b;
    double w = 2 * std::sqrt((1 - a) * (1 - b) * a * b);
    out.bounds = {s - w, s + w};
    return out;
}

XrbBounds xrb_bounds(double p_xy, double p_x, double u_x, double tolerance) {
    if (!(u_x > 0)) {
        throw InconsistentMeasurements("unitarity must be positive");
    }
    auto root = [&](double p, const char *name) {
        double arg = 1 - p * p / u_x;
        if (arg < -tolerance) {
            throw InconsistentMeasurements(std::string("unitarity below squared ") + name + " decay parameter");
        }
        return std::sqrt(std::max(0.0, arg));
    };
    double half = root(p_x, "reference") * root(p_xy, "interleaved");
    double center = p_xy * p_x / u_x;
    XrbBounds out;
    out.p = {center - half, center + half};
    out.epsilon = {eps_from_p(out.p.high), eps_from_p(out.p.low)};
    return out;
}

UnitarityEstimate unitarity_from_xrb(const std::vector<DecayPoint> &points, double confidence) {
    UnitarityEstimate out;
    FitOptions o;
    o.b0 = 0;
    out.fit = fit_decay(points, FitModel::AOnly, o);
    out.u = out.fit.p;
    out.std_error = out.fit.p_std_error();
    double z = normal_quantile(0.5 + confidence / 2);
    out.ci = {out.u - z * out.std_error, out.u + z * out.std_error};
    return out;
}

std::vector<DecayPoint> resample_shots(const std::vector<ShotRecord> &shots, RandomStream &rng) {
    std::map<std::pair<int, std::string>, std::vector<const ShotRecord *>> groups;
    for (const auto &s : shots) {
        groups[{s.depth, s.label}].push_back(&s);
    }
    std::vector<ShotRecord> drawn;
    drawn.reserve(shots.size());
    for (const auto &[key, members] : groups) {
        int n = static_cast<int>(members.size());
        for (int k = 0; k < n; k++) {
            drawn.push_back(*members[rng.uniform_int(n)]);
        }
    }
    return aggregate(drawn);
}

std::vector<DecayPoint> resample_points(const std::vector<DecayPoint> &points, RandomStream &rng) {
    std::vector<DecayPoint> out = points;
    for (auto &p : out) {
        p.mean += p.std_error * rng.normal();
    }
    return out;
}

Interval percentile_interval(std::vector<double> samples, double confidence) {
    if (samples.empty()) {
        throw InvalidInput("no samples for percentile interval");
    }
    std::sort(samples.begin(), samples.end());
    auto quantile = [&](double q) {
        double pos = q * (samples.size() - 1);
        size_t lo = static_cast<size_t>(std::floor(pos));
        size_t hi = std::min(lo + 1, samples.size() - 1);
        double frac = pos - lo;
        return samples[lo] + frac * (samples[hi] - samples[lo]);
    };
    double alpha = (1 - confidence) / 2;
    return {quantile(alpha), quantile(1 - alpha)};
}

BootstrapResult bootstrap_ci(const std::vector<ShotRecord> &shots,
                             const std::function<double(const std::vector<DecayPoint> &)> &statistic,
                             const StatOptions &options) {
    BootstrapResult out;
    for (int r = 0; r < options.resamples; r++) {
        RandomStream rng{options.seed, kBootstrapPurpose, static_cast<uint64_t>(r)};
        try {
            out.samples.push_back(statistic(resample_shots(shots, rng)));
        } catch (const FitFailure &) {
            out.failures++;
        }
    }
    out.ci = percentile_interval(out.samples, options.confidence);
    return out;
}

bool InfidelityEstimate::has_flag(const std::string &flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

InfidelityEstimate analyze_pair(const ExperimentData &reference, const ExperimentData &interleaved,
                                const AnalysisOptions &options, const std::optional<double> &unitarity) {
    if (reference.group != interleaved.group) {
        throw InvalidInput("reference and interleaved data use different twirl groups");
    }
    TwirlGroupKind group = reference.group;
    InfidelityEstimate out;
    out.protocol = to_string(group);
    out.method = options.method;
    out.reference = fit_protocol(reference.points, group, ProtocolKind::Benchmark, options.fit);
    out.reference.protocol = reference.protocol;
    out.interleaved = fit_protocol(interleaved.points, group, ProtocolKind::Benchmark, options.fit);
    out.interleaved.protocol = interleaved.protocol;
    out.epsilon = estimate_from_fits(out.reference, out.interleaved, options.method);
    out.systematic = systematic_bounds(out.interleaved.epsilon, out.reference.epsilon);

    auto pipeline = [&](const std::vector<DecayPoint> &ref_points, const std::vector<DecayPoint> &int_points) {
        ProtocolFit r = fit_protocol(ref_points, group, ProtocolKind::Benchmark, options.fit);
        ProtocolFit i = fit_protocol(int_points, group, ProtocolKind::Benchmark, options.fit);
        return estimate_from_fits(r, i, options.method);
    };
    const StatOptions &stat = options.stat;
    int failures = 0;
    if (stat.method == StatMethod::Bootstrap || stat.method == StatMethod::Parametric) {
        bool shots = stat.method == StatMethod::Bootstrap;
        if (shots && (reference.shots.empty() || interleaved.shots.empty())) {
            throw InvalidInput("bootstrap needs shot records; use the parametric method for decay-point input");
        }
        uint64_t purpose = shots ? kBootstrapPurpose : kParametricPurpose;
        std::vector<double> samples;
        for (int r = 0; r < stat.resamples; r++) {
            RandomStream rr{stat.seed, purpose, static_cast<uint64_t>(r), 0};
            RandomStream ri{stat.seed, purpose, static_cast<uint64_t>(r), 1};
            try {
                samples.push_back(shots ? pipeline(resample_shots(reference.shots, rr),
                                                   resample_shots(interleaved.shots, ri))
                                        : pipeline(resample_points(reference.points, rr),
                                                   resample_points(interleaved.points, ri)));
            } catch (const FitFailure &) {
                failures++;
            }
        }
        if (!samples.empty()) {
            out.stat_ci = percentile_interval(std::move(samples), stat.confidence);
        }
    } else if (stat.method == StatMethod::Covariance) {
        auto ps = [](const ProtocolFit &f) {
            std::vector<double> v;
            for (const auto &d : f.fits) {
                v.push_back(d.p);
            }
            return v;
        };
        std::vector<double> pr = ps(out.reference);
        std::vector<double> pi = ps(out.interleaved);
        double var = 0;
        const double h = 1e-7;
        auto accumulate = [&](std::vector<double> &vec, const ProtocolFit &fit, bool is_ref) {
            for (size_t k = 0; k < vec.size(); k++) {
                double saved = vec[k];
                vec[k] = saved + h;
                double up = is_ref ? estimate_from_fits(with_p_values(out.reference, vec), out.interleaved, out.method)
                                   : estimate_from_fits(out.reference, with_p_values(out.interleaved, vec), out.method);
                vec[k] = saved - h;
                double down = is_ref
                                  ? estimate_from_fits(with_p_values(out.reference, vec), out.interleaved, out.method)
                                  : estimate_from_fits(out.reference, with_p_values(out.interleaved, vec), out.method);
                vec[k] = saved;
                double grad = (up - down) / (2 * h);
                double s = fit.fits[k].p_std_error();
                var += grad * grad * s * s;
            }
        };
        accumulate(pr, out.reference, true);
        accumulate(pi, out.interleaved, false);
        double z = normal_quantile(0.5 + stat.confidence / 2);
        double sd = std::sqrt(var);
        out.stat_ci = Interval{out.epsilon - z * sd, out.epsilon + z * sd};
    }

    if (unitarity) {
        if (group != TwirlGroupKind::Clifford2) {
            out.flags.push_back("xrb_requires_clifford");
        } else {
            out.xrb = xrb_bounds(out.interleaved.p, out.reference.p, *unitarity);
        }
    }
    if (out.epsilon < 0) {
        out.flags.push_back("unphysical_negative");
    }
    if (!out.systematic.bounds.contains(out.epsilon)) {
        out.flags.push_back("outside_systematic_bounds");
    }
    if (out.systematic.clipped) {
        out.flags.push_back("systematic_inputs_clipped");
    }
    if (failures > 0) {
        out.flags.push_back("resample_fit_failures:" + std::to_string(failures));
    }
    return out;
}

std::string to_string(EstimatorMethod m) {
    return m == EstimatorMethod::Ratio ? "ratio" : "irb";
}

std::string to_string(StatMethod m) {
    switch (m) {
        case StatMethod::Bootstrap:
            return "bootstrap";
        case StatMethod::Parametric:
            return "parametric";
        case StatMethod::Covariance:
            return "covariance";
        case StatMethod::None:
            return "none";
    }
    return "none";
}

EstimatorMethod estimator_method_from_string(const std::string &s) {
    if (s == "ratio") {
        return EstimatorMethod::Ratio;
    }
    if (s == "irb") {
        return EstimatorMethod::Irb;
    }
    throw InvalidInput("unknown estimator method '" + s + "' (expected ratio or irb)");
}

StatMethod stat_method_from_string(const std::string &s) {
    for (StatMethod m : {StatMethod::Bootstrap, StatMethod::Parametric, StatMethod::Covariance, StatMethod::None}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    throw InvalidInput("unknown statistics method '" + s + "' (expected bootstrap, parametric, covariance or none)");
}

}  // namespace ibench
